#include "selbias/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include "selbias/error.hpp"

namespace selbias::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// RFC 4180-style split of one line; quoted fields may contain commas and "".
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && trim(cur).empty()) {
      quoted = true;
      was_quoted = true;
      cur.clear();
    } else if (c == ',') {
      fields.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

double parse_number(std::string_view text, std::size_t line_no, const char* what) {
  try {
    const double x = parse_double(text);
    if (!std::isfinite(x)) throw ParseError("non-finite number '" + std::string(text) + "'");
    return x;
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what(), line_no);
  }
}

}  // namespace

DataFormat parse_format(std::string_view name) {
  const auto n = lower(name);
  if (n == "auto") return DataFormat::Auto;
  if (n == "subject" || n == "subject-level" || n == "observations") return DataFormat::Subject;
  if (n == "summary" || n == "summary-level") return DataFormat::Summary;
  throw ParseError("unknown format '" + std::string(name) + "' (expected subject, summary or auto)");
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("invalid number '" + std::string(text) + "'");
  }
  return v;
}

Dataset read_dataset(std::istream& in, DataFormat format) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t header_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    header = split_csv(t, line_no);
    header_line = line_no;
    break;
  }
  if (header.empty()) throw ParseError("empty input: expected a header line");
  for (auto& h : header) h = lower(h);

  const bool subject_header = header == std::vector<std::string>{"group", "value"};
  const bool summary_header = header == std::vector<std::string>{"group", "n", "mean", "sd"};
  if (format == DataFormat::Auto) {
    if (subject_header) format = DataFormat::Subject;
    else if (summary_header) format = DataFormat::Summary;
    else throw ParseError("unrecognized header (expected 'group,value' or 'group,n,mean,sd')", header_line);
  }
  if (format == DataFormat::Subject && !subject_header) {
    throw ParseError("subject-level input needs the header 'group,value'", header_line);
  }
  if (format == DataFormat::Summary && !summary_header) {
    throw ParseError("summary input needs the header 'group,n,mean,sd'", header_line);
  }

  Dataset::Subjects subjects;
  Dataset::Summaries summaries;
  std::unordered_map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_csv(t, line_no);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0].empty()) throw ParseError("empty group label", line_no);
    if (format == DataFormat::Subject) {
      const double v = parse_number(fields[1], line_no, "value");
      auto [it, inserted] = index.try_emplace(fields[0], subjects.size());
      if (inserted) subjects.push_back({fields[0], {}});
      subjects[it->second].values.push_back(v);
    } else {
      if (index.count(fields[0])) throw ParseError("duplicate group '" + fields[0] + "'", line_no);
      index.emplace(fields[0], summaries.size());
      const double n = parse_number(fields[1], line_no, "n");
      if (n != std::floor(n) || n < 1 || n > 4e9) {
        throw ParseError("n must be a positive integer", line_no);
      }
      summaries.push_back({fields[0], static_cast<std::int64_t>(n),
                           parse_number(fields[2], line_no, "mean"),
                           parse_number(fields[3], line_no, "sd")});
    }
  }
  Dataset d = format == DataFormat::Subject ? Dataset::subject_level(std::move(subjects))
                                            : Dataset::summary_level(std::move(summaries));
  if (d.group_count() == 0) throw ParseError("no data rows", line_no);
  return validate(std::move(d));
}

Dataset read_dataset_file(const std::filesystem::path& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_dataset(in, format);
}

namespace {

std::string quote_label(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos && trim(s) == s && !s.empty() && s[0] != '#') return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_dataset(const Dataset& data) {
  std::ostringstream os;
  if (data.is_subject_level()) {
    os << "group,value\n";
    for (const auto& g : data.subjects()) {
      for (double v : g.values) os << quote_label(g.label) << ',' << format_double(v) << '\n';
    }
  } else {
    os << "group,n,mean,sd\n";
    for (const auto& g : data.summaries()) {
      os << quote_label(g.label) << ',' << g.n << ',' << format_double(g.mean) << ','
         << format_double(g.sd) << '\n';
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = value.find(',', start);
    out.emplace_back(trim(value.substr(start, comma == value.npos ? value.npos : comma - start)));
    if (comma == value.npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::vector<T> broadcast(const std::vector<T>& v, std::size_t groups, const std::string& key,
                         std::size_t line_no) {
  if (v.size() == groups) return v;
  if (v.size() == 1) return std::vector<T>(groups, v[0]);
  throw ParseError("'" + key + "' has " + std::to_string(v.size()) + " entries, expected 1 or " +
                       std::to_string(groups),
                   line_no);
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (const auto hash = t.find('#'); hash != t.npos) t = trim(t.substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == t.npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = lower(trim(t.substr(0, eq)));
    const auto value = std::string(trim(t.substr(eq + 1)));
    static const std::array<std::string_view, 6> known = {"name", "theta", "sigma",
                                                          "n", "distribution", "w"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);
    if (!entries.emplace(key, std::make_pair(value, line_no)).second) {
      throw ParseError("duplicate key '" + key + "'", line_no);
    }
  }
  if (!entries.count("theta")) throw ParseError("scenario config needs 'theta'");

  auto numbers = [&](const std::string& key) {
    std::vector<double> out;
    const auto& [value, ln] = entries.at(key);
    for (const auto& item : split_list(value)) out.push_back(parse_number(item, ln, key.c_str()));
    return out;
  };
  auto line_of = [&](const std::string& key) { return entries.count(key) ? entries.at(key).second : 0; };

  Scenario s;
  s.name = entries.count("name") ? entries.at("name").first : "custom";
  const auto theta = numbers("theta");
  const std::size_t groups = theta.size();
  const auto sigma = broadcast(entries.count("sigma") ? numbers("sigma") : std::vector<double>{1.0},
                               groups, "sigma", line_of("sigma"));
  const auto n_raw = broadcast(entries.count("n") ? numbers("n") : std::vector<double>{40.0},
                               groups, "n", line_of("n"));
  const auto w = broadcast(entries.count("w") ? numbers("w") : std::vector<double>{0.0}, groups, "w",
                           line_of("w"));
  const auto dist = broadcast(entries.count("distribution")
                                  ? split_list(entries.at("distribution").first)
                                  : std::vector<std::string>{"normal"},
                              groups, "distribution", line_of("distribution"));
  for (std::size_t g = 0; g < groups; ++g) {
    const double n = n_raw[g];
    if (n != std::floor(n) || n < 1) throw ParseError("n must be a positive integer", line_of("n"));
    s.n_per_group.push_back(static_cast<std::int64_t>(n));
    const auto d = lower(dist[g]);
    if (d == "normal") {
      s.generators.push_back(NormalGen{theta[g], sigma[g]});
    } else if (d == "gamma_mix" || d == "gamma-normal") {
      s.generators.push_back(GammaNormalMix{theta[g], sigma[g], w[g]});
    } else if (d == "uniform_mix" || d == "uniform-normal") {
      s.generators.push_back(UniformNormalMix{theta[g], sigma[g], w[g]});
    } else {
      throw ParseError("unknown distribution '" + dist[g] +
                           "' (expected normal, gamma_mix or uniform_mix)",
                       line_of("distribution"));
    }
  }
  try {
    validate(s);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_scenario(in);
}

std::string write_scenario(const Scenario& scenario) {
  std::ostringstream os;
  auto list = [&](const char* key, auto&& get) {
    os << key << " = ";
    for (std::size_t g = 0; g < scenario.group_count(); ++g) os << (g ? ", " : "") << get(g);
    os << '\n';
  };
  os << "name = " << scenario.name << '\n';
  list("distribution", [&](std::size_t g) -> std::string {
    const auto& gen = scenario.generators[g];
    if (std::holds_alternative<GammaNormalMix>(gen)) return "gamma_mix";
    if (std::holds_alternative<UniformNormalMix>(gen)) return "uniform_mix";
    return "normal";
  });
  list("theta", [&](std::size_t g) { return format_double(generator_theta(scenario.generators[g])); });
  list("sigma", [&](std::size_t g) { return format_double(generator_sigma(scenario.generators[g])); });
  list("w", [&](std::size_t g) {
    const auto& gen = scenario.generators[g];
    if (const auto* m = std::get_if<GammaNormalMix>(&gen)) return format_double(m->w);
    if (const auto* m = std::get_if<UniformNormalMix>(&gen)) return format_double(m->w);
    return std::string("0");
  });
  list("n", [&](std::size_t g) { return std::to_string(scenario.n_per_group[g]); });
  return os.str();
}

}  // namespace selbias::io
