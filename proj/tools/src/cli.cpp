#include "selbias_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "selbias/error.hpp"
#include "selbias/estimate.hpp"
#include "selbias/evaluation.hpp"
#include "selbias/io.hpp"
#include "selbias/oracle.hpp"
#include "selbias/parallel.hpp"
#include "selbias/tables.hpp"

namespace selbias::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kManifestSchema = "selbias-run-manifest/1";

class IoError : public Error {
 public:
  using Error::Error;
};

// FNV-1a, 64 bit. Output fingerprints only; not a security property.
std::string fingerprint(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Output {
  std::string name;
  std::string content;
  bool deterministic = true;  // identical on every re-run with the same config
};

struct RunResult {
  json config;
  std::uint64_t seed = 0;
  std::vector<Output> outputs;
  std::string text;  // printed to stdout
  std::exception_ptr failure;  // first per-item failure, raised after printing
};

json manifest_for(const std::string& command, const std::vector<std::string>& argv,
                  const RunResult& result, unsigned workers, double seconds) {
  json m;
  m["schema"] = kManifestSchema;
  m["tool"] = {{"name", "selbias"}, {"version", SELBIAS_VERSION}};
  m["command"] = command;
  m["argv"] = argv;
  m["config"] = result.config;
  m["seed"] = result.seed;
  m["workers"] = workers;
  m["finished_utc"] = utc_now();
  m["duration_seconds"] = seconds;
  json outs = json::array();
  for (const auto& o : result.outputs) {
    outs.push_back({{"path", o.name},
                    {"bytes", o.content.size()},
                    {"fnv1a64", fingerprint(o.content)},
                    {"deterministic", o.deterministic}});
  }
  m["outputs"] = outs;
  return m;
}

void write_outputs(const fs::path& dir, const RunResult& result, const json& manifest) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& o : result.outputs) write_file(dir / o.name, o.content);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string fixed(double x, int digits) {
  if (!std::isfinite(x)) return x < 0 ? "-inf" : (x > 0 ? "inf" : "nan");
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------- estimate

struct EstimateConfig {
  std::string input;
  std::string format = "auto";
  std::string methods = "traditional";
  std::uint32_t B = 80;
  std::uint64_t seed = 1;
  bool json_stdout = false;
  std::optional<std::string> expected_fingerprint;  // set by replay
};

const char* format_name(const Dataset& d) { return d.is_subject_level() ? "subject" : "summary"; }

RunResult run_estimate(const EstimateConfig& cfg, unsigned workers) {
  const std::string text = read_file(cfg.input);
  const std::string fp = fingerprint(text);
  if (cfg.expected_fingerprint && *cfg.expected_fingerprint != fp) {
    throw ValidationError("input " + cfg.input + " changed since the manifest was written");
  }
  std::istringstream in(text);
  const Dataset data = io::read_dataset(in, io::parse_format(cfg.format));
  const auto methods = parse_method_list(cfg.methods);
  const rng::StreamPath root(cfg.seed, 0, rng::Domain::Bootstrap);

  json estimates = json::array();
  std::ostringstream table;
  table << std::left << std::setw(12) << "method" << std::setw(12) << "value" << std::setw(12)
        << "raw" << std::setw(28) << "bias estimates" << std::setw(10) << "C+"
        << "selected\n";
  std::exception_ptr failure;
  std::string failures;
  for (const auto& m : methods) {
    Estimate e;
    try {
      validate(EstimatorSpec{m, cfg.B, cfg.seed});
      e = run_estimator(data, m, cfg.B, root, workers);
    } catch (const Error& ex) {
      if (!failure) failure = std::current_exception();
      estimates.push_back({{"method", method_name(m)}, {"error", ex.what()}});
      failures += method_name(m) + ": " + ex.what() + "\n";
      continue;
    }
    const auto& t = *e.trace;
    json row;
    row["method"] = method_name(m);
    row["value"] = e.value;
    row["raw"] = t.raw;
    row["bias_estimates"] = t.bias_estimates;
    row["shrink_c"] = t.shrink_c ? json(*t.shrink_c) : json(nullptr);
    row["shrink_c_plus"] = t.shrink_c_plus ? json(*t.shrink_c_plus) : json(nullptr);
    row["selected_group"] = t.selected_index + 1;
    row["selected_label"] = data.label(t.selected_index);
    estimates.push_back(row);

    std::string biases;
    for (std::size_t j = 0; j < t.bias_estimates.size(); ++j) {
      biases += (j ? ", " : "") + fixed(t.bias_estimates[j], 4);
    }
    table << std::setw(12) << method_name(m) << std::setw(12) << fixed(e.value, 4)
          << std::setw(12) << fixed(t.raw, 4) << std::setw(28) << (biases.empty() ? "-" : biases)
          << std::setw(10) << (t.shrink_c_plus ? fixed(*t.shrink_c_plus, 4) : "-")
          << data.label(t.selected_index) << '\n';
  }

  json doc;
  doc["input"] = cfg.input;
  doc["format"] = format_name(data);
  doc["groups"] = data.group_count();
  doc["B"] = cfg.B;
  doc["seed"] = cfg.seed;
  doc["estimates"] = estimates;

  RunResult r;
  r.failure = failure;
  r.seed = cfg.seed;
  r.config = {{"input", cfg.input},
              {"input_fnv1a64", fp},
              {"format", cfg.format},
              {"methods", cfg.methods},
              {"B", cfg.B},
              {"seed", cfg.seed}};
  r.outputs.push_back({"estimates.json", doc.dump(2) + "\n", true});
  if (cfg.json_stdout) {
    r.text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "input: " << cfg.input << " (" << format_name(data) << " level, "
       << data.group_count() << " groups), B = " << cfg.B << ", seed = " << cfg.seed << "\n"
       << table.str();
    if (!failures.empty()) os << "\nfailed:\n" << failures;
    r.text = os.str();
  }
  return r;
}

// ---------------------------------------------------------------- simulate

struct ScenarioOverrides {
  std::vector<double> theta;
  std::vector<double> sigma;
  std::vector<std::int64_t> n;
  std::vector<double> w;
};

template <class T>
T pick(const std::vector<T>& v, std::size_t i, std::size_t groups, const char* what) {
  if (v.size() == 1) return v[0];
  if (v.size() != groups) {
    throw ValidationError(std::string("--") + what + " needs 1 or " + std::to_string(groups) +
                          " values, got " + std::to_string(v.size()));
  }
  return v[i];
}

std::string join(const auto& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v[0])>>) {
      s += io::format_double(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

Scenario apply_overrides(const Scenario& base, const std::string& family,
                         const ScenarioOverrides& o) {
  const std::size_t groups = o.theta.empty() ? base.group_count() : o.theta.size();
  Scenario s;
  s.name = family;
  if (!o.theta.empty()) s.name += " theta=" + join(o.theta);
  if (!o.sigma.empty()) s.name += " sigma=" + join(o.sigma);
  if (!o.n.empty()) s.name += " n=" + join(o.n);
  if (!o.w.empty()) s.name += " w=" + join(o.w);
  if (o.theta.empty() && o.sigma.empty() && o.n.empty() && o.w.empty()) s.name = base.name;
  if (groups != base.group_count() && base.group_count() == 0) {
    throw ValidationError("scenario has no groups");
  }
  for (std::size_t g = 0; g < groups; ++g) {
    // Group g inherits from the base scenario's group g (or its last group).
    const auto& proto = base.generators[std::min(g, base.group_count() - 1)];
    const std::int64_t proto_n = base.n_per_group[std::min(g, base.group_count() - 1)];
    GroupGenerator gen = proto;
    std::visit(
        [&](auto& x) {
          if (!o.theta.empty()) x.theta = o.theta[g];
          if (!o.sigma.empty()) x.sigma = pick(o.sigma, g, groups, "sigma");
          if constexpr (!std::is_same_v<std::decay_t<decltype(x)>, NormalGen>) {
            if (!o.w.empty()) x.w = pick(o.w, g, groups, "w");
          } else if (!o.w.empty()) {
            throw ValidationError("--w applies to gamma_mix and uniform_mix scenarios only");
          }
        },
        gen);
    s.generators.push_back(gen);
    s.n_per_group.push_back(o.n.empty() ? proto_n : pick(o.n, g, groups, "n"));
  }
  validate(s);
  return s;
}

struct SimulateConfig {
  Scenario scenario;
  std::string source;  // "builtin S1", "config path", or "manifest"
  std::string methods = "traditional";
  std::uint64_t R = 10'000;
  std::uint32_t B = 80;
  std::uint64_t seed = 1;
  std::optional<std::size_t> conditional;  // 1-based
  std::uint64_t first_replication = 0;
};

RunResult run_simulate(const SimulateConfig& cfg, unsigned workers) {
  EvalConfig ec;
  ec.R = cfg.R;
  ec.B = cfg.B;
  ec.methods = parse_method_list(cfg.methods);
  ec.seed = cfg.seed;
  ec.workers = workers;
  ec.first_replication = cfg.first_replication;
  if (cfg.conditional) {
    if (*cfg.conditional < 1) throw ValidationError("--conditional is a 1-based group number");
    ec.conditional_target = *cfg.conditional - 1;
  }
  const auto report = evaluate(cfg.scenario, ec);

  RunResult r;
  r.seed = cfg.seed;
  r.config = {{"source", cfg.source},
              {"scenario", io::write_scenario(cfg.scenario)},
              {"methods", cfg.methods},
              {"R", cfg.R},
              {"B", cfg.B},
              {"seed", cfg.seed},
              {"conditional_group", cfg.conditional ? json(*cfg.conditional) : json(nullptr)},
              {"first_replication", cfg.first_replication}};
  const auto md = report_markdown(report);
  r.outputs = {{"report.csv", report_csv(report), true},
               {"selection.csv", selection_csv(report), true},
               {"report.md", md, true}};
  r.text = md;
  return r;
}

// --------------------------------------------------------------- reproduce

struct ReproduceConfig {
  std::string table;
  ReproduceOptions options;
};

RunResult run_reproduce(const ReproduceConfig& cfg, unsigned workers) {
  auto opts = cfg.options;
  opts.workers = workers;
  const auto t = reproduce_table(cfg.table, opts);
  RunResult r;
  r.seed = opts.seed;
  r.config = {{"table", cfg.table},
              {"quick", opts.quick},
              {"R", t.R},
              {"triple_R", t.triple_R},
              {"seed", opts.seed},
              {"rows", opts.row_filter}};
  const auto md = table_markdown(t);
  r.outputs = {{cfg.table + ".csv", table_csv(t), true}, {cfg.table + ".md", md, false}};
  r.text = md;
  return r;
}

// ------------------------------------------------------------------ oracle

RunResult run_oracle(const std::string& input, int level, std::uint64_t max_states) {
  const Dataset data = io::read_dataset_file(input);
  const auto res = exact_nb_bias(data, level, EnumerationBudget{max_states});
  json doc = {{"level", res.level},
              {"theta_hat", res.theta_hat},
              {"bias_level1", res.bias_level1},
              {"bias_level2", res.bias_level2},
              {"corrected", res.corrected},
              {"variance_level1", res.variance_level1},
              {"variance_level2", res.variance_level2},
              {"probability_mass", res.probability_mass},
              {"states_visited", res.states_visited}};
  RunResult r;
  r.text = doc.dump(2) + "\n";
  return r;
}

// ------------------------------------------------------------------ replay

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("manifest is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("manifest field '") + key + "' has the wrong type");
  }
}

RunResult replay_manifest(const json& m, unsigned workers, const fs::path& manifest_dir) {
  if (!m.is_object() || get<std::string>(m, "schema") != kManifestSchema) {
    throw ValidationError("not a selbias run manifest");
  }
  const auto command = get<std::string>(m, "command");
  const json& c = m.at("config");
  if (command == "estimate") {
    EstimateConfig e;
    e.input = get<std::string>(c, "input");
    // Relative inputs resolve against the working directory first, then the
    // manifest's directory.
    if (fs::path(e.input).is_relative() && !fs::exists(e.input) &&
        fs::exists(manifest_dir / e.input)) {
      e.input = (manifest_dir / e.input).string();
    }
    e.format = get<std::string>(c, "format");
    e.methods = get<std::string>(c, "methods");
    e.B = get<std::uint32_t>(c, "B");
    e.seed = get<std::uint64_t>(c, "seed");
    e.expected_fingerprint = get<std::string>(c, "input_fnv1a64");
    auto r = run_estimate(e, workers);
    r.config["input"] = get<std::string>(c, "input");
    return r;
  }
  if (command == "simulate") {
    SimulateConfig s;
    std::istringstream in(get<std::string>(c, "scenario"));
    s.scenario = io::parse_scenario(in);
    s.source = get<std::string>(c, "source");
    s.methods = get<std::string>(c, "methods");
    s.R = get<std::uint64_t>(c, "R");
    s.B = get<std::uint32_t>(c, "B");
    s.seed = get<std::uint64_t>(c, "seed");
    if (!c.at("conditional_group").is_null()) s.conditional = get<std::size_t>(c, "conditional_group");
    s.first_replication = get<std::uint64_t>(c, "first_replication");
    return run_simulate(s, workers);
  }
  if (command == "reproduce") {
    ReproduceConfig rc;
    rc.table = get<std::string>(c, "table");
    rc.options.quick = get<bool>(c, "quick");
    rc.options.R = get<std::uint64_t>(c, "R");
    const auto triple = get<std::uint64_t>(c, "triple_R");
    if (triple > 0) rc.options.triple_R = triple;
    rc.options.seed = get<std::uint64_t>(c, "seed");
    rc.options.row_filter = get<std::string>(c, "rows");
    return run_reproduce(rc, workers);
  }
  throw ValidationError("manifest command '" + command + "' cannot be replayed");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kUsage;
  if (dynamic_cast<const BudgetError*>(&e)) return kBudget;
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const PreconditionError*>(&e)) {
    return kInvalid;
  }
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate the largest of several group means with reduced selection bias.",
               "selbias"};
  app.set_version_flag("--version", SELBIAS_VERSION);
  app.require_subcommand(1);

  unsigned workers = default_workers(1);
  const auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers,
                    "Worker threads (default: $SELBIAS_WORKERS or 1); results do not depend on it")
        ->check(CLI::PositiveNumber);
  };
  std::string out_dir;

  // estimate
  EstimateConfig est;
  auto* estimate = app.add_subcommand("estimate", "Run estimators on a dataset file");
  estimate->add_option("--input,-i", est.input, "CSV file: group,value or group,n,mean,sd")
      ->required();
  estimate->add_option("--format", est.format, "auto, subject or summary")
      ->check(CLI::IsMember({"auto", "subject", "summary"}));
  estimate->add_option("--method,--methods,-m", est.methods,
                       "Comma-separated: traditional, shrink, jk, jkn, pb1-3, nb1-3, pb2s, nb2s, ...");
  estimate->add_option("--B", est.B, "Bootstrap resamples per level")->check(CLI::PositiveNumber);
  estimate->add_option("--seed", est.seed, "Master seed");
  estimate->add_flag("--json", est.json_stdout, "Print JSON instead of a table");
  estimate->add_option("--out-dir,-o", out_dir, "Write estimates.json and manifest.json here");
  add_workers(estimate);

  // simulate
  SimulateConfig sim;
  std::string builtin, config_path;
  ScenarioOverrides overrides;
  std::size_t conditional = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo bias/MSE of estimators");
  auto* builtin_opt = simulate->add_option(
      "--builtin", builtin, "Builtin family: toy, S1, S2, S3, S4, four_arm (first entry)");
  auto* config_opt =
      simulate->add_option("--config", config_path, "Scenario file (see docs/scenario-format.md)");
  builtin_opt->excludes(config_opt);
  simulate->add_option("--theta", overrides.theta, "Override group means")->delimiter(',');
  simulate->add_option("--sigma", overrides.sigma, "Override group sds")->delimiter(',');
  simulate->add_option("--n", overrides.n, "Override group sizes")->delimiter(',');
  simulate->add_option("--w", overrides.w, "Override mixture weights")->delimiter(',');
  simulate->add_option("--methods,--method,-m", sim.methods, "Comma-separated estimator names");
  simulate->add_option("--R", sim.R, "Replications")->check(CLI::PositiveNumber);
  simulate->add_option("--B", sim.B, "Bootstrap resamples per level")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--conditional", conditional,
                       "Also report bias/MSE given this group (1-based) is selected");
  simulate->add_option("--first-replication", sim.first_replication,
                       "Index of the first replication, for chunked runs");
  simulate->add_option("--out-dir,-o", out_dir,
                       "Write report.csv, selection.csv, report.md and manifest.json here");
  add_workers(simulate);

  // reproduce
  ReproduceConfig rep;
  std::uint64_t rep_R = 0, rep_triple = 0;
  auto* reproduce = app.add_subcommand("reproduce", "Re-run a reference table and compare with its values");
  reproduce->add_option("table", rep.table, "toy, marginal, conditional, four_arm, boot_order, award5")
      ->required();
  reproduce->add_flag("--quick", rep.options.quick, "R = 2000 (triple columns R = 200)");
  reproduce->add_option("--R", rep_R, "Replications for single/double columns")
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--triple-R", rep_triple, "Replications for triple columns")
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--seed", rep.options.seed, "Master seed");
  reproduce->add_option("--rows", rep.options.row_filter, "Only rows whose key contains this text");
  reproduce->add_option("--out-dir,-o", out_dir, "Write <table>.csv, <table>.md, manifest.json");
  add_workers(reproduce);

  // replay
  std::string manifest_path;
  bool check = false;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "manifest.json")->required();
  replay->add_flag("--check", check, "Compare outputs with the manifest fingerprints");
  replay->add_option("--out-dir,-o", out_dir, "Write the regenerated outputs here");
  add_workers(replay);

  // builtins
  auto* builtins = app.add_subcommand("builtins", "List builtin scenarios");

  // oracle (debugging aid, hidden)
  std::string oracle_input;
  int oracle_level = 1;
  std::uint64_t oracle_states = EnumerationBudget{}.max_joint_states;
  auto* oracle = app.add_subcommand("oracle", "Exact nonparametric bootstrap bias");
  oracle->group("");
  oracle->add_option("--input,-i", oracle_input)->required();
  oracle->add_option("--level", oracle_level)->check(CLI::Range(1, 2));
  oracle->add_option("--max-states", oracle_states)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    std::string command;
    if (*estimate) {
      command = "estimate";
      result = run_estimate(est, workers);
    } else if (*simulate) {
      command = "simulate";
      if (builtin.empty() == config_path.empty()) {
        throw ParseError("simulate needs exactly one of --builtin or --config");
      }
      Scenario base;
      std::string family;
      if (!builtin.empty()) {
        base = builtin_family(builtin).front().scenario;
        family = builtin;
        sim.source = "builtin " + builtin;
      } else {
        base = io::parse_scenario_file(config_path);
        family = base.name;
        sim.source = "config " + config_path;
      }
      sim.scenario = apply_overrides(base, family, overrides);
      if (conditional > 0) sim.conditional = conditional;
      result = run_simulate(sim, workers);
    } else if (*reproduce) {
      command = "reproduce";
      if (rep_R > 0) rep.options.R = rep_R;
      if (rep_triple > 0) rep.options.triple_R = rep_triple;
      result = run_reproduce(rep, workers);
    } else if (*replay) {
      const json m = [&] {
        try {
          return json::parse(read_file(manifest_path));
        } catch (const json::parse_error& e) {
          throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
        }
      }();
      command = get<std::string>(m, "command");
      result = replay_manifest(m, workers, fs::path(manifest_path).parent_path());
      if (check) {
        std::map<std::string, std::string> expected;
        for (const auto& o : m.at("outputs")) {
          if (o.value("deterministic", false)) {
            expected[o.at("path").get<std::string>()] = o.at("fnv1a64").get<std::string>();
          }
        }
        bool ok = true;
        for (const auto& o : result.outputs) {
          const auto it = expected.find(o.name);
          if (it == expected.end()) continue;
          const bool same = it->second == fingerprint(o.content);
          ok = ok && same;
          err << (same ? "match    " : "MISMATCH ") << o.name << '\n';
        }
        out << result.text;
        if (!out_dir.empty()) {
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          write_outputs(out_dir, result, manifest_for(command, args, result, workers, secs));
        }
        return ok ? kOk : kFailure;
      }
    } else if (*builtins) {
      for (const auto& e : builtin_scenarios()) {
        out << std::left << std::setw(10) << e.family << std::setw(22) << e.key << e.scenario.name
            << '\n';
      }
      return kOk;
    } else if (*oracle) {
      out << run_oracle(oracle_input, oracle_level, oracle_states).text;
      return kOk;
    }

    out << result.text;
    if (result.failure) std::rethrow_exception(result.failure);
    if (!out_dir.empty()) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_outputs(out_dir, result, manifest_for(command, args, result, workers, secs));
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace selbias::cli
