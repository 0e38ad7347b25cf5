#include "selbias/tables.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "reference_values.hpp"
#include "selbias/error.hpp"
#include "selbias/estimate.hpp"
#include "selbias/evaluation.hpp"
#include "selbias/io.hpp"
#include "selbias/scenarios.hpp"

namespace selbias {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Reference values carry two decimals.
constexpr double kRounding = 0.005;

std::vector<Method> parse_columns(const auto& names) {
  std::vector<Method> out;
  for (const char* n : names) out.push_back(parse_method(n));
  return out;
}

struct Budget {
  std::uint64_t R;
  std::uint64_t triple_R;
};

Budget budget(const ReproduceOptions& o) {
  return {o.R.value_or(o.quick ? 2'000 : 10'000), o.triple_R.value_or(o.quick ? 200 : 1'000)};
}

bool keep_row(const ReproduceOptions& o, const std::string& key) {
  return o.row_filter.empty() || key.find(o.row_filter) != std::string::npos;
}

TableCell bias_cell(const std::string& column, const CellStats& stats, const reference::Pair& p,
                    std::uint64_t count, std::uint64_t R) {
  TableCell c;
  c.column = column;
  c.observed = stats.bias;
  c.observed_mse = stats.mse;
  c.observed_se = stats.bias_se;
  c.reference = ReferenceCell{p.bias, p.mse};
  c.tolerance = 4.0 * std::sqrt(p.mse) / std::sqrt(static_cast<double>(count)) + kRounding;
  c.R = R;
  return c;
}

TableCell absent_cell(const std::string& column, const reference::Pair& p, std::uint64_t R) {
  TableCell c;
  c.column = column;
  c.reference = ReferenceCell{p.bias, p.mse};
  c.R = R;
  return c;
}

ReproducedTable nine_column_table(const std::string& name, const std::string& title,
                                  const std::vector<BuiltinEntry>& entries,
                                  const auto& ref_rows, std::optional<std::size_t> target,
                                  const ReproduceOptions& o) {
  const auto b = budget(o);
  ReproducedTable t;
  t.name = name;
  t.title = title;
  t.R = b.R;
  for (const char* c : reference::kMainColumns) t.columns.emplace_back(c);
  const auto methods = parse_columns(reference::kMainColumns);
  const auto start = Clock::now();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!keep_row(o, e.key)) continue;
    EvalConfig cfg;
    cfg.R = b.R;
    cfg.B = 80;
    cfg.methods = methods;
    cfg.seed = o.seed + i;
    cfg.workers = o.workers;
    cfg.conditional_target = target;
    const auto row_start = Clock::now();
    const auto report = evaluate(e.scenario, cfg);
    const double secs = seconds_since(row_start);
    TableRow row{e.family, e.key, {}};
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto& mr = report.methods[m];
      const auto& p = ref_rows[i][m];
      TableCell c;
      if (!target) {
        c = bias_cell(t.columns[m], mr.marginal, p, b.R, b.R);
      } else if (mr.conditional) {
        c = bias_cell(t.columns[m], *mr.conditional, p, mr.conditioning_count, b.R);
      } else {
        c = absent_cell(t.columns[m], p, b.R);
      }
      c.seconds = secs;
      row.cells.push_back(std::move(c));
    }
    if (target) {
      t.notes.push_back(e.family + " " + e.key + ": group " + std::to_string(*target + 1) +
                        " selected in " +
                        std::to_string(report.methods.front().conditioning_count) + " of " +
                        std::to_string(b.R) + " replications");
    }
    t.rows.push_back(std::move(row));
  }
  t.seconds = seconds_since(start);
  t.notes.push_back("n = 40 per group, B = 80, R = " + std::to_string(b.R) + ", seed " +
                    std::to_string(o.seed) + " + row index");
  t.notes.push_back("tolerance = 4 sqrt(reference MSE) / sqrt(replications used) + 0.005");
  return t;
}

std::vector<BuiltinEntry> main_study() {
  std::vector<BuiltinEntry> out;
  for (const char* f : {"S1", "S2", "S3", "S4"}) {
    for (auto& e : builtin_family(f)) out.push_back(std::move(e));
  }
  return out;
}

ReproducedTable toy_table(const ReproduceOptions& o) {
  const auto b = budget(o);
  ReproducedTable t;
  t.name = "toy";
  t.title = "Traditional estimator, two arms, theta = (0.9, 1), sigma = (5, 5)";
  t.R = b.R;
  t.columns = {"E(theta_hat)", "bias", "P(select 2)"};
  const auto entries = builtin_family("toy");
  const auto start = Clock::now();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!keep_row(o, e.key)) continue;
    const auto& p = reference::kToy[i];
    EvalConfig cfg;
    cfg.R = b.R;
    cfg.methods = {Traditional{}};
    cfg.seed = o.seed + i;
    cfg.workers = o.workers;
    const auto row_start = Clock::now();
    const auto report = evaluate(e.scenario, cfg);
    const double secs = seconds_since(row_start);
    const auto& s = report.methods.front().marginal;
    const double R = static_cast<double>(b.R);

    TableRow row{"n", e.key, {}};
    TableCell expect{"E(theta_hat)", report.true_theta_max + s.bias, {}, s.bias_se,
                     ReferenceCell{p.expectation, {}}, 4.0 * s.bias_se + kRounding, b.R, secs};
    TableCell bias{"bias", s.bias, s.mse, s.bias_se, ReferenceCell{p.bias, {}},
                   4.0 * s.bias_se + kRounding, b.R, secs};
    const double prob = report.selection_prob[1];
    const double prob_se = std::sqrt(prob * (1.0 - prob) / R);
    TableCell select{"P(select 2)", prob, {}, prob_se, ReferenceCell{p.p_select, {}},
                     4.0 * prob_se + kRounding, b.R, secs};
    row.cells = {expect, bias, select};
    t.rows.push_back(std::move(row));
  }
  t.seconds = seconds_since(start);
  t.notes.push_back("R = " + std::to_string(b.R) + ", seed " + std::to_string(o.seed) +
                    " + row index");
  t.notes.push_back("tolerance = 4 observed SE + 0.005");
  return t;
}

ReproducedTable boot_order_table(const ReproduceOptions& o) {
  const auto b = budget(o);
  ReproducedTable t;
  t.name = "boot_order";
  t.title = "Single, double and triple bootstrap with varying B (S1)";
  t.R = b.R;
  t.triple_R = b.triple_R;
  for (const char* c : reference::kOrderColumns) t.columns.emplace_back(c);
  const auto entries = builtin_family("S1");
  const std::vector<Method> low = parse_method_list("pb1,pb2,nb1,nb2");
  const std::vector<Method> triple = parse_method_list("pb3,nb3");
  // Positions of the low/triple results within the six columns.
  constexpr std::array<std::size_t, 4> low_at = {0, 1, 3, 4};
  constexpr std::array<std::size_t, 2> triple_at = {2, 5};

  const auto start = Clock::now();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < reference::kOrderB.size(); ++j) {
      const unsigned B = reference::kOrderB[j];
      const std::string key = entries[i].key + " B=" + std::to_string(B);
      if (!keep_row(o, key)) continue;
      const auto& ref_row = reference::kBootOrder[i][j];
      std::vector<TableCell> cells(6);
      for (std::size_t c = 0; c < 6; ++c) {
        cells[c].column = t.columns[c];
        if (ref_row[c].mse >= 0) cells[c].reference = ReferenceCell{ref_row[c].bias, ref_row[c].mse};
      }

      EvalConfig cfg;
      cfg.R = b.R;
      cfg.B = B;
      cfg.methods = low;
      cfg.seed = o.seed + i * reference::kOrderB.size() + j;
      cfg.workers = o.workers;
      auto t0 = Clock::now();
      const auto report = evaluate(entries[i].scenario, cfg);
      double secs = seconds_since(t0);
      for (std::size_t m = 0; m < low.size(); ++m) {
        const auto at = low_at[m];
        cells[at] = bias_cell(t.columns[at], report.methods[m].marginal, ref_row[at], b.R, b.R);
        cells[at].seconds = secs;
      }
      if (ref_row[2].mse >= 0 && b.triple_R > 0) {
        cfg.R = b.triple_R;
        cfg.methods = triple;
        t0 = Clock::now();
        const auto tr = evaluate(entries[i].scenario, cfg);
        secs = seconds_since(t0);
        for (std::size_t m = 0; m < triple.size(); ++m) {
          const auto at = triple_at[m];
          cells[at] = bias_cell(t.columns[at], tr.methods[m].marginal, ref_row[at],
                                b.triple_R, b.triple_R);
          cells[at].seconds = secs;
        }
      }
      t.rows.push_back({"S1", key, std::move(cells)});
    }
  }
  t.seconds = seconds_since(start);
  t.notes.push_back("single/double columns R = " + std::to_string(b.R) +
                    ", triple columns R = " + std::to_string(b.triple_R));
  t.notes.push_back("triple bootstrap is not run for B in {500, 1000}");
  t.notes.push_back("tolerance = 4 sqrt(reference MSE) / sqrt(replications used) + 0.005");
  return t;
}

ReproducedTable award5_table(const ReproduceOptions& o) {
  ReproducedTable t;
  t.name = "award5";
  t.title = "AWARD-5 Stage 1, response mean of the selected dose";
  t.columns = {"estimate"};
  const Dataset data = award5_dataset();
  const rng::StreamPath root(o.seed, 0, rng::Domain::Bootstrap);
  // Half-widths around the reference values; bootstrap noise at B = 1000
  // plus their rounding.
  constexpr std::array<double, 4> tolerance = {kRounding, 0.03, 0.04, 0.04};
  const auto start = Clock::now();
  for (std::size_t i = 0; i < reference::kAward5.size(); ++i) {
    const auto& p = reference::kAward5[i];
    if (!keep_row(o, p.method)) continue;
    const auto t0 = Clock::now();
    const auto est = run_estimator(data, parse_method(p.method), 1000, root, o.workers);
    TableCell c;
    c.column = "estimate";
    c.observed = est.value;
    c.reference = ReferenceCell{p.value, {}};
    c.tolerance = tolerance[i];
    c.R = 1;
    c.seconds = seconds_since(t0);
    t.rows.push_back({"AWARD-5", p.method, {c}});
    if (p.seconds >= 0) {
      std::ostringstream note;
      note << p.method << ": " << c.seconds << " s here, " << p.seconds << " s reference";
      t.notes.push_back(note.str());
    }
  }
  t.seconds = seconds_since(start);
  t.R = 1;
  t.notes.push_back("B = 1000, seed " + std::to_string(o.seed));
  return t;
}

std::string opt(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string();
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

std::optional<bool> within(const TableCell& c) {
  if (!c.observed || !c.reference || !c.tolerance) return std::nullopt;
  return std::abs(*c.observed - c.reference->value) <= *c.tolerance;
}

}  // namespace

std::vector<std::string> table_names() {
  return {"toy", "marginal", "conditional", "four_arm", "boot_order", "award5"};
}

Dataset award5_dataset() {
  const std::vector<GroupSummary> groups = {
      {"Dulaglutide 0.25 mg", 13, 0.82, 0.55}, {"Dulaglutide 0.5 mg", 16, 0.95, 0.42},
      {"Dulaglutide 0.75 mg", 20, 0.93, 0.59}, {"Dulaglutide 1 mg", 8, 1.00, 0.40},
      {"Dulaglutide 1.5 mg", 18, 1.33, 0.67},  {"Dulaglutide 2 mg", 24, 1.28, 0.49},
      {"Dulaglutide 3 mg", 10, 1.00, 0.42},
  };
  return Dataset::summary_level(groups);
}

ReproducedTable reproduce_table(const std::string& name, const ReproduceOptions& options) {
  if (options.R && *options.R < 1) throw ValidationError("R must be >= 1");
  if (name == "toy") return toy_table(options);
  if (name == "marginal") {
    return nine_column_table(name, "Marginal bias (MSE), three arms", main_study(),
                             reference::kMarginal, std::nullopt, options);
  }
  if (name == "conditional") {
    return nine_column_table(name, "Bias (MSE) conditional on group 3 being selected",
                             main_study(), reference::kConditional, std::size_t{2}, options);
  }
  if (name == "four_arm") {
    return nine_column_table(name, "Marginal bias (MSE), four arms", builtin_family("four_arm"),
                             reference::kFourArm, std::nullopt, options);
  }
  if (name == "boot_order") return boot_order_table(options);
  if (name == "award5") return award5_table(options);
  throw ValidationError("unknown table '" + name +
                        "' (expected toy, marginal, conditional, four_arm, boot_order or award5)");
}

std::string table_csv(const ReproducedTable& table) {
  std::ostringstream os;
  os << "table,group,key,column,R,observed,observed_mse,observed_se,reference,reference_mse,abs_diff,"
        "abs_diff_mse,tolerance,within_tolerance\n";
  for (const auto& row : table.rows) {
    for (const auto& c : row.cells) {
      os << table.name << ",\"" << row.group << "\",\"" << row.key << "\"," << c.column << ','
         << c.R << ',' << opt(c.observed) << ',' << opt(c.observed_mse) << ','
         << opt(c.observed_se) << ',';
      if (c.reference) {
        os << io::format_double(c.reference->value) << ',' << opt(c.reference->mse) << ',';
      } else {
        os << ",,";
      }
      if (c.reference && c.observed) {
        os << io::format_double(std::abs(*c.observed - c.reference->value));
      }
      os << ',';
      if (c.reference && c.reference->mse && c.observed_mse) {
        os << io::format_double(std::abs(*c.observed_mse - *c.reference->mse));
      }
      os << ',' << opt(c.tolerance) << ',';
      if (auto w = within(c)) os << (*w ? "yes" : "no");
      os << '\n';
    }
  }
  return os.str();
}

std::string table_markdown(const ReproducedTable& table) {
  std::ostringstream os;
  os << "## " << table.name << ": " << table.title << "\n\n";
  os << "Each cell: observed / reference. `!` marks a cell outside its tolerance.\n\n";
  os << "| | |";
  for (const auto& c : table.columns) os << ' ' << c << " |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << "---|";
  os << '\n';
  for (const auto& row : table.rows) {
    os << "| " << row.group << " | " << row.key << " |";
    for (const auto& c : row.cells) {
      os << ' ';
      if (c.observed) {
        os << fixed(*c.observed, 4);
        if (c.observed_mse && c.reference && c.reference->mse) os << " (" << fixed(*c.observed_mse, 4) << ')';
      } else {
        os << '-';
      }
      if (c.reference) {
        os << " / " << fixed(c.reference->value, 2);
        if (c.reference->mse) os << " (" << fixed(*c.reference->mse, 2) << ')';
      }
      if (auto w = within(c); w && !*w) os << " !";
      os << " |";
    }
    os << '\n';
  }
  os << '\n';
  for (const auto& n : table.notes) os << "- " << n << '\n';
  os << "- wall time " << fixed(table.seconds, 2) << " s\n";
  return os.str();
}

}  // namespace selbias
