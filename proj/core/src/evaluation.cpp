#include "selbias/evaluation.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "selbias/bootstrap.hpp"
#include "selbias/error.hpp"
#include "selbias/estimate.hpp"
#include "selbias/estimators.hpp"
#include "selbias/io.hpp"
#include "selbias/parallel.hpp"

namespace selbias {

void validate(const EvalConfig& config, const Scenario& scenario) {
  validate(scenario);
  if (config.R < 1) throw ValidationError("R must be >= 1");
  if (config.B < 1) throw ValidationError("B must be >= 1");
  if (config.methods.empty()) throw ValidationError("no methods requested");
  for (const auto& m : config.methods) validate(EstimatorSpec{m, config.B, config.seed});
  if (config.conditional_target && *config.conditional_target >= scenario.group_count()) {
    throw ValidationError("conditional target group " +
                          std::to_string(*config.conditional_target + 1) + " out of range (I = " +
                          std::to_string(scenario.group_count()) + ")");
  }
}

namespace {

// Lower orders of a nonparametric tree equal standalone lower-order runs bit
// for bit, so one tree per replication serves every NB column. Parametric
// trees use a leaf shortcut that differs by depth, so they are cached per
// order only.
Estimate lower_order(const Estimate& full, int order) {
  Estimate e = full;
  auto& t = *e.trace;
  t.bias_estimates.resize(static_cast<std::size_t>(order));
  double v = t.raw;
  for (double b : t.bias_estimates) v = v - b;
  e.value = v;
  return e;
}

}  // namespace

ReplicationResult run_replication(const Scenario& scenario, std::span<const Method> methods,
                                  std::uint32_t B, std::uint64_t seed, std::uint64_t replication) {
  const Dataset data =
      draw_dataset(scenario, rng::StreamPath(seed, replication, rng::Domain::Data));
  const rng::StreamPath root(seed, replication, rng::Domain::Bootstrap);

  int nb_order = 0;
  for (const auto& m : methods) {
    const Bootstrap* b = std::get_if<Bootstrap>(&m);
    if (const auto* h = std::get_if<HybridShrink>(&m)) b = &h->inner;
    if (b && b->sampler == SamplerKind::Nonparametric) nb_order = std::max(nb_order, b->order);
  }
  std::optional<Estimate> nb_tree;
  std::map<int, Estimate> pb_trees;
  auto bootstrap_value = [&](const Bootstrap& b) -> Estimate {
    if (b.sampler == SamplerKind::Nonparametric) {
      if (!nb_tree) {
        nb_tree = corrected_estimate(
            data, BootstrapOptions{nb_order, SamplerKind::Nonparametric, B, 1}, root);
      }
      return lower_order(*nb_tree, b.order);
    }
    auto it = pb_trees.find(b.order);
    if (it == pb_trees.end()) {
      it = pb_trees
               .emplace(b.order, corrected_estimate(
                                     data,
                                     BootstrapOptions{b.order, SamplerKind::ParametricNormal, B, 1},
                                     root))
               .first;
    }
    return it->second;
  };

  ReplicationResult result;
  result.selected_index = argmax_group(data);
  result.estimates.reserve(methods.size());
  for (const auto& m : methods) {
    if (const auto* b = std::get_if<Bootstrap>(&m)) {
      result.estimates.push_back(bootstrap_value(*b));
    } else if (const auto* h = std::get_if<HybridShrink>(&m)) {
      shrinkage_coefficient(data);
      result.estimates.push_back(hybrid_estimate(data, bootstrap_value(h->inner)));
    } else {
      result.estimates.push_back(run_estimator(data, m, B, root, 1));
    }
  }
  return result;
}

CellStats summarize_errors(std::span<const double> errors) {
  CellStats s;
  s.count = errors.size();
  if (errors.empty()) return s;
  const double n = static_cast<double>(errors.size());
  double sum = 0.0;
  for (double e : errors) sum += e;
  s.bias = sum / n;
  double dev2 = 0.0;
  for (double e : errors) dev2 += (e - s.bias) * (e - s.bias);
  s.mse = s.bias * s.bias + dev2 / n;
  if (errors.size() > 1) {
    s.bias_se = std::sqrt(dev2 / (n - 1.0)) / std::sqrt(n);
    // The squared errors average to s.mse up to rounding.
    double sq_dev2 = 0.0;
    for (double e : errors) sq_dev2 += (e * e - s.mse) * (e * e - s.mse);
    s.mse_se = std::sqrt(sq_dev2 / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

EvalReport evaluate(const Scenario& scenario, const EvalConfig& config) {
  validate(config, scenario);
  const std::size_t methods = config.methods.size();
  const std::size_t reps = config.R;
  const double truth = scenario.true_theta_max();

  std::vector<double> errors(reps * methods);
  std::vector<std::size_t> selected(reps);
  parallel_chunks(reps, config.workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto rep = run_replication(scenario, config.methods, config.B, config.seed,
                                       config.first_replication + r);
      selected[r] = rep.selected_index;
      for (std::size_t m = 0; m < methods; ++m) {
        errors[r * methods + m] = rep.estimates[m].value - truth;
      }
    }
  });

  EvalReport report;
  report.scenario_name = scenario.name;
  report.true_theta_max = truth;
  report.R = config.R;
  report.B = config.B;
  report.conditional_target = config.conditional_target;
  report.selection_count.assign(scenario.group_count(), 0);
  for (auto s : selected) ++report.selection_count[s];
  for (auto c : report.selection_count) {
    report.selection_prob.push_back(static_cast<double>(c) / static_cast<double>(reps));
  }

  std::vector<double> column(reps);
  std::vector<double> conditional;
  for (std::size_t m = 0; m < methods; ++m) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = errors[r * methods + m];
    MethodReport mr;
    mr.name = method_name(config.methods[m]);
    mr.marginal = summarize_errors(column);
    if (config.conditional_target) {
      conditional.clear();
      for (std::size_t r = 0; r < reps; ++r) {
        if (selected[r] == *config.conditional_target) conditional.push_back(column[r]);
      }
      mr.conditioning_count = conditional.size();
      if (!conditional.empty()) mr.conditional = summarize_errors(conditional);
    }
    report.methods.push_back(std::move(mr));
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed4(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << x;
  return os.str();
}

}  // namespace

std::string report_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "scenario,method,true_theta_max,R,B,marginal_bias,marginal_mse,marginal_bias_se,"
        "marginal_mse_se,conditional_group,conditioning_count,conditional_bias,"
        "conditional_mse,conditional_bias_se,conditional_mse_se\n";
  for (const auto& m : report.methods) {
    os << csv_field(report.scenario_name) << ',' << m.name << ','
       << io::format_double(report.true_theta_max) << ',' << report.R << ',' << report.B << ','
       << io::format_double(m.marginal.bias) << ',' << io::format_double(m.marginal.mse) << ','
       << io::format_double(m.marginal.bias_se) << ',' << io::format_double(m.marginal.mse_se)
       << ',';
    if (report.conditional_target) {
      os << (*report.conditional_target + 1) << ',' << m.conditioning_count << ',';
      if (m.conditional) {
        os << io::format_double(m.conditional->bias) << ','
           << io::format_double(m.conditional->mse) << ','
           << io::format_double(m.conditional->bias_se) << ','
           << io::format_double(m.conditional->mse_se);
      } else {
        os << ",,,";
      }
    } else {
      os << ",,,,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string selection_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "scenario,group,selection_count,selection_prob\n";
  for (std::size_t g = 0; g < report.selection_count.size(); ++g) {
    os << csv_field(report.scenario_name) << ',' << (g + 1) << ',' << report.selection_count[g]
       << ',' << io::format_double(report.selection_prob[g]) << '\n';
  }
  return os.str();
}

std::string report_markdown(const EvalReport& report) {
  std::ostringstream os;
  os << "### " << report.scenario_name << "\n\n";
  os << "true theta_max = " << fixed4(report.true_theta_max) << ", R = " << report.R
     << ", B = " << report.B << "\n\n";
  const bool cond = report.conditional_target.has_value();
  os << "| method | bias | MSE | bias SE |";
  if (cond) os << " cond. bias | cond. MSE | cond. count |";
  os << "\n|---|---:|---:|---:|";
  if (cond) os << "---:|---:|---:|";
  os << '\n';
  for (const auto& m : report.methods) {
    os << "| " << m.name << " | " << fixed4(m.marginal.bias) << " | " << fixed4(m.marginal.mse)
       << " | " << fixed4(m.marginal.bias_se) << " |";
    if (cond) {
      if (m.conditional) {
        os << ' ' << fixed4(m.conditional->bias) << " | " << fixed4(m.conditional->mse) << " | ";
      } else {
        os << " - | - | ";
      }
      os << m.conditioning_count << " |";
    }
    os << '\n';
  }
  os << "\nselection probability:";
  for (std::size_t g = 0; g < report.selection_prob.size(); ++g) {
    os << " G" << (g + 1) << '=' << fixed4(report.selection_prob[g]);
  }
  os << "\n";
  return os.str();
}

}  // namespace selbias
