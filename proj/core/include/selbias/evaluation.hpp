#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selbias/model.hpp"
#include "selbias/scenarios.hpp"

namespace selbias {

struct EvalConfig {
  std::uint64_t R = 10'000;
  std::uint32_t B = 80;
  std::vector<Method> methods;
  std::uint64_t seed = 0;
  std::optional<std::size_t> conditional_target;  // 0-based group index
  unsigned workers = 1;
  // Replications [first_replication, first_replication + R). Lets a long run
  // be split into chunks that agree with the full run.
  std::uint64_t first_replication = 0;
};

void validate(const EvalConfig& config, const Scenario& scenario);

struct CellStats {
  double bias = 0.0;
  double mse = 0.0;
  double bias_se = 0.0;  // sd of the errors / sqrt(count)
  double mse_se = 0.0;   // sd of the squared errors / sqrt(count)
  std::uint64_t count = 0;
};

struct MethodReport {
  std::string name;
  CellStats marginal;
  std::optional<CellStats> conditional;  // absent when conditioning_count == 0
  std::uint64_t conditioning_count = 0;
};

struct EvalReport {
  std::string scenario_name;
  double true_theta_max = 0.0;
  std::uint64_t R = 0;
  std::uint32_t B = 0;
  std::optional<std::size_t> conditional_target;
  std::vector<MethodReport> methods;
  std::vector<std::uint64_t> selection_count;
  std::vector<double> selection_prob;
};

struct ReplicationResult {
  std::vector<Estimate> estimates;  // one per method, in order
  std::size_t selected_index = 0;   // argmax of the traditional estimator
};

// Draws the replication-th dataset of the scenario and runs every method on
// it. Bootstrap streams are rooted at (seed, replication), shared by all
// methods.
ReplicationResult run_replication(const Scenario& scenario, std::span<const Method> methods,
                                  std::uint32_t B, std::uint64_t seed, std::uint64_t replication);

// Bias/MSE summary from per-replication errors (estimate - truth). MSE is
// accumulated as bias^2 + mean squared deviation, so MSE >= bias^2 holds
// exactly.
CellStats summarize_errors(std::span<const double> errors);

EvalReport evaluate(const Scenario& scenario, const EvalConfig& config);

// CSV with one row per method, full double precision.
std::string report_csv(const EvalReport& report);
// group,selection_count,selection_prob
std::string selection_csv(const EvalReport& report);
// Aligned markdown table, 4 decimals.
std::string report_markdown(const EvalReport& report);

}  // namespace selbias
