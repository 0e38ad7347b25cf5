#pragma once

#include <cstdint>

#include "selbias/model.hpp"

namespace selbias {

struct EnumerationBudget {
  std::uint64_t max_joint_states = 5'000'000;
};

struct ExactNbResult {
  int level = 1;
  double theta_hat = 0.0;       // max of means of the data
  double bias_level1 = 0.0;     // E*[theta_hat(X*)] - theta_hat(X)
  double bias_level2 = 0.0;     // E*[theta1(X*)] - theta1(X); level 2 only
  double corrected = 0.0;       // exact theta^(level)
  double variance_level1 = 0.0; // Var*[theta_hat(X*)]
  double variance_level2 = 0.0; // Var of theta_hat(X**) over the two-level law; level 2 only
  double probability_mass = 0.0;
  std::uint64_t states_visited = 0;
};

// Exact nonparametric bootstrap bias by enumerating resample multisets with
// multinomial weights, the B -> infinity limit of corrected_estimate with the
// Nonparametric sampler. level is 1 or 2. Throws BudgetError when the number
// of joint states would exceed the budget.
ExactNbResult exact_nb_bias(const Dataset& data, int level, EnumerationBudget budget = {});

}  // namespace selbias
