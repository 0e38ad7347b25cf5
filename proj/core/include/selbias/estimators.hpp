#pragma once

#include <cstddef>

#include "selbias/model.hpp"

namespace selbias {

double group_mean(const GroupObservations& group);
double group_mean(const GroupSummary& group);
double group_mean(const Dataset& data, std::size_t group);

// Sample variance (denominator n - 1). Requires n >= 2.
double group_variance(const GroupObservations& group);

// Max of the group means; trace.selected_index is the argmax, lowest index on
// ties.
Estimate traditional_max(const Dataset& data);

// Index of the largest group mean, lowest index on ties.
std::size_t argmax_group(const Dataset& data);

// Subject level: mean of all pooled observations. Summary level: n-weighted
// mean of the group means.
double pooled_mean(const Dataset& data);

// Unweighted average over groups of the per-group sample variance (sd^2 for
// summaries). Throws PreconditionError for a subject-level group with n < 2.
double avg_variance(const Dataset& data);

struct ShrinkageCoefficient {
  double c = 0.0;       // -inf when every group mean coincides
  double c_plus = 0.0;  // max(0, c)
};

// C = 1 - (I - 1) * avg_variance / sum_i n_i (mean_i - pooled)^2.
// Requires I >= 2.
ShrinkageCoefficient shrinkage_coefficient(const Dataset& data);

// C+ * max_mean + (1 - C+) * pooled_mean.
Estimate shrinkage_estimate(const Dataset& data);

// Shrinkage combination with base.value substituted for the max of means.
// C+ is computed from `data` exactly as in shrinkage_estimate.
Estimate hybrid_estimate(const Dataset& data, const Estimate& base);

// Leave-one-out Jackknife m * theta_hat - (m - 1) * mean_j theta_hat(X_{-j}).
// Row: X_{-j} drops the j-th observation of every group, m = n (all groups
// must have the same size n). Observation: X_{-j} drops one observation,
// j runs over all N = sum n_i, m = N.
// Subject-level data only; every group needs n_i >= 2.
Estimate jackknife_estimate(const Dataset& data,
                            JackknifeDeletion deletion = JackknifeDeletion::Row);

}  // namespace selbias
