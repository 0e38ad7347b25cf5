#pragma once

#include <cstdint>

#include "selbias/model.hpp"
#include "selbias/rng.hpp"

namespace selbias {

// One bootstrap replicate of `data`: per group, n_i draws either from
// Normal(mean_i, sd_i) fitted to the group (ParametricNormal) or with
// replacement from its observed values (Nonparametric). Group g draws from the
// stream (path, g). The result is always subject level.
Dataset resample(const Dataset& data, SamplerKind kind, const rng::StreamPath& path);

// Checks the preconditions of an order-k bootstrap with the given sampler.
// Throws PreconditionError with a remediation hint.
void check_bootstrap_preconditions(const Dataset& data, int order, SamplerKind kind);

struct BootstrapOptions {
  int order = 1;
  SamplerKind sampler = SamplerKind::ParametricNormal;
  std::uint32_t B = 80;
  // Threads over the outermost resampling loop. Results do not depend on it.
  unsigned workers = 1;
};

// Recursive order-k bootstrap bias correction:
//   theta^(0) = max of means,
//   theta^(j)(X) = theta^(j-1)(X) - [mean_b theta^(j-1)(X*_b) - theta^(j-1)(X)],
// where every lower order at a node reuses that node's B resamples, so a
// depth-k tree of B + B^2 + ... + B^k resamples yields all orders 0..k at once.
// trace.bias_estimates[j-1] holds the order-j bias estimate at the root.
//
// Parametric leaves (the deepest level, where only the max of means is
// needed) draw each group mean directly from Normal(mean, sd / sqrt(n)),
// which has the same law as averaging n Normal draws.
Estimate corrected_estimate(const Dataset& data, const BootstrapOptions& options,
                            const rng::StreamPath& root);

inline Estimate corrected_estimate(const Dataset& data, int order, SamplerKind kind,
                                   std::uint32_t B, std::uint64_t seed, unsigned workers = 1) {
  return corrected_estimate(data, BootstrapOptions{order, kind, B, workers},
                            rng::StreamPath(seed, 0, rng::Domain::Bootstrap));
}

}  // namespace selbias
