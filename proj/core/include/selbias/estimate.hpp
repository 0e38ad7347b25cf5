#pragma once

#include "selbias/model.hpp"
#include "selbias/rng.hpp"

namespace selbias {

// Runs any estimator on `data`. Bootstrap-based methods draw from streams
// rooted at `root`, so two methods sharing a root also share resamples.
Estimate run_estimator(const Dataset& data, const Method& method, std::uint32_t B,
                       const rng::StreamPath& root, unsigned workers = 1);

inline Estimate run_estimator(const Dataset& data, const EstimatorSpec& spec,
                              unsigned workers = 1) {
  return run_estimator(data, spec.method, spec.B,
                       rng::StreamPath(spec.seed, 0, rng::Domain::Bootstrap), workers);
}

}  // namespace selbias
