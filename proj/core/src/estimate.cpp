#include "selbias/estimate.hpp"

#include <cstdlib>
#include <string>

#include "selbias/bootstrap.hpp"
#include "selbias/estimators.hpp"
#include "selbias/parallel.hpp"

namespace selbias {

Estimate run_estimator(const Dataset& data, const Method& method, std::uint32_t B,
                       const rng::StreamPath& root, unsigned workers) {
  if (const auto* b = std::get_if<Bootstrap>(&method)) {
    return corrected_estimate(data, BootstrapOptions{b->order, b->sampler, B, workers}, root);
  }
  if (const auto* h = std::get_if<HybridShrink>(&method)) {
    // Check the shrinkage preconditions before paying for the bootstrap.
    shrinkage_coefficient(data);
    const auto base = corrected_estimate(
        data, BootstrapOptions{h->inner.order, h->inner.sampler, B, workers}, root);
    return hybrid_estimate(data, base);
  }
  if (const auto* j = std::get_if<Jackknife>(&method)) return jackknife_estimate(data, j->deletion);
  if (std::holds_alternative<Shrinkage>(method)) return shrinkage_estimate(data);
  return traditional_max(data);
}

unsigned default_workers(unsigned fallback) {
  if (const char* env = std::getenv("SELBIAS_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

}  // namespace selbias
