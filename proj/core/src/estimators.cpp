#include "selbias/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "selbias/error.hpp"

namespace selbias {

double group_mean(const GroupObservations& group) {
  double sum = 0.0;
  for (double v : group.values) sum += v;
  return sum / static_cast<double>(group.values.size());
}

double group_mean(const GroupSummary& group) { return group.mean; }

double group_mean(const Dataset& data, std::size_t group) {
  return data.is_subject_level() ? group_mean(data.subjects()[group])
                                 : group_mean(data.summaries()[group]);
}

double group_variance(const GroupObservations& group) {
  const auto n = group.values.size();
  if (n < 2) {
    throw PreconditionError("group " + group.label + " has n = 1; a sample variance needs n >= 2");
  }
  const double m = group_mean(group);
  double ss = 0.0;
  for (double v : group.values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(n - 1);
}

std::size_t argmax_group(const Dataset& data) {
  std::size_t best = 0;
  double best_mean = group_mean(data, 0);
  for (std::size_t i = 1; i < data.group_count(); ++i) {
    const double m = group_mean(data, i);
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

Estimate traditional_max(const Dataset& data) {
  const std::size_t best = argmax_group(data);
  const double value = group_mean(data, best);
  EstimateTrace trace;
  trace.raw = value;
  trace.selected_index = best;
  return Estimate{value, std::move(trace)};
}

double pooled_mean(const Dataset& data) {
  if (data.is_subject_level()) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& g : data.subjects()) {
      for (double v : g.values) sum += v;
      count += g.values.size();
    }
    return sum / static_cast<double>(count);
  }
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& g : data.summaries()) {
    weighted += static_cast<double>(g.n) * g.mean;
    total += static_cast<double>(g.n);
  }
  return weighted / total;
}

double avg_variance(const Dataset& data) {
  double sum = 0.0;
  if (data.is_subject_level()) {
    for (const auto& g : data.subjects()) sum += group_variance(g);
  } else {
    for (const auto& g : data.summaries()) sum += g.sd * g.sd;
  }
  return sum / static_cast<double>(data.group_count());
}

ShrinkageCoefficient shrinkage_coefficient(const Dataset& data) {
  const std::size_t groups = data.group_count();
  if (groups < 2) throw PreconditionError("shrinkage requires >= 2 groups");
  const double pooled = pooled_mean(data);
  double spread = 0.0;
  for (std::size_t i = 0; i < groups; ++i) {
    const double d = group_mean(data, i) - pooled;
    spread += static_cast<double>(data.group_size(i)) * d * d;
  }
  const double variance = avg_variance(data);
  if (!(spread > 0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  const double c = 1.0 - static_cast<double>(groups - 1) * variance / spread;
  return {c, std::max(0.0, c)};
}

namespace {

Estimate shrink_towards_pooled(const Dataset& data, double value, EstimateTrace trace) {
  const auto coef = shrinkage_coefficient(data);
  const double pooled = pooled_mean(data);
  trace.shrink_c = coef.c;
  trace.shrink_c_plus = coef.c_plus;
  return Estimate{coef.c_plus * value + (1.0 - coef.c_plus) * pooled, std::move(trace)};
}

}  // namespace

Estimate shrinkage_estimate(const Dataset& data) {
  auto base = traditional_max(data);
  return shrink_towards_pooled(data, base.value, std::move(*base.trace));
}

Estimate hybrid_estimate(const Dataset& data, const Estimate& base) {
  EstimateTrace trace;
  if (base.trace) {
    trace = *base.trace;
  } else {
    const auto t = traditional_max(data);
    trace.raw = t.value;
    trace.selected_index = t.trace->selected_index;
  }
  return shrink_towards_pooled(data, base.value, std::move(trace));
}

Estimate jackknife_estimate(const Dataset& data, JackknifeDeletion deletion) {
  if (!data.is_subject_level()) throw PreconditionError("jackknife requires subject-level data");
  const auto& groups = data.subjects();
  for (const auto& g : groups) {
    if (g.values.size() < 2) {
      throw PreconditionError("cannot delete sole observation of group " + g.label);
    }
  }
  const bool rows = deletion == JackknifeDeletion::Row;
  if (rows) {
    for (const auto& g : groups) {
      if (g.values.size() != groups.front().values.size()) {
        throw PreconditionError(
            "jk deletes one row across groups and needs equal group sizes; use --method jkn");
      }
    }
  }

  std::vector<double> means(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) means[i] = group_mean(groups[i]);

  // Largest and second-largest mean, for "max over the other groups".
  std::size_t top = 0;
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[top]) top = i;
  }
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i != top) second = std::max(second, means[i]);
  }
  const double theta = means[top];

  // theta_JK = theta - (m - 1) * mean_j [theta(X_{-j}) - theta]; the deviation
  // form keeps the I = 1 case exact up to rounding of the deviations.
  // mean_i(X_{-j}) - theta for observation x of group i:
  const auto loo = [&](std::size_t i, double x) {
    return (means[i] - theta) + (means[i] - x) / static_cast<double>(groups[i].values.size() - 1);
  };
  double deviation_sum = 0.0;
  double m = 0.0;
  if (rows) {
    const std::size_t n = groups.front().values.size();
    for (std::size_t j = 0; j < n; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < groups.size(); ++i) best = std::max(best, loo(i, groups[i].values[j]));
      deviation_sum += best;
    }
    m = static_cast<double>(n);
  } else {
    std::size_t total = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const double others = i == top ? second : theta;
      for (double x : groups[i].values) deviation_sum += std::max(loo(i, x), others - theta);
      total += groups[i].values.size();
    }
    m = static_cast<double>(total);
  }
  EstimateTrace trace;
  trace.raw = theta;
  trace.selected_index = top;
  const double bias = (m - 1.0) * deviation_sum / m;
  trace.bias_estimates.push_back(bias);
  return Estimate{theta - bias, std::move(trace)};
}

}  // namespace selbias
