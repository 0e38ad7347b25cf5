#include "selbias/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "selbias/error.hpp"
#include "selbias/estimators.hpp"

namespace selbias {

namespace {

// One resample multiset of a group: counts over the group's distinct values.
struct GroupState {
  double probability;
  double mean;
  std::vector<int> counts;
};

struct Population {
  std::vector<double> values;  // distinct, ascending
  std::vector<int> weights;    // multiplicity in the population
  int n = 0;
};

Population population_of(const std::vector<double>& values) {
  std::map<double, int> tally;
  for (double v : values) ++tally[v];
  Population p;
  for (const auto& [v, c] : tally) {
    p.values.push_back(v);
    p.weights.push_back(c);
  }
  p.n = static_cast<int>(values.size());
  return p;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// C(n + m - 1, m - 1), saturating at the double range.
double composition_count(int n, int m) {
  double c = 1.0;
  for (int i = 1; i < m; ++i) c = c * static_cast<double>(n + i) / static_cast<double>(i);
  return c;
}

// All compositions of pop.n over pop.values with multinomial probabilities
// n! / prod k! * prod (w/n)^k. Values with zero weight are skipped.
std::vector<GroupState> enumerate_group(const Population& pop) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < pop.values.size(); ++i) {
    if (pop.weights[i] > 0) support.push_back(i);
  }
  std::vector<GroupState> states;
  std::vector<int> counts(pop.values.size(), 0);
  const double n_fact = factorial(pop.n);
  const double n = static_cast<double>(pop.n);

  // Recursive distribution of the remaining count over support[pos..].
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    const std::size_t idx = support[pos];
    if (pos + 1 == support.size()) {
      counts[idx] = remaining;
      double prob = n_fact;
      double sum = 0.0;
      for (std::size_t s : support) {
        const int k = counts[s];
        prob *= std::pow(pop.weights[s] / n, k) / factorial(k);
        sum += k * pop.values[s];
      }
      states.push_back({prob, sum / n, counts});
      counts[idx] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      counts[idx] = k;
      self(self, pos + 1, remaining - k);
    }
    counts[idx] = 0;
  };
  recurse(recurse, 0, pop.n);
  return states;
}

struct Moments {
  double mass = 0.0;
  double first = 0.0;   // E[theta_hat]
  double second = 0.0;  // E[theta_hat^2]
};

// Product measure over groups; visit(prob, theta_hat, state indices).
template <class Visit>
void for_each_joint(const std::vector<std::vector<GroupState>>& per_group, Visit&& visit) {
  const std::size_t groups = per_group.size();
  std::vector<std::size_t> idx(groups, 0);
  for (;;) {
    double prob = 1.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < groups; ++g) {
      const auto& s = per_group[g][idx[g]];
      prob *= s.probability;
      best = std::max(best, s.mean);
    }
    visit(prob, best, idx);
    std::size_t g = 0;
    while (g < groups && ++idx[g] == per_group[g].size()) idx[g++] = 0;
    if (g == groups) return;
  }
}

Moments joint_moments(const std::vector<std::vector<GroupState>>& per_group) {
  Moments m;
  for_each_joint(per_group, [&](double prob, double theta, const std::vector<std::size_t>&) {
    m.mass += prob;
    m.first += prob * theta;
    m.second += prob * theta * theta;
  });
  return m;
}

}  // namespace

ExactNbResult exact_nb_bias(const Dataset& data, int level, EnumerationBudget budget) {
  if (level != 1 && level != 2) throw ValidationError("oracle level must be 1 or 2");
  if (!data.is_subject_level()) {
    throw PreconditionError("exact NB enumeration requires subject-level data");
  }
  if (budget.max_joint_states == 0) throw ValidationError("enumeration budget must be > 0");

  std::vector<Population> pops;
  for (const auto& g : data.subjects()) pops.push_back(population_of(g.values));

  // Exact state counts, checked before any enumeration.
  double outer = 1.0;
  for (const auto& p : pops) {
    outer *= composition_count(p.n, static_cast<int>(p.values.size()));
  }
  double total = outer;
  std::vector<std::vector<GroupState>> per_group;
  const auto too_large = [&] {
    throw BudgetError("instance too large to enumerate (" + std::to_string(total) +
                      " joint states, budget " + std::to_string(budget.max_joint_states) + ")");
  };
  if (outer > static_cast<double>(budget.max_joint_states)) too_large();
  for (const auto& p : pops) per_group.push_back(enumerate_group(p));
  if (level == 2) {
    double inner = 1.0;
    for (std::size_t g = 0; g < pops.size(); ++g) {
      double sum = 0.0;
      for (const auto& s : per_group[g]) {
        const auto support = std::count_if(s.counts.begin(), s.counts.end(), [](int c) { return c > 0; });
        sum += composition_count(pops[g].n, static_cast<int>(support));
      }
      inner *= sum;
    }
    total = outer + inner;
    if (total > static_cast<double>(budget.max_joint_states)) too_large();
  }

  ExactNbResult result;
  result.level = level;
  result.theta_hat = traditional_max(data).value;
  const Moments m1 = joint_moments(per_group);
  result.probability_mass = m1.mass;
  result.bias_level1 = m1.first - result.theta_hat;
  result.variance_level1 = std::max(0.0, m1.second - m1.first * m1.first);
  result.states_visited = static_cast<std::uint64_t>(outer);
  const double theta1 = result.theta_hat - result.bias_level1;
  if (level == 1) {
    result.corrected = theta1;
    return result;
  }

  // Level 2: every first-level multiset becomes a resampling population.
  double e_theta1_star = 0.0;
  double e2_first = 0.0;
  double e2_second = 0.0;
  std::vector<std::vector<GroupState>> inner(pops.size());
  for_each_joint(per_group, [&](double prob, double theta_star,
                                const std::vector<std::size_t>& idx) {
    for (std::size_t g = 0; g < pops.size(); ++g) {
      Population child{pops[g].values, per_group[g][idx[g]].counts, pops[g].n};
      inner[g] = enumerate_group(child);
    }
    const Moments mi = joint_moments(inner);
    result.states_visited += [&] {
      std::uint64_t c = 1;
      for (const auto& s : inner) c *= s.size();
      return c;
    }();
    e_theta1_star += prob * (2.0 * theta_star - mi.first);
    e2_first += prob * mi.first;
    e2_second += prob * mi.second;
  });
  result.bias_level2 = e_theta1_star - theta1;
  result.corrected = theta1 - result.bias_level2;
  result.variance_level2 = std::max(0.0, e2_second - e2_first * e2_first);
  return result;
}

}  // namespace selbias
