#include <gtest/gtest.h>

#include <cmath>

#include "selbias/bootstrap.hpp"
#include "selbias/error.hpp"
#include "selbias/oracle.hpp"
#include "selbias/rng.hpp"

using namespace selbias;

namespace {

Dataset groups(std::vector<std::vector<double>> values) {
  Dataset::Subjects g;
  for (std::size_t i = 0; i < values.size(); ++i) {
    g.push_back({"g" + std::to_string(i + 1), std::move(values[i])});
  }
  return Dataset::subject_level(std::move(g));
}

}  // namespace

// Reference values from an independent ordered-tuple enumeration
// (tests/oracle/brute_force.py).
TEST(ExactNb, LevelOneReferenceValues) {
  struct Case {
    std::vector<std::vector<double>> data;
    double bias;
    double corrected;
  };
  const std::vector<Case> cases = {
      {{{0, 2}, {3, 5}}, 0.0, 4.0},
      {{{0, 2}, {1, 1.5}}, 3.0 / 16, 1.0625},
      {{{0, 1, 3}, {0.5, 2}}, 23.0 / 72, 73.0 / 72},
      {{{1, 2}, {0, 3}, {1.5, 1.5}}, 15.0 / 32, 33.0 / 32},
  };
  for (const auto& c : cases) {
    const auto r = exact_nb_bias(groups(c.data), 1);
    EXPECT_NEAR(r.bias_level1, c.bias, 1e-14);
    EXPECT_NEAR(r.corrected, c.corrected, 1e-14);
    EXPECT_NEAR(r.probability_mass, 1.0, 1e-12);
  }
}

TEST(ExactNb, LevelTwoReferenceValues) {
  auto r = exact_nb_bias(groups({{0, 2}, {1, 1.5}}), 2);
  EXPECT_NEAR(r.bias_level1, 3.0 / 16, 1e-14);
  EXPECT_NEAR(r.bias_level2, 9.0 / 32, 1e-14);
  EXPECT_NEAR(r.corrected, 25.0 / 32, 1e-14);
  r = exact_nb_bias(groups({{0, 1, 3}, {0.5, 2}}), 2);
  EXPECT_NEAR(r.bias_level2, 77.0 / 144, 1e-13);
  EXPECT_NEAR(r.corrected, 23.0 / 48, 1e-13);
  EXPECT_NEAR(r.probability_mass, 1.0, 1e-12);
}

TEST(ExactNb, SingleGroupIsUnbiased) {
  for (const auto& v : {std::vector<double>{0, 2}, {1.5, -2, 7}, {3, 3, 4, 9, 0.25}}) {
    const auto r = exact_nb_bias(groups({v}), 1);
    EXPECT_LE(std::abs(r.bias_level1), 1e-12);
  }
}

TEST(ExactNb, ConstantGroupsHaveNoBias) {
  const auto r = exact_nb_bias(groups({{1, 1}, {2, 2, 2}}), 2);
  EXPECT_EQ(r.bias_level1, 0.0);
  EXPECT_EQ(r.bias_level2, 0.0);
  EXPECT_EQ(r.corrected, 2.0);
}

TEST(ExactNb, RejectsLargeInstances) {
  std::vector<double> big(12);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
  EXPECT_THROW(exact_nb_bias(groups({big, big, big}), 2), BudgetError);
  EXPECT_THROW(exact_nb_bias(groups({{1, 2}}), 3), ValidationError);
  EXPECT_THROW(exact_nb_bias(Dataset::summary_level({{"s", 3, 1, 1}}), 1), PreconditionError);
}

TEST(ExactNb, MonteCarloAgrees) {
  const auto d = groups({{0, 1, 3}, {0.5, 2}, {1.0, 1.75}});
  const auto exact = exact_nb_bias(d, 1);
  const std::uint32_t B = 100000;
  const auto mc = corrected_estimate(d, 1, SamplerKind::Nonparametric, B, 8);
  const double se = std::sqrt(exact.variance_level1 / B);
  EXPECT_LE(std::abs(mc.trace->bias_estimates[0] - exact.bias_level1), 3 * se);
}
