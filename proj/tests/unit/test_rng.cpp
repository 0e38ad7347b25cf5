#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "selbias/rng.hpp"

using namespace selbias::rng;

// Known-answer vectors of the Random123 distribution.
TEST(Philox, KnownAnswerZero) {
  const PhiloxCounter out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const PhiloxCounter out = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                          {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const PhiloxCounter out = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                          {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(NormalQuantile, MatchesReferenceValues) {
  // scipy.stats.norm.ppf
  const std::vector<std::pair<double, double>> cases = {
      {1e-300, -37.0470962993612},       {1e-10, -6.361340902404056},
      {0.001, -3.090232306167813},       {0.02425, -1.972961051311885},
      {0.1, -1.2815515655446004},        {0.3, -0.5244005127080409},
      {0.5, 0.0},                        {0.7, 0.5244005127080407},
      {0.975, 1.959963984540054},        {0.999999, 4.753424308817087},
  };
  for (const auto& [p, x] : cases) {
    EXPECT_NEAR(normal_quantile(p), x, 1e-14 * (1.0 + std::abs(x))) << "p = " << p;
  }
}

TEST(NormalQuantile, Edges) {
  EXPECT_EQ(normal_quantile(0.0), -INFINITY);
  EXPECT_EQ(normal_quantile(1.0), INFINITY);
  EXPECT_TRUE(std::isnan(normal_quantile(-0.1)));
  EXPECT_TRUE(std::isnan(normal_quantile(NAN)));
}

TEST(NormalQuantile, Symmetric) {
  for (double p = 0.001; p < 0.5; p += 0.0137) {
    EXPECT_NEAR(normal_quantile(p), -normal_quantile(1.0 - p), 1e-12);
  }
}

TEST(RngStream, PureFunctionOfAddress) {
  const StreamPath path(42, 7, Domain::Bootstrap);
  RngStream a(path, 3), b(path, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u32(), b.next_u32());
}

TEST(RngStream, DistinctAddressesDiffer) {
  const StreamPath root(42, 7, Domain::Bootstrap);
  std::vector<StreamPath> paths = {root,
                                   StreamPath(43, 7, Domain::Bootstrap),
                                   StreamPath(42, 8, Domain::Bootstrap),
                                   StreamPath(42, 7, Domain::Data),
                                   root.child(0),
                                   root.child(1),
                                   root.child(0).child(0),
                                   root.child(0).child(1),
                                   root.child(1).child(0),
                                   root.child(0).child(0).child(0)};
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& p : paths) {
    for (std::uint32_t g = 0; g < 3; ++g) {
      RngStream s(p, g);
      std::vector<std::uint32_t> head(8);
      for (auto& x : head) x = s.next_u32();
      EXPECT_TRUE(seen.insert(head).second);
    }
  }
}

TEST(StreamPath, DepthLimits) {
  const StreamPath root(1, 0, Domain::Bootstrap);
  const auto deep = root.child(0).child(0).child(0);
  EXPECT_EQ(deep.depth(), 3);
  EXPECT_THROW(deep.child(0), std::out_of_range);
  EXPECT_NO_THROW(root.child(0).child(StreamPath::kMaxNestedIndex));
  EXPECT_THROW(root.child(0).child(StreamPath::kMaxNestedIndex + 1), std::out_of_range);
}

TEST(RngStream, UniformInOpenInterval) {
  RngStream s(StreamPath(9, 0, Domain::Auxiliary), 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RngStream, NormalMoments) {
  RngStream s(StreamPath(10, 0, Domain::Auxiliary), 0);
  const int n = 200000;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_normal();
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(RngStream, BoundedIntegersUniform) {
  RngStream s(StreamPath(11, 0, Domain::Auxiliary), 0);
  const std::uint32_t bound = 7;
  std::vector<int> counts(bound);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = s.next_below(bound);
    ASSERT_LT(k, bound);
    ++counts[k];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi2, 22.46);  // chi-square(6) upper 0.001 quantile
  EXPECT_EQ(s.next_below(1), 0u);
}
