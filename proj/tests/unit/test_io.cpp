#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "selbias/error.hpp"
#include "selbias/io.hpp"
#include "selbias/rng.hpp"
#include "selbias/tables.hpp"

using namespace selbias;

namespace {

Dataset parse(const std::string& text, io::DataFormat f = io::DataFormat::Auto) {
  std::istringstream in(text);
  return io::read_dataset(in, f);
}

Scenario scenario(const std::string& text) {
  std::istringstream in(text);
  return io::parse_scenario(in);
}

std::size_t line_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(ReadDataset, SubjectLevel) {
  const auto d = parse("# comment\ngroup,value\nA,1.0\nB,0.5\nA,2\n\n");
  ASSERT_TRUE(d.is_subject_level());
  ASSERT_EQ(d.group_count(), 2u);
  EXPECT_EQ(d.subjects()[0].values, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(d.label(1), "B");
}

TEST(ReadDataset, SummaryLevelWithQuotes) {
  const auto d = parse("group,n,mean,sd\n\"Dose, 1 mg\",13,0.82,0.55\n");
  ASSERT_TRUE(d.is_summary_level());
  EXPECT_EQ(d.summaries()[0], (GroupSummary{"Dose, 1 mg", 13, 0.82, 0.55}));
}

TEST(ReadDataset, Errors) {
  EXPECT_EQ(line_of("group,value\nA,1\nB,abc\n"), 3u);
  EXPECT_EQ(line_of("group,value\nA,1,2\n"), 2u);
  EXPECT_EQ(line_of("foo,bar\n"), 1u);
  EXPECT_EQ(line_of("group,n,mean,sd\nA,1.5,0,1\n"), 2u);
  EXPECT_EQ(line_of("group,value\nA,nan\n"), 2u);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("group,value\nA,1\n", io::DataFormat::Summary), ParseError);
  EXPECT_THROW(parse("group,n,mean,sd\nA,0,1,1\n"), ParseError);
  EXPECT_THROW(parse("group,n,mean,sd\nA,3,1,-1\n"), ValidationError);
  EXPECT_THROW(io::read_dataset_file("/nonexistent/file.csv"), Error);
}

TEST(WriteDataset, RoundTripsBitForBit) {
  rng::RngStream s(rng::StreamPath(1, 0, rng::Domain::Auxiliary), 0);
  Dataset::Subjects g(3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i].label = "g" + std::to_string(i);
    for (int j = 0; j < 50; ++j) {
      std::uint64_t bits = (std::uint64_t{s.next_u32()} << 32) | s.next_u32();
      double x;
      std::memcpy(&x, &bits, sizeof x);
      if (!std::isfinite(x)) x = s.next_normal();
      g[i].values.push_back(x);
    }
  }
  g[0].values.push_back(std::numeric_limits<double>::denorm_min());
  g[0].values.push_back(-0.0);
  g[0].values.push_back(std::numeric_limits<double>::max());
  const auto d = Dataset::subject_level(g);
  const auto back = parse(io::write_dataset(d));
  ASSERT_EQ(back.group_count(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = d.subjects()[i].values;
    const auto& b = back.subjects()[i].values;
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
  }
  const auto award = award5_dataset();
  EXPECT_EQ(parse(io::write_dataset(award)), award);
}

TEST(FormatDouble, Shortest) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::parse_double("0.30000000000000004"), 0.1 + 0.2);
  EXPECT_THROW(io::parse_double("1.5x"), ParseError);
}

TEST(Scenario, ParseAndBroadcast) {
  const auto sc = scenario(
      "# demo\nname = my run\ntheta = 1, 1.1, 1.2\nsigma = 5\nn = 30\n"
      "distribution = gamma_mix\nw = 0.3\n");
  EXPECT_EQ(sc.name, "my run");
  ASSERT_EQ(sc.group_count(), 3u);
  EXPECT_EQ(sc.generators[1], GroupGenerator(GammaNormalMix{1.1, 5, 0.3}));
  EXPECT_EQ(sc.n_per_group, (std::vector<std::int64_t>{30, 30, 30}));
}

TEST(Scenario, Defaults) {
  const auto sc = scenario("theta = 0, 2\n");
  EXPECT_EQ(sc.generators[1], GroupGenerator(NormalGen{2, 1}));
  EXPECT_EQ(sc.n_per_group[0], 40);
}

TEST(Scenario, Errors) {
  EXPECT_THROW(scenario("sigma = 1\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1\nfoo = 2\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1\ntheta = 2\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1, 2\nsigma = 1, 2, 3\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1\ndistribution = cauchy\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1\nsigma = -1\n"), ParseError);
  EXPECT_THROW(scenario("theta = 1 2\n"), ParseError);
  EXPECT_THROW(scenario("theta\n"), ParseError);
}

TEST(Scenario, WriteRoundTrip) {
  for (const auto& e : builtin_scenarios()) {
    const auto back = scenario(io::write_scenario(e.scenario));
    EXPECT_EQ(back.generators, e.scenario.generators) << e.scenario.name;
    EXPECT_EQ(back.n_per_group, e.scenario.n_per_group);
    EXPECT_EQ(back.name, e.scenario.name);
  }
}
