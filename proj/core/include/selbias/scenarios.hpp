#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "selbias/model.hpp"
#include "selbias/rng.hpp"

namespace selbias {

struct NormalGen {
  double theta = 0.0;
  double sigma = 1.0;
  friend bool operator==(const NormalGen&, const NormalGen&) = default;
};

// With probability w an observation comes from a Gamma matched to
// (theta, sigma), otherwise from Normal(theta, sigma).
struct GammaNormalMix {
  double theta = 1.0;
  double sigma = 1.0;
  double w = 0.0;
  friend bool operator==(const GammaNormalMix&, const GammaNormalMix&) = default;
};

// Same with a Uniform matched to (theta, sigma) as the outlier component.
struct UniformNormalMix {
  double theta = 0.0;
  double sigma = 1.0;
  double w = 0.0;
  friend bool operator==(const UniformNormalMix&, const UniformNormalMix&) = default;
};

using GroupGenerator = std::variant<NormalGen, GammaNormalMix, UniformNormalMix>;

double generator_theta(const GroupGenerator& gen);
double generator_sigma(const GroupGenerator& gen);
void validate(const GroupGenerator& gen);

struct GammaParams {
  double shape;
  double scale;
};
struct UniformParams {
  double low;
  double high;
};

// shape = theta^2 / sigma^2, scale = sigma^2 / theta. Requires theta > 0.
GammaParams gamma_params(double theta, double sigma);
// theta -/+ sigma * sqrt(3).
UniformParams uniform_params(double theta, double sigma);

// Marsaglia-Tsang, with the U^(1/a) boost for shape < 1.
double draw_gamma(rng::RngStream& stream, double shape, double scale);

void draw_group(const GroupGenerator& gen, std::int64_t n, rng::RngStream& stream,
                std::vector<double>& out);
std::vector<double> draw_group(const GroupGenerator& gen, std::int64_t n, rng::RngStream& stream);

struct Scenario {
  std::string name;
  std::vector<GroupGenerator> generators;
  std::vector<std::int64_t> n_per_group;

  std::size_t group_count() const noexcept { return generators.size(); }
  double true_theta_max() const;
};

void validate(const Scenario& scenario);

// Subject-level dataset for one replication; group g reads the stream
// (path, g). Labels are "G1", "G2", ...
Dataset draw_dataset(const Scenario& scenario, const rng::StreamPath& path);

// Builtin families. `family` is one of toy, S1, S2, S3, S4, four_arm.
struct BuiltinEntry {
  std::string family;
  std::string key;  // the varying parameter as printed in tables, e.g. "(1, 1, 1.2)", "0.3", "40"
  Scenario scenario;
};

std::vector<BuiltinEntry> builtin_scenarios();
std::vector<BuiltinEntry> builtin_family(const std::string& family);

}  // namespace selbias
