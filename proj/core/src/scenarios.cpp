#include "selbias/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "selbias/error.hpp"

namespace selbias {

double generator_theta(const GroupGenerator& gen) {
  return std::visit([](const auto& g) { return g.theta; }, gen);
}

double generator_sigma(const GroupGenerator& gen) {
  return std::visit([](const auto& g) { return g.sigma; }, gen);
}

void validate(const GroupGenerator& gen) {
  const double theta = generator_theta(gen);
  const double sigma = generator_sigma(gen);
  if (!std::isfinite(theta)) throw ValidationError("generator theta must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("generator sigma must be >= 0");
  }
  if (const auto* g = std::get_if<GammaNormalMix>(&gen)) {
    if (!(g->w >= 0.0 && g->w <= 1.0)) throw ValidationError("mixture weight w must be in [0, 1]");
    if (!(g->theta > 0.0)) throw ValidationError("gamma mixture requires theta > 0");
    if (!(sigma > 0.0)) throw ValidationError("mixture generators require sigma > 0");
  }
  if (const auto* u = std::get_if<UniformNormalMix>(&gen)) {
    if (!(u->w >= 0.0 && u->w <= 1.0)) throw ValidationError("mixture weight w must be in [0, 1]");
    if (!(sigma > 0.0)) throw ValidationError("mixture generators require sigma > 0");
  }
}

GammaParams gamma_params(double theta, double sigma) {
  if (!(theta > 0.0)) throw ValidationError("gamma moment matching requires theta > 0");
  if (!(sigma > 0.0)) throw ValidationError("gamma moment matching requires sigma > 0");
  const double ratio = theta / sigma;
  return {ratio * ratio, sigma * sigma / theta};
}

UniformParams uniform_params(double theta, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("uniform moment matching requires sigma > 0");
  const double half = sigma * std::sqrt(3.0);
  return {theta - half, theta + half};
}

double draw_gamma(rng::RngStream& stream, double shape, double scale) {
  double boost = 1.0;
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a)
    boost = std::exp(std::log(stream.next_uniform()) / shape);
    shape += 1.0;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = stream.next_normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = stream.next_uniform();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
      return d * v * boost * scale;
    }
  }
}

void draw_group(const GroupGenerator& gen, std::int64_t n, rng::RngStream& stream,
                std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(n));
  if (const auto* g = std::get_if<NormalGen>(&gen)) {
    for (auto& x : out) x = g->theta + g->sigma * stream.next_normal();
  } else if (const auto* g = std::get_if<GammaNormalMix>(&gen)) {
    const auto gp = gamma_params(g->theta, g->sigma);
    for (auto& x : out) {
      x = stream.next_uniform() < g->w ? draw_gamma(stream, gp.shape, gp.scale)
                                       : g->theta + g->sigma * stream.next_normal();
    }
  } else {
    const auto& u = std::get<UniformNormalMix>(gen);
    const auto up = uniform_params(u.theta, u.sigma);
    for (auto& x : out) {
      x = stream.next_uniform() < u.w ? up.low + (up.high - up.low) * stream.next_uniform()
                                      : u.theta + u.sigma * stream.next_normal();
    }
  }
}

std::vector<double> draw_group(const GroupGenerator& gen, std::int64_t n, rng::RngStream& stream) {
  std::vector<double> out;
  draw_group(gen, n, stream, out);
  return out;
}

double Scenario::true_theta_max() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : generators) best = std::max(best, generator_theta(g));
  return best;
}

void validate(const Scenario& scenario) {
  if (scenario.generators.empty()) throw ValidationError("scenario has no groups");
  if (scenario.generators.size() != scenario.n_per_group.size()) {
    throw ValidationError("scenario: " + std::to_string(scenario.generators.size()) +
                          " generators but " + std::to_string(scenario.n_per_group.size()) +
                          " group sizes");
  }
  for (const auto& g : scenario.generators) validate(g);
  for (auto n : scenario.n_per_group) {
    if (n < 1) throw ValidationError("scenario group size must be >= 1");
    if (n > 0xFFFFFFFFll) throw ValidationError("scenario group size too large");
  }
}

Dataset draw_dataset(const Scenario& scenario, const rng::StreamPath& path) {
  Dataset::Subjects groups(scenario.group_count());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    rng::RngStream stream(path, static_cast<std::uint32_t>(g));
    groups[g].label = "G" + std::to_string(g + 1);
    draw_group(scenario.generators[g], scenario.n_per_group[g], stream, groups[g].values);
  }
  return Dataset::subject_level(std::move(groups));
}

namespace {

std::string format_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

Scenario normal_scenario(const std::string& name, const std::vector<double>& theta,
                         const std::vector<double>& sigma, std::int64_t n) {
  Scenario s;
  s.name = name;
  for (std::size_t i = 0; i < theta.size(); ++i) s.generators.push_back(NormalGen{theta[i], sigma[i]});
  s.n_per_group.assign(theta.size(), n);
  return s;
}

const std::vector<std::vector<double>> kThreeArmThetas = {
    {1, 1, 1}, {1, 1, 1.2}, {1, 1.1, 1.2}, {1, 1.2, 1.2}};
const std::vector<std::vector<double>> kFourArmThetas = {
    {1, 1, 1, 1}, {1, 1, 1, 1.2}, {1, 1.05, 1.1, 1.2}, {1, 1.1, 1.2, 1.2}};
const std::vector<double> kMixWeights = {0.1, 0.2, 0.3, 0.5};
const std::vector<double> kMixTheta = {1, 1.1, 1.2};
constexpr std::int64_t kMainN = 40;

}  // namespace

std::vector<BuiltinEntry> builtin_scenarios() {
  std::vector<BuiltinEntry> out;
  for (std::int64_t n : {40, 4000, 40000}) {
    out.push_back({"toy", std::to_string(n),
                   normal_scenario("toy n=" + std::to_string(n), {0.9, 1.0}, {5, 5}, n)});
  }
  for (const auto& theta : kThreeArmThetas) {
    const auto key = format_vector(theta);
    out.push_back({"S1", key, normal_scenario("S1 " + key, theta, {5, 5, 5}, kMainN)});
  }
  for (const auto& theta : kThreeArmThetas) {
    const auto key = format_vector(theta);
    out.push_back({"S2", key, normal_scenario("S2 " + key, theta, {3, 4, 5}, kMainN)});
  }
  for (double w : kMixWeights) {
    std::ostringstream key;
    key << w;
    Scenario s;
    s.name = "S3 w=" + key.str();
    for (double t : kMixTheta) s.generators.push_back(GammaNormalMix{t, 5.0, w});
    s.n_per_group.assign(kMixTheta.size(), kMainN);
    out.push_back({"S3", key.str(), s});
  }
  for (double w : kMixWeights) {
    std::ostringstream key;
    key << w;
    Scenario s;
    s.name = "S4 w=" + key.str();
    for (double t : kMixTheta) s.generators.push_back(UniformNormalMix{t, 5.0, w});
    s.n_per_group.assign(kMixTheta.size(), kMainN);
    out.push_back({"S4", key.str(), s});
  }
  for (const auto& theta : kFourArmThetas) {
    const auto key = format_vector(theta);
    out.push_back(
        {"four_arm", key, normal_scenario("four_arm " + key, theta, {5, 5, 5, 5}, kMainN)});
  }
  return out;
}

std::vector<BuiltinEntry> builtin_family(const std::string& family) {
  std::vector<BuiltinEntry> out;
  for (auto& e : builtin_scenarios()) {
    if (e.family == family) out.push_back(std::move(e));
  }
  if (out.empty()) {
    throw ValidationError("unknown builtin scenario '" + family +
                          "' (expected toy, S1, S2, S3, S4 or four_arm)");
  }
  return out;
}

}  // namespace selbias
