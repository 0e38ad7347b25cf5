#include "selbias/model.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "selbias/error.hpp"

namespace selbias {

Dataset Dataset::subject_level(Subjects groups) {
  Dataset d;
  d.groups_ = std::move(groups);
  return d;
}

Dataset Dataset::summary_level(Summaries groups) {
  Dataset d;
  d.groups_ = std::move(groups);
  return d;
}

std::size_t Dataset::group_count() const noexcept {
  return std::visit([](const auto& g) { return g.size(); }, groups_);
}

const std::string& Dataset::label(std::size_t group) const {
  return std::visit([group](const auto& g) -> const std::string& { return g.at(group).label; },
                    groups_);
}

std::int64_t Dataset::group_size(std::size_t group) const {
  if (const auto* s = std::get_if<Subjects>(&groups_)) {
    return static_cast<std::int64_t>(s->at(group).values.size());
  }
  return std::get<Summaries>(groups_).at(group).n;
}

std::int64_t Dataset::total_size() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < group_count(); ++i) total += group_size(i);
  return total;
}

const Dataset::Subjects& Dataset::subjects() const {
  if (const auto* s = std::get_if<Subjects>(&groups_)) return *s;
  throw std::logic_error("dataset is summary level");
}

const Dataset::Summaries& Dataset::summaries() const {
  if (const auto* s = std::get_if<Summaries>(&groups_)) return *s;
  throw std::logic_error("dataset is subject level");
}

Dataset validate(Dataset dataset) {
  if (dataset.group_count() == 0) throw ValidationError("dataset has no groups");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < dataset.group_count(); ++i) {
    const auto& label = dataset.label(i);
    if (!seen.insert(label).second) throw ValidationError("duplicate label " + label);
  }
  if (dataset.is_subject_level()) {
    for (const auto& g : dataset.subjects()) {
      if (g.values.empty()) throw ValidationError("empty group " + g.label);
      for (double v : g.values) {
        if (!std::isfinite(v)) throw ValidationError("non-finite value in group " + g.label);
      }
    }
  } else {
    for (const auto& g : dataset.summaries()) {
      if (g.n < 1) throw ValidationError("n < 1 in group " + g.label);
      if (!std::isfinite(g.mean)) throw ValidationError("non-finite mean in group " + g.label);
      if (!std::isfinite(g.sd)) throw ValidationError("non-finite sd in group " + g.label);
      if (g.sd < 0.0) throw ValidationError("sd < 0 in group " + g.label);
    }
  }
  return dataset;
}

namespace {

std::string sampler_prefix(SamplerKind k) {
  return k == SamplerKind::ParametricNormal ? "pb" : "nb";
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string method_name(const Method& method) {
  return std::visit(
      Overloaded{
          [](const Traditional&) -> std::string { return "traditional"; },
          [](const Jackknife& j) -> std::string {
            return j.deletion == JackknifeDeletion::Row ? "jk" : "jkn";
          },
          [](const Shrinkage&) -> std::string { return "shrink"; },
          [](const Bootstrap& b) { return sampler_prefix(b.sampler) + std::to_string(b.order); },
          [](const HybridShrink& h) {
            return sampler_prefix(h.inner.sampler) + std::to_string(h.inner.order) + "s";
          },
      },
      method);
}

Method parse_method(std::string_view name) {
  if (name == "traditional" || name == "max") return Traditional{};
  if (name == "jk" || name == "jackknife") return Jackknife{JackknifeDeletion::Row};
  if (name == "jkn") return Jackknife{JackknifeDeletion::Observation};
  if (name == "shrink" || name == "shrinkage") return Shrinkage{};
  if (name.size() == 3 || (name.size() == 4 && name[3] == 's')) {
    const auto prefix = name.substr(0, 2);
    const char digit = name[2];
    if ((prefix == "pb" || prefix == "nb") && digit >= '1' && digit <= '0' + kMaxBootstrapOrder) {
      Bootstrap b{digit - '0',
                  prefix == "pb" ? SamplerKind::ParametricNormal : SamplerKind::Nonparametric};
      if (name.size() == 4) return HybridShrink{b};
      return b;
    }
  }
  throw ParseError("unknown method '" + std::string(name) +
                   "' (expected traditional, jk, jkn, shrink, pb1-3, nb1-3, or a hybrid such as pb2s)");
}

std::vector<Method> parse_method_list(std::string_view text) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) out.push_back(parse_method(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ParseError("empty method list");
  return out;
}

bool needs_bootstrap(const Method& method) {
  return std::holds_alternative<Bootstrap>(method) || std::holds_alternative<HybridShrink>(method);
}

void validate(const EstimatorSpec& spec) {
  if (spec.B < 1) throw ValidationError("B must be >= 1");
  const Bootstrap* b = std::get_if<Bootstrap>(&spec.method);
  if (const auto* h = std::get_if<HybridShrink>(&spec.method)) b = &h->inner;
  if (b && (b->order < 1 || b->order > kMaxBootstrapOrder)) {
    throw ValidationError("bootstrap order must be 1, 2 or 3");
  }
}

}  // namespace selbias
