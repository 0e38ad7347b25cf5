#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace selbias {

// Subject-level responses of one treatment group, in input order.
struct GroupObservations {
  std::string label;
  std::vector<double> values;

  friend bool operator==(const GroupObservations&, const GroupObservations&) = default;
};

// Reported per-group summary. sd is the sample standard deviation
// (denominator n - 1).
struct GroupSummary {
  std::string label;
  std::int64_t n = 0;
  double mean = 0.0;
  double sd = 0.0;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

// Either subject-level or summary-level data for I >= 1 groups. Group order is
// the order of appearance; every group index in the library refers to it.
class Dataset {
 public:
  using Subjects = std::vector<GroupObservations>;
  using Summaries = std::vector<GroupSummary>;

  Dataset() = default;
  static Dataset subject_level(Subjects groups);
  static Dataset summary_level(Summaries groups);

  bool is_subject_level() const noexcept { return std::holds_alternative<Subjects>(groups_); }
  bool is_summary_level() const noexcept { return !is_subject_level(); }

  std::size_t group_count() const noexcept;
  const std::string& label(std::size_t group) const;
  std::int64_t group_size(std::size_t group) const;
  std::int64_t total_size() const;

  // Throws std::logic_error when the dataset holds the other alternative.
  const Subjects& subjects() const;
  const Summaries& summaries() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::variant<Subjects, Summaries> groups_;
};

// Returns the dataset unchanged when every invariant holds, otherwise throws
// ValidationError naming the offending group.
Dataset validate(Dataset dataset);

enum class SamplerKind { ParametricNormal, Nonparametric };

struct Traditional {
  friend bool operator==(const Traditional&, const Traditional&) = default;
};
// Row: the j-th observation of every group is deleted together (equal group
// sizes). Observation: one observation at a time over all N.
enum class JackknifeDeletion { Row, Observation };

struct Jackknife {
  JackknifeDeletion deletion = JackknifeDeletion::Row;
  friend bool operator==(const Jackknife&, const Jackknife&) = default;
};
struct Shrinkage {
  friend bool operator==(const Shrinkage&, const Shrinkage&) = default;
};
struct Bootstrap {
  int order = 1;  // 1 = single, 2 = double, 3 = triple
  SamplerKind sampler = SamplerKind::ParametricNormal;
  friend bool operator==(const Bootstrap&, const Bootstrap&) = default;
};
// Shrinkage combination with a bootstrap-corrected value in place of the
// max of means.
struct HybridShrink {
  Bootstrap inner;
  friend bool operator==(const HybridShrink&, const HybridShrink&) = default;
};

using Method = std::variant<Traditional, Jackknife, Shrinkage, Bootstrap, HybridShrink>;

inline constexpr int kMaxBootstrapOrder = 3;

// Short names: traditional, jk, jkn, shrink, pb1..pb3, nb1..nb3, pb1s..nb3s.
std::string method_name(const Method& method);
// Inverse of method_name; also accepts a few long aliases ("jackknife",
// "shrinkage"). Throws ParseError on unknown names.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);
bool needs_bootstrap(const Method& method);

struct EstimatorSpec {
  Method method = Traditional{};
  std::uint32_t B = 80;
  std::uint64_t seed = 0;
};

void validate(const EstimatorSpec& spec);

struct EstimateTrace {
  double raw = 0.0;                    // max of sample means
  std::vector<double> bias_estimates;  // outermost-level bias estimate per correction order
  std::optional<double> shrink_c;      // may be -inf when the group means coincide
  std::optional<double> shrink_c_plus;
  std::size_t selected_index = 0;      // argmax group, lowest index on ties
};

struct Estimate {
  double value = 0.0;
  std::optional<EstimateTrace> trace;
};

}  // namespace selbias
