#pragma once

#include <array>
#include <cstdint>

namespace selbias::rng {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11). Pure function of
// (counter, key).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Standard normal quantile, Wichura's AS 241 (PPND16). Accurate to about
// 1e-16 relative over (0, 1); returns -inf/+inf at 0/1.
double normal_quantile(double p) noexcept;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

enum class Domain : std::uint8_t {
  Data = 1,       // scenario draws of a simulated dataset
  Bootstrap = 2,  // resampling inside an estimator
  Auxiliary = 3,  // tests, benchmarks, ad-hoc streams
};

// Address of a random stream: (master seed, replication, domain, nested
// bootstrap indices). Streams with different addresses never share counters,
// except for the 64-bit key derived from (seed, replication).
class StreamPath {
 public:
  static constexpr int kMaxDepth = 3;
  // Indices below level 1 are packed into 16 bits each.
  static constexpr std::uint32_t kMaxNestedIndex = 0xFFFEu;

  StreamPath() = default;
  StreamPath(std::uint64_t seed, std::uint64_t replication, Domain domain) noexcept
      : seed_(seed), replication_(replication), domain_(domain) {}

  // Path of the index-th resample one nesting level below this one.
  StreamPath child(std::uint32_t index) const;

  int depth() const noexcept { return depth_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t replication() const noexcept { return replication_; }
  Domain domain() const noexcept { return domain_; }

  PhiloxKey key() const noexcept;
  // Counter words 1..3 for the given group; word 0 is the draw block index.
  PhiloxCounter counter_base(std::uint32_t group) const noexcept;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t replication_ = 0;
  Domain domain_ = Domain::Auxiliary;
  int depth_ = 0;
  std::array<std::uint32_t, kMaxDepth> index_{};  // stored as index + 1
};

// Sequential reader over the counter-based stream of one (path, group).
// Draw j of the stream is a pure function of (path, group, j).
class RngStream {
 public:
  RngStream(const StreamPath& path, std::uint32_t group) noexcept;

  std::uint32_t next_u32() noexcept {
    if (pos_ == len_) refill();
    return block_[pos_++];
  }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double next_uniform() noexcept {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double next_normal() noexcept { return normal_quantile(next_uniform()); }

  // Exactly uniform integer in [0, bound), Lemire's multiply-shift with
  // rejection. bound must be > 0.
  std::uint32_t next_below(std::uint32_t bound) noexcept {
    std::uint64_t m = std::uint64_t{next_u32()} * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        m = std::uint64_t{next_u32()} * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  void refill() noexcept;

  PhiloxKey key_;
  PhiloxCounter counter_;
  // Short streams (one or two draws) are common in bootstrap leaves, so the
  // first refill makes one block and later refills make kBatch at once.
  static constexpr int kBatch = 8;
  std::array<std::uint32_t, 4 * kBatch> block_{};
  int pos_ = 0;
  int len_ = 0;
};

}  // namespace selbias::rng
