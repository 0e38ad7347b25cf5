#include "selbias/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace selbias::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(PhiloxCounter& ctr, const PhiloxKey& key) noexcept {
  const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
  const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    round(counter, key);
  }
  return counter;
}

// Philox rounds on RngStream::kBatch counters stored word by word.
constexpr int kLanes = 8;

#if defined(__SSE2__)
// (hi, lo) halves of the 32x32 products of four lanes with m.
inline void mul_hilo(__m128i a, __m128i m, __m128i& hi, __m128i& lo) noexcept {
  const __m128i even = _mm_mul_epu32(a, m);
  const __m128i odd = _mm_mul_epu32(_mm_srli_epi64(a, 32), m);
  const __m128i low_mask = _mm_set_epi32(0, -1, 0, -1);
  lo = _mm_or_si128(_mm_and_si128(even, low_mask), _mm_slli_epi64(odd, 32));
  hi = _mm_or_si128(_mm_srli_epi64(even, 32), _mm_andnot_si128(low_mask, odd));
}

inline void philox_rounds_soa(std::uint32_t (&w)[4][kLanes], PhiloxKey key) noexcept {
  const __m128i m0 = _mm_set1_epi32(static_cast<int>(kMul0));
  const __m128i m1 = _mm_set1_epi32(static_cast<int>(kMul1));
  for (int g = 0; g < kLanes; g += 4) {
    __m128i c0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&w[0][g]));
    __m128i c1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&w[1][g]));
    __m128i c2 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&w[2][g]));
    __m128i c3 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&w[3][g]));
    PhiloxKey k = key;
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      __m128i hi0, lo0, hi1, lo1;
      mul_hilo(c0, m0, hi0, lo0);
      mul_hilo(c2, m1, hi1, lo1);
      c0 = _mm_xor_si128(_mm_xor_si128(hi1, c1), _mm_set1_epi32(static_cast<int>(k[0])));
      c2 = _mm_xor_si128(_mm_xor_si128(hi0, c3), _mm_set1_epi32(static_cast<int>(k[1])));
      c1 = lo1;
      c3 = lo0;
    }
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&w[0][g]), c0);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&w[1][g]), c1);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&w[2][g]), c2);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&w[3][g]), c3);
  }
}
#else
inline void philox_rounds_soa(std::uint32_t (&w)[4][kLanes], PhiloxKey key) noexcept {
  for (int j = 0; j < kLanes; ++j) {
    const auto out = philox4x32_10({w[0][j], w[1][j], w[2][j], w[3][j]}, key);
    for (int i = 0; i < 4; ++i) w[i][j] = out[i];
  }
}
#endif

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double normal_quantile(double p) noexcept {
  if (!(p > 0.0)) return p == 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::quiet_NaN();
  if (!(p < 1.0)) return p == 1.0 ? std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::quiet_NaN();
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -x : x;
}

StreamPath StreamPath::child(std::uint32_t index) const {
  if (depth_ >= kMaxDepth) throw std::out_of_range("stream path nested deeper than 3 levels");
  if (depth_ >= 1 && index > kMaxNestedIndex) {
    throw std::out_of_range("nested bootstrap index exceeds 65534");
  }
  if (depth_ == 0 && index == 0xFFFFFFFFu) throw std::out_of_range("bootstrap index too large");
  StreamPath p = *this;
  p.index_[static_cast<std::size_t>(depth_)] = index + 1;
  ++p.depth_;
  return p;
}

PhiloxKey StreamPath::key() const noexcept {
  const std::uint64_t k = mix64(mix64(seed_) ^ replication_);
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

// Counter layout: word0 draw block, word1 = group << 8 | domain,
// word2 = level-1 index + 1, word3 = (level-2 index + 1) << 16 | (level-3 index + 1).
PhiloxCounter StreamPath::counter_base(std::uint32_t group) const noexcept {
  return {0u, (group << 8) | static_cast<std::uint32_t>(domain_), index_[0],
          (index_[1] << 16) | (index_[2] & 0xFFFFu)};
}

RngStream::RngStream(const StreamPath& path, std::uint32_t group) noexcept
    : key_(path.key()), counter_(path.counter_base(group)) {}

void RngStream::refill() noexcept {
  pos_ = 0;
  if (len_ == 0) {
    const auto b = philox4x32_10(counter_, key_);
    std::copy(b.begin(), b.end(), block_.begin());
    ++counter_[0];
    len_ = 4;
    return;
  }
  // kBatch independent counters at once; a single block is bound by the
  // latency of its multiply chain.
  std::uint32_t w[4][kBatch];
  for (int j = 0; j < kBatch; ++j) {
    w[0][j] = counter_[0] + static_cast<std::uint32_t>(j);
    w[1][j] = counter_[1];
    w[2][j] = counter_[2];
    w[3][j] = counter_[3];
  }
  static_assert(kBatch == kLanes);
  philox_rounds_soa(w, key_);
  for (int j = 0; j < kBatch; ++j) {
    for (int i = 0; i < 4; ++i) block_[4 * j + i] = w[i][j];
  }
  counter_[0] += kBatch;
  len_ = 4 * kBatch;
}

}  // namespace selbias::rng
