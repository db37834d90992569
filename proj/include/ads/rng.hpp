#pragma once

#include <cmath>
#include <cstdint>

namespace ads::rng {

// splitmix64 step; good enough statistically for Monte-Carlo work and cheap
// enough to re-key per (seed, particle, step) stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s = h ^ (b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  return splitmix64(s);
}

// Counter-based stream: the state is derived purely from the key tuple, so a
// stream keyed by (seed, particle, step) yields the same draws no matter
// which thread runs it or in what order streams are consumed.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : state_(key) {
    // decorrelate trivially related keys (0, 1, 2, ...)
    splitmix64(state_);
  }

  template <class... Keys>
  static Stream keyed(std::uint64_t seed, Keys... keys) {
    std::uint64_t k = seed;
    ((k = mix_key(k, static_cast<std::uint64_t>(keys))), ...);
    return Stream(k);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1) with 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller; pairs are cached within the stream
  double next_normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  // integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ads::rng
