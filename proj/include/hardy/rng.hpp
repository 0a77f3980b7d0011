#pragma once

#include <cstdint>

namespace hardy {

/// xorshift64* (Vigna 2016): state ^= state >> 12; state ^= state << 25;
/// state ^= state >> 27; output = state * 0x2545F4914F6CDD1D.
/// The seed is expanded with one round of splitmix64 so that small seeds
/// (0, 1, 2, ...) produce unrelated streams and the state is never zero.
///
/// Derived draws, all of which other implementations must reproduce:
///   uniform01()      (next() >> 11) * 2^-53, in [0, 1)
///   uniform(lo, hi)  lo + (hi - lo) * uniform01()
///   below(n)         next() % n
///   gaussian_like()  (sum of 12 uniform01() draws) - 6
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double gaussian_like() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform01();
    return s - 6.0;
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace hardy
