#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dsoc {

// Seeded random stream for scenario generation and arrivals. The engine is
// mt19937_64 (bit-exact by the standard); all value transforms are implemented
// here instead of <random> distributions, whose output differs between
// standard libraries. One stream per simulation instance.
class Rng {
 public:
  Rng() : engine_(0xd50c5eedULL) {}
  explicit Rng(std::uint64_t seed) : engine_(seed ^ 0xd50c5eedULL) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // uniform integer in [lo, hi], inclusive
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    return lo + static_cast<std::uint64_t>(uniform01() * static_cast<double>(span));
  }

  // Poisson-distributed count via multiplicative inversion; suited to the
  // small per-tick means used here.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) {
      return 0;
    }
    const double limit = std::exp(-mean);
    std::uint64_t count = 0;
    double product = uniform01();
    while (product > limit) {
      ++count;
      product *= uniform01();
    }
    return count;
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dsoc
