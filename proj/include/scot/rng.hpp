#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace scot {

// mt19937_64 output is pinned bit-for-bit by the language standard. The
// value mappings live here instead of <random>'s distributions, whose
// results differ between standard libraries; this keeps seeded fixtures
// reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53 random bits
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // uniform in [0, n), unbiased via rejection
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = engine_();
    while (x < reject_below) x = engine_();
    return x % n;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Knuth's product method; fine for the small rates used here
  int poisson(double lambda) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= next_double();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scot
