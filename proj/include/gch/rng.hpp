#pragma once

#include <cstdint>
#include <random>

#include "gch/rational.hpp"

namespace gch {

// Seeded generator for the randomized suites. The engine is std::mt19937_64
// (its output sequence is fixed by the C++ standard); bounded draws use
// rejection sampling on the raw 64-bit output instead of library
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (eng_() >> 63) != 0; }

  // Small nonzero rational p/q with |p| <= pmax, 1 <= q <= qmax.
  Rational nonzero_rational(int pmax = 5, int qmax = 3) {
    int p = range(1, pmax);
    if (coin()) p = -p;
    return Rational(p, range(1, qmax));
  }
  // Small rational, zero with probability about 1/(2 pmax + 1).
  Rational small_rational(int pmax = 3, int qmax = 2) { return Rational(range(-pmax, pmax), range(1, qmax)); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gch
