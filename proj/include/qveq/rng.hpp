#pragma once

// Seeded sample generation. Distribution code is hand-rolled on top of
// mt19937_64 so that a given seed produces the same stream on every
// platform and standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "qveq/numeric.hpp"

namespace qveq {

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform integer in [lo, hi], rejection-sampled.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  long nonzero_int(long lo, long hi) {
    long v;
    do {
      v = uniform_int(lo, hi);
    } while (v == 0);
    return v;
  }

  // Rational with numerator in [-99,99] and nonzero denominator in [-99,99].
  Rat rational() {
    return make_rat(uniform_int(-99, 99), nonzero_int(-99, 99));
  }

  Rat nonzero_rational() {
    Rat r;
    do {
      r = rational();
    } while (r == 0);
    return r;
  }

  // Rational confined to [lo, hi]: lo + (hi-lo) * k/990 with k uniform.
  Rat rational_in(const Rat& lo, const Rat& hi) {
    const Rat t = make_rat(uniform_int(0, 990), 990);
    return lo + (hi - lo) * t;
  }

  std::vector<std::pair<Rat, Rat>> rational_pairs(std::size_t count) {
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      Rat u = rational();
      Rat v = rational();
      out.emplace_back(std::move(u), std::move(v));
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace qveq
