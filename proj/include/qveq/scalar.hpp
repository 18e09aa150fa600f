#pragma once

// Uniform scalar operations over the two computation modes: exact rationals
// and precision-tagged floats. The `like` argument threads precision through
// float-mode construction; rational mode ignores it.

#include "qveq/numeric.hpp"

namespace qveq {

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static constexpr bool exact = true;
  static Rat from_long(long v, const Rat&) { return Rat(v); }
  static Rat from_int(const Int& v, const Rat&) { return Rat(v); }
  static Rat from_rat(const Rat& v, const Rat&) { return v; }
  static Rat mul_pow2(const Rat& x, long k) { return rat_mul_pow2(x, k); }
  static Rat pow_int(const Rat& x, long e) { return rat_pow(x, e); }
  static bool finite(const Rat&) { return true; }

  // base >= 0 raised to a scalar exponent; exact mode requires an integer one
  static Rat pow(const Rat& base, const Rat& expo) {
    if (!rat_is_integer(expo))
      throw std::domain_error("exact mode cannot raise to a non-integer exponent");
    if (base == 0 && expo == 0) return Rat(1);
    return rat_pow(base, expo.get_num().get_si());
  }
};

template <>
struct ScalarOps<BigReal> {
  static constexpr bool exact = false;
  static BigReal from_long(long v, const BigReal& like) {
    return BigReal::of(v, like.precision());
  }
  static BigReal from_int(const Int& v, const BigReal& like) {
    return BigReal::of(v, like.precision());
  }
  static BigReal from_rat(const Rat& v, const BigReal& like) {
    return BigReal::of(v, like.precision());
  }
  static BigReal mul_pow2(const BigReal& x, long k) { return x.mul_pow2(k); }
  static BigReal pow_int(const BigReal& x, long e) { return x.pow_int(e); }
  static bool finite(const BigReal& x) { return x.is_finite(); }
  static BigReal pow(const BigReal& base, const BigReal& expo) {
    return BigReal::pow(base, expo);
  }
};

}  // namespace qveq
