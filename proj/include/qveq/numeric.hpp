#pragma once

// Exact and high-precision arithmetic primitives shared by every other
// component: arbitrary-precision integers and rationals (GMP) and a
// precision-tagged binary float (MPFR, round-to-nearest).

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace qveq {

using Int = mpz_class;  // arbitrary-precision signed integer
using Rat = mpq_class;  // rational, kept canonical (lowest terms, positive denominator)

// C(n,k); returns 0 for k < 0 or k > n.
Int binomial(unsigned n, long k);

// n!
Int factorial(unsigned n);

// Canonicalized rational from a num/den pair. den must be nonzero.
Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den);

// Parses "p", "p/q" or a plain integer string. Throws std::invalid_argument.
Rat rat_from_string(const std::string& s);
Int int_from_string(const std::string& s);

Rat rat_abs(const Rat& x);

// x^e with integer exponent; e < 0 requires x != 0.
Rat rat_pow(const Rat& x, long e);

// x * 2^k, exact for any sign of k.
Rat rat_mul_pow2(const Rat& x, long k);

// 2^k as an exact rational.
Rat rat_pow2(long k);

bool rat_is_integer(const Rat& x);

// Miller-Rabin with enough rounds that composites in testing range cannot slip through.
bool is_prime(const Int& p);

// p-adic valuation of a nonzero rational.
long padic_valuation(const Rat& x, const Int& p);

// |x|_p = p^(-v_p(x)) as an exact rational; |0|_p = 0. Throws if p is not prime.
Rat padic_abs(const Rat& x, const Int& p);

// ---------------------------------------------------------------------------
// BigReal: an MPFR value that carries its precision. Arithmetic results take
// the larger operand precision, so precision is never silently lost.
// ---------------------------------------------------------------------------
class BigReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;
  static constexpr mpfr_prec_t kMinPrecision = 64;

  BigReal();  // zero at default precision
  explicit BigReal(mpfr_prec_t prec);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal of(long v, mpfr_prec_t prec = kDefaultPrecision);
  static BigReal of(const Int& v, mpfr_prec_t prec = kDefaultPrecision);
  static BigReal of(const Rat& v, mpfr_prec_t prec = kDefaultPrecision);
  static BigReal of_double(double v, mpfr_prec_t prec = kDefaultPrecision);
  static BigReal parse(const std::string& s, mpfr_prec_t prec = kDefaultPrecision);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  BigReal abs() const;
  BigReal neg() const;
  BigReal mul_pow2(long k) const;  // exact scaling by 2^k
  BigReal pow_int(long e) const;
  static BigReal pow(const BigReal& base, const BigReal& exponent);
  static BigReal exp2(const BigReal& x);  // 2^x

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  BigReal operator-() const { return neg(); }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  // Exact value as a rational (every finite BigReal is a dyadic rational).
  Rat to_rat_exact() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific-notation decimal, defaulting to full round-trip precision.
  std::string decimal(int significant_digits = 0) const;

  // C-style hex-float split into (mantissa, binary exponent, precision).
  struct HexTriple {
    std::string mantissa;
    long exponent = 0;
    long precision = 0;
  };
  HexTriple hex_triple() const;

 private:
  mpfr_t v_;
};

}  // namespace qveq
