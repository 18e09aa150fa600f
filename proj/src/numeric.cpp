#include "qveq/numeric.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace qveq {

Int binomial(unsigned n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
    throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Int int_from_string(const std::string& s) {
  Int r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("int_from_string: cannot parse '" + s + "'");
  return r;
}

Rat rat_abs(const Rat& x) {
  Rat r;
  mpq_abs(r.get_mpq_t(), x.get_mpq_t());
  return r;
}

Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  if (x == 0 && e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
  const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), ue);
  return e > 0 ? make_rat(num, den) : make_rat(den, num);
}

Rat rat_mul_pow2(const Rat& x, long k) {
  Rat r;
  if (k >= 0)
    mpq_mul_2exp(r.get_mpq_t(), x.get_mpq_t(), static_cast<unsigned long>(k));
  else
    mpq_div_2exp(r.get_mpq_t(), x.get_mpq_t(), static_cast<unsigned long>(-k));
  return r;
}

Rat rat_pow2(long k) { return rat_mul_pow2(Rat(1), k); }

bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

bool is_prime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

long padic_valuation(const Rat& x, const Int& p) {
  if (x == 0) throw std::domain_error("padic_valuation: undefined at 0");
  Int tmp;
  const long vnum = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
  const long vden = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
  return vnum - vden;
}

Rat padic_abs(const Rat& x, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("padic_abs: p must be prime");
  if (x == 0) return Rat(0);
  const long v = padic_valuation(x, p);
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  return v >= 0 ? make_rat(Int(1), pk) : Rat(pk);
}

// ---------------------------------------------------------------------------
// BigReal
// ---------------------------------------------------------------------------

namespace {
mpfr_prec_t clamp_prec(mpfr_prec_t prec) {
  return std::max<mpfr_prec_t>(prec, BigReal::kMinPrecision);
}
}  // namespace

BigReal::BigReal() : BigReal(kDefaultPrecision) {}

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::of(long v, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::of(const Int& v, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::of(const Rat& v, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::of_double(double v, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::parse(const std::string& s, mpfr_prec_t prec) {
  BigReal r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("BigReal::parse: cannot parse '" + s + "'");
  return r;
}

BigReal BigReal::abs() const {
  BigReal r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::neg() const {
  BigReal r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::mul_pow2(long k) const {
  BigReal r(precision());
  mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow_int(long e) const {
  BigReal r(precision());
  mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow(const BigReal& base, const BigReal& exponent) {
  BigReal r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.v_, base.v_, exponent.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::exp2(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_exp2(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.precision(), b.precision()));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.precision(), b.precision()));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Rat BigReal::to_rat_exact() const {
  if (!is_finite()) throw std::domain_error("to_rat_exact: value is not finite");
  Rat r;
  mpfr_get_q(r.get_mpq_t(), v_);
  return r;
}

std::string BigReal::decimal(int significant_digits) const {
  if (significant_digits <= 0) {
    // enough digits for an exact decimal -> binary round trip
    significant_digits = static_cast<int>(mpfr_get_prec(v_) * 0.30103) + 3;
  }
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Re", significant_digits - 1, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

BigReal::HexTriple BigReal::hex_triple() const {
  char* out = nullptr;
  mpfr_asprintf(&out, "%Ra", v_);
  std::string s(out);
  mpfr_free_str(out);
  HexTriple t;
  t.precision = static_cast<long>(precision());
  const auto p = s.find_first_of("pP");
  if (p == std::string::npos) {  // zero, inf, nan carry no exponent
    t.mantissa = s;
    t.exponent = 0;
  } else {
    t.mantissa = s.substr(0, p);
    t.exponent = std::strtol(s.c_str() + p + 1, nullptr, 10);
  }
  return t;
}

}  // namespace qveq
