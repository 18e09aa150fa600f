#pragma once

// The degree-n difference operator
//
//   H f(u,v) = sum_{k=0}^{n} (-1)^k C(n,k) f(u + (s-k) v) - n! f(v),   s = (n+1)/2
//
// evaluated exactly over rationals or in precision-tagged floats. The default
// degree is 25, for which the operator's kernel on polynomials is spanned by
// x^25.

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qveq/numeric.hpp"

namespace qveq {

struct EquationFamily {
  int degree;

  static EquationFamily of_degree(int n) {
    if (n < 1 || n % 2 == 0)
      throw std::invalid_argument("EquationFamily: degree must be odd and positive");
    return EquationFamily{n};
  }

  int shift() const { return (degree + 1) / 2; }

  // c_k = (-1)^k C(n,k)
  Int coefficient(int k) const {
    if (k < 0 || k > degree) throw std::out_of_range("coefficient: k out of range");
    Int c = binomial(static_cast<unsigned>(degree), k);
    return (k % 2 == 0) ? c : Int(-c);
  }

  Int rhs_factor() const { return factorial(static_cast<unsigned>(degree)); }
};

// --- exact evaluation ------------------------------------------------------

template <class F>
Rat eval_h(const EquationFamily& fam, F&& f, const Rat& u, const Rat& v) {
  const int s = fam.shift();
  Rat acc(0);
  for (int k = 0; k <= fam.degree; ++k) {
    const Rat arg = u + Rat(s - k) * v;
    acc += Rat(fam.coefficient(k)) * f(arg);
  }
  acc -= Rat(fam.rhs_factor()) * f(v);
  return acc;
}

// --- float evaluation ------------------------------------------------------

// The 26-term alternating sum cancels catastrophically near the kernel, so the
// float path uses Neumaier compensated summation and reports the conditioning
// ratio  sum |term| / |result|  alongside the value.
struct HEvaluation {
  BigReal value;
  BigReal term_magnitude;  // sum of |term| over all 27 terms

  // +inf-like sentinel is avoided: returns magnitude when value == 0.
  BigReal conditioning() const {
    if (value.is_zero()) return term_magnitude;
    return term_magnitude / value.abs();
  }
};

template <class F>
HEvaluation eval_h_conditioned(const EquationFamily& fam, F&& f, const BigReal& u,
                               const BigReal& v) {
  const int s = fam.shift();
  const mpfr_prec_t prec = std::max(u.precision(), v.precision());
  BigReal sum(prec), comp(prec), mag(prec);
  auto add = [&](const BigReal& term) {
    const BigReal t = sum + term;
    if (sum.abs() >= term.abs())
      comp = comp + ((sum - t) + term);
    else
      comp = comp + ((term - t) + sum);
    sum = t;
    mag = mag + term.abs();
  };
  for (int k = 0; k <= fam.degree; ++k) {
    const BigReal arg = u + BigReal::of(static_cast<long>(s - k), prec) * v;
    add(BigReal::of(fam.coefficient(k), prec) * f(arg));
  }
  add(BigReal::of(Int(-fam.rhs_factor()), prec) * f(v));
  return HEvaluation{sum + comp, mag};
}

template <class F>
BigReal eval_h(const EquationFamily& fam, F&& f, const BigReal& u, const BigReal& v) {
  return eval_h_conditioned(fam, std::forward<F>(f), u, v).value;
}

// --- batched scans ---------------------------------------------------------

inline Rat abs_of(const Rat& x) { return rat_abs(x); }
inline BigReal abs_of(const BigReal& x) { return x.abs(); }

template <class T>
struct ResidualSample {
  T u, v, h;
};

template <class T>
struct ResidualReport {
  std::vector<ResidualSample<T>> samples;
  T max_abs;
};

template <class T, class F>
ResidualReport<T> residual_scan(const EquationFamily& fam, F&& f,
                                const std::vector<std::pair<T, T>>& points) {
  if (points.empty()) throw std::invalid_argument("residual_scan: empty sample list");
  ResidualReport<T> rep;
  rep.samples.reserve(points.size());
  bool first = true;
  for (const auto& [u, v] : points) {
    T h = eval_h(fam, f, u, v);
    T a = abs_of(h);
    if (first || a > rep.max_abs) {
      rep.max_abs = a;
      first = false;
    }
    rep.samples.push_back({u, v, std::move(h)});
  }
  return rep;
}

// --- solution shape checks -------------------------------------------------

// Candidate solutions must vanish at 0 and be odd; violations are findings.
template <class T>
struct SymmetryFinding {
  T x;
  bool odd_ok;
};

template <class T>
struct SymmetryReport {
  bool zero_ok;                           // f(0) == 0
  std::vector<SymmetryFinding<T>> rows;   // per-sample oddness
  bool all_ok() const {
    if (!zero_ok) return false;
    for (const auto& r : rows)
      if (!r.odd_ok) return false;
    return true;
  }
};

template <class T, class F>
SymmetryReport<T> symmetry_checks(F&& f, const std::vector<T>& xs, const T& zero) {
  SymmetryReport<T> rep;
  rep.zero_ok = (f(zero) == zero);
  rep.rows.reserve(xs.size());
  for (const auto& x : xs) {
    const T lhs = f(zero - x);
    const T rhs = zero - f(x);
    rep.rows.push_back({x, lhs == rhs});
  }
  return rep;
}

// --- rational polynomials (mapping oracles for the CLI and tests) ----------

// Sparse polynomial with rational coefficients; evaluates in either mode.
struct RationalPoly {
  std::vector<std::pair<Rat, int>> terms;  // (coefficient, exponent)

  Rat operator()(const Rat& x) const {
    Rat acc(0);
    for (const auto& [c, e] : terms) acc += c * rat_pow(x, e);
    return acc;
  }

  BigReal operator()(const BigReal& x) const {
    BigReal acc(x.precision());
    for (const auto& [c, e] : terms)
      acc = acc + BigReal::of(c, x.precision()) * x.pow_int(e);
    return acc;
  }

  std::string str() const;

  // Grammar used by the CLI --function flag:
  //   zero
  //   monomial[:a=RAT]               a * x^degree
  //   power:d=INT[,a=RAT]            a * x^d
  //   monomial+power:l=INT,eps=RAT   x^degree + eps * x^l
  static RationalPoly parse(const std::string& spec, int degree);
};

}  // namespace qveq
