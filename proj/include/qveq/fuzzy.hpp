#pragma once

// The non-Archimedean fuzzy layer: rationals with a p-adic absolute value as
// the carrier, membership functions N(x,t) graded in [0,1], the 15-entry
// Gamma aggregate with p-adically scaled time arguments, the fuzzy fixed
// point iteration and the n^2 min-lift to matrices. Everything here is exact
// rational arithmetic; there is no precision policy to tune.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qveq/equation.hpp"
#include "qveq/matrix.hpp"
#include "qveq/numeric.hpp"

namespace qveq {

// ℚ with |.|_p; the smallest non-Archimedean field worth testing on.
struct PAdicContext {
  Int p;

  static PAdicContext of(const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("PAdicContext: p must be prime");
    return PAdicContext{p};
  }
  Rat abs(const Rat& x) const { return padic_abs(x, p); }
};

// membership in [0,1]; both N (codomain) and N' (control codomain) have this shape
using FuzzyMembership = std::function<Rat(const Rat& x, const Rat& t)>;

// N(x,t) = t / (t + |x|_p): satisfies all five axioms over a non-Archimedean
// absolute value and is exact on rational inputs.
FuzzyMembership standard_fuzzy_norm(const PAdicContext& field);

// --- axioms -----------------------------------------------------------------------

struct FuzzyAxiomReport {
  bool monotone_in_t = true;       // N(x, s) <= N(x, t) for s <= t
  bool zero_is_one = true;         // N(0, t) = 1
  bool scaling_ok = true;          // N(ax, t) = N(x, t/|a|_p)
  bool strong_triangle_ok = true;  // N(x+y, max(s,t)) >= min(N(x,s), N(y,t))
  bool limit_to_one_ok = true;     // N(x, t) -> 1 as t grows
  bool all_ok() const {
    return monotone_in_t && zero_is_one && scaling_ok && strong_triangle_ok &&
           limit_to_one_ok;
  }
};

FuzzyAxiomReport fuzzy_axiom_check(const FuzzyMembership& norm, const PAdicContext& field,
                                   const std::vector<Rat>& xs, const std::vector<Rat>& ts);

// --- Gamma ------------------------------------------------------------------------

// (sigma argument factors, divisor); time argument is |25!|_p * t / |divisor|_p
struct GammaEntry {
  int arg1_factor;
  int arg2_factor;
  long divisor;
};

const std::array<GammaEntry, 15>& gamma_entries();

using FuzzyControl = std::function<Rat(const Rat&, const Rat&)>;

// min over the 15 entries of N'(sigma(...), |25!|_p t / |divisor|_p); t > 0
Rat gamma_value(const FuzzyMembership& nprime, const FuzzyControl& sigma, const Rat& x,
                const Rat& t, const PAdicContext& field);

// the 15 time scale factors |25!|_p / |divisor|_p, in entry order
std::array<Rat, 15> gamma_time_scales(const PAdicContext& field);

// --- the scaling hypothesis (G4) ----------------------------------------------------

struct G4Row {
  Rat c, d, t;
  Rat lhs;  // N'(sigma(2^q c, 2^q d), t)
  Rat rhs;  // N'(sigma(c, d), kappa^-q t)
  bool ok;
};

std::vector<G4Row> check_g4(const FuzzyControl& sigma, const FuzzyMembership& nprime,
                            const Rat& kappa, int q,
                            const std::vector<std::pair<Rat, Rat>>& samples,
                            const std::vector<Rat>& ts);

// --- fixed point in the p-adic carrier -----------------------------------------------

// V_k(c) = 2^(-25kq) f(2^(kq) c), exact rationals throughout
template <class F>
std::vector<Rat> fuzzy_fixed_point(F&& f, int q, int iterations, const Rat& c) {
  return fixed_point_iterate<Rat>(std::forward<F>(f), q, iterations, c);
}

// --- matrix fuzzy norm and the min-lift ----------------------------------------------

// N_n([x], t): distribute t over the z nonzero entries and take the worst
// membership, min over nonzero entries of N(x_rs, t/z); 1 for the zero
// matrix. A single-entry matrix gets exactly the scalar membership, and the
// equal-split bound min_rs N(x_rs, t/n^2) is never above this.
Rat matrix_fuzzy_norm(const FuzzyMembership& norm, const MatrixOfPoints<Rat>& x,
                      const Rat& t);

struct MinLiftRow {
  Rat t;
  Rat lifted;       // N_n([x], t)
  Rat equal_split;  // min_rs N(x_rs, t/n^2)
  bool ok;          // lifted >= equal_split
};

struct MinLiftReport {
  std::vector<MinLiftRow> rows;
  bool single_entry_equality_ok = true;  // N_n(E_rs tensor x, t) == N(x, t)
  bool all_ok() const;
};

MinLiftReport fuzzy_minlift_check(const FuzzyMembership& norm,
                                  const MatrixOfPoints<Rat>& x,
                                  const std::vector<Rat>& ts);

// --- the stability conclusion (G6) ----------------------------------------------------

struct G6Row {
  Rat x, t;
  Rat lhs;
  Rat rhs;
  bool ok;
};

struct G6Report {
  std::vector<G6Row> scalar_rows;  // N(f(c) - V(c), t) >= Gamma(c, |kappa - 2^25|_p t)
  std::vector<G6Row> matrix_rows;  // N_n lift vs min-Gamma at t/n^2
  bool all_ok() const;
};

// kappa != 2^25; the time arguments scale by |kappa - 2^25|_p
template <class F, class G>
G6Report check_g6(F&& f, G&& v, const FuzzyControl& sigma, const FuzzyMembership& norm,
                  const FuzzyMembership& nprime, const Rat& kappa,
                  const PAdicContext& field, const std::vector<Rat>& xs,
                  const std::vector<Rat>& ts, const MatrixOfPoints<Rat>& X) {
  const Rat two25 = rat_pow2(25);
  if (kappa == two25) throw std::invalid_argument("check_g6: kappa = 2^25 is excluded");
  const Rat scale = field.abs(kappa - two25);

  G6Report rep;
  for (const auto& x : xs) {
    for (const auto& t : ts) {
      G6Row row;
      row.x = x;
      row.t = t;
      row.lhs = norm(f(x) - v(x), t);
      row.rhs = gamma_value(nprime, sigma, x, scale * t, field);
      row.ok = row.lhs >= row.rhs;
      rep.scalar_rows.push_back(std::move(row));
    }
  }

  const long nn = static_cast<long>(X.n) * X.n;
  MatrixOfPoints<Rat> diff = X;
  for (auto& e : diff.entries) e = f(e) - v(e);
  for (const auto& t : ts) {
    G6Row row;
    row.x = Rat(0);
    row.t = t;
    row.lhs = matrix_fuzzy_norm(norm, diff, t);
    std::optional<Rat> worst;
    for (const auto& e : X.entries) {
      Rat g = gamma_value(nprime, sigma, e, scale * t / Rat(nn), field);
      if (!worst || g < *worst) worst = std::move(g);
    }
    row.rhs = *worst;
    row.ok = row.lhs >= row.rhs;
    rep.matrix_rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace qveq
