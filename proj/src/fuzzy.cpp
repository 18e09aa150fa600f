#include "qveq/fuzzy.hpp"

#include <algorithm>

namespace qveq {

FuzzyMembership standard_fuzzy_norm(const PAdicContext& field) {
  return [field](const Rat& x, const Rat& t) -> Rat {
    if (t <= 0) throw std::domain_error("fuzzy norm: t must be positive");
    return t / (t + field.abs(x));
  };
}

FuzzyAxiomReport fuzzy_axiom_check(const FuzzyMembership& norm, const PAdicContext& field,
                                   const std::vector<Rat>& xs,
                                   const std::vector<Rat>& ts) {
  FuzzyAxiomReport rep;
  if (ts.empty() || xs.empty())
    throw std::invalid_argument("fuzzy_axiom_check: empty grid");

  std::vector<Rat> sorted_ts = ts;
  std::sort(sorted_ts.begin(), sorted_ts.end());
  const Rat one(1);

  for (const auto& x : xs) {
    for (std::size_t i = 0; i + 1 < sorted_ts.size(); ++i) {
      if (norm(x, sorted_ts[i]) > norm(x, sorted_ts[i + 1])) rep.monotone_in_t = false;
    }
    // t -> infinity witnessed at a horizon far beyond the grid: the distance
    // to 1 must at least halve by t* * 10^12
    const Rat tstar = sorted_ts.back();
    const Rat far = tstar * rat_pow(Rat(10), 12);
    if (Rat(2) * (one - norm(x, far)) > one - norm(x, tstar)) rep.limit_to_one_ok = false;
  }
  for (const auto& t : sorted_ts) {
    if (norm(Rat(0), t) != one) rep.zero_is_one = false;
  }
  // scaling with a spread of field scalars, including ones p divides
  const std::vector<Rat> lambdas = {Rat(1), Rat(-1), Rat(2), Rat(3), Rat(field.p),
                                    make_rat(Int(1), field.p), Rat(6), make_rat(3, 4)};
  for (const auto& x : xs) {
    for (const auto& t : sorted_ts) {
      for (const auto& lam : lambdas) {
        if (lam == 0) continue;
        if (norm(lam * x, t) != norm(x, t / field.abs(lam))) rep.scaling_ok = false;
      }
      for (const auto& y : xs) {
        for (const auto& s : sorted_ts) {
          const Rat lhs = norm(x + y, std::max(s, t));
          const Rat rhs = std::min(norm(x, s), norm(y, t));
          if (lhs < rhs) rep.strong_triangle_ok = false;
        }
      }
    }
  }
  return rep;
}

const std::array<GammaEntry, 15>& gamma_entries() {
  static const std::array<GammaEntry, 15> entries = {{
      {0, 2, 1},
      {13, 1, 1},
      {12, 1, 25},
      {11, 1, 301},
      {10, 1, 2325},
      {9, 1, 12950},
      {8, 1, 55430},
      {7, 1, 189750},
      {6, 1, 533830},
      {5, 1, 1258675},
      {4, 1, 2523675},
      {3, 1, 4350335},
      {2, 1, 6500375},
      {1, 1, 8469060},
      {0, 1, 9657700},
  }};
  return entries;
}

std::array<Rat, 15> gamma_time_scales(const PAdicContext& field) {
  const Rat fact_abs = field.abs(Rat(factorial(25)));
  std::array<Rat, 15> scales;
  for (std::size_t i = 0; i < scales.size(); ++i)
    scales[i] = fact_abs / field.abs(Rat(gamma_entries()[i].divisor));
  return scales;
}

Rat gamma_value(const FuzzyMembership& nprime, const FuzzyControl& sigma, const Rat& x,
                const Rat& t, const PAdicContext& field) {
  if (t <= 0) throw std::domain_error("gamma_value: t must be positive");
  const auto scales = gamma_time_scales(field);
  std::optional<Rat> worst;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const auto& e = gamma_entries()[i];
    const Rat v =
        nprime(sigma(Rat(e.arg1_factor) * x, Rat(e.arg2_factor) * x), scales[i] * t);
    if (!worst || v < *worst) worst = v;
  }
  return *worst;
}

std::vector<G4Row> check_g4(const FuzzyControl& sigma, const FuzzyMembership& nprime,
                            const Rat& kappa, int q,
                            const std::vector<std::pair<Rat, Rat>>& samples,
                            const std::vector<Rat>& ts) {
  if (kappa <= 0) throw std::invalid_argument("check_g4: kappa must be positive");
  if (q != 1 && q != -1) throw std::invalid_argument("check_g4: q must be +-1");
  std::vector<G4Row> rows;
  const Rat kq = (q == 1) ? Rat(1) / kappa : kappa;  // kappa^(-q)
  for (const auto& [c, d] : samples) {
    for (const auto& t : ts) {
      G4Row row;
      row.c = c;
      row.d = d;
      row.t = t;
      row.lhs = nprime(sigma(rat_mul_pow2(c, q), rat_mul_pow2(d, q)), t);
      row.rhs = nprime(sigma(c, d), kq * t);
      row.ok = row.lhs >= row.rhs;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

Rat matrix_fuzzy_norm(const FuzzyMembership& norm, const MatrixOfPoints<Rat>& x,
                      const Rat& t) {
  if (t <= 0) throw std::domain_error("matrix_fuzzy_norm: t must be positive");
  long nonzero = 0;
  for (const auto& e : x.entries)
    if (e != 0) ++nonzero;
  if (nonzero == 0) return Rat(1);
  const Rat share = t / Rat(nonzero);
  std::optional<Rat> worst;
  for (const auto& e : x.entries) {
    if (e == 0) continue;
    Rat v = norm(e, share);
    if (!worst || v < *worst) worst = std::move(v);
  }
  return *worst;
}

bool MinLiftReport::all_ok() const {
  if (!single_entry_equality_ok) return false;
  for (const auto& r : rows)
    if (!r.ok) return false;
  return true;
}

MinLiftReport fuzzy_minlift_check(const FuzzyMembership& norm,
                                  const MatrixOfPoints<Rat>& x,
                                  const std::vector<Rat>& ts) {
  MinLiftReport rep;
  const long nn = static_cast<long>(x.n) * x.n;
  for (const auto& t : ts) {
    MinLiftRow row;
    row.t = t;
    row.lifted = matrix_fuzzy_norm(norm, x, t);
    std::optional<Rat> worst;
    for (const auto& e : x.entries) {
      Rat v = norm(e, t / Rat(nn));
      if (!worst || v < *worst) worst = std::move(v);
    }
    row.equal_split = *worst;
    row.ok = row.lifted >= row.equal_split;
    rep.rows.push_back(std::move(row));

    // single-entry equality, exercised with the matrix's own entries
    for (int r = 0; r < x.n && rep.single_entry_equality_ok; ++r) {
      for (int s = 0; s < x.n; ++s) {
        const auto unit = MatrixOfPoints<Rat>::unit(x.n, r, s, x.at(r, s));
        if (matrix_fuzzy_norm(norm, unit, t) != norm(x.at(r, s), t)) {
          rep.single_entry_equality_ok = false;
          break;
        }
      }
    }
  }
  return rep;
}

bool G6Report::all_ok() const {
  for (const auto& r : scalar_rows)
    if (!r.ok) return false;
  for (const auto& r : matrix_rows)
    if (!r.ok) return false;
  return true;
}

}  // namespace qveq
