#include "qveq/stability.hpp"

namespace qveq {

const std::array<SigmaStarEntry, 15>& sigma_star_entries() {
  static const std::array<SigmaStarEntry, 15> entries = {{
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

Rat kappa_for_power(long l, int q) {
  if (q != 1 && q != -1) throw std::invalid_argument("kappa_for_power: q must be +-1");
  if (l == kStabilityDegree)
    throw std::invalid_argument("kappa_for_power: l = 25 is excluded");
  const long e = q * (l - kStabilityDegree);
  if (e >= 0)
    throw std::invalid_argument(
        "kappa_for_power: kappa = 2^(q(l-25)) >= 1 for this (l, q) pairing");
  return rat_pow2(e);
}

BigReal kappa_for_power(const BigReal& l, int q) {
  if (q != 1 && q != -1) throw std::invalid_argument("kappa_for_power: q must be +-1");
  const BigReal deg = BigReal::of(static_cast<long>(kStabilityDegree), l.precision());
  if (l == deg) throw std::invalid_argument("kappa_for_power: l = 25 is excluded");
  const BigReal e = (q == 1) ? l - deg : deg - l;
  if (e.sign() >= 0)
    throw std::invalid_argument(
        "kappa_for_power: kappa = 2^(q(l-25)) >= 1 for this (l, q) pairing");
  return BigReal::exp2(e);
}

BigReal SymbolicOmega0::value(const BigReal& omega, const BigReal& a,
                              const BigReal& l) const {
  const mpfr_prec_t prec = omega.precision();
  BigReal acc = BigReal::of(constant, prec);
  for (const auto& [base, coeff] : pow_a)
    acc = acc + BigReal::of(coeff, prec) *
                    BigReal::pow(BigReal::of(static_cast<long>(base), prec), a);
  for (const auto& [base, coeff] : pow_l)
    acc = acc + BigReal::of(coeff, prec) *
                    BigReal::pow(BigReal::of(static_cast<long>(base), prec), l);
  return acc * omega / BigReal::of(factorial(kStabilityDegree), prec);
}

namespace {

// shared by the recomputations: add w * base^a (or ^l), folding base 1 into
// the constant and dropping base 0
void add_term(SymbolicOmega0& t, std::map<int, Int> SymbolicOmega0::* family, int base,
              long weight) {
  if (base == 0) return;
  if (base == 1)
    t.constant += weight;
  else
    (t.*family)[base] += weight;
}

SymbolicOmega0 recompute_power() {
  SymbolicOmega0 t;
  for (const auto& e : sigma_star_entries()) {
    add_term(t, &SymbolicOmega0::pow_l, e.arg1_factor, e.weight);
    add_term(t, &SymbolicOmega0::pow_l, e.arg2_factor, e.weight);
  }
  return t;
}

SymbolicOmega0 recompute_product() {
  SymbolicOmega0 t;
  for (const auto& e : sigma_star_entries()) {
    if (e.arg1_factor == 0) continue;  // ||0||^a kills the whole product
    // arg2 is 1 on every surviving entry, so base^a * 1^b = base^a
    add_term(t, &SymbolicOmega0::pow_a, e.arg1_factor, e.weight);
  }
  return t;
}

SymbolicOmega0 recompute_mixed() {
  SymbolicOmega0 t;
  for (const auto& e : sigma_star_entries()) {
    if (e.arg1_factor != 0) {
      add_term(t, &SymbolicOmega0::pow_a, e.arg1_factor, e.weight);  // product part
      add_term(t, &SymbolicOmega0::pow_l, e.arg1_factor, e.weight);  // ||c||^l part
    }
    add_term(t, &SymbolicOmega0::pow_l, e.arg2_factor, e.weight);  // ||d||^l part
  }
  return t;
}

std::map<int, Int> descending_weights(long first) {
  // 2 -> first, then 4350335, 2523675, ..., 25, 1 up to base 13
  const long tail[] = {4350335, 2523675, 1258675, 533830, 189750, 55430,
                       12950,   2325,    301,     25,     1};
  std::map<int, Int> m;
  m[2] = first;
  for (int base = 3; base <= 13; ++base) m[base] = tail[base - 3];
  return m;
}

ConstantsBundle make_bundle(ControlKind kind, SymbolicOmega0 printed,
                            SymbolicOmega0 recomputed) {
  ConstantsBundle b;
  b.kind = kind;
  b.printed = std::move(printed);
  b.recomputed = std::move(recomputed);
  auto compare_family = [&](const std::map<int, Int>& p, const std::map<int, Int>& r,
                            const std::string& suffix) {
    auto value = [](const std::map<int, Int>& m, int base) {
      const auto it = m.find(base);
      return it == m.end() ? Int(0) : it->second;
    };
    for (int base = 2; base <= 13; ++base) {
      const Int pv = value(p, base);
      const Int rv = value(r, base);
      if (pv != rv)
        b.diffs.push_back({std::to_string(base) + "^" + suffix, pv, rv});
    }
  };
  if (b.printed.constant != b.recomputed.constant)
    b.diffs.push_back({"constant", b.printed.constant, b.recomputed.constant});
  compare_family(b.printed.pow_a, b.recomputed.pow_a, "a");
  compare_family(b.printed.pow_l, b.recomputed.pow_l, "l");
  b.discrepancy = !b.diffs.empty();
  return b;
}

}  // namespace

ConstantsBundle omega0_power() {
  SymbolicOmega0 printed;
  printed.constant = 34861936;
  printed.pow_l = descending_weights(6500376);
  return make_bundle(ControlKind::PowerSum, std::move(printed), recompute_power());
}

ConstantsBundle omega0_product() {
  SymbolicOmega0 printed;
  printed.constant = 8469060;
  printed.pow_a = descending_weights(6500375);
  return make_bundle(ControlKind::PowerProduct, std::move(printed), recompute_product());
}

ConstantsBundle omega0_mixed() {
  SymbolicOmega0 printed;
  printed.constant = 50492552;
  printed.pow_a = descending_weights(6500375);
  printed.pow_l = descending_weights(6500376);
  return make_bundle(ControlKind::Mixed, std::move(printed), recompute_mixed());
}

}  // namespace qveq
