#pragma once

// Fixed-point stability constructions on the scalar line for the degree-25
// operator: control functions, the 15-term sigma* aggregate, the contraction
// constants, the iteration V_k(c) = 2^(-25kq) f(2^(kq) c) and pointwise bound
// certification. All metric-space statements are certified pointwise on
// declared sample sets; nothing is asserted over an infinite domain.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qveq/equation.hpp"
#include "qveq/scalar.hpp"

namespace qveq {

inline constexpr int kStabilityDegree = 25;

// --- control functions -------------------------------------------------------

template <class T>
struct ControlFunction {
  enum class Kind { General, PowerSum, PowerProduct, Mixed };

  Kind kind = Kind::General;
  std::function<T(const T&, const T&)> oracle;  // General only
  T omega{};
  T exp_a{};  // PowerProduct / Mixed
  T exp_b{};
  T exp_l{};  // PowerSum; for the others l = a + b

  static ControlFunction general(std::function<T(const T&, const T&)> fn) {
    ControlFunction c;
    c.kind = Kind::General;
    c.oracle = std::move(fn);
    return c;
  }
  static ControlFunction power_sum(T omega, T l) {
    ControlFunction c;
    c.kind = Kind::PowerSum;
    c.omega = std::move(omega);
    c.exp_l = std::move(l);
    return c;
  }
  static ControlFunction power_product(T omega, T a, T b) {
    ControlFunction c;
    c.kind = Kind::PowerProduct;
    c.omega = std::move(omega);
    c.exp_a = std::move(a);
    c.exp_b = std::move(b);
    c.exp_l = c.exp_a + c.exp_b;
    return c;
  }
  static ControlFunction mixed(T omega, T a, T b) {
    ControlFunction c = power_product(std::move(omega), std::move(a), std::move(b));
    c.kind = Kind::Mixed;
    return c;
  }

  T operator()(const T& c, const T& d) const {
    using Ops = ScalarOps<T>;
    const T nc = abs_of(c);
    const T nd = abs_of(d);
    switch (kind) {
      case Kind::General:
        return oracle(c, d);
      case Kind::PowerSum:
        return omega * (Ops::pow(nc, exp_l) + Ops::pow(nd, exp_l));
      case Kind::PowerProduct:
        return omega * Ops::pow(nc, exp_a) * Ops::pow(nd, exp_b);
      case Kind::Mixed:
        return omega * (Ops::pow(nc, exp_a) * Ops::pow(nd, exp_b) +
                        Ops::pow(nc, exp_l) + Ops::pow(nd, exp_l));
    }
    throw std::logic_error("unreachable");
  }
};

// --- sigma* -------------------------------------------------------------------

// The fifteen weighted control evaluations whose sum, divided by 25!, bounds
// the doubling defect |f(2c) - 2^25 f(c)|.
struct SigmaStarEntry {
  int arg1_factor;  // sigma(arg1_factor * c, arg2_factor * c)
  int arg2_factor;
  long weight;
};

const std::array<SigmaStarEntry, 15>& sigma_star_entries();

template <class T>
T sigma_star(const ControlFunction<T>& sigma, const T& c) {
  using Ops = ScalarOps<T>;
  T acc = Ops::from_long(0, c);
  for (const auto& e : sigma_star_entries()) {
    acc = acc + Ops::from_long(e.weight, c) *
                    sigma(Ops::from_long(e.arg1_factor, c) * c,
                          Ops::from_long(e.arg2_factor, c) * c);
  }
  return acc / Ops::from_int(factorial(kStabilityDegree), c);
}

// --- contraction constants ----------------------------------------------------

// kappa = 2^(q(l-25)); requires l != 25 and the (q,l) pairing that makes
// kappa < 1. Exact for integer l.
Rat kappa_for_power(long l, int q);
BigReal kappa_for_power(const BigReal& l, int q);

// --- recomputed vs printed omega_0 constants -----------------------------------

// omega_0 * |2^25 - 2^l|^-1 * ||x||^l is the closed-form bound; omega_0 is a
// linear combination of base^a / base^l powers with integer coefficients. The
// symbolic table keeps those coefficients; base 1 contributions fold into the
// constant.
struct SymbolicOmega0 {
  Int constant;
  std::map<int, Int> pow_a;  // coefficient of base^a
  std::map<int, Int> pow_l;  // coefficient of base^l

  // (constant + sum coeff*base^a + sum coeff*base^l) * omega / 25!
  BigReal value(const BigReal& omega, const BigReal& a, const BigReal& l) const;
  bool operator==(const SymbolicOmega0&) const = default;
};

enum class ControlKind { PowerSum, PowerProduct, Mixed };

struct ConstantsBundle {
  ControlKind kind;
  SymbolicOmega0 printed;     // the published closed form, transcribed
  SymbolicOmega0 recomputed;  // termwise expansion of sigma* (authoritative)
  struct TermDiff {
    std::string term;  // "constant", "2^a", "2^l", ...
    Int printed;
    Int recomputed;
  };
  std::vector<TermDiff> diffs;
  bool discrepancy = false;
};

// Symbolic expansion of sigma* for each control family. Exponent values are
// not needed for the tables; pass them to SymbolicOmega0::value for numerics.
ConstantsBundle omega0_power();
ConstantsBundle omega0_product();
ConstantsBundle omega0_mixed();

// --- the fixed-point iteration --------------------------------------------------

template <class T, class F>
std::vector<T> fixed_point_iterate(F&& f, int q, int iterations, const T& c) {
  if (q != 1 && q != -1) throw std::invalid_argument("q must be +1 or -1");
  if (iterations < 1) throw std::invalid_argument("iteration count must be >= 1");
  using Ops = ScalarOps<T>;
  std::vector<T> out;
  out.reserve(iterations);
  for (int k = 1; k <= iterations; ++k) {
    const T arg = Ops::mul_pow2(c, static_cast<long>(k) * q);
    T v = Ops::mul_pow2(f(arg), -25L * k * q);
    if (!Ops::finite(v))
      throw std::overflow_error("fixed_point_iterate: iterate left the representable range");
    out.push_back(std::move(v));
  }
  return out;
}

// --- doubling defect ------------------------------------------------------------

template <class T>
struct DefectRow {
  T c;
  T defect;  // |f(2c) - 2^25 f(c)|
  T bound;   // sigma*(c)
  bool ok;
};

template <class T, class F>
std::vector<DefectRow<T>> check_doubling_defect(F&& f, const ControlFunction<T>& sigma,
                                                const std::vector<T>& samples) {
  using Ops = ScalarOps<T>;
  std::vector<DefectRow<T>> rows;
  rows.reserve(samples.size());
  for (const auto& c : samples) {
    const T two_c = Ops::mul_pow2(c, 1);
    T defect = abs_of(f(two_c) - Ops::mul_pow2(f(c), 25));
    T bound = sigma_star(sigma, c);
    const bool ok = defect <= bound;
    rows.push_back({c, std::move(defect), std::move(bound), ok});
  }
  return rows;
}

// --- certification ---------------------------------------------------------------

template <class T>
struct StabilityConfig {
  int q = 1;
  T kappa;
  int iterations = 20;
  T tolerance;    // absolute slack on certified inequalities
  T noise_floor;  // relative level below which iterate differences are treated
                  // as rounding noise and skipped by the ratio estimator;
                  // zero in exact mode
  std::vector<T> samples;
};

template <class T>
struct SampleCertification {
  T c;
  T sigma_star_value;
  T v_final;
  T bound_rhs;
  T observed;  // |f(c) - V_K(c)|
  std::optional<T> max_ratio;
  bool ratio_ok = true;
  bool bound_ok = false;
  bool doubling_ok = false;
  bool pass() const { return ratio_ok && bound_ok && doubling_ok; }
};

template <class T>
struct StabilityReport {
  std::vector<SampleCertification<T>> rows;
  bool all_pass = false;
  bool kappa_loose = false;  // every observed ratio is below kappa/2
  T max_violation;           // max(observed - bound, 0) over samples
};

// kappa^((1-q)/2) / (2^25 (1-kappa)); no general powers needed since the
// exponent is 0 or 1.
template <class T>
T stability_bound_factor(const T& kappa, int q) {
  using Ops = ScalarOps<T>;
  const T one = Ops::from_long(1, kappa);
  const T numer = (q == 1) ? one : kappa;
  return Ops::mul_pow2(numer / (one - kappa), -25);
}

template <class T, class F>
StabilityReport<T> certify_stability(F&& f, const ControlFunction<T>& sigma,
                                     const StabilityConfig<T>& config) {
  using Ops = ScalarOps<T>;
  if (config.samples.empty())
    throw std::invalid_argument("certify_stability: no samples");
  const T zero = Ops::from_long(0, config.kappa);
  const T one = Ops::from_long(1, config.kappa);
  if (!(config.kappa > zero && config.kappa < one))
    throw std::invalid_argument("certify_stability: kappa must lie in (0,1)");

  const T factor = stability_bound_factor(config.kappa, config.q);
  StabilityReport<T> rep;
  rep.max_violation = zero;
  rep.all_pass = true;
  std::optional<T> global_max_ratio;

  for (const auto& c : config.samples) {
    SampleCertification<T> row;
    row.c = c;
    const auto iterates = fixed_point_iterate(f, config.q, config.iterations, c);

    // empirical Cauchy ratios over differences that carry signal
    for (std::size_t k = 1; k + 1 < iterates.size(); ++k) {
      const T d_prev = abs_of(iterates[k] - iterates[k - 1]);
      const T d_next = abs_of(iterates[k + 1] - iterates[k]);
      if (d_prev <= config.noise_floor * abs_of(iterates[k])) continue;
      if (d_next <= config.noise_floor * abs_of(iterates[k + 1])) continue;
      if (d_prev == zero) continue;
      T ratio = d_next / d_prev;
      if (!row.max_ratio || ratio > *row.max_ratio) row.max_ratio = ratio;
    }
    if (row.max_ratio) {
      row.ratio_ok = *row.max_ratio <= config.kappa + config.tolerance;
      if (!global_max_ratio || *row.max_ratio > *global_max_ratio)
        global_max_ratio = row.max_ratio;
    }

    row.sigma_star_value = sigma_star(sigma, c);
    row.v_final = iterates.back();
    row.bound_rhs = factor * row.sigma_star_value;
    row.observed = abs_of(f(c) - row.v_final);
    row.bound_ok = row.observed <= row.bound_rhs + config.tolerance;
    if (row.observed > row.bound_rhs) {
      const T viol = row.observed - row.bound_rhs;
      if (viol > rep.max_violation) rep.max_violation = viol;
    }

    // V_K(2c) must double like the exact solution. The residual after K steps
    // is controlled by kappa^K sigma*(c), which iterating the scaling
    // hypothesis against the doubling defect gives exactly.
    const T two_c = Ops::mul_pow2(c, 1);
    const auto doubled = fixed_point_iterate(f, config.q, config.iterations, two_c);
    const T diff = abs_of(doubled.back() - Ops::mul_pow2(row.v_final, 25));
    const T kappa_k = Ops::pow_int(config.kappa, config.iterations);
    row.doubling_ok = diff <= kappa_k * row.sigma_star_value + config.tolerance;

    rep.all_pass = rep.all_pass && row.pass();
    rep.rows.push_back(std::move(row));
  }

  rep.kappa_loose =
      global_max_ratio && *global_max_ratio <= Ops::mul_pow2(config.kappa, -1);
  return rep;
}

// --- contraction of the iteration map --------------------------------------------

template <class T>
struct ContractionReport {
  std::optional<T> nu;  // dominance witness: max |f-g| / sigma*
  std::vector<long> non_dominated;  // sample positions with sigma*=0 but f != g
  bool pass = false;    // |Pf - Pg| <= kappa * nu * sigma* at every sample
};

template <class T, class F, class G>
ContractionReport<T> contraction_check(F&& f, G&& g, const ControlFunction<T>& sigma,
                                       int q, const T& kappa,
                                       const std::vector<T>& samples,
                                       const T& tolerance) {
  using Ops = ScalarOps<T>;
  const T zero = Ops::from_long(0, kappa);
  ContractionReport<T> rep;

  std::vector<T> sig;
  sig.reserve(samples.size());
  for (long i = 0; i < static_cast<long>(samples.size()); ++i) {
    const T& c = samples[i];
    sig.push_back(sigma_star(sigma, c));
    const T diff = abs_of(f(c) - g(c));
    if (sig.back() == zero) {
      if (diff != zero) rep.non_dominated.push_back(i);
      continue;
    }
    T ratio = diff / sig.back();
    if (!rep.nu || ratio > *rep.nu) rep.nu = ratio;
  }
  if (!rep.nu) rep.nu = zero;

  rep.pass = rep.non_dominated.empty();
  auto apply_p = [&](auto&& fn, const T& c) {
    return Ops::mul_pow2(fn(Ops::mul_pow2(c, q)), -25 * q);
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const T& c = samples[i];
    const T lhs = abs_of(apply_p(f, c) - apply_p(g, c));
    const T rhs = kappa * *rep.nu * sig[i] + tolerance;
    if (lhs > rhs) rep.pass = false;
  }
  return rep;
}

// --- demonstration omega ----------------------------------------------------------

// For the perturbation delta(x) = eps*x^l the operator defect is exactly
// -25! * delta(d), so omega = 25!*|eps| dominates everywhere; the grid maximum
// is reported next to the closed form.
template <class T>
struct OmegaDerivation {
  T grid_max;
  T closed_form;
  const T& chosen() const { return closed_form; }
};

template <class T>
OmegaDerivation<T> derive_power_sum_omega(const EquationFamily& fam, const T& eps,
                                          const T& l,
                                          const std::vector<std::pair<T, T>>& pairs) {
  using Ops = ScalarOps<T>;
  const T zero = Ops::from_long(0, eps);
  OmegaDerivation<T> d;
  d.closed_form = Ops::from_int(fam.rhs_factor(), eps) * abs_of(eps);
  d.grid_max = zero;
  for (const auto& [c, dd] : pairs) {
    const T denom = Ops::pow(abs_of(c), l) + Ops::pow(abs_of(dd), l);
    if (denom == zero) continue;
    const T defect = d.closed_form * Ops::pow(abs_of(dd), l);
    const T ratio = defect / denom;
    if (ratio > d.grid_max) d.grid_max = ratio;
  }
  return d;
}

}  // namespace qveq
