#pragma once

// Formal identities on the symbols f(j*u0): instances of the difference
// equation along a line (u,v) = (a*u0, b*u0) become finitely supported integer
// linear relations, which can be combined and eliminated exactly. The
// doubling identity f(2*u0) = 2^n f(u0) is re-derived here by exact
// elimination; the published hand cascade is replayed separately and diffed.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qveq/equation.hpp"
#include "qveq/numeric.hpp"

namespace qveq {

using CoeffMap = std::map<long, Int>;  // index j -> coefficient, zeros absent

// sum_j coeffs[j] * f(j*u0) = 0, indexes of either sign, j=0 allowed.
struct RawIdentity {
  CoeffMap coeffs;
};

// Normalized: f(0) dropped, f(-j) folded to -f(j); keys >= 1, no zeros.
struct FormalIdentity {
  CoeffMap coeffs;

  bool empty() const { return coeffs.empty(); }
  long max_index() const;
  std::vector<long> support() const;
  bool operator==(const FormalIdentity&) const = default;
};

// the substitution (u,v) := (a*u0, b*u0)
struct InstanceSpec {
  long a = 0;
  long b = 0;
  bool operator==(const InstanceSpec&) const = default;
};

RawIdentity expand_instance_raw(const EquationFamily& fam, InstanceSpec spec);
FormalIdentity normalize(const RawIdentity& raw);
FormalIdentity expand_instance(const EquationFamily& fam, InstanceSpec spec);

// x - m*y, renormalized (zero entries dropped)
FormalIdentity combine(const FormalIdentity& x, const FormalIdentity& y, const Int& m);

// Evaluates the identity against f(x) = a*x^degree at u0: sum c_j * a*(j*u0)^degree.
// Zero for every true solution; the workhorse soundness probe for cascades.
Rat evaluate_on_monomial(const FormalIdentity& id, const Rat& a, const Rat& u0, int degree);

// The derivation of oddness: expand(0,1) + expand(1,-1) must equal exactly
// {1: -n!, -1: -n!} before normalization.
struct OddnessCheck {
  bool pass;
  CoeffMap sum;  // computed left side
};
OddnessCheck oddness_derivation_check(const EquationFamily& fam);

// --- the scripted hand cascade ----------------------------------------------

struct CascadeStep {
  InstanceSpec instance;
  Int multiplier;
};

struct CascadeScript {
  InstanceSpec seed_minuend;     // default (0,2)
  InstanceSpec seed_subtrahend;  // default (12,1); see printed_script()
  std::vector<CascadeStep> steps;
};

// The published 13-step script: seed (0,2)-(12,1), then (12,1)*25, (11,1)*301,
// ..., (1,1)*8469060, (0,1)*2496144.
CascadeScript printed_script();

// Same steps but seeded with (0,2)-(13,1), the substitution that actually
// reproduces the published table's first equation.
CascadeScript corrected_seed_script();

// Returns the seed identity followed by every step output (steps.size()+1 rows).
std::vector<FormalIdentity> scripted_cascade(const EquationFamily& fam,
                                             const CascadeScript& script);

// --- exact elimination -------------------------------------------------------

// (0,2) plus (j,1) for j = shift .. 0. The (shift,1) instance is required:
// without it no combination supported on {1,2} exists (the remaining rows stay
// full-rank on indexes >= 3).
std::vector<InstanceSpec> default_instances(const EquationFamily& fam);

struct EliminationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EliminationStep {
  long eliminated_index;
  std::size_t pivot_row;                 // row id within the working set
  Int pivot_coefficient;
  std::vector<std::size_t> updated_rows;
};

struct EliminationCertificate {
  std::vector<InstanceSpec> instances;
  std::vector<EliminationStep> steps;
  FormalIdentity result;                 // support within {1,2}
  Rat ratio() const;                     // -c1/c2; requires support == {1,2}
};

// Repeatedly eliminates the largest surviving index with exact integer row
// operations (rows are rescaled by their content gcd; among candidate pivots
// the smallest absolute leading coefficient wins). Throws EliminationError if
// the instance set cannot reach a support-{1,2} identity.
EliminationCertificate auto_eliminate(const EquationFamily& fam,
                                      const std::vector<InstanceSpec>& instances);

// --- multiplier pattern -------------------------------------------------------

// For the step at (j,1) the published multiplier should equal
// C(n, s-j) + C(n, s-2-j); the published final step (j=0) breaks the pattern.
struct MultiplierComparison {
  long j;
  Int pattern_value;
  Int scripted_value;
  bool match;
};
std::vector<MultiplierComparison> multiplier_pattern_check(const EquationFamily& fam);

// C(n, s-j) + C(n, s-2-j)
Int pattern_multiplier(const EquationFamily& fam, long j);

}  // namespace qveq
