#pragma once

// Reference fixture for the published cascade table and the exact diff
// against recomputed identities. Printed integers and 25!-multiples compare
// exactly; printed decimal approximations compare at relative tolerance
// 5e-10. Everything suspicious becomes a structured erratum, never a guess.

#include <optional>
#include <string>
#include <vector>

#include "qveq/identity.hpp"
#include "qveq/numeric.hpp"

namespace qveq {

struct FixtureTerm {
  enum class Kind { Exact, Approx, FactMultiple };
  long index = 0;
  Kind kind = Kind::Exact;
  Int exact_value;        // Exact: the coefficient; FactMultiple: the multiplier of 25!
  std::string mantissa;   // Approx only, e.g. "-1.063357344"
  int exp10 = 0;          // Approx only

  // The printed value as an exact rational (approx terms included).
  Rat printed_value(const Int& fact) const;
  std::string printed_str() const;
};

struct FixtureEquation {
  std::string label;
  std::vector<FixtureTerm> terms;
};

struct CascadeFixture {
  std::string description;
  CascadeScript script;  // stated seed substitutions + step multipliers
  std::vector<FixtureEquation> equations;

  static CascadeFixture parse(const std::string& json_text);
  static CascadeFixture load(const std::string& path);
  static const CascadeFixture& builtin();  // compiled-in copy of the data file
};

// One comparison outcome. `verdict` values:
//   match_exact              exact kinds equal
//   match_print_precision    unequal exactly but within 5e-10 relative
//   mismatch                 beyond tolerance (sign flips, exponent slips, ...)
//   printed_only             printed term whose recomputed coefficient is 0
//   computed_only            recomputed term that was never printed
//   duplicate_printed        index printed twice within one equation
struct ErratumEntry {
  std::string equation;
  long index = 0;
  std::string verdict;
  std::string computed;   // decimal string, empty when not applicable
  std::string printed;
  std::optional<double> rel_diff;
  std::string note;
};

struct CascadeDiff {
  std::vector<ErratumEntry> entries;   // only non-exact outcomes are recorded
  std::size_t comparisons = 0;
  std::size_t exact_matches = 0;
  std::size_t print_precision_matches = 0;
  std::size_t mismatches = 0;
};

// Compares computed identities (from scripted_cascade) against the fixture,
// pairing them in order. Extra computed or fixture equations are reported.
CascadeDiff diff_against_reference(const std::vector<FormalIdentity>& computed,
                                   const CascadeFixture& fixture,
                                   const EquationFamily& fam);

}  // namespace qveq
