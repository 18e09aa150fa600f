#include "qveq/identity.hpp"

#include <algorithm>

namespace qveq {

long FormalIdentity::max_index() const {
  if (coeffs.empty()) throw std::logic_error("max_index of empty identity");
  return coeffs.rbegin()->first;
}

std::vector<long> FormalIdentity::support() const {
  std::vector<long> out;
  out.reserve(coeffs.size());
  for (const auto& [j, c] : coeffs) out.push_back(j);
  return out;
}

RawIdentity expand_instance_raw(const EquationFamily& fam, InstanceSpec spec) {
  RawIdentity raw;
  const int s = fam.shift();
  for (int k = 0; k <= fam.degree; ++k) {
    const long j = spec.a + (s - k) * spec.b;
    raw.coeffs[j] += fam.coefficient(k);
  }
  raw.coeffs[spec.b] -= fam.rhs_factor();
  std::erase_if(raw.coeffs, [](const auto& kv) { return kv.second == 0; });
  return raw;
}

FormalIdentity normalize(const RawIdentity& raw) {
  FormalIdentity out;
  for (const auto& [j, c] : raw.coeffs) {
    if (j == 0) continue;  // f(0) = 0
    if (j > 0)
      out.coeffs[j] += c;
    else
      out.coeffs[-j] -= c;  // f(-j) = -f(j)
  }
  std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == 0; });
  return out;
}

FormalIdentity expand_instance(const EquationFamily& fam, InstanceSpec spec) {
  return normalize(expand_instance_raw(fam, spec));
}

FormalIdentity combine(const FormalIdentity& x, const FormalIdentity& y, const Int& m) {
  FormalIdentity out = x;
  for (const auto& [j, c] : y.coeffs) {
    Int& slot = out.coeffs[j];
    slot -= m * c;
    if (slot == 0) out.coeffs.erase(j);
  }
  return out;
}

Rat evaluate_on_monomial(const FormalIdentity& id, const Rat& a, const Rat& u0, int degree) {
  Rat acc(0);
  for (const auto& [j, c] : id.coeffs)
    acc += Rat(c) * a * rat_pow(Rat(j) * u0, degree);
  return acc;
}

OddnessCheck oddness_derivation_check(const EquationFamily& fam) {
  const RawIdentity r1 = expand_instance_raw(fam, {0, 1});
  const RawIdentity r2 = expand_instance_raw(fam, {1, -1});
  CoeffMap sum = r1.coeffs;
  for (const auto& [j, c] : r2.coeffs) {
    sum[j] += c;
    if (sum[j] == 0) sum.erase(j);
  }
  CoeffMap expected;
  expected[1] = -fam.rhs_factor();
  expected[-1] = -fam.rhs_factor();
  return OddnessCheck{sum == expected, std::move(sum)};
}

namespace {

const long kPrintedMultipliers[13] = {25,     301,     2325,    12950,   55430,
                                      189750, 533830,  1258675, 2523675, 4350335,
                                      6500375, 8469060, 2496144};

}  // namespace

CascadeScript printed_script() {
  CascadeScript s;
  s.seed_minuend = {0, 2};
  s.seed_subtrahend = {12, 1};
  for (int i = 0; i < 13; ++i)
    s.steps.push_back({InstanceSpec{12 - i, 1}, Int(kPrintedMultipliers[i])});
  return s;
}

CascadeScript corrected_seed_script() {
  CascadeScript s = printed_script();
  s.seed_subtrahend = {13, 1};
  return s;
}

std::vector<FormalIdentity> scripted_cascade(const EquationFamily& fam,
                                             const CascadeScript& script) {
  for (const auto& st : script.steps)
    if (st.multiplier == 0)
      throw std::invalid_argument("scripted_cascade: zero multiplier");
  std::vector<FormalIdentity> out;
  FormalIdentity cur = combine(expand_instance(fam, script.seed_minuend),
                               expand_instance(fam, script.seed_subtrahend), Int(1));
  out.push_back(cur);
  for (const auto& st : script.steps) {
    cur = combine(cur, expand_instance(fam, st.instance), st.multiplier);
    out.push_back(cur);
  }
  return out;
}

std::vector<InstanceSpec> default_instances(const EquationFamily& fam) {
  std::vector<InstanceSpec> out;
  out.push_back({0, 2});
  for (long j = fam.shift(); j >= 0; --j) out.push_back({j, 1});
  return out;
}

namespace {

// divide by the content gcd and make the leading (largest-index) coefficient
// positive; identities are scale-invariant
void content_reduce(FormalIdentity& row) {
  if (row.coeffs.empty()) return;
  Int g(0);
  for (const auto& [j, c] : row.coeffs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  const bool flip = row.coeffs.rbegin()->second < 0;
  for (auto& [j, c] : row.coeffs) {
    c /= g;
    if (flip) c = -c;
  }
}

bool is_target(const FormalIdentity& row) {
  if (row.coeffs.empty()) return false;
  for (const auto& [j, c] : row.coeffs)
    if (j > 2) return false;
  return true;
}

}  // namespace

Rat EliminationCertificate::ratio() const {
  const auto it1 = result.coeffs.find(1);
  const auto it2 = result.coeffs.find(2);
  if (result.coeffs.size() != 2 || it1 == result.coeffs.end() || it2 == result.coeffs.end())
    throw std::logic_error("ratio: result support is not {1,2}");
  return make_rat(-it1->second, it2->second);
}

EliminationCertificate auto_eliminate(const EquationFamily& fam,
                                      const std::vector<InstanceSpec>& instances) {
  EliminationCertificate cert;
  cert.instances = instances;

  std::vector<FormalIdentity> rows;
  for (const auto& spec : instances) {
    FormalIdentity row = expand_instance(fam, spec);
    content_reduce(row);
    if (!row.empty()) rows.push_back(std::move(row));
  }

  while (true) {
    for (const auto& row : rows) {
      if (is_target(row)) {
        cert.result = row;
        return cert;
      }
    }
    if (rows.empty())
      throw EliminationError(
          "auto_eliminate: instance set exhausted before reaching support {1,2}");

    long target = 0;
    for (const auto& row : rows) target = std::max(target, row.max_index());

    // pivot: smallest |leading coefficient| among rows carrying the index
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto it = rows[i].coeffs.find(target);
      if (it == rows[i].coeffs.end()) continue;
      if (pivot == rows.size() ||
          cmp(abs(it->second), abs(rows[pivot].coeffs.at(target))) < 0)
        pivot = i;
    }

    EliminationStep step;
    step.eliminated_index = target;
    step.pivot_row = pivot;
    step.pivot_coefficient = rows[pivot].coeffs.at(target);

    std::vector<FormalIdentity> next;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot) continue;  // pivot row is retired with its index
      const auto it = rows[i].coeffs.find(target);
      if (it == rows[i].coeffs.end()) {
        next.push_back(std::move(rows[i]));
        continue;
      }
      // pivot_coeff * row - row_coeff * pivot, then content-reduce
      FormalIdentity scaled;
      for (const auto& [j, c] : rows[i].coeffs) scaled.coeffs[j] = step.pivot_coefficient * c;
      FormalIdentity updated = combine(scaled, rows[pivot], it->second);
      content_reduce(updated);
      step.updated_rows.push_back(i);
      if (!updated.empty()) next.push_back(std::move(updated));
    }
    cert.steps.push_back(std::move(step));
    rows = std::move(next);
  }
}

Int pattern_multiplier(const EquationFamily& fam, long j) {
  const int s = fam.shift();
  return binomial(static_cast<unsigned>(fam.degree), s - j) +
         binomial(static_cast<unsigned>(fam.degree), s - 2 - j);
}

std::vector<MultiplierComparison> multiplier_pattern_check(const EquationFamily& fam) {
  const CascadeScript script = printed_script();
  std::vector<MultiplierComparison> out;
  for (const auto& st : script.steps) {
    const Int expected = pattern_multiplier(fam, st.instance.a);
    out.push_back({st.instance.a, expected, st.multiplier, expected == st.multiplier});
  }
  return out;
}

}  // namespace qveq
