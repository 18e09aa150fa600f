#include "qveq/fixture.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qveq {

using nlohmann::json;

extern const char* kCascadeReferenceJson;  // generated from data/cascade_reference.json

Rat FixtureTerm::printed_value(const Int& fact) const {
  switch (kind) {
    case Kind::Exact:
      return Rat(exact_value);
    case Kind::FactMultiple:
      return Rat(exact_value * fact);
    case Kind::Approx: {
      // mantissa "d.ddd" times 10^exp10, exactly
      std::string digits = mantissa;
      long frac = 0;
      const auto dot = digits.find('.');
      if (dot != std::string::npos) {
        frac = static_cast<long>(digits.size() - dot - 1);
        digits.erase(dot, 1);
      }
      Rat v(int_from_string(digits));
      const long e = exp10 - frac;
      Int p10;
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
      return e >= 0 ? Rat(v * p10) : Rat(v / p10);
    }
  }
  throw std::logic_error("unreachable");
}

std::string FixtureTerm::printed_str() const {
  switch (kind) {
    case Kind::Exact:
      return exact_value.get_str();
    case Kind::FactMultiple:
      return exact_value.get_str() + "*25!";
    case Kind::Approx:
      return mantissa + "e" + std::to_string(exp10);
  }
  throw std::logic_error("unreachable");
}

CascadeFixture CascadeFixture::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("fixture parse error: ") + e.what());
  }
  CascadeFixture fx;
  fx.description = doc.value("description", "");
  const auto& seed = doc.at("seed");
  fx.script.seed_minuend = {seed.at("minuend").at("a").get<long>(),
                            seed.at("minuend").at("b").get<long>()};
  fx.script.seed_subtrahend = {seed.at("subtrahend").at("a").get<long>(),
                               seed.at("subtrahend").at("b").get<long>()};
  for (const auto& st : doc.at("script")) {
    fx.script.steps.push_back(
        {InstanceSpec{st.at("a").get<long>(), st.at("b").get<long>()},
         int_from_string(st.at("multiplier").get<std::string>())});
  }
  for (const auto& eq : doc.at("equations")) {
    FixtureEquation fe;
    fe.label = eq.at("label").get<std::string>();
    for (const auto& t : eq.at("terms")) {
      FixtureTerm term;
      term.index = t.at("j").get<long>();
      const std::string kind = t.at("kind").get<std::string>();
      if (kind == "int") {
        term.kind = FixtureTerm::Kind::Exact;
        term.exact_value = int_from_string(t.at("value").get<std::string>());
      } else if (kind == "fact") {
        term.kind = FixtureTerm::Kind::FactMultiple;
        term.exact_value = int_from_string(t.at("multiplier").get<std::string>());
      } else if (kind == "approx") {
        term.kind = FixtureTerm::Kind::Approx;
        term.mantissa = t.at("mantissa").get<std::string>();
        term.exp10 = t.at("exp10").get<int>();
      } else {
        throw std::runtime_error("fixture parse error: unknown term kind '" + kind + "'");
      }
      fe.terms.push_back(std::move(term));
    }
    fx.equations.push_back(std::move(fe));
  }
  return fx;
}

CascadeFixture CascadeFixture::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixture: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const CascadeFixture& CascadeFixture::builtin() {
  static const CascadeFixture fx = parse(kCascadeReferenceJson);
  return fx;
}

namespace {

// |computed - printed| <= 5e-10 * |computed|, decided exactly:
// 2*10^10*|computed - printed| <= 10 * |computed|
bool within_print_tolerance(const Rat& computed, const Rat& printed) {
  if (computed == 0) return printed == 0;
  static const Int kScale = []() {
    Int s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, 10);
    return Int(2 * s);
  }();
  return rat_abs(computed - printed) * kScale <= rat_abs(computed) * 10;
}

double rel_diff_of(const Rat& computed, const Rat& printed) {
  if (computed == 0) return printed == 0 ? 0.0 : 1.0;
  const Rat r = rat_abs(computed - printed) / rat_abs(computed);
  return r.get_d();
}

std::string rat_decimal(const Rat& x) {
  if (rat_is_integer(x)) return x.get_num().get_str();
  return x.get_str();
}

}  // namespace

CascadeDiff diff_against_reference(const std::vector<FormalIdentity>& computed,
                                   const CascadeFixture& fixture,
                                   const EquationFamily& fam) {
  CascadeDiff diff;
  const Int fact = fam.rhs_factor();
  const std::size_t n = std::min(computed.size(), fixture.equations.size());

  for (std::size_t i = 0; i < n; ++i) {
    const auto& eq = fixture.equations[i];
    const auto& comp = computed[i].coeffs;

    // printed terms keyed by index; duplicates flagged as fixture anomalies
    std::map<long, const FixtureTerm*> printed;
    for (const auto& term : eq.terms) {
      auto [it, inserted] = printed.try_emplace(term.index, &term);
      if (!inserted) {
        const bool same = term.printed_value(fact) == it->second->printed_value(fact);
        diff.entries.push_back({eq.label, term.index, "duplicate_printed", "",
                                term.printed_str(), std::nullopt,
                                same ? "identical value printed twice"
                                     : "conflicting values printed for one index"});
      }
    }

    for (const auto& [j, term] : printed) {
      ++diff.comparisons;
      const auto cit = comp.find(j);
      const Rat printed_v = term->printed_value(fact);
      if (cit == comp.end()) {
        diff.entries.push_back({eq.label, j, "printed_only", "0", term->printed_str(),
                                std::nullopt, ""});
        ++diff.mismatches;
        continue;
      }
      const Rat computed_v(cit->second);
      const bool exact = computed_v == printed_v;
      if (exact) {
        ++diff.exact_matches;
        continue;
      }
      if (within_print_tolerance(computed_v, printed_v)) {
        ++diff.print_precision_matches;
        ErratumEntry e{eq.label, j, "match_print_precision", rat_decimal(computed_v),
                       term->printed_str(), rel_diff_of(computed_v, printed_v), ""};
        if (term->kind == FixtureTerm::Kind::FactMultiple) {
          // decompose the computed value around 25! so the dropped remainder is visible
          Int q, r;
          mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cit->second.get_mpz_t(),
                      fact.get_mpz_t());
          if (r * 2 > fact) {
            q += 1;
            r -= fact;
          }
          e.note = "computed = " + q.get_str() + "*25! + " + r.get_str();
        }
        diff.entries.push_back(std::move(e));
        continue;
      }
      ++diff.mismatches;
      diff.entries.push_back({eq.label, j, "mismatch", rat_decimal(computed_v),
                              term->printed_str(), rel_diff_of(computed_v, printed_v),
                              ""});
    }

    for (const auto& [j, c] : comp) {
      if (printed.find(j) == printed.end()) {
        ++diff.comparisons;
        ++diff.mismatches;
        diff.entries.push_back(
            {eq.label, j, "computed_only", rat_decimal(Rat(c)), "", std::nullopt, ""});
      }
    }
  }

  if (computed.size() != fixture.equations.size()) {
    diff.entries.push_back(
        {"(table)", -1, "mismatch", std::to_string(computed.size()),
         std::to_string(fixture.equations.size()), std::nullopt,
         "computed identity count differs from printed equation count"});
    ++diff.mismatches;
  }
  return diff;
}

}  // namespace qveq
