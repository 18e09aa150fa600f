#include <doctest.h>

#include <map>

#include "qveq/equation.hpp"
#include "qveq/rng.hpp"

using namespace qveq;

namespace {

const EquationFamily kFam = EquationFamily::of_degree(25);

// Independent oracle: expand sum_k c_k (u + (s-k)v)^d symbolically as a
// bivariate polynomial in (u, v) via the binomial theorem. This never calls
// eval_h; agreement between the two routes is the point of the test.
std::map<std::pair<int, int>, Rat> expand_h_poly(const EquationFamily& fam, int d) {
  std::map<std::pair<int, int>, Rat> poly;  // (i,j) -> coeff of u^i v^j
  const int s = fam.shift();
  for (int k = 0; k <= fam.degree; ++k) {
    const Rat ck(fam.coefficient(k));
    const long shift = s - k;
    for (int i = 0; i <= d; ++i) {
      // (u + shift*v)^d contributes C(d,i) shift^(d-i) u^i v^(d-i)
      const Rat term = ck * Rat(binomial(d, i)) * rat_pow(Rat(shift), d - i);
      auto& slot = poly[{i, d - i}];
      slot += term;
      if (slot == 0) poly.erase({i, d - i});
    }
  }
  // minus n! v^d
  auto& rhs = poly[{0, d}];
  rhs -= Rat(fam.rhs_factor());
  if (rhs == 0) poly.erase({0, d});
  return poly;
}

RationalPoly monomial(int d, Rat a = Rat(1)) { return RationalPoly{{{a, d}}}; }

}  // namespace

TEST_CASE("family construction and coefficients") {
  CHECK_THROWS_AS(EquationFamily::of_degree(24), std::invalid_argument);
  CHECK_THROWS_AS(EquationFamily::of_degree(0), std::invalid_argument);
  CHECK(kFam.shift() == 13);
  CHECK(kFam.coefficient(0) == 1);
  CHECK(kFam.coefficient(1) == -25);
  CHECK(kFam.coefficient(4) == 12650);
  CHECK_THROWS_AS(kFam.coefficient(26), std::out_of_range);
  CHECK_THROWS_AS(kFam.coefficient(-1), std::out_of_range);

  // coefficients alternate through the binomial row and sum to zero
  Int sum(0);
  for (int k = 0; k <= 25; ++k) sum += kFam.coefficient(k);
  CHECK(sum == 0);
}

TEST_CASE("symbolic expansion: the operator annihilates degrees below 25") {
  // H(x^d)(u,v) = -25! v^d for d < 25, and 0 for d = 25, as polynomials
  for (int d = 0; d <= 25; ++d) {
    const auto poly = expand_h_poly(kFam, d);
    if (d == 25) {
      CHECK(poly.empty());
    } else {
      REQUIRE(poly.size() == 1);
      const auto& [key, coeff] = *poly.begin();
      CHECK(key == std::pair<int, int>{0, d});
      CHECK(coeff == Rat(Int(-kFam.rhs_factor())));
    }
  }
}

TEST_CASE("pointwise evaluation matches the stated cases") {
  auto zero_fn = [](const Rat&) { return Rat(0); };
  CHECK(eval_h(kFam, zero_fn, Rat(1), Rat(1)) == 0);

  auto ident = [](const Rat& x) { return x; };
  CHECK(eval_h(kFam, ident, Rat(0), Rat(1)) == Rat(Int(-factorial(25))));

  CHECK(eval_h(kFam, monomial(25), make_rat(7, 3), make_rat(-2, 5)) == 0);
}

TEST_CASE("exact kernel on random rational pairs") {
  SampleRng rng(7);
  const Rat as[] = {Rat(1), Rat(-3), make_rat(2, 7), make_rat(-11, 13), Rat(5)};
  for (const auto& a : as) {
    const auto f = monomial(25, a);
    for (int i = 0; i < 50; ++i) {
      const Rat u = rng.rational();
      const Rat v = rng.rational();
      CHECK(eval_h(kFam, f, u, v) == 0);
    }
  }
}

TEST_CASE("sub-degree law: H(x^d) = -25! v^d exactly") {
  SampleRng rng(11);
  for (int d = 0; d < 25; ++d) {
    const auto f = monomial(d);
    for (int i = 0; i < 20; ++i) {
      const Rat u = rng.rational();
      const Rat v = rng.rational();
      CHECK(eval_h(kFam, f, u, v) == Rat(Rat(Int(-factorial(25))) * rat_pow(v, d)));
    }
  }
}

TEST_CASE("monomials double: f(2u) = 2^25 f(u) where H f = 0") {
  const auto f = monomial(25, make_rat(3, 4));
  for (long u = -5; u <= 5; ++u) {
    CHECK(f(Rat(2 * u)) == Rat(rat_pow2(25) * f(Rat(u))));
  }
}

TEST_CASE("float mode agrees with exact mode within 2^(-prec+30)") {
  SampleRng rng(13);
  const mpfr_prec_t prec = 192;
  const RationalPoly f{{{Rat(1), 25}, {make_rat(1, 3), 7}}};
  const BigReal tol = BigReal::of(1L, prec).mul_pow2(-prec + 30);
  for (int i = 0; i < 40; ++i) {
    const Rat u = rng.rational();
    const Rat v = rng.rational();
    const Rat exact = eval_h(kFam, f, u, v);
    const auto hv =
        eval_h_conditioned(kFam, f, BigReal::of(u, prec), BigReal::of(v, prec));
    const BigReal err = (hv.value - BigReal::of(exact, prec)).abs();
    // relative to the term magnitude, which conditions the cancellation
    CHECK(err <= tol * (BigReal::of(1L, prec) + hv.term_magnitude));
  }
}

TEST_CASE("conditioning estimate is reported") {
  const auto f = monomial(25);
  const auto hv = eval_h_conditioned(kFam, f, BigReal::of(2L), BigReal::of(1L));
  CHECK(hv.term_magnitude > BigReal::of(0L));
  CHECK(hv.conditioning() >= BigReal::of(0L));
}

TEST_CASE("residual_scan batches and maximizes") {
  std::vector<std::pair<Rat, Rat>> pts;
  SampleRng rng(3);
  for (int i = 0; i < 10; ++i) pts.emplace_back(rng.rational(), Rat(1));

  const auto zero_rep = residual_scan<Rat>(kFam, monomial(25), pts);
  CHECK(zero_rep.max_abs == 0);
  CHECK(zero_rep.samples.size() == 10);

  // f = x^24 at v = 1: every residual is exactly -25!
  const auto rep = residual_scan<Rat>(kFam, monomial(24), pts);
  CHECK(rep.max_abs == Rat(factorial(25)));
  for (const auto& s : rep.samples) CHECK(s.h == Rat(Int(-factorial(25))));

  CHECK_THROWS_AS(residual_scan<Rat>(kFam, monomial(25), {}), std::invalid_argument);
}

TEST_CASE("symmetry checks separate odd solutions from the rest") {
  std::vector<Rat> xs = {Rat(1), Rat(-2), make_rat(3, 5)};
  CHECK(symmetry_checks<Rat>(monomial(25), xs, Rat(0)).all_ok());

  const auto sq = symmetry_checks<Rat>(monomial(2), xs, Rat(0));
  CHECK(sq.zero_ok);
  CHECK_FALSE(sq.all_ok());

  const RationalPoly offset{{{Rat(1), 25}, {Rat(1), 0}}};  // x^25 + 1
  CHECK_FALSE(symmetry_checks<Rat>(offset, xs, Rat(0)).zero_ok);
}

TEST_CASE("small odd degrees behave the same way") {
  for (int n : {3, 5}) {
    const auto fam = EquationFamily::of_degree(n);
    SampleRng rng(17);
    for (int i = 0; i < 20; ++i)
      CHECK(eval_h(fam, monomial(n), rng.rational(), rng.rational()) == 0);
    for (int d = 0; d < n; ++d) {
      const Rat u = rng.rational();
      const Rat v = rng.rational();
      CHECK(eval_h(fam, monomial(d), u, v) == Rat(Rat(Int(-fam.rhs_factor())) * rat_pow(v, d)));
    }
  }
}

TEST_CASE("function spec grammar") {
  CHECK(RationalPoly::parse("zero", 25).terms.empty());
  const auto m = RationalPoly::parse("monomial", 25);
  REQUIRE(m.terms.size() == 1);
  CHECK(m.terms[0].second == 25);

  const auto p = RationalPoly::parse("monomial+power:l=3,eps=1/1000", 25);
  REQUIRE(p.terms.size() == 2);
  CHECK(p.terms[1].first == make_rat(1, 1000));
  CHECK(p.terms[1].second == 3);

  const auto scaled = RationalPoly::parse("monomial:a=-5/3", 7);
  CHECK(scaled.terms[0].first == make_rat(-5, 3));
  CHECK(scaled.terms[0].second == 7);

  CHECK(RationalPoly::parse("power:d=24", 25).terms[0].second == 24);
  CHECK_THROWS_AS(RationalPoly::parse("nope", 25), std::invalid_argument);
  CHECK_THROWS_AS(RationalPoly::parse("power:q=1", 25), std::invalid_argument);
  CHECK_THROWS_AS(RationalPoly::parse("monomial+power:l=3", 25), std::invalid_argument);
  CHECK(RationalPoly::parse("monomial+power:l=3,eps=1/2", 25).str() ==
        "1*x^25 + 1/2*x^3");
}
