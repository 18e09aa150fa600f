#include <doctest.h>

#include "qveq/fuzzy.hpp"
#include "qveq/rng.hpp"

using namespace qveq;

namespace {

std::vector<Rat> grid_xs(SampleRng& rng, int count) {
  std::vector<Rat> xs;
  for (int i = 0; i < count; ++i) xs.push_back(rng.rational());
  return xs;
}

std::vector<Rat> grid_ts(SampleRng& rng, int count) {
  std::vector<Rat> ts;
  for (int i = 0; i < count; ++i) ts.push_back(rat_abs(rng.nonzero_rational()));
  return ts;
}

}  // namespace

TEST_CASE("p-adic context construction") {
  CHECK_THROWS_AS(PAdicContext::of(Int(4)), std::invalid_argument);
  CHECK_THROWS_AS(PAdicContext::of(Int(1)), std::invalid_argument);
  const auto f29 = PAdicContext::of(Int(29));
  CHECK(f29.abs(Rat(29)) == make_rat(1, 29));
  CHECK(f29.abs(make_rat(1, 29)) == Rat(29));
}

TEST_CASE("the standard membership function satisfies all five axioms") {
  for (long p : {29L, 2L}) {
    const auto field = PAdicContext::of(Int(p));
    const auto norm = standard_fuzzy_norm(field);
    SampleRng rng(100 + static_cast<std::uint64_t>(p));
    const auto xs = grid_xs(rng, 20);
    const auto ts = grid_ts(rng, 20);
    const auto rep = fuzzy_axiom_check(norm, field, xs, ts);
    CHECK(rep.monotone_in_t);
    CHECK(rep.zero_is_one);
    CHECK(rep.scaling_ok);
    CHECK(rep.strong_triangle_ok);
    CHECK(rep.limit_to_one_ok);
  }
}

TEST_CASE("membership grid edge rows") {
  const auto field = PAdicContext::of(Int(29));
  const auto norm = standard_fuzzy_norm(field);
  // x = 0 row is identically 1
  for (int i = 1; i <= 10; ++i) CHECK(norm(Rat(0), make_rat(i, 3)) == 1);
  // lambda = 1 scaling is the identity
  CHECK(norm(Rat(7), Rat(2)) == norm(Rat(7), Rat(2) / field.abs(Rat(1))));
  CHECK_THROWS_AS(norm(Rat(1), Rat(0)), std::domain_error);
  // values stay inside [0,1]
  SampleRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Rat v = norm(rng.rational(), rat_abs(rng.nonzero_rational()));
    CHECK(v >= 0);
    CHECK(v <= 1);
  }
}

TEST_CASE("a flawed membership function is caught by the axiom check") {
  const auto field = PAdicContext::of(Int(29));
  // archimedean absolute value breaks the strong triangle over Q_29
  const FuzzyMembership arch = [](const Rat& x, const Rat& t) -> Rat {
    return Rat(t / (t + rat_abs(x)));
  };
  SampleRng rng(7);
  const auto rep = fuzzy_axiom_check(arch, field, grid_xs(rng, 20), grid_ts(rng, 20));
  CHECK_FALSE(rep.all_ok());
}

TEST_CASE("gamma entry table matches the sigma* aggregate weights") {
  const auto& entries = gamma_entries();
  REQUIRE(entries.size() == 15);
  CHECK(entries[0].divisor == 1);
  CHECK(entries[1].divisor == 1);
  CHECK(entries[2].divisor == 25);
  CHECK(entries[3].divisor == 301);
  CHECK(entries[14].divisor == 9657700);
  // the divisor of each scaled entry equals the sigma* weight
  const auto& weights = sigma_star_entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].arg1_factor == weights[i].arg1_factor);
    CHECK(entries[i].arg2_factor == weights[i].arg2_factor);
    if (i >= 2) CHECK(entries[i].divisor == weights[i].weight);
  }
}

TEST_CASE("gamma time scales: p = 29 collapses every argument to t") {
  const auto field = PAdicContext::of(Int(29));
  // 29 > 25 divides neither 25! nor any divisor: checked exactly
  CHECK(padic_valuation(Rat(factorial(25)), Int(29)) == 0);
  for (const auto& e : gamma_entries()) CHECK(Int(e.divisor) % 29 != 0);
  for (const auto& s : gamma_time_scales(field)) CHECK(s == 1);
}

TEST_CASE("gamma time scales: p = 2 exercises the |25!| factor") {
  const auto field = PAdicContext::of(Int(2));
  const auto scales = gamma_time_scales(field);
  // |25!|_2 = 2^-22 (Legendre), divisor 1 entries keep exactly that
  CHECK(scales[0] == rat_pow2(-22));
  CHECK(scales[1] == rat_pow2(-22));
  // divisor 25 is odd: same scale; divisor 12950 = 2 * 6475: one power back
  CHECK(scales[2] == rat_pow2(-22));
  CHECK(scales[5] == rat_pow2(-21));
  // divisor 8469060 = 2^2 * odd
  CHECK(scales[13] == rat_pow2(-20));
}

TEST_CASE("gamma of the zero control is identically one, and monotone in t") {
  const auto field = PAdicContext::of(Int(29));
  const auto nprime = standard_fuzzy_norm(field);
  const FuzzyControl zero_sigma = [](const Rat&, const Rat&) { return Rat(0); };
  const FuzzyControl sigma = [field](const Rat&, const Rat& d) -> Rat {
    const Rat a = field.abs(d);
    return Rat(a * a);
  };
  SampleRng rng(11);
  for (int i = 0; i < 15; ++i) {
    const Rat x = rng.rational();
    const Rat t = rat_abs(rng.nonzero_rational());
    CHECK(gamma_value(nprime, zero_sigma, x, t, field) == 1);
    CHECK(gamma_value(nprime, sigma, x, Rat(2) * t, field) >=
          gamma_value(nprime, sigma, x, t, field));
  }
  CHECK_THROWS_AS(gamma_value(nprime, zero_sigma, Rat(1), Rat(0), field),
                  std::domain_error);
}

TEST_CASE("(G4) holds for the homogeneous control with the matched kappa") {
  SampleRng rng(13);
  const auto ts = grid_ts(rng, 8);
  std::vector<std::pair<Rat, Rat>> pairs;
  for (int i = 0; i < 10; ++i) pairs.emplace_back(rng.rational(), rng.rational());

  for (long p : {29L, 2L}) {
    const auto field = PAdicContext::of(Int(p));
    const auto nprime = standard_fuzzy_norm(field);
    const FuzzyControl sigma = [field](const Rat&, const Rat& d) -> Rat {
      const Rat a = field.abs(d);
      return Rat(a * a);
    };
    // scaling-exact kappa: |2|_p^(-2) squares the shift of |d|^2 under d -> 2d
    const Rat kappa = p == 2 ? Rat(4) : Rat(1);
    for (const auto& row : check_g4(sigma, nprime, kappa, 1, pairs, ts)) {
      CHECK(row.ok);
      CHECK(row.lhs == row.rhs);  // exact equality by construction
    }
  }

  // constant control with kappa = 1: both sides identical
  const auto field = PAdicContext::of(Int(29));
  const auto nprime = standard_fuzzy_norm(field);
  const FuzzyControl theta = [](const Rat&, const Rat&) { return make_rat(3, 7); };
  for (const auto& row : check_g4(theta, nprime, Rat(1), 1, pairs, ts)) {
    CHECK(row.ok);
    CHECK(row.lhs == row.rhs);
  }

  // zero control holds with equality 1 = 1
  const FuzzyControl zc = [](const Rat&, const Rat&) { return Rat(0); };
  for (const auto& row : check_g4(zc, nprime, Rat(1), 1, pairs, ts))
    CHECK(row.lhs == 1);
}

TEST_CASE("fuzzy fixed point iterates exactly") {
  const RationalPoly mono{{{Rat(1), 25}}};
  const auto constant = fuzzy_fixed_point(mono, 1, 5, make_rat(2, 3));
  for (const auto& v : constant) CHECK(v == rat_pow(make_rat(2, 3), 25));

  const Rat eps = make_rat(3, 5);
  const RationalPoly f{{{Rat(1), 25}, {eps, 1}}};
  const auto it = fuzzy_fixed_point(f, 1, 6, Rat(1));
  for (int k = 1; k <= 6; ++k) CHECK(it[k - 1] == Rat(1) + Rat(eps * rat_pow2(-24 * k)));

  // q = -1 diverges in real absolute value but stays at p-adic distance
  // |eps|_p from the monomial value for odd p
  const auto itm = fuzzy_fixed_point(f, -1, 5, Rat(1));
  const auto field = PAdicContext::of(Int(29));
  for (int k = 1; k <= 5; ++k) {
    CHECK(itm[k - 1] == Rat(1) + Rat(eps * rat_pow2(24 * k)));
    CHECK(field.abs(Rat(itm[k - 1] - 1)) == field.abs(eps));
  }
}

TEST_CASE("(G6): exact solutions give left side identically one") {
  const auto field = PAdicContext::of(Int(29));
  const auto norm = standard_fuzzy_norm(field);
  const auto nprime = standard_fuzzy_norm(field);
  const FuzzyControl sigma = [field](const Rat&, const Rat& d) -> Rat {
    const Rat a = field.abs(d);
    return Rat(a * a);
  };
  const RationalPoly mono{{{Rat(1), 25}}};

  SampleRng rng(17);
  const auto xs = grid_xs(rng, 8);
  const auto ts = grid_ts(rng, 8);
  auto X = MatrixOfPoints<Rat>::zero(2, Rat(0));
  for (auto& e : X.entries) e = rng.rational();

  const auto rep = check_g6(mono, mono, sigma, norm, nprime, Rat(1), field, xs, ts, X);
  CHECK(rep.all_ok());
  for (const auto& row : rep.scalar_rows) CHECK(row.lhs == 1);
  for (const auto& row : rep.matrix_rows) CHECK(row.lhs == 1);

  CHECK_THROWS_AS(
      check_g6(mono, mono, sigma, norm, nprime, rat_pow2(25), field, xs, ts, X),
      std::invalid_argument);
}

TEST_CASE("(G6) scalar case at n = 1 equals the matrix case") {
  const auto field = PAdicContext::of(Int(29));
  const auto norm = standard_fuzzy_norm(field);
  const FuzzyControl sigma = [field](const Rat&, const Rat& d) -> Rat {
    return field.abs(d);
  };
  const Rat c = make_rat(5, 7);
  const RationalPoly f{{{Rat(1), 25}, {make_rat(1, 3), 1}}};
  const RationalPoly mono{{{Rat(1), 25}}};

  auto X = MatrixOfPoints<Rat>::zero(1, Rat(0));
  X.at(0, 0) = c;
  const std::vector<Rat> ts = {Rat(1), Rat(3)};
  const auto rep = check_g6(f, mono, sigma, norm, norm, Rat(1), field, {c}, ts, X);
  REQUIRE(rep.scalar_rows.size() == rep.matrix_rows.size());
  for (std::size_t i = 0; i < rep.scalar_rows.size(); ++i) {
    // n=1: the matrix lift is the scalar membership and n^2 = 1
    CHECK(rep.matrix_rows[i].lhs == rep.scalar_rows[i].lhs);
    CHECK(rep.matrix_rows[i].rhs == rep.scalar_rows[i].rhs);
  }
}

TEST_CASE("matrix fuzzy norm and the min-lift") {
  const auto field = PAdicContext::of(Int(29));
  const auto norm = standard_fuzzy_norm(field);

  auto zero = MatrixOfPoints<Rat>::zero(2, Rat(0));
  CHECK(matrix_fuzzy_norm(norm, zero, Rat(5)) == 1);

  // single entry: exactly the scalar membership
  const auto unit = MatrixOfPoints<Rat>::unit(3, 1, 2, make_rat(7, 3));
  CHECK(matrix_fuzzy_norm(norm, unit, Rat(2)) == norm(make_rat(7, 3), Rat(2)));

  SampleRng rng(19);
  const auto ts = grid_ts(rng, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = MatrixOfPoints<Rat>::zero(2, Rat(0));
    for (auto& e : m.entries) e = rng.rational();
    const auto rep = fuzzy_minlift_check(norm, m, ts);
    CHECK(rep.single_entry_equality_ok);
    CHECK(rep.all_ok());
  }

  // the lift is tight at n = 1
  auto m1 = MatrixOfPoints<Rat>::zero(1, Rat(0));
  m1.at(0, 0) = make_rat(-2, 9);
  const auto rep1 = fuzzy_minlift_check(norm, m1, ts);
  for (const auto& row : rep1.rows) CHECK(row.lifted == row.equal_split);
}

TEST_CASE("exact monomials have fuzzy-null operator image") {
  const auto fam = EquationFamily::of_degree(25);
  const auto field = PAdicContext::of(Int(29));
  const auto norm = standard_fuzzy_norm(field);
  const RationalPoly mono{{{make_rat(4, 9), 25}}};
  SampleRng rng(23);
  for (int i = 0; i < 10; ++i) {
    const Rat h = eval_h(fam, mono, rng.rational(), rng.rational());
    CHECK(h == 0);
    CHECK(norm(h, rat_abs(rng.nonzero_rational())) == 1);
  }
}
