#include <doctest.h>

#include "qveq/matrix.hpp"
#include "qveq/rng.hpp"

using namespace qveq;

namespace {

const EquationFamily kFam = EquationFamily::of_degree(25);

MatrixOfPoints<Rat> random_matrix(int n, SampleRng& rng) {
  auto m = MatrixOfPoints<Rat>::zero(n, Rat(0));
  for (auto& e : m.entries) e = rng.rational();
  return m;
}

}  // namespace

TEST_CASE("entrywise application") {
  SampleRng rng(71);
  auto x = random_matrix(3, rng);

  const auto same = lift_apply([](const Rat& v) { return v; }, x);
  CHECK(same.entries == x.entries);

  auto one = MatrixOfPoints<Rat>::zero(1, Rat(0));
  one.at(0, 0) = make_rat(3, 7);
  const RationalPoly cube{{{Rat(1), 3}}};
  CHECK(lift_apply(cube, one).at(0, 0) == cube(one.at(0, 0)));

  auto m2 = MatrixOfPoints<Rat>::zero(2, Rat(0));
  m2.entries = {Rat(1), Rat(2), Rat(3), Rat(4)};
  const RationalPoly m25{{{Rat(1), 25}}};
  const auto powed = lift_apply(m25, m2);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(powed.entries[i] == rat_pow(m2.entries[i], 25));
}

TEST_CASE("entrywise operator lift") {
  SampleRng rng(73);
  const RationalPoly mono{{{Rat(1), 25}}};
  for (int n = 1; n <= 4; ++n) {
    const auto x = random_matrix(n, rng);
    const auto y = random_matrix(n, rng);
    const auto h = lift_h(kFam, mono, x, y);
    for (const auto& e : h.entries) CHECK(e == 0);
  }

  // n = 1 reduces to the scalar evaluation
  auto x1 = MatrixOfPoints<Rat>::zero(1, Rat(0));
  auto y1 = MatrixOfPoints<Rat>::zero(1, Rat(0));
  x1.at(0, 0) = make_rat(5, 3);
  y1.at(0, 0) = make_rat(-1, 2);
  const RationalPoly sq{{{Rat(1), 2}}};
  CHECK(lift_h(kFam, sq, x1, y1).at(0, 0) == eval_h(kFam, sq, x1.at(0, 0), y1.at(0, 0)));

  // f(x) = x with y = ones: every entry is -25!
  auto ones = MatrixOfPoints<Rat>::zero(2, Rat(0));
  for (auto& e : ones.entries) e = Rat(1);
  const auto x2 = random_matrix(2, rng);
  const RationalPoly ident{{{Rat(1), 1}}};
  for (const auto& e : lift_h(kFam, ident, x2, ones).entries)
    CHECK(e == Rat(Int(-factorial(25))));

  auto y3 = MatrixOfPoints<Rat>::zero(3, Rat(0));
  CHECK_THROWS_AS(lift_h(kFam, mono, x2, y3), std::invalid_argument);
}

TEST_CASE("norm axioms hold on random matrices for both variants") {
  SampleRng rng(79);
  for (const auto kind : {MatrixNormKind::EntrywiseMax, MatrixNormKind::EntrywiseSum}) {
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + static_cast<int>(rng.uniform_int(0, 2));
      const auto x = random_matrix(n, rng);
      const auto row = norm_axiom_check(kind, x);
      CHECK(row.single_entry_ok);
      CHECK(row.sum_bound_ok);
    }
  }

  auto zero = MatrixOfPoints<Rat>::zero(3, Rat(0));
  CHECK(matrix_norm(zero, MatrixNormKind::EntrywiseMax) == 0);
  CHECK(matrix_norm(zero, MatrixNormKind::EntrywiseSum) == 0);

  auto e11 = MatrixOfPoints<Rat>::unit(3, 0, 0, make_rat(-5, 2));
  CHECK(matrix_norm(e11, MatrixNormKind::EntrywiseMax) == make_rat(5, 2));
  CHECK(matrix_norm(e11, MatrixNormKind::EntrywiseSum) == make_rat(5, 2));
}

TEST_CASE("matrix bound transfer from the scalar certification") {
  const RationalPoly f{{{Rat(1), 25}, {Rat(1), 2}}};
  const RationalPoly v{{{Rat(1), 25}}};
  const auto control = ControlFunction<Rat>::power_sum(Rat(factorial(25)), Rat(2));
  const Rat kappa = rat_pow2(-23);
  SampleRng rng(83);

  for (const auto kind : {MatrixNormKind::EntrywiseMax, MatrixNormKind::EntrywiseSum}) {
    for (int n = 1; n <= 3; ++n) {
      const auto x = random_matrix(n, rng);
      const auto row = matrix_bound_check<Rat>(f, v, control, kind, x, kappa, 1, Rat(0));
      CHECK(row.ok);

      // closed form: |f - v| = c^2 entrywise
      Rat expected_lhs(0);
      for (const auto& e : x.entries) {
        const Rat c2 = rat_pow(e, 2);
        if (kind == MatrixNormKind::EntrywiseSum)
          expected_lhs += c2;
        else
          expected_lhs = std::max(expected_lhs, c2);
      }
      CHECK(row.lhs == expected_lhs);
    }
  }

  // f = v: zero left side
  const auto x = random_matrix(2, rng);
  const auto trivial = matrix_bound_check<Rat>(v, v, control,
                                               MatrixNormKind::EntrywiseMax, x, kappa,
                                               1, Rat(0));
  CHECK(trivial.lhs == 0);
  CHECK(trivial.ok);
}

TEST_CASE("n = 1 reproduces the scalar bound exactly") {
  const RationalPoly f{{{Rat(1), 25}, {Rat(1), 2}}};
  const RationalPoly v{{{Rat(1), 25}}};
  const auto control = ControlFunction<Rat>::power_sum(Rat(factorial(25)), Rat(2));
  const Rat kappa = rat_pow2(-23);
  const Rat c = make_rat(7, 4);

  auto x = MatrixOfPoints<Rat>::zero(1, Rat(0));
  x.at(0, 0) = c;
  for (const auto kind : {MatrixNormKind::EntrywiseMax, MatrixNormKind::EntrywiseSum}) {
    const auto row = matrix_bound_check<Rat>(f, v, control, kind, x, kappa, 1, Rat(0));
    CHECK(row.lhs == rat_abs(f(c) - v(c)));
    CHECK(row.rhs == Rat(stability_bound_factor(kappa, 1) * sigma_star(control, c)));
  }
}

TEST_CASE("matrix size limits") {
  CHECK_THROWS_AS(MatrixOfPoints<Rat>::zero(0, Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(MatrixOfPoints<Rat>::zero(9, Rat(0)), std::invalid_argument);
  CHECK_NOTHROW(MatrixOfPoints<Rat>::zero(8, Rat(0)));
}
