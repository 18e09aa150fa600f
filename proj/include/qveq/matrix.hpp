#pragma once

// Entrywise lifts of the scalar checks to n x n matrices of inputs, with the
// two concrete matrix norms whose properties the bound transfer uses:
// a single-entry matrix has that entry's norm, and the norm is at most the
// sum of the entry norms.

#include <stdexcept>
#include <vector>

#include "qveq/equation.hpp"
#include "qveq/scalar.hpp"
#include "qveq/stability.hpp"

namespace qveq {

inline constexpr int kMaxMatrixSize = 8;

template <class T>
struct MatrixOfPoints {
  int n = 0;
  std::vector<T> entries;  // row-major, n*n

  static MatrixOfPoints zero(int n, const T& like) {
    if (n < 1 || n > kMaxMatrixSize)
      throw std::invalid_argument("MatrixOfPoints: size out of range");
    return MatrixOfPoints{n, std::vector<T>(static_cast<std::size_t>(n) * n,
                                            ScalarOps<T>::from_long(0, like))};
  }

  const T& at(int r, int s) const { return entries[static_cast<std::size_t>(r) * n + s]; }
  T& at(int r, int s) { return entries[static_cast<std::size_t>(r) * n + s]; }

  // E_rs tensor x: x at (r,s), zero elsewhere
  static MatrixOfPoints unit(int n, int r, int s, const T& x) {
    MatrixOfPoints m = zero(n, x);
    m.at(r, s) = x;
    return m;
  }
};

enum class MatrixNormKind { EntrywiseMax, EntrywiseSum };

template <class T>
T matrix_norm(const MatrixOfPoints<T>& m, MatrixNormKind kind) {
  if (m.entries.empty()) throw std::invalid_argument("matrix_norm: empty matrix");
  T acc = abs_of(m.entries.front());
  for (std::size_t i = 1; i < m.entries.size(); ++i) {
    T a = abs_of(m.entries[i]);
    if (kind == MatrixNormKind::EntrywiseSum)
      acc = acc + a;
    else if (a > acc)
      acc = std::move(a);
  }
  return acc;
}

template <class T, class F>
MatrixOfPoints<T> lift_apply(F&& f, const MatrixOfPoints<T>& x) {
  MatrixOfPoints<T> out;
  out.n = x.n;
  out.entries.reserve(x.entries.size());
  for (const auto& e : x.entries) out.entries.push_back(f(e));
  return out;
}

template <class T, class F>
MatrixOfPoints<T> lift_h(const EquationFamily& fam, F&& f, const MatrixOfPoints<T>& x,
                         const MatrixOfPoints<T>& y) {
  if (x.n != y.n) throw std::invalid_argument("lift_h: shape mismatch");
  MatrixOfPoints<T> out;
  out.n = x.n;
  out.entries.reserve(x.entries.size());
  for (std::size_t i = 0; i < x.entries.size(); ++i)
    out.entries.push_back(eval_h(fam, f, x.entries[i], y.entries[i]));
  return out;
}

// --- norm axioms ----------------------------------------------------------------

template <class T>
struct NormAxiomRow {
  bool single_entry_ok;  // ||E_rs tensor x|| == |x| for every slot
  bool sum_bound_ok;     // ||X|| <= sum |x_rs|
};

template <class T>
NormAxiomRow<T> norm_axiom_check(MatrixNormKind kind, const MatrixOfPoints<T>& x) {
  using Ops = ScalarOps<T>;
  NormAxiomRow<T> row{true, true};
  for (int r = 0; r < x.n; ++r) {
    for (int s = 0; s < x.n; ++s) {
      const auto unit = MatrixOfPoints<T>::unit(x.n, r, s, x.at(r, s));
      if (matrix_norm(unit, kind) != abs_of(x.at(r, s))) row.single_entry_ok = false;
    }
  }
  T sum = Ops::from_long(0, x.entries.front());
  for (const auto& e : x.entries) sum = sum + abs_of(e);
  row.sum_bound_ok = matrix_norm(x, kind) <= sum;
  return row;
}

// --- the lifted stability bound ----------------------------------------------------

template <class T>
struct MatrixBoundRow {
  T lhs;    // ||f_n(X) - V_n(X)||_n
  T rhs;    // sum over entries of the scalar bound
  bool ok;
};

// ||lift(f)(X) - lift(V)(X)||_n <= sum_rs kappa^((1-q)/2)/(2^25(1-kappa)) sigma*(x_rs)
template <class T, class F, class G>
MatrixBoundRow<T> matrix_bound_check(F&& f, G&& v, const ControlFunction<T>& sigma,
                                     MatrixNormKind kind, const MatrixOfPoints<T>& x,
                                     const T& kappa, int q, const T& tolerance) {
  using Ops = ScalarOps<T>;
  const T factor = stability_bound_factor(kappa, q);
  MatrixOfPoints<T> diff;
  diff.n = x.n;
  diff.entries.reserve(x.entries.size());
  for (const auto& e : x.entries) diff.entries.push_back(f(e) - v(e));
  MatrixBoundRow<T> row;
  row.lhs = matrix_norm(diff, kind);
  row.rhs = Ops::from_long(0, kappa);
  for (const auto& e : x.entries) row.rhs = row.rhs + factor * sigma_star(sigma, e);
  row.ok = row.lhs <= row.rhs + tolerance;
  return row;
}

}  // namespace qveq
