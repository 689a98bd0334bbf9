#pragma once

// Exact linear systems over Q and characteristic polynomials.

#include "matrix.hpp"
#include "polynomial.hpp"

#include <optional>
#include <vector>

namespace flatendo {

/// Solution set of A x = b: particular + span(kernel). Absent when inconsistent.
struct LinearSolution {
  RatVector particular;
  std::vector<RatVector> kernel;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational piv = m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) /= piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

/// Particular solution has every free variable set to zero; the kernel basis
/// has one vector per free column.
inline std::optional<LinearSolution> solve_exact(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw InputError("solve_exact: row count does not match right-hand side");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol.particular[pivots[r]] = aug(r, n);
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, f);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

inline std::vector<RatVector> rational_kernel(const RatMatrix& a) {
  return solve_exact(a, RatVector(a.rows(), Rational(0)))->kernel;
}

/// det(xI - M) by the Faddeev-LeVerrier recurrence.
inline RatPoly char_poly(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("char_poly: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix mk(n, n);  // M_0 = 0
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -trace(m * mk) / Rational(static_cast<long>(k));
  }
  return RatPoly(std::move(c));
}

/// Horner evaluation of p at a square matrix.
inline RatMatrix evaluate_at(const RatPoly& p, const RatMatrix& m) {
  RatMatrix acc(m.rows(), m.cols());
  const RatMatrix id = RatMatrix::identity(m.rows());
  for (std::size_t k = p.size(); k-- > 0;) acc = m * acc + p[k] * id;
  return acc;
}

}  // namespace flatendo
