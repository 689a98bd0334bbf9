#pragma once

// Smith and Hermite normal forms over Z, with the unimodular transforms, plus
// integer solving and integer kernels built on them.

#include "matrix.hpp"

#include <optional>
#include <vector>

namespace flatendo {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SNFResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

inline void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

inline void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Elementary-operation Smith normal form. Entries stay in arbitrary
/// precision, so intermediate blow-up cannot overflow.
inline SNFResult smith_normal_form(const IntMatrix& a) {
  using detail::add_col_multiple;
  using detail::add_row_multiple;
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d(a);
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second)))) best = {i, j};
      if (!best) break;
      d.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = detail::floor_div(d(i, t), d(t, t));
        add_row_multiple(d, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = detail::floor_div(d(t, j), d(t, t));
        add_col_multiple(d, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into the pivot row and reduce again.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      add_row_multiple(d, t, *bad_row, Integer(1));
      add_row_multiple(u, t, *bad_row, Integer(1));
    }
    if (t < m && t < n && d(t, t) < 0) {
      detail::negate_row(d, t);
      detail::negate_row(u, t);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

/// Row-style Hermite normal form of the lattice spanned by the given integer
/// vectors: pivots positive, entries above each pivot reduced into [0, pivot).
/// Zero vectors are dropped.
inline std::vector<IntVector> hermite_basis(const std::vector<IntVector>& vectors, std::size_t dim) {
  std::vector<IntVector> rows;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InputError("hermite_basis: vector length mismatch");
    rows.push_back(v);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero remains.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (!best || abs(rows[i][c]) < abs(rows[*best][c]))) best = i;
      if (!best) break;
      std::swap(rows[r], rows[*best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = detail::floor_div(rows[i][c], rows[r][c]);
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows.size() || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = detail::floor_div(rows[i][c], rows[r][c]);
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Integer solution set of A x = b; absent when no integer solution exists.
struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel;
};

inline std::optional<IntegerSolution> integer_solve(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw InputError("integer_solve: row count does not match right-hand side");
  SNFResult snf = smith_normal_form(a);
  IntVector ub = snf.U * b;
  const std::size_t r = snf.rank();
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (ub[i] % snf.D(i, i) != 0) return std::nullopt;
    y[i] = ub[i] / snf.D(i, i);
  }
  for (std::size_t i = r; i < ub.size(); ++i)
    if (ub[i] != 0) return std::nullopt;

  IntegerSolution sol;
  sol.particular = snf.V * y;
  std::vector<IntVector> kernel;
  for (std::size_t j = r; j < a.cols(); ++j) kernel.push_back(snf.V.column(j));
  sol.kernel = hermite_basis(kernel, a.cols());
  return sol;
}

/// Basis of {x in Z^k : A x = 0} in Hermite normal form.
inline std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  return integer_solve(a, IntVector(a.rows(), Integer(0)))->kernel;
}

}  // namespace flatendo
