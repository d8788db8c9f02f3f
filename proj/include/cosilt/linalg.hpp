#pragma once

// Exact dense linear algebra. Matrices are row-major Eigen matrices over an
// exact field; pivoting always picks the first nonzero entry so bases are
// reproducible.

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "cosilt/errors.hpp"
#include "cosilt/field.hpp"

namespace cosilt {

template <class F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

template <class F>
Mat<F> zeros(Index rows, Index cols) {
  return Mat<F>::Constant(rows, cols, F(0));
}

template <class F>
Mat<F> identity(Index n) {
  Mat<F> m = zeros<F>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = F(1);
  return m;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <class F>
bool equal(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// Provides an explicit product so Eigen's lazy evaluators never see a
// zero-sized inner dimension with an uninitialized accumulator.
template <class F>
Mat<F> mul(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Mat<F> c = zeros<F>(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const F& x = a(i, k);
      if (x.is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

template <class F>
struct RowEchelon {
  Mat<F> reduced;
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row-echelon form.
template <class F>
RowEchelon<F> rref(Mat<F> m) {
  RowEchelon<F> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    F inv = m(row, col).inverse();
    for (Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      F factor = m(i, col);
      for (Index j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class F>
Index rank(const Mat<F>& m) {
  return rref(m).rank();
}

/// Basis of the right null space, one vector per column.
template <class F>
Mat<F> kernel_basis(const Mat<F>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Mat<F> basis = zeros<F>(m.cols(), m.cols() - e.rank());
  Index k = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = F(1);
    for (Index r = 0; r < e.rank(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free);
    ++k;
  }
  return basis;
}

/// Some x with a x = b, or nothing when the system is inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b) {
  if (a.rows() != b.size())
    throw DimensionError("solve: " + std::to_string(a.rows()) + " equations, right side of length " +
                         std::to_string(b.size()));
  Mat<F> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<F> x = Vec<F>::Constant(a.cols(), F(0));
  for (Index r = 0; r < e.rank(); ++r) x(e.pivots[r]) = e.reduced(r, a.cols());
  return x;
}

/// Solves a X = B column by column; nothing if any column is inconsistent.
template <class F>
std::optional<Mat<F>> solve_matrix(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_matrix: row counts differ");
  Mat<F> aug(a.rows(), a.cols() + b.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(b.cols()) = b;
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() >= a.cols()) return std::nullopt;
  Mat<F> x = zeros<F>(a.cols(), b.cols());
  for (Index r = 0; r < e.rank(); ++r)
    for (Index j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  auto x = solve_matrix(m, identity<F>(m.rows()));
  if (!x) throw std::domain_error("inverse of a singular matrix");
  return *x;
}

template <class F>
bool is_invertible(const Mat<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Independent columns spanning the column space (the pivot columns).
template <class F>
Mat<F> column_space(const Mat<F>& m) {
  auto e = rref(m);
  Mat<F> out(m.rows(), e.rank());
  for (Index k = 0; k < e.rank(); ++k) out.col(k) = m.col(e.pivots[k]);
  return out;
}

template <class F>
Mat<F> hstack(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  Mat<F> out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

template <class F>
Mat<F> vstack(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
  Mat<F> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

/// Standard basis vectors completing the independent columns of `sub` to a
/// basis of the ambient space.
template <class F>
Mat<F> complement(const Mat<F>& sub) {
  Index n = sub.rows();
  auto e = rref(hstack(sub, identity<F>(n)));
  std::vector<Index> extra;
  for (Index p : e.pivots)
    if (p >= sub.cols()) extra.push_back(p - sub.cols());
  Mat<F> out = zeros<F>(n, static_cast<Index>(extra.size()));
  for (std::size_t k = 0; k < extra.size(); ++k) out(extra[k], static_cast<Index>(k)) = F(1);
  return out;
}

/// Basis of the intersection of two column spaces (inputs need not be independent).
template <class F>
Mat<F> intersect(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() == 0 || b.cols() == 0) return zeros<F>(a.rows(), 0);
  Mat<F> k = kernel_basis(hstack(a, Mat<F>(-b)));
  return column_space(mul(a, Mat<F>(k.topRows(a.cols()))));
}

/// True iff every column of `v` lies in the column space of `span`.
template <class F>
bool in_span(const Mat<F>& span, const Mat<F>& v) {
  if (v.cols() == 0) return true;
  if (span.cols() == 0) return is_zero(v);
  return rank(hstack(span, v)) == rank(span);
}

/// Canonical basis (rows of the rref of the transpose) of a column space.
template <class F>
Mat<F> canonical_span(const Mat<F>& cols) {
  auto e = rref(Mat<F>(cols.transpose()));
  return e.reduced.topRows(e.rank());
}

template <class F>
Mat<F> from_rows(const std::vector<std::vector<F>>& rows, Index cols) {
  Mat<F> m = zeros<F>(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Index>(rows[i].size()) != cols) throw DimensionError("ragged matrix rows");
    for (Index j = 0; j < cols; ++j) m(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  return m;
}

template <class F, class Rng>
Mat<F> random_matrix(Index rows, Index cols, Rng& rng) {
  Mat<F> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = F::random(rng);
  return m;
}

template <class F, class Rng>
Mat<F> random_invertible(Index n, Rng& rng) {
  for (;;) {
    Mat<F> m = random_matrix<F>(n, n, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace cosilt
