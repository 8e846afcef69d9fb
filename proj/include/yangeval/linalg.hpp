#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "yangeval/rational.hpp"

namespace yangeval {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>;

using QMatrix = DenseMatrix<Rational>;
using QVector = DenseVector<Rational>;
using QSparse = SparseMatrix<Rational>;

template <class Scalar>
bool exactly_zero(const Scalar& x) {
  return x == Scalar(0);
}

/// Reduced row echelon form of an exact matrix by Gauss-Jordan elimination.
/// The pivot in each column is the first nonzero entry at or below the
/// current row, so the result depends only on the input. Returns the pivot
/// columns; m is overwritten with its RREF.
template <class Derived>
std::vector<Eigen::Index> rref_in_place(Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  std::vector<Eigen::Index> pivots;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pr = row;
    while (pr < rows && exactly_zero(m(pr, col))) ++pr;
    if (pr == rows) continue;
    if (pr != row) m.row(pr).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < cols; ++c)
      if (!exactly_zero(m(row, c))) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || exactly_zero(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c)
        if (!exactly_zero(m(row, c))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Derived>
std::pair<DenseMatrix<typename Derived::Scalar>, std::vector<Eigen::Index>> rref(
    const Eigen::MatrixBase<Derived>& m) {
  DenseMatrix<typename Derived::Scalar> r = m;
  auto pivots = rref_in_place(r);
  return {std::move(r), std::move(pivots)};
}

template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(rref(m).second.size());
}

/// Basis of the right nullspace, one column per free variable.
template <class Derived>
DenseMatrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto [r, pivots] = rref(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  DenseMatrix<Scalar> basis = DenseMatrix<Scalar>::Zero(cols, cols - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t t = 0; t < pivots.size(); ++t) basis(pivots[t], k) = -r(static_cast<Eigen::Index>(t), free);
    ++k;
  }
  return basis;
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!exactly_zero(m(r, c))) return false;
  return true;
}

template <class Scalar>
bool is_zero_matrix(const SparseMatrix<Scalar>& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it)
      if (!exactly_zero(it.value())) return false;
  return true;
}

/// Drops explicitly stored zeros left behind by cancellation.
template <class Scalar>
void drop_zeros(SparseMatrix<Scalar>& m) {
  m.prune([](Eigen::Index, Eigen::Index, const Scalar& v) { return !exactly_zero(v); });
}

template <class Derived>
SparseMatrix<typename Derived::Scalar> to_sparse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  std::vector<Eigen::Triplet<Scalar>> trips;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!exactly_zero(m(r, c))) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), m(r, c));
  SparseMatrix<Scalar> s(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

}  // namespace yangeval

namespace yangeval {

/// Same result as rref() for a rational matrix, computed by fraction-free
/// Gauss-Jordan elimination over the integers after clearing row
/// denominators. Intermediate entries are minors of the input, which keeps
/// coefficient growth polynomial.
std::pair<QMatrix, std::vector<Eigen::Index>> rref_fraction_free(const QMatrix& m);

}  // namespace yangeval
