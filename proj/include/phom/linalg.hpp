#pragma once

// Exact linear algebra over the rationals.
//
// Matrices are ordinary Eigen containers whose scalar is a GMP rational, so
// the usual Eigen expressions (products, transposes, blocks) work unchanged.
// Rank is computed by fraction-free elimination on integer-scaled columns;
// nothing here ever rounds.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace phom {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;
using SparseRationalMatrix = Eigen::SparseMatrix<Rational, Eigen::ColMajor, Index>;

/// Linearly independent vectors in Q^dimension.
struct RationalVectorBasis {
  Index dimension = 0;
  std::vector<RationalVector> vectors;

  Index size() const { return static_cast<Index>(vectors.size()); }
  /// One basis vector per row.
  RationalMatrix stacked() const;
};

/// Sparse integer column: strictly increasing row indices with nonzero values.
struct IntegerColumn {
  std::vector<Index> rows;
  std::vector<BigInt> values;
};

/// Rank of the span of `columns` in Z^rows (equivalently Q^rows).
///
/// Columns are reduced one at a time against pivots keyed by their lowest
/// nonzero row, using cross-multiplication and gcd normalisation (fraction
/// free). Runs in 64-bit integers and transparently restarts in GMP integers
/// if any intermediate value would overflow. When `upper_bound` is given, the
/// computation stops as soon as the rank reaches it.
Index column_rank(Index rows, std::span<const IntegerColumn> columns,
                  std::optional<Index> upper_bound = std::nullopt);

/// Scales a rational column by the lcm of its denominators.
IntegerColumn to_integer_column(std::span<const std::pair<Index, Rational>> entries);

template <typename Scalar>
Rational to_rational(const Scalar& x) {
  return Rational(x);
}

template <typename Derived>
std::vector<IntegerColumn> integer_columns(const Eigen::MatrixBase<Derived>& m) {
  std::vector<IntegerColumn> cols;
  cols.reserve(static_cast<std::size_t>(m.cols()));
  std::vector<std::pair<Index, Rational>> entries;
  for (Index j = 0; j < m.cols(); ++j) {
    entries.clear();
    for (Index i = 0; i < m.rows(); ++i) {
      Rational x = to_rational(m(i, j));
      if (x != 0) entries.emplace_back(i, std::move(x));
    }
    cols.push_back(to_integer_column(entries));
  }
  return cols;
}

template <typename Derived>
std::vector<IntegerColumn> integer_columns(const Eigen::SparseMatrixBase<Derived>& m) {
  // Column-major copy so that inner iteration walks rows in order.
  using Scalar = typename Derived::Scalar;
  const Eigen::SparseMatrix<Scalar, Eigen::ColMajor, Index> cm = m.derived();
  std::vector<IntegerColumn> cols;
  cols.reserve(static_cast<std::size_t>(cm.cols()));
  std::vector<std::pair<Index, Rational>> entries;
  for (Index j = 0; j < cm.outerSize(); ++j) {
    entries.clear();
    for (typename decltype(cm)::InnerIterator it(cm, j); it; ++it) {
      Rational x = to_rational(it.value());
      if (x != 0) entries.emplace_back(it.row(), std::move(x));
    }
    cols.push_back(to_integer_column(entries));
  }
  return cols;
}

/// Exact rank over Q. Empty matrices have rank 0.
template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, std::optional<Index> upper_bound = std::nullopt) {
  const auto cols = integer_columns(m);
  return column_rank(m.rows(), cols, upper_bound);
}

template <typename Derived>
Index rank(const Eigen::SparseMatrixBase<Derived>& m, std::optional<Index> upper_bound = std::nullopt) {
  const auto cols = integer_columns(m);
  return column_rank(m.rows(), cols, upper_bound);
}

/// Reduced row echelon form; pivots are chosen as the first nonzero entry in
/// column order.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<Index> pivot_columns;
};

RowEchelon row_echelon(RationalMatrix m);

/// Basis of {x : m x = 0}. Vector k has a 1 in the k-th non-pivot column and
/// zeros in every other non-pivot column.
RationalVectorBasis null_space(const RationalMatrix& m);

template <typename Derived>
RationalVectorBasis null_space(const Eigen::MatrixBase<Derived>& m) {
  return null_space(RationalMatrix(m.derived().unaryExpr([](const auto& x) { return to_rational(x); })));
}

}  // namespace phom
