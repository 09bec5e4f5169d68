#pragma once

// Exact dense linear algebra over a field, on Eigen containers.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace conley {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Echelon {
  DenseMatrix<Scalar> reduced;      // reduced row echelon form
  std::vector<Eigen::Index> pivots; // pivot column of each nonzero row
};

template <typename Scalar>
Echelon<Scalar> row_echelon(DenseMatrix<Scalar> m) {
  Echelon<Scalar> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar factor = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const DenseMatrix<Scalar>& m) {
  return static_cast<Eigen::Index>(row_echelon<Scalar>(m).pivots.size());
}

/// Columns form a basis of the kernel.
template <typename Scalar>
DenseMatrix<Scalar> nullspace(const DenseMatrix<Scalar>& m) {
  auto e = row_echelon<Scalar>(m);
  const Eigen::Index cols = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  DenseMatrix<Scalar> basis = DenseMatrix<Scalar>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Eigen::Index f = free[k];
    basis(f, static_cast<Eigen::Index>(k)) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], static_cast<Eigen::Index>(k)) = -e.reduced(static_cast<Eigen::Index>(r), f);
    }
  }
  return basis;
}

/// Linearly independent columns of `m` spanning its column space, in order.
template <typename Scalar>
DenseMatrix<Scalar> column_basis(const DenseMatrix<Scalar>& m) {
  auto e = row_echelon<Scalar>(m);
  DenseMatrix<Scalar> out(m.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(e.pivots[k]);
  }
  return out;
}

/// Some X with a * X = b, or nullopt when inconsistent.
template <typename Scalar>
std::optional<DenseMatrix<Scalar>> solve(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto e = row_echelon<Scalar>(aug);
  DenseMatrix<Scalar> x = DenseMatrix<Scalar>::Zero(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    x.row(e.pivots[r]) = e.reduced.block(static_cast<Eigen::Index>(r), a.cols(), 1, b.cols());
  }
  return x;
}

template <typename Scalar>
std::optional<DenseMatrix<Scalar>> inverse(const DenseMatrix<Scalar>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank<Scalar>(m) != m.rows()) return std::nullopt;
  return solve<Scalar>(m, DenseMatrix<Scalar>::Identity(m.rows(), m.rows()));
}

}  // namespace conley
