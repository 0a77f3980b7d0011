#pragma once

// Dense symmetric linear algebra on Eigen storage: a symmetric matrix type,
// an LL^T solve and a cyclic Jacobi eigensolver. Everything is templated on
// the scalar type; the library itself instantiates double.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hardy/error.hpp"

namespace hardy {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Square matrix whose entries satisfy a(i,j) == a(j,i) bit for bit.
/// Every mutator touches both triangles at once, so the invariant can only
/// be broken by constructing from a non-symmetric dense matrix, which throws.
template <typename Scalar>
class SymmetricMatrix {
 public:
  using DenseType = Matrix<Scalar>;

  SymmetricMatrix() = default;

  explicit SymmetricMatrix(Index order) : m_(DenseType::Zero(order, order)) {}

  explicit SymmetricMatrix(DenseType dense) : m_(std::move(dense)) {
    if (m_.rows() != m_.cols())
      throw Error(ErrorKind::DimensionMismatch, "symmetric matrix must be square");
    for (Index i = 0; i < m_.rows(); ++i)
      for (Index j = i + 1; j < m_.cols(); ++j)
        if (!(m_(i, j) == m_(j, i)) && !(std::isnan(m_(i, j)) && std::isnan(m_(j, i))))
          throw Error(ErrorKind::NotSymmetric,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose",
                      {static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }

  template <typename Derived>
  static SymmetricMatrix diagonal(const Eigen::MatrixBase<Derived>& d) {
    SymmetricMatrix out(d.size());
    for (Index i = 0; i < d.size(); ++i) out.m_(i, i) = d(i);
    return out;
  }

  Index order() const noexcept { return m_.rows(); }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }
  const DenseType& dense() const noexcept { return m_; }

  /// Adds `value` to (i,j) and, off the diagonal, to (j,i).
  void add(Index i, Index j, Scalar value) {
    m_(i, j) += value;
    if (i != j) m_(j, i) += value;
  }

  /// Principal submatrix on the given rows/columns, in the given order.
  SymmetricMatrix principal(std::span<const Index> indices) const {
    SymmetricMatrix out(static_cast<Index>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a)
      for (std::size_t b = 0; b < indices.size(); ++b)
        out.m_(static_cast<Index>(a), static_cast<Index>(b)) = m_(indices[a], indices[b]);
    return out;
  }

  Scalar frobenius_norm() const { return m_.norm(); }

 private:
  DenseType m_;
};

using DenseSymMatrix = SymmetricMatrix<double>;

template <typename Scalar>
struct EigenDecomposition {
  Vector<Scalar> eigenvalues;   // ascending
  Matrix<Scalar> eigenvectors;  // column k belongs to eigenvalues(k)
  Scalar offdiag_residual{};
  int sweeps = 0;
};

/// Solves a x = rhs for symmetric positive definite `a` by an LL^T
/// factorization. A pivot at or below n * eps * max|diag| is rejected.
template <typename Scalar, typename Derived>
Vector<Scalar> cholesky_solve(const SymmetricMatrix<Scalar>& a, const Eigen::MatrixBase<Derived>& rhs) {
  const Index n = a.order();
  if (rhs.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "rhs has " + std::to_string(rhs.size()) + " entries, matrix order is " + std::to_string(n));

  const auto& m = a.dense();
  Scalar max_diag = 0;
  for (Index i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  const Scalar pivot_floor = static_cast<Scalar>(n) * std::numeric_limits<Scalar>::epsilon() * max_diag;

  Matrix<Scalar> l = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    Scalar d = m(j, j);
    for (Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > pivot_floor))
      throw Error(ErrorKind::NotPositiveDefinite, "pivot " + std::to_string(j) + " is not positive",
                  {static_cast<std::size_t>(j)});
    const Scalar ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      Scalar s = m(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }

  Vector<Scalar> y(n);
  for (Index i = 0; i < n; ++i) {
    Scalar s = rhs(i);
    for (Index k = 0; k < i; ++k) s -= l(i, k) * y(k);
    y(i) = s / l(i, i);
  }
  Vector<Scalar> x(n);
  for (Index i = n - 1; i >= 0; --i) {
    Scalar s = y(i);
    for (Index k = i + 1; k < n; ++k) s -= l(k, i) * x(k);
    x(i) = s / l(i, i);
  }
  return x;
}

namespace detail {

template <typename Scalar>
Scalar offdiag_norm(const Matrix<Scalar>& a) {
  Scalar s = 0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Full spectrum of a symmetric matrix by cyclic-by-row Jacobi rotations.
/// Sweeps stop once the off-diagonal Frobenius norm drops to
/// 1e-12 * ||a||_F (or 16 eps ||a||_F for scalars coarser than double);
/// more than `max_sweeps` sweeps is NoConvergence.
/// Eigenvalues come back ascending (stable with respect to the final
/// diagonal order), eigenvectors permuted to match.
template <typename Scalar>
EigenDecomposition<Scalar> jacobi_eigen(const SymmetricMatrix<Scalar>& matrix, int max_sweeps = 100) {
  const Index n = matrix.order();
  Matrix<Scalar> a = matrix.dense();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar relative = std::max(Scalar(1e-12), Scalar(16) * std::numeric_limits<Scalar>::epsilon());
  const Scalar threshold = relative * matrix.frobenius_norm();

  int sweeps = 0;
  Scalar off = detail::offdiag_norm(a);
  while (off > threshold) {
    if (sweeps == max_sweeps)
      throw Error(ErrorKind::NoConvergence, "no convergence after " + std::to_string(sweeps) + " sweeps",
                  {static_cast<std::size_t>(sweeps)});
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (std::abs(theta) > Scalar(1e150))
          t = Scalar(1) / (Scalar(2) * theta);
        else
          t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(theta) + std::sqrt(Scalar(1) + theta * theta));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;

        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    ++sweeps;
    off = detail::offdiag_norm(a);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) < a(y, y); });

  EigenDecomposition<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.offdiag_residual = off;
  out.sweeps = sweeps;
  return out;
}

template <typename Scalar, typename Derived>
Scalar quadratic_form(const SymmetricMatrix<Scalar>& matrix, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != matrix.order())
    throw Error(ErrorKind::DimensionMismatch,
                "vector has " + std::to_string(x.size()) + " entries, matrix order is " +
                    std::to_string(matrix.order()));
  return x.dot(matrix.dense() * x);
}

}  // namespace hardy
