// exact_linalg.hpp
// Exact dense elimination for the small bordered Gram systems. All routines
// are generic over an exact field scalar (Rational in practice); no rounding
// happens anywhere.

#pragma once

#include "qcrit/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcrit {

/// Solves A x = b exactly by Gaussian elimination with partial pivoting on the
/// largest-magnitude nonzero pivot. Returns std::nullopt when A is singular.
/// The returned x satisfies A x == b componentwise (checked before return).
template <typename Scalar>
std::optional<Vector<Scalar>> solve_linear(const Matrix<Scalar>& A, const Vector<Scalar>& b) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("solve_linear: matrix must be square");
  if (b.size() != n) throw std::invalid_argument("solve_linear: right-hand side length mismatch");

  using std::abs;
  Matrix<Scalar> m = A;
  Vector<Scalar> rhs = b;
  for (Eigen::Index p = 0; p < n; ++p) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = p; r < n; ++r) {
      if (m(r, p) == Scalar(0)) continue;
      if (pivot < 0 || abs(m(pivot, p)) < abs(m(r, p))) pivot = r;
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != p) {
      m.row(p).swap(m.row(pivot));
      std::swap(rhs(p), rhs(pivot));
    }
    for (Eigen::Index r = p + 1; r < n; ++r) {
      if (m(r, p) == Scalar(0)) continue;
      const Scalar factor = m(r, p) / m(p, p);
      for (Eigen::Index c = p; c < n; ++c) m(r, c) -= factor * m(p, c);
      rhs(r) -= factor * rhs(p);
    }
  }

  Vector<Scalar> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar acc = rhs(i);
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= m(i, j) * x(j);
    x(i) = acc / m(i, i);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < n; ++j) acc += A(i, j) * x(j);
    if (!(acc == b(i))) throw std::logic_error("solve_linear: exact residual is nonzero");
  }
  return x;
}

/// Exact rank of the rows of `rows` by fraction-free (Bareiss) elimination.
template <typename Scalar>
int rank(Matrix<Scalar> rows) {
  const Eigen::Index nr = rows.rows();
  const Eigen::Index nc = rows.cols();
  Scalar previous(1);
  int r = 0;
  for (Eigen::Index c = 0; c < nc && r < nr; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < nr; ++i) {
      if (!(rows(i, c) == Scalar(0))) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    if (pivot != r) rows.row(r).swap(rows.row(pivot));
    for (Eigen::Index i = r + 1; i < nr; ++i) {
      for (Eigen::Index j = c + 1; j < nc; ++j)
        rows(i, j) = (rows(i, j) * rows(r, c) - rows(i, c) * rows(r, j)) / previous;
      rows(i, c) = Scalar(0);
    }
    previous = rows(r, c);
    ++r;
  }
  return r;
}

/// Rank of a list of equal-length vectors. An empty list has rank 0.
template <typename Scalar>
int rank(const std::vector<Vector<Scalar>>& vectors) {
  if (vectors.empty()) return 0;
  const auto dim = vectors.front().size();
  Matrix<Scalar> rows(static_cast<Eigen::Index>(vectors.size()), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw std::invalid_argument("rank: vectors differ in length");
    rows.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return rank<Scalar>(std::move(rows));
}

/// Affine rank: rank of the vectors lifted to (v, 1). Equals the number of
/// points exactly when they are affinely independent.
template <typename Scalar>
int affine_rank(const std::vector<Vector<Scalar>>& points) {
  std::vector<Vector<Scalar>> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) {
    Vector<Scalar> v(p.size() + 1);
    v.head(p.size()) = p;
    v(p.size()) = Scalar(1);
    lifted.push_back(std::move(v));
  }
  return rank<Scalar>(lifted);
}

}  // namespace qcrit
