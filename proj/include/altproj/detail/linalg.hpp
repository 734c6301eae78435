#pragma once

// Small dense linear algebra helpers sized for ambient dimensions d <= 100:
// modified Gram-Schmidt, a cyclic Jacobi eigensolver for symmetric matrices,
// and a rank-revealing least-squares solve used to build distance witnesses.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "altproj/errors.hpp"
#include "altproj/point.hpp"

namespace altproj::detail {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Scalar at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  Point column(std::size_t j) const {
    std::vector<Scalar> c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
    return Point(std::move(c));
  }
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Directions whose
/// residual norm falls below `drop_tol` are discarded.
inline std::vector<Point> orthonormalize(const std::vector<Point>& vecs,
                                         Scalar drop_tol = 1e-10) {
  std::vector<Point> basis;
  for (const Point& v : vecs) {
    Point w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Point& e : basis) w = w - inner(w, e) * e;
    }
    Scalar r = norm(w);
    if (r >= drop_tol) basis.push_back(w / r);
  }
  return basis;
}

/// Orthogonal projection of x onto the span of an orthonormal basis.
inline Point project_onto_span(const std::vector<Point>& onb, const Point& x) {
  Point acc = Point::zero(x.dim());
  for (const Point& e : onb) acc = acc + inner(x, e) * e;
  return acc;
}

struct SymmetricEigen {
  std::vector<Scalar> values;  // ascending
  Matrix vectors;              // column j is the eigenvector for values[j]
};

/// Cyclic Jacobi eigensolver for a symmetric matrix.
inline SymmetricEigen jacobi_symmetric_eigen(Matrix m, int max_sweeps = 64) {
  const std::size_t n = m.rows;
  Matrix v = Matrix::identity(n);

  auto off_diagonal = [&]() {
    Scalar s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
  };

  Scalar scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(m.at(i, i)));
  const Scalar stop = 1e-15 * (1.0 + scale);

  for (int sweep = 0; sweep < max_sweeps && off_diagonal() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Scalar apq = m.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        Scalar tau = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        Scalar t = (tau >= 0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        Scalar c = 1.0 / std::sqrt(1.0 + t * t);
        Scalar s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          Scalar mkp = m.at(k, p), mkq = m.at(k, q);
          m.at(k, p) = c * mkp - s * mkq;
          m.at(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Scalar mpk = m.at(p, k), mqk = m.at(q, k);
          m.at(p, k) = c * mpk - s * mqk;
          m.at(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Scalar vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * vkq;
          v.at(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = m.at(i, i);

  // sort ascending, permuting eigenvector columns alongside
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.values[a] < out.values[b];
  });
  SymmetricEigen sorted;
  sorted.values.resize(n);
  sorted.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted.values[j] = out.values[order[j]];
    for (std::size_t i = 0; i < n; ++i)
      sorted.vectors.at(i, j) = v.at(i, order[j]);
  }
  return sorted;
}

/// Solves sum_j z_j cols[j] = target for a consistent system (target must lie
/// in the span of cols). Rank-deficient columns get coefficient zero.
inline std::vector<Scalar> spanning_coefficients(
    const std::vector<Point>& cols, const Point& target,
    Scalar drop_tol = 1e-10) {
  struct Kept {
    std::size_t col;
    Point q;
  };
  std::vector<Kept> kept;
  // r[k][j] = <q_k, cols[j]> accumulated over the MGS passes
  std::vector<std::vector<Scalar>> r(cols.size());

  for (std::size_t j = 0; j < cols.size(); ++j) {
    Point w = cols[j];
    std::vector<Scalar> coef(kept.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < kept.size(); ++k) {
        Scalar c = inner(w, kept[k].q);
        coef[k] += c;
        w = w - c * kept[k].q;
      }
    }
    Scalar resid = norm(w);
    if (resid >= drop_tol) {
      coef.push_back(resid);
      kept.push_back({j, w / resid});
    }
    r[j] = std::move(coef);
  }

  std::vector<Scalar> z(cols.size(), 0.0);
  if (kept.empty()) return z;

  std::vector<Scalar> y(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    y[k] = inner(kept[k].q, target);

  // back substitution over the kept (upper-triangular) columns
  for (std::size_t kk = kept.size(); kk-- > 0;) {
    std::size_t j = kept[kk].col;
    Scalar acc = y[kk];
    for (std::size_t mm = kk + 1; mm < kept.size(); ++mm) {
      std::size_t jm = kept[mm].col;
      if (kk < r[jm].size()) acc -= r[jm][kk] * z[jm];
    }
    z[j] = acc / r[j][kk];
  }
  return z;
}

}  // namespace altproj::detail
