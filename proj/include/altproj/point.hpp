#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "altproj/errors.hpp"

namespace altproj {

using Scalar = double;

/// A vector in d-dimensional Euclidean space. Immutable after construction;
/// every coordinate is required to be finite.
class Point {
 public:
  Point() = default;

  explicit Point(std::vector<Scalar> coords) : c_(std::move(coords)) {
    check_finite();
  }

  Point(std::initializer_list<Scalar> coords) : c_(coords) { check_finite(); }

  static Point zero(std::size_t dim) {
    return Point(std::vector<Scalar>(dim, 0.0));
  }

  std::size_t dim() const { return c_.size(); }
  Scalar operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  friend bool operator==(const Point& a, const Point& b) {
    return a.c_ == b.c_;
  }

 private:
  void check_finite() const {
    for (Scalar v : c_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("Point: non-finite coordinate");
      }
    }
  }

  std::vector<Scalar> c_;
};

namespace detail {
inline void require_same_dim(const Point& a, const Point& b,
                             const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}
}  // namespace detail

/// Euclidean inner product <x, y>.
inline Scalar inner(const Point& x, const Point& y) {
  detail::require_same_dim(x, y, "inner");
  Scalar s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

inline Scalar norm_squared(const Point& x) {
  Scalar s = 0.0;
  for (Scalar v : x) s += v * v;
  return s;
}

/// Induced norm |x| = sqrt(<x, x>).
inline Scalar norm(const Point& x) { return std::sqrt(norm_squared(x)); }

inline Point operator+(const Point& a, const Point& b) {
  detail::require_same_dim(a, b, "operator+");
  std::vector<Scalar> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
  return Point(std::move(c));
}

inline Point operator-(const Point& a, const Point& b) {
  detail::require_same_dim(a, b, "operator-");
  std::vector<Scalar> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
  return Point(std::move(c));
}

inline Point operator-(const Point& a) {
  std::vector<Scalar> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = -a[i];
  return Point(std::move(c));
}

inline Point operator*(Scalar t, const Point& a) {
  std::vector<Scalar> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = t * a[i];
  return Point(std::move(c));
}

inline Point operator*(const Point& a, Scalar t) { return t * a; }

inline Point operator/(const Point& a, Scalar t) { return (1.0 / t) * a; }

inline Scalar distance(const Point& a, const Point& b) {
  detail::require_same_dim(a, b, "distance");
  Scalar s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Scalar d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool approx_equal(const Point& a, const Point& b, Scalar tol) {
  return distance(a, b) <= tol;
}

}  // namespace altproj
