#pragma once

// Catalog of closed convex sets with exact nearest-point projections and
// membership tests. Every variant validates its parameters on construction
// and is immutable afterwards, so sets can be shared freely across threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "altproj/detail/linalg.hpp"
#include "altproj/detail/rootfind.hpp"
#include "altproj/errors.hpp"
#include "altproj/functions.hpp"
#include "altproj/point.hpp"

namespace altproj {

/// {x : <normal, x> <= offset}
struct Halfspace {
  Point normal;
  Scalar offset;

  Halfspace(Point n, Scalar b) : normal(std::move(n)), offset(b) {
    if (norm(normal) == 0.0)
      throw std::invalid_argument("Halfspace: zero normal");
    if (!std::isfinite(offset))
      throw std::invalid_argument("Halfspace: non-finite offset");
  }
};

/// {x : <normal, x> = offset}
struct Hyperplane {
  Point normal;
  Scalar offset;

  Hyperplane(Point n, Scalar b) : normal(std::move(n)), offset(b) {
    if (norm(normal) == 0.0)
      throw std::invalid_argument("Hyperplane: zero normal");
    if (!std::isfinite(offset))
      throw std::invalid_argument("Hyperplane: non-finite offset");
  }
};

/// anchor + span(basis). The basis is orthonormalized once on construction
/// (modified Gram-Schmidt with re-orthogonalization; directions with residual
/// norm < 1e-10 are dropped). An empty basis yields the single point {anchor}.
struct AffineSubspace {
  Point anchor;
  std::vector<Point> basis;  // as given
  std::vector<Point> onb;    // cached orthonormal spanning set

  AffineSubspace(Point a, std::vector<Point> b)
      : anchor(std::move(a)), basis(std::move(b)) {
    for (const Point& v : basis)
      detail::require_same_dim(anchor, v, "AffineSubspace");
    onb = detail::orthonormalize(basis);
  }

  bool is_linear(Scalar tol = 1e-12) const { return norm(anchor) <= tol; }
};

/// {x : lower <= x <= upper componentwise}
struct Box {
  Point lower;
  Point upper;

  Box(Point lo, Point hi) : lower(std::move(lo)), upper(std::move(hi)) {
    detail::require_same_dim(lower, upper, "Box");
    for (std::size_t i = 0; i < lower.dim(); ++i) {
      if (lower[i] > upper[i])
        throw std::invalid_argument("Box: lower > upper in coordinate " +
                                    std::to_string(i));
    }
  }
};

struct Ball {
  Point center;
  Scalar radius;

  Ball(Point c, Scalar r) : center(std::move(c)), radius(r) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw std::invalid_argument("Ball: radius must be >= 0");
  }
};

/// {x : x_i >= 0, sum x_i = 1}
struct Simplex {
  std::size_t dimension;

  explicit Simplex(std::size_t d) : dimension(d) {
    if (d < 1) throw std::invalid_argument("Simplex: dimension must be >= 1");
  }
};

/// {(s, t) in R^2 : t >= fn.f(s)} for a smooth convex fn.
struct Epigraph1D {
  ConvexFn fn;

  explicit Epigraph1D(ConvexFn g) : fn(std::move(g)) {
    if (fn.f == nullptr || fn.df == nullptr)
      throw std::invalid_argument("Epigraph1D: function and derivative required");
  }
};

class ConvexSet;

/// inner + shift
struct Translate {
  std::shared_ptr<const ConvexSet> inner;
  Point shift;

  Translate(ConvexSet set, Point s);  // defined after ConvexSet
};

using SetVariant = std::variant<Halfspace, Hyperplane, AffineSubspace, Box,
                                Ball, Simplex, Epigraph1D, Translate>;

namespace detail {

inline Point clamp_box(const Box& b, const Point& x) {
  std::vector<Scalar> c(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    c[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
  return Point(std::move(c));
}

// Sort-then-threshold simplex projection, O(d log d).
inline Point project_simplex(std::size_t d, const Point& x) {
  std::vector<Scalar> u(x.coords());
  std::sort(u.begin(), u.end(), std::greater<>());
  Scalar css = 0.0, tau = 0.0;
  std::size_t rho = 0;
  Scalar css_at_rho = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    css += u[j - 1];
    if (u[j - 1] + (1.0 - css) / static_cast<Scalar>(j) > 0.0) {
      rho = j;
      css_at_rho = css;
    }
  }
  tau = (1.0 - css_at_rho) / static_cast<Scalar>(rho);
  std::vector<Scalar> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = std::max(x[i] + tau, 0.0);
  return Point(std::move(out));
}

// Projects onto {t >= f(s)}. For an outside point the projection foot
// (s*, f(s*)) satisfies the stationarity equation
//   (s - px) + f'(s) (f(s) - py) = 0,
// solved by safeguarded Newton inside a bracket of the distance minimum.
inline Point project_epigraph(const Epigraph1D& e, const Point& x) {
  const Scalar px = x[0], py = x[1];
  const auto f = e.fn.f;
  const auto df = e.fn.df;
  const auto ddf = e.fn.ddf;
  if (py >= f(px)) return x;

  auto h = [&](Scalar s) {
    Scalar ds = s - px, dt = f(s) - py;
    return ds * ds + dt * dt;
  };
  auto g = [&](Scalar s) { return (s - px) + df(s) * (f(s) - py); };
  auto dg = [&](Scalar s) {
    Scalar fp = df(s);
    Scalar second = ddf ? ddf(s) : 0.0;
    return 1.0 + second * (f(s) - py) + fp * fp;
  };

  detail::MinBracket br;
  try {
    br = detail::bracket_minimum(h, px, std::max(0.125, 0.125 * std::abs(px)));
  } catch (const SolverError&) {
    throw SolverError("Epigraph1D projection: failed to bracket the foot");
  }
  Scalar s = detail::safeguarded_newton(g, dg, br.a, br.c);
  // A foot must lie on or above the query height; otherwise Newton caught a
  // spurious stationary point and we fall back to direct minimization.
  if (f(s) < py - 1e-9) {
    s = detail::golden_section_min(h, br.a, br.c);
  }
  return Point({s, f(s)});
}

}  // namespace detail

/// Tagged descriptor of a closed convex set with exact projection semantics.
class ConvexSet {
 public:
  ConvexSet(Halfspace v) : v_(std::move(v)) {}          // NOLINT(implicit)
  ConvexSet(Hyperplane v) : v_(std::move(v)) {}         // NOLINT(implicit)
  ConvexSet(AffineSubspace v) : v_(std::move(v)) {}     // NOLINT(implicit)
  ConvexSet(Box v) : v_(std::move(v)) {}                // NOLINT(implicit)
  ConvexSet(Ball v) : v_(std::move(v)) {}               // NOLINT(implicit)
  ConvexSet(Simplex v) : v_(std::move(v)) {}            // NOLINT(implicit)
  ConvexSet(Epigraph1D v) : v_(std::move(v)) {}         // NOLINT(implicit)
  ConvexSet(Translate v) : v_(std::move(v)) {}          // NOLINT(implicit)

  std::size_t dim() const;
  const char* kind() const;
  const SetVariant& spec() const { return v_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&v_);
  }

  /// Nearest point of the set to x.
  Point project(const Point& x) const;

  /// True iff all defining constraints hold within tol. Constraint residuals
  /// are measured geometrically (normals are normalized first).
  bool member(const Point& x, Scalar tol) const;

 private:
  void require_dim(const Point& x, const char* where) const {
    if (x.dim() != dim()) {
      throw DimensionError(std::string(where) + ": point has dimension " +
                           std::to_string(x.dim()) + ", set expects " +
                           std::to_string(dim()));
    }
  }

  SetVariant v_;
};

inline Translate::Translate(ConvexSet set, Point s)
    : inner(std::make_shared<const ConvexSet>(std::move(set))),
      shift(std::move(s)) {
  if (inner->dim() != shift.dim())
    throw DimensionError("Translate: shift dimension mismatch");
}

inline std::size_t ConvexSet::dim() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace> ||
                      std::is_same_v<T, Hyperplane>) {
          return s.normal.dim();
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          return s.anchor.dim();
        } else if constexpr (std::is_same_v<T, Box>) {
          return s.lower.dim();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.center.dim();
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return s.dimension;
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return 2;
        } else {
          return s.shift.dim();
        }
      },
      v_);
}

inline const char* ConvexSet::kind() const {
  return std::visit(
      [](const auto& s) -> const char* {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          return "halfspace";
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          return "hyperplane";
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          return "affine-subspace";
        } else if constexpr (std::is_same_v<T, Box>) {
          return "box";
        } else if constexpr (std::is_same_v<T, Ball>) {
          return "ball";
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return "simplex";
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return "epigraph1d";
        } else {
          return "translate";
        }
      },
      v_);
}

inline Point ConvexSet::project(const Point& x) const {
  require_dim(x, "project");
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          Scalar excess = inner(s.normal, x) - s.offset;
          if (excess <= 0.0) return x;
          return x - (excess / norm_squared(s.normal)) * s.normal;
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          Scalar excess = inner(s.normal, x) - s.offset;
          return x - (excess / norm_squared(s.normal)) * s.normal;
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          return s.anchor + detail::project_onto_span(s.onb, x - s.anchor);
        } else if constexpr (std::is_same_v<T, Box>) {
          return detail::clamp_box(s, x);
        } else if constexpr (std::is_same_v<T, Ball>) {
          Point r = x - s.center;
          Scalar d = norm(r);
          if (d <= s.radius) return x;
          return s.center + (s.radius / d) * r;
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return detail::project_simplex(s.dimension, x);
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return detail::project_epigraph(s, x);
        } else {
          return s.inner->project(x - s.shift) + s.shift;
        }
      },
      v_);
}

inline bool ConvexSet::member(const Point& x, Scalar tol) const {
  require_dim(x, "member");
  if (tol < 0.0) throw std::invalid_argument("member: tol must be >= 0");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          return inner(s.normal, x) - s.offset <= tol * norm(s.normal);
        } else if constexpr (std::is_same_v<T, Hyperplane>) {
          return std::abs(inner(s.normal, x) - s.offset) <=
                 tol * norm(s.normal);
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          Point r = x - s.anchor;
          return norm(r - detail::project_onto_span(s.onb, r)) <= tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] < s.lower[i] - tol || x[i] > s.upper[i] + tol)
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return distance(x, s.center) <= s.radius + tol;
        } else if constexpr (std::is_same_v<T, Simplex>) {
          Scalar sum = 0.0;
          for (Scalar v : x) {
            if (v < -tol) return false;
            sum += v;
          }
          return std::abs(sum - 1.0) <= tol;
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return x[1] >= s.fn.f(x[0]) - tol;
        } else {
          return s.inner->member(x - s.shift, tol);
        }
      },
      v_);
}

}  // namespace altproj
