#pragma once

// Closed-form inter-set distance and least-norm-difference oracles for the
// supported pair table, plus an approximate grid-search fallback for
// exploratory use on unsupported low-dimensional pairs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "altproj/detail/linalg.hpp"
#include "altproj/point.hpp"
#include "altproj/sets.hpp"

namespace altproj {

/// Exact distance d(C1, C2) with attainment flag; witnesses (p in C1, q in C2)
/// are present iff the infimum is attained.
struct DistanceAnswer {
  Scalar value = 0.0;
  bool attained = false;
  std::optional<std::pair<Point, Point>> witnesses;
};

namespace detail {

struct UnitHalfspace {
  Point u;      // unit outward normal
  Scalar beta;  // set is {x : <u, x> <= beta}
};

inline UnitHalfspace unit_form(const Halfspace& h) {
  Scalar n = norm(h.normal);
  return {h.normal / n, h.offset / n};
}

inline UnitHalfspace unit_form(const Hyperplane& h) {
  Scalar n = norm(h.normal);
  return {h.normal / n, h.offset / n};
}

constexpr Scalar kParallelTol = 1e-12;

inline DistanceAnswer ball_ball_distance(const Ball& a, const Ball& b) {
  Point delta = b.center - a.center;
  Scalar sep = norm(delta);
  Scalar gap = sep - a.radius - b.radius;
  DistanceAnswer ans;
  if (gap <= 0.0) {
    ans.value = 0.0;
    ans.attained = true;
    Point w = a.center;
    if (sep > 0.0) {
      Scalar t_lo = std::max(0.0, sep - b.radius);
      Scalar t_hi = std::min(a.radius, sep);
      w = a.center + (0.5 * (t_lo + t_hi) / sep) * delta;
    }
    ans.witnesses = {w, w};
  } else {
    Point u = delta / sep;
    ans.value = gap;
    ans.attained = true;
    ans.witnesses = {a.center + a.radius * u, b.center - b.radius * u};
  }
  return ans;
}

// `ball_first` records which operand the ball came from so witnesses keep
// the (p in C1, q in C2) order of the caller.
inline DistanceAnswer ball_halfspace_distance(const Ball& ball,
                                              const Halfspace& hs,
                                              bool ball_first) {
  UnitHalfspace h = unit_form(hs);
  Scalar sigma = inner(h.u, ball.center) - h.beta;
  DistanceAnswer ans;
  if (sigma <= ball.radius) {
    ans.value = 0.0;
    ans.attained = true;
    Point w = ball.center - std::max(0.0, sigma) * h.u;
    ans.witnesses = {w, w};
  } else {
    ans.value = sigma - ball.radius;
    ans.attained = true;
    Point pb = ball.center - ball.radius * h.u;
    Point ph = ball.center - sigma * h.u;
    ans.witnesses = ball_first ? std::make_pair(pb, ph)
                               : std::make_pair(ph, pb);
  }
  return ans;
}

inline std::optional<DistanceAnswer> halfspace_halfspace_distance(
    const Halfspace& a, const Halfspace& b) {
  UnitHalfspace ha = unit_form(a), hb = unit_form(b);
  Scalar dot = inner(ha.u, hb.u);
  DistanceAnswer ans;
  if (dot >= 1.0 - kParallelTol) {
    ans.value = 0.0;
    ans.attained = true;
    Point w = std::min(ha.beta, hb.beta) * ha.u;
    ans.witnesses = {w, w};
    return ans;
  }
  if (dot <= -1.0 + kParallelTol) {
    // b is {<u_a, x> >= -beta_b}
    Scalar slack = ha.beta + hb.beta;
    if (slack >= 0.0) {
      ans.value = 0.0;
      ans.attained = true;
      Point w = 0.5 * (ha.beta - hb.beta) * ha.u;
      ans.witnesses = {w, w};
    } else {
      ans.value = -slack;
      ans.attained = true;
      ans.witnesses = {ha.beta * ha.u, -hb.beta * ha.u};
    }
    return ans;
  }
  return std::nullopt;  // not parallel: no closed form in the table
}

inline std::optional<DistanceAnswer> hyperplane_hyperplane_distance(
    const Hyperplane& a, const Hyperplane& b) {
  UnitHalfspace ha = unit_form(a), hb = unit_form(b);
  Scalar dot = inner(ha.u, hb.u);
  if (std::abs(dot) < 1.0 - kParallelTol) return std::nullopt;
  Scalar sign = dot >= 0.0 ? 1.0 : -1.0;
  Scalar beta_b = sign * hb.beta;  // b expressed in a's unit normal
  DistanceAnswer ans;
  ans.value = std::abs(ha.beta - beta_b);
  ans.attained = true;
  ans.witnesses = {ha.beta * ha.u, beta_b * ha.u};
  return ans;
}

inline DistanceAnswer affine_affine_distance(const AffineSubspace& a,
                                             const AffineSubspace& b) {
  Point delta = b.anchor - a.anchor;
  std::vector<Point> joint = a.onb;
  joint.insert(joint.end(), b.onb.begin(), b.onb.end());
  std::vector<Point> joint_onb = orthonormalize(joint);
  Point w = delta - project_onto_span(joint_onb, delta);

  // split the in-span part into contributions from the two bases
  Point c = delta - w;
  std::vector<Point> cols = a.onb;
  cols.insert(cols.end(), b.onb.begin(), b.onb.end());
  std::vector<Scalar> z = spanning_coefficients(cols, c);
  Point u = Point::zero(delta.dim());
  for (std::size_t i = 0; i < a.onb.size(); ++i) u = u + z[i] * a.onb[i];
  Point v = Point::zero(delta.dim());
  for (std::size_t j = 0; j < b.onb.size(); ++j)
    v = v + z[a.onb.size() + j] * b.onb[j];

  DistanceAnswer ans;
  ans.value = norm(w);
  ans.attained = true;  // affine subspaces always attain their distance
  ans.witnesses = {a.anchor + u, b.anchor - v};
  return ans;
}

inline DistanceAnswer box_box_distance(const Box& a, const Box& b) {
  std::size_t d = a.lower.dim();
  std::vector<Scalar> p(d), q(d);
  Scalar sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (b.lower[i] > a.upper[i]) {
      p[i] = a.upper[i];
      q[i] = b.lower[i];
    } else if (a.lower[i] > b.upper[i]) {
      p[i] = a.lower[i];
      q[i] = b.upper[i];
    } else {
      p[i] = q[i] = std::max(a.lower[i], b.lower[i]);
    }
    Scalar g = q[i] - p[i];
    sq += g * g;
  }
  DistanceAnswer ans;
  ans.value = std::sqrt(sq);
  ans.attained = true;
  ans.witnesses = {Point(std::move(p)), Point(std::move(q))};
  return ans;
}

// Is hs of the form {(s, t) : t <= beta}? Returns beta if so.
inline std::optional<Scalar> upper_bound_halfspace(const Halfspace& hs) {
  if (hs.normal.dim() != 2) return std::nullopt;
  UnitHalfspace h = unit_form(hs);
  if (std::abs(h.u[0]) > kParallelTol || h.u[1] < 0.0) return std::nullopt;
  return h.beta;
}

// The documented Epigraph1D{exp(-s)} vs Halfspace{t <= beta} case. The
// vertical gap exp(-s) - beta decreases to -beta but never reaches it, so
// for beta <= 0 the distance is unattained.
inline std::optional<DistanceAnswer> expneg_halfspace_distance(
    const Epigraph1D& epi, const Halfspace& hs, bool epi_first) {
  if (epi.fn.name != "exp-neg") return std::nullopt;
  std::optional<Scalar> beta = upper_bound_halfspace(hs);
  if (!beta) return std::nullopt;
  DistanceAnswer ans;
  if (*beta > 0.0) {
    ans.value = 0.0;
    ans.attained = true;
    Point w({-std::log(*beta), *beta});
    ans.witnesses = {w, w};
  } else {
    ans.value = -*beta;
    ans.attained = false;
  }
  (void)epi_first;  // witnesses (if any) coincide, order immaterial
  return ans;
}

inline Point least_norm_of_ball(const Point& center, Scalar radius) {
  Scalar d = norm(center);
  if (d <= radius) return Point::zero(center.dim());
  return (1.0 - radius / d) * center;
}

}  // namespace detail

/// Exact d(C1, C2) for pairs in the closed-form table:
/// Ball-Ball, Ball-Halfspace, parallel Halfspace-Halfspace, parallel
/// Hyperplane-Hyperplane, AffineSubspace-AffineSubspace, Box-Box, and
/// Epigraph1D{exp-neg} vs Halfspace{t <= beta}. Returns nullopt when the
/// pair has no closed form (callers may fall back to grid_distance).
inline std::optional<DistanceAnswer> analytic_distance(const ConvexSet& a,
                                                       const ConvexSet& b) {
  if (a.dim() != b.dim())
    throw DimensionError("analytic_distance: dimension mismatch");

  if (const auto* ba = a.as<Ball>()) {
    if (const auto* bb = b.as<Ball>())
      return detail::ball_ball_distance(*ba, *bb);
    if (const auto* hb = b.as<Halfspace>())
      return detail::ball_halfspace_distance(*ba, *hb, /*ball_first=*/true);
  }
  if (const auto* ha = a.as<Halfspace>()) {
    if (const auto* bb = b.as<Ball>())
      return detail::ball_halfspace_distance(*bb, *ha, /*ball_first=*/false);
    if (const auto* hb = b.as<Halfspace>())
      return detail::halfspace_halfspace_distance(*ha, *hb);
    if (const auto* eb = b.as<Epigraph1D>())
      return detail::expneg_halfspace_distance(*eb, *ha, /*epi_first=*/false);
  }
  if (const auto* ea = a.as<Epigraph1D>()) {
    if (const auto* hb = b.as<Halfspace>())
      return detail::expneg_halfspace_distance(*ea, *hb, /*epi_first=*/true);
  }
  if (const auto* pa = a.as<Hyperplane>()) {
    if (const auto* pb = b.as<Hyperplane>())
      return detail::hyperplane_hyperplane_distance(*pa, *pb);
  }
  if (const auto* aa = a.as<AffineSubspace>()) {
    if (const auto* ab = b.as<AffineSubspace>())
      return detail::affine_affine_distance(*aa, *ab);
  }
  if (const auto* xa = a.as<Box>()) {
    if (const auto* xb = b.as<Box>()) return detail::box_box_distance(*xa, *xb);
  }
  return std::nullopt;
}

/// The point of least norm in the closure of C2 - C1 (a = C1, b = C2); its
/// norm equals d(C1, C2). Same supported table as analytic_distance.
inline std::optional<Point> least_norm_difference(const ConvexSet& a,
                                                  const ConvexSet& b) {
  if (a.dim() != b.dim())
    throw DimensionError("least_norm_difference: dimension mismatch");
  const std::size_t d = a.dim();

  if (const auto* ba = a.as<Ball>()) {
    if (const auto* bb = b.as<Ball>()) {
      // closure(C2 - C1) is the ball around c2 - c1 of radius r1 + r2
      return detail::least_norm_of_ball(bb->center - ba->center,
                                        ba->radius + bb->radius);
    }
    if (const auto* hb = b.as<Halfspace>()) {
      detail::UnitHalfspace h = detail::unit_form(*hb);
      Scalar gamma = h.beta - inner(h.u, ba->center) + ba->radius;
      if (gamma >= 0.0) return Point::zero(d);
      return gamma * h.u;
    }
  }
  if (const auto* ha = a.as<Halfspace>()) {
    detail::UnitHalfspace h = detail::unit_form(*ha);
    if (const auto* bb = b.as<Ball>()) {
      Scalar gamma = inner(h.u, bb->center) - h.beta - bb->radius;
      if (gamma <= 0.0) return Point::zero(d);
      return gamma * h.u;
    }
    if (const auto* hb = b.as<Halfspace>()) {
      detail::UnitHalfspace h2 = detail::unit_form(*hb);
      Scalar dot = inner(h.u, h2.u);
      if (dot >= 1.0 - detail::kParallelTol) return Point::zero(d);
      if (dot <= -1.0 + detail::kParallelTol) {
        Scalar gamma = -(h.beta + h2.beta);
        if (gamma <= 0.0) return Point::zero(d);
        return gamma * h.u;
      }
      return std::nullopt;
    }
    if (const auto* eb = b.as<Epigraph1D>()) {
      // closure(Epi - HS{t <= beta}) = {(u, w) : w >= -beta}
      if (eb->fn.name != "exp-neg") return std::nullopt;
      std::optional<Scalar> beta = detail::upper_bound_halfspace(*ha);
      if (!beta) return std::nullopt;
      if (-*beta <= 0.0) return Point::zero(d);
      return Point({0.0, -*beta});
    }
  }
  if (const auto* ea = a.as<Epigraph1D>()) {
    if (const auto* hb = b.as<Halfspace>()) {
      // closure(HS{t <= beta} - Epi) = {(u, w) : w <= beta}
      if (ea->fn.name != "exp-neg") return std::nullopt;
      std::optional<Scalar> beta = detail::upper_bound_halfspace(*hb);
      if (!beta) return std::nullopt;
      if (*beta >= 0.0) return Point::zero(d);
      return Point({0.0, *beta});
    }
  }
  if (const auto* pa = a.as<Hyperplane>()) {
    if (const auto* pb = b.as<Hyperplane>()) {
      detail::UnitHalfspace h1 = detail::unit_form(*pa);
      detail::UnitHalfspace h2 = detail::unit_form(*pb);
      Scalar dot = inner(h1.u, h2.u);
      if (std::abs(dot) < 1.0 - detail::kParallelTol) return std::nullopt;
      Scalar sign = dot >= 0.0 ? 1.0 : -1.0;
      return (sign * h2.beta - h1.beta) * h1.u;
    }
  }
  if (const auto* aa = a.as<AffineSubspace>()) {
    if (const auto* ab = b.as<AffineSubspace>()) {
      // closure(C2 - C1) = (anchor_b - anchor_a) + (U + V)
      Point delta = ab->anchor - aa->anchor;
      std::vector<Point> joint = aa->onb;
      joint.insert(joint.end(), ab->onb.begin(), ab->onb.end());
      std::vector<Point> joint_onb = detail::orthonormalize(joint);
      return delta - detail::project_onto_span(joint_onb, delta);
    }
  }
  if (const auto* xa = a.as<Box>()) {
    if (const auto* xb = b.as<Box>()) {
      // closure(C2 - C1) is the interval box [lo_b - hi_a, hi_b - lo_a]
      std::vector<Scalar> v(d);
      for (std::size_t i = 0; i < d; ++i) {
        Scalar lo = xb->lower[i] - xa->upper[i];
        Scalar hi = xb->upper[i] - xa->lower[i];
        v[i] = std::clamp(0.0, lo, hi);
      }
      return Point(std::move(v));
    }
  }
  return std::nullopt;
}

/// Approximate fallback for unsupported pairs in dimension <= 3: dense grid
/// search over a bounding box followed by coordinate refinement. The reported
/// value is an upper bound on the distance, accurate to roughly `tolerance`.
struct GridSearchOptions {
  Point lower;
  Point upper;
  std::size_t steps_per_axis = 101;
  int refine_rounds = 4;
};

struct GridDistanceAnswer {
  Scalar value = 0.0;
  Point p, q;
  Scalar tolerance = 0.0;
};

inline GridDistanceAnswer grid_distance(const ConvexSet& a, const ConvexSet& b,
                                        const GridSearchOptions& opts) {
  const std::size_t d = a.dim();
  if (b.dim() != d) throw DimensionError("grid_distance: dimension mismatch");
  if (opts.lower.dim() != d || opts.upper.dim() != d)
    throw DimensionError("grid_distance: bounding box dimension mismatch");
  if (d > 3)
    throw std::invalid_argument("grid_distance: supported for dimension <= 3");
  if (opts.steps_per_axis < 2)
    throw std::invalid_argument("grid_distance: need at least 2 steps");

  std::vector<Scalar> lo(opts.lower.coords());
  std::vector<Scalar> hi(opts.upper.coords());
  GridDistanceAnswer best;
  best.value = std::numeric_limits<Scalar>::infinity();
  Point best_g = Point::zero(d);
  Scalar step = 0.0;

  for (int round = 0; round <= opts.refine_rounds; ++round) {
    std::vector<std::size_t> idx(d, 0);
    std::vector<Scalar> width(d);
    for (std::size_t i = 0; i < d; ++i)
      width[i] = (hi[i] - lo[i]) / static_cast<Scalar>(opts.steps_per_axis - 1);
    step = *std::max_element(width.begin(), width.end());
    bool done = false;
    while (!done) {
      std::vector<Scalar> g(d);
      for (std::size_t i = 0; i < d; ++i)
        g[i] = lo[i] + width[i] * static_cast<Scalar>(idx[i]);
      Point gp(std::move(g));
      Point p = a.project(gp);
      Point q = b.project(p);
      Scalar cand = distance(p, q);
      if (cand < best.value) {
        best.value = cand;
        best.p = p;
        best.q = q;
        best_g = gp;
      }
      // odometer increment
      std::size_t axis = 0;
      while (axis < d && ++idx[axis] == opts.steps_per_axis) {
        idx[axis] = 0;
        ++axis;
      }
      done = axis == d;
    }
    // shrink the box around the best grid point
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = best_g[i] - 2.0 * width[i];
      hi[i] = best_g[i] + 2.0 * width[i];
    }
  }
  best.tolerance = 4.0 * step;
  return best;
}

}  // namespace altproj
