#pragma once

// Turns traces into quantitative verdicts: gap limits, displacement vectors,
// asymptotic regularity and trajectory classification.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "altproj/iterate.hpp"
#include "altproj/point.hpp"

namespace altproj {

/// The two interleaved gap sequences of a trace:
///   odd[n]  = |x_{2n+1} - x_{2n}|,  even[n] = |x_{2n+2} - x_{2n+1}|.
/// Both decrease to the common limit d(C_1, C_2); the odd sequence is
/// monotone from its second entry on (the leading gap is produced before the
/// iterate has entered either set and may exceed its successor).
struct GapSeries {
  std::vector<Scalar> odd;
  std::vector<Scalar> even;
};

inline GapSeries gap_series(const Trace& t) {
  if (t.size() < 3)
    throw std::invalid_argument("gap_series: trace needs at least 3 iterates");
  return {t.gap_odd(), t.gap_even()};
}

/// Last-iterate gap estimate. By monotone decrease the value is a certified
/// upper bound on the common limit; the uncertainty combines the odd/even
/// spread with the final stall residual.
struct GapLimit {
  Scalar value = 0.0;
  Scalar uncertainty = 0.0;
};

inline GapLimit gap_limit_estimate(const GapSeries& g) {
  if (g.even.empty())
    throw std::invalid_argument("gap_limit_estimate: empty series");
  GapLimit out;
  out.value = g.even.back();
  // the spread is nonnegative once the chain of decreases has set in; clamp
  // for the first pre-asymptotic pairs
  Scalar spread = std::max(0.0, g.odd.back() - g.even.back());
  Scalar stall = g.even.size() >= 2
                     ? std::abs(g.even[g.even.size() - 1] -
                                g.even[g.even.size() - 2])
                     : 0.0;
  out.uncertainty = spread + stall;
  return out;
}

/// Displacement vectors per pair:
///   even_disp[k] = x_{2n+2} - x_{2n+1},  odd_disp[k] = x_{2n} - x_{2n+1},
/// where n = first_pair + k. For windowed traces only the stored tail is
/// covered (first_pair > 0).
struct DisplacementSeries {
  std::size_t first_pair = 0;
  std::vector<Point> even_disp;
  std::vector<Point> odd_disp;
};

inline DisplacementSeries displacement_series(const Trace& t) {
  if (t.size() < 3)
    throw std::invalid_argument(
        "displacement_series: trace needs at least 3 iterates");
  DisplacementSeries out;
  // first pair whose three points x_{2n}, x_{2n+1}, x_{2n+2} are all stored
  std::size_t first_even = t.first_stored();
  if (first_even % 2 != 0) ++first_even;
  out.first_pair = first_even / 2;
  for (std::size_t n = out.first_pair; n < t.pairs(); ++n) {
    const Point* a = t.point(2 * n);
    const Point* b = t.point(2 * n + 1);
    const Point* c = t.point(2 * n + 2);
    if (!a || !b || !c) continue;
    out.even_disp.push_back(*c - *b);
    out.odd_disp.push_back(*a - *b);
  }
  return out;
}

/// Last even displacement with the even/odd discrepancy as staleness bound
/// (both sequences share the limit v).
struct DisplacementEstimate {
  Point value;
  Scalar residual = 0.0;
};

inline DisplacementEstimate displacement_estimate(
    const DisplacementSeries& ds) {
  if (ds.even_disp.empty())
    throw std::invalid_argument("displacement_estimate: empty series");
  DisplacementEstimate out;
  out.value = ds.even_disp.back();
  out.residual = distance(ds.even_disp.back(), ds.odd_disp.back());
  return out;
}

/// Checks |y - v|^2 <= 2(|y|^2 - |v|^2) + 1e-9, valid whenever v is the
/// least-norm point of a closed convex set containing y. The precondition
/// |(y+v)/2| >= |v| - 1e-9 certifies exactly that; its violation means the
/// supplied v is not least-norm and the call is rejected.
inline bool parallelogram_bound_check(const Point& y, const Point& v) {
  Scalar mid = norm(0.5 * (y + v));
  if (mid < norm(v) - 1e-9) {
    throw std::invalid_argument(
        "parallelogram_bound_check: |(y+v)/2| < |v|; the supplied v is not "
        "the least-norm point of a set containing y");
  }
  Scalar lhs = norm_squared(y - v);
  Scalar rhs = 2.0 * (norm_squared(y) - norm_squared(v));
  return lhs <= rhs + 1e-9;
}

/// r_n = |x_{2n+2} - x_{2n}|; asymptotic regularity of P_2 P_1 drives this
/// to zero whether or not the distance is attained.
inline std::vector<Scalar> asymptotic_regularity_series(const Trace& t) {
  if (t.size() < 3)
    throw std::invalid_argument(
        "asymptotic_regularity_series: trace needs at least 3 iterates");
  return t.regularity();
}

/// Max over the last `window` entries (or all, if fewer).
inline Scalar tail_max(const std::vector<Scalar>& xs, std::size_t window = 10) {
  if (xs.empty()) throw std::invalid_argument("tail_max: empty series");
  std::size_t from = xs.size() > window ? xs.size() - window : 0;
  Scalar m = xs[from];
  for (std::size_t i = from; i < xs.size(); ++i) m = std::max(m, xs[i]);
  return m;
}

enum class TrajectoryClass {
  ConvergedIntoIntersection,
  ConvergedAttainedGap,
  DivergingNorm,
  Undetermined,
};

inline const char* to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::ConvergedIntoIntersection:
      return "ConvergedIntoIntersection";
    case TrajectoryClass::ConvergedAttainedGap:
      return "ConvergedAttainedGap";
    case TrajectoryClass::DivergingNorm:
      return "DivergingNorm";
    case TrajectoryClass::Undetermined:
      return "Undetermined";
  }
  return "?";
}

/// Classifier thresholds. The trichotomy is asymptotic; finite runs need
/// declared cutoffs, and Undetermined is a first-class outcome.
struct ClassifyOptions {
  Scalar membership_tol = 1e-6;
  Scalar cauchy_tol = 1e-6;
  Scalar fixed_point_tol = 1e-6;
  Scalar gap_zero_tol = 1e-6;
  std::size_t tail_window = 10;
};

struct TrajectoryVerdict {
  TrajectoryClass cls = TrajectoryClass::Undetermined;
  GapLimit gap_limit;
  Point displacement;
  Scalar displacement_residual = 0.0;
  std::map<std::string, Scalar> evidence;
};

inline TrajectoryVerdict classify(const Trace& t, const GapSeries& g,
                                  const ClassifyOptions& opt = {}) {
  TrajectoryVerdict v;
  v.gap_limit = gap_limit_estimate(g);
  DisplacementEstimate de = displacement_estimate(displacement_series(t));
  v.displacement = de.value;
  v.displacement_residual = de.residual;

  const Point& final_pt = t.back();
  Scalar res_a = distance(final_pt, t.set1().project(final_pt));
  Scalar res_b = distance(final_pt, t.set2().project(final_pt));
  bool member_a = t.set1().member(final_pt, opt.membership_tol);
  bool member_b = t.set2().member(final_pt, opt.membership_tol);

  // diameter of the stored tail of even-parity iterates
  std::vector<const Point*> evens;
  for (std::size_t n = t.first_stored(); n < t.size(); ++n) {
    if (n % 2 == 0) evens.push_back(t.point(n));
  }
  std::size_t from =
      evens.size() > opt.tail_window ? evens.size() - opt.tail_window : 0;
  Scalar diameter = 0.0;
  for (std::size_t i = from; i < evens.size(); ++i)
    for (std::size_t j = i + 1; j < evens.size(); ++j)
      diameter = std::max(diameter, distance(*evens[i], *evens[j]));

  Scalar fp_res = fixed_point_residual(t.set1(), t.set2(), final_pt);

  // compare same-parity norms: odd and even iterates live on different sets
  // and may sit at different scales without any real growth
  const auto& norms = t.norms();
  std::size_t nfrom =
      norms.size() > 2 * opt.tail_window ? norms.size() - 2 * opt.tail_window
                                         : 0;
  bool norm_growing = true;
  for (std::size_t i = nfrom + 2; i < norms.size(); ++i)
    norm_growing = norm_growing && norms[i] >= norms[i - 2];
  std::size_t tail_start = nfrom + (norms.size() - 1 - nfrom) % 2;
  Scalar norm_gain = norms.back() - norms[tail_start];
  norm_growing = norm_growing && norm_gain > 0.0;

  v.evidence["gap_limit"] = v.gap_limit.value;
  v.evidence["gap_uncertainty"] = v.gap_limit.uncertainty;
  v.evidence["membership_residual_a"] = res_a;
  v.evidence["membership_residual_b"] = res_b;
  v.evidence["cauchy_tail_diameter"] = diameter;
  v.evidence["fixed_point_residual"] = fp_res;
  v.evidence["norm_tail_gain"] = norm_gain;

  if (v.gap_limit.value <= opt.gap_zero_tol && member_a && member_b) {
    v.cls = TrajectoryClass::ConvergedIntoIntersection;
  } else if (diameter < opt.cauchy_tol && fp_res < opt.fixed_point_tol) {
    v.cls = TrajectoryClass::ConvergedAttainedGap;
  } else if (t.stop_reason() == StopReason::NormExploded && norm_growing) {
    v.cls = TrajectoryClass::DivergingNorm;
  } else {
    v.cls = TrajectoryClass::Undetermined;
  }
  return v;
}

/// Tail max of |(x_n - y_n) - (P x_n - P y_n)| over the last 10 pairs.
/// Strong nonexpansiveness drives this to zero whenever {x_n - y_n} is
/// bounded and |x_n - y_n| - |P x_n - P y_n| -> 0.
inline Scalar strong_nonexpansiveness_probe(const ConvexSet& set,
                                            const std::vector<Point>& xs,
                                            const std::vector<Point>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument(
        "strong_nonexpansiveness_probe: sequence lengths differ");
  if (xs.empty())
    throw std::invalid_argument("strong_nonexpansiveness_probe: empty input");
  std::vector<Scalar> residuals;
  residuals.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Point lhs = (xs[i] - ys[i]) - (set.project(xs[i]) - set.project(ys[i]));
    residuals.push_back(norm(lhs));
  }
  return tail_max(residuals, 10);
}

}  // namespace altproj
