#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "altproj/diagnostics.hpp"
#include "altproj/distance.hpp"

using namespace altproj;

namespace {
Trace two_ball_trace(Point x0 = Point({0, 3}), std::size_t max_pairs = 2000) {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  StopRule rule;
  rule.max_pairs = max_pairs;
  return alternate(b1, b2, x0, rule);
}
}  // namespace

TEST_CASE("gap series of a constant trace is zero", "[diagnostics]") {
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  Trace t = alternate(ball, ball, Point({0.2, 0.3}), StopRule{.max_pairs = 1});
  GapSeries g = gap_series(t);
  REQUIRE(g.odd.size() == 1);
  REQUIRE(g.even.size() == 1);
  CHECK(g.odd[0] == 0.0);
  CHECK(g.even[0] == 0.0);
  GapLimit gl = gap_limit_estimate(g);
  CHECK(gl.value == 0.0);
  CHECK(gl.uncertainty == 0.0);
}

TEST_CASE("two-ball gaps decrease to the distance", "[diagnostics]") {
  Trace t = two_ball_trace();
  GapSeries g = gap_series(t);
  for (std::size_t n = 0; n + 1 < g.even.size(); ++n) {
    CHECK(g.even[n + 1] <= g.even[n] + 1e-12);
    CHECK(g.even[n] >= 2.0 - 1e-12);  // certified upper bounds of the limit
  }
  GapLimit gl = gap_limit_estimate(g);
  CHECK(std::abs(gl.value - 2.0) < 1e-6);
  CHECK(gl.uncertainty < 1e-6);
}

TEST_CASE("intersecting lines drive the gap to zero", "[diagnostics]") {
  ConvexSet x_axis = Hyperplane(Point({0, 1}), 0.0);
  ConvexSet diag = Hyperplane(Point({1, -1}), 0.0);
  Trace t = alternate(x_axis, diag, Point({1, 1}));
  GapLimit gl = gap_limit_estimate(gap_series(t));
  CHECK(gl.value < 1e-6);
}

TEST_CASE("displacement series and estimate on the two-ball pair",
          "[diagnostics]") {
  Trace t = two_ball_trace();
  DisplacementSeries ds = displacement_series(t);
  REQUIRE(!ds.even_disp.empty());
  CHECK(norm(ds.even_disp[0]) ==
        Catch::Approx(gap_series(t).even[0]).margin(1e-12));
  DisplacementEstimate de = displacement_estimate(ds);
  CHECK(approx_equal(de.value, Point({2, 0}), 1e-5));
  CHECK(de.residual < 1e-5);
}

TEST_CASE("one exact step between parallel halfspaces", "[diagnostics]") {
  ConvexSet lower = Halfspace(Point({0, 1}), 0.0);    // t <= 0
  ConvexSet upper = Halfspace(Point({0, -1}), -1.0);  // t >= 1
  Trace t = alternate(lower, upper, Point({0.3, 0.7}), StopRule{.max_pairs = 20});
  DisplacementEstimate de = displacement_estimate(displacement_series(t));
  CHECK(de.value == Point({0, 1}));  // exact: v is the gap vector
  CHECK(de.residual == 0.0);
  auto v = least_norm_difference(lower, upper);
  CHECK(approx_equal(de.value, *v, 1e-15));
}

TEST_CASE("displacement of intersecting sets vanishes", "[diagnostics]") {
  ConvexSet box = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet hs = Halfspace(Point({1, 1}), 1.0);
  Trace t = alternate(box, hs, Point({2, 0.8}), StopRule{.max_pairs = 50});
  DisplacementEstimate de = displacement_estimate(displacement_series(t));
  CHECK(norm(de.value) < 1e-9);
}

TEST_CASE("parallelogram bound check", "[diagnostics]") {
  Point v({2, 0});
  CHECK(parallelogram_bound_check(v, v));  // y = v: 0 <= 0
  CHECK(parallelogram_bound_check(Point({3, 1}), Point::zero(2)));  // v = 0

  Trace t = two_ball_trace();
  DisplacementSeries ds = displacement_series(t);
  // spot-check the bound partway along the trace
  REQUIRE(ds.even_disp.size() > 5);
  CHECK(parallelogram_bound_check(ds.even_disp[5], v));
  for (const Point& y : ds.even_disp) CHECK(parallelogram_bound_check(y, v));

  // a v that is not least-norm violates the precondition
  CHECK_THROWS_AS(parallelogram_bound_check(Point({2, 0}), Point({-2, 0})),
                  std::invalid_argument);
}

TEST_CASE("asymptotic regularity series", "[diagnostics]") {
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  Trace constant =
      alternate(ball, ball, Point({0.1, 0.2}), StopRule{.max_pairs = 3});
  for (Scalar r : asymptotic_regularity_series(constant)) CHECK(r == 0.0);

  Trace t = two_ball_trace();
  auto ar = asymptotic_regularity_series(t);
  // r_n = |x_{2n+2} - x_{2n}| must match recomputation from the points
  for (std::size_t n = 0; n + 1 < t.pairs(); ++n) {
    CHECK(ar[n] ==
          Catch::Approx(distance(*t.point(2 * n + 2), *t.point(2 * n)))
              .margin(0.0));
  }
  CHECK(tail_max(ar, 10) < 1e-5);
}

TEST_CASE("regularity tail vanishes even in the unattained case",
          "[diagnostics]") {
  ConvexSet hs = Halfspace(Point({0, 1}), 0.0);
  ConvexSet epi = Epigraph1D(epigraph_function("exp-neg"));
  StopRule rule;
  rule.max_pairs = 60000;
  Trace t = alternate(hs, epi, Point({0, 3}), rule);
  CHECK(tail_max(asymptotic_regularity_series(t), 10) < 1e-5);
  // while the gap still exceeds its limit 0 by far more
  CHECK(gap_limit_estimate(gap_series(t)).value > 1e-3);
}

TEST_CASE("unattained case: gap falls toward zero while the norm grows",
          "[diagnostics]") {
  ConvexSet hs = Halfspace(Point({0, 1}), 0.0);
  ConvexSet epi = Epigraph1D(epigraph_function("exp-neg"));
  Scalar prev_gap = 1e300, prev_norm = 0.0;
  for (std::size_t budget : {500u, 5000u, 50000u}) {
    StopRule rule;
    rule.max_pairs = budget;
    rule.gap_stall_tol = 0.0;
    Trace t = alternate(hs, epi, Point({0, 3}), rule);
    Scalar gap = gap_limit_estimate(gap_series(t)).value;
    Scalar xn = norm(t.back());
    CHECK(gap < prev_gap);   // toward the unattained limit 0
    CHECK(xn > prev_norm);   // |x_n| grows without bound, slowly
    prev_gap = gap;
    prev_norm = xn;
  }
  CHECK(prev_gap < 1e-2);
  CHECK(prev_norm > 5.0);
}

TEST_CASE("classification of the three scenario families", "[diagnostics]") {
  // attained positive distance
  Trace balls = two_ball_trace();
  TrajectoryVerdict v1 = classify(balls, gap_series(balls));
  CHECK(v1.cls == TrajectoryClass::ConvergedAttainedGap);
  CHECK(v1.evidence.at("fixed_point_residual") < 1e-6);

  // nonempty intersection
  ConvexSet box = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet hs = Halfspace(Point({1, 1}), 1.0);
  Trace inter = alternate(box, hs, Point({2, 0.8}), StopRule{.max_pairs = 50});
  TrajectoryVerdict v2 = classify(inter, gap_series(inter));
  CHECK(v2.cls == TrajectoryClass::ConvergedIntoIntersection);

  // budget-limited unattained run: classification stays honest
  ConvexSet lower = Halfspace(Point({0, 1}), 0.0);
  ConvexSet epi = Epigraph1D(epigraph_function("exp-neg"));
  Trace un = alternate(lower, epi, Point({0, 3}), StopRule{.max_pairs = 5000});
  TrajectoryVerdict v3 = classify(un, gap_series(un));
  CHECK(v3.cls == TrajectoryClass::Undetermined);
}

TEST_CASE("classification flags a diverging run", "[diagnostics]") {
  ConvexSet far = Hyperplane(Point({0, 1}), 5e3);
  ConvexSet farther = Hyperplane(Point({0, 1}), 6e3);
  Trace t = alternate(far, farther, Point({0, 0}), StopRule{.max_pairs = 10});
  REQUIRE(t.stop_reason() == StopReason::NormExploded);
  TrajectoryVerdict v = classify(t, gap_series(t));
  CHECK(v.cls == TrajectoryClass::DivergingNorm);
}

TEST_CASE("strong nonexpansiveness probe", "[diagnostics]") {
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);

  // x_n = y_n: identically zero
  std::vector<Point> same = {Point({1, 1}), Point({2, 0}), Point({0, 5})};
  CHECK(strong_nonexpansiveness_probe(b2, same, same) == 0.0);

  // the instantiation used for the attained case: odd iterates against P1(z)
  Trace t = two_ball_trace();
  std::vector<Point> xs, ys;
  for (std::size_t n = 0; n < t.pairs(); ++n) {
    xs.push_back(*t.point(2 * n + 1));
    ys.push_back(Point({1, 0}));
  }
  CHECK(strong_nonexpansiveness_probe(b2, xs, ys) < 1e-6);

  // points already inside a halfspace: the projection is the identity there
  ConvexSet hs = Halfspace(Point({0, 1}), 0.0);
  std::vector<Point> in1 = {Point({0, -1}), Point({2, -3})};
  std::vector<Point> in2 = {Point({1, -2}), Point({-1, -1})};
  CHECK(strong_nonexpansiveness_probe(hs, in1, in2) == 0.0);

  CHECK_THROWS_AS(strong_nonexpansiveness_probe(hs, in1, same),
                  std::invalid_argument);
}

TEST_CASE("too-short traces are rejected", "[diagnostics]") {
  // gap_series demands at least one full pair; traces always have one, so
  // exercise the guard through a hand-built trace
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  Trace t(ball, ball, Point({0, 0}), Algorithm::Alternate, false);
  CHECK_THROWS_AS(gap_series(t), std::invalid_argument);
  CHECK_THROWS_AS(displacement_series(t), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_regularity_series(t), std::invalid_argument);
}
