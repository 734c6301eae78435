#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "altproj/diagnostics.hpp"
#include "altproj/distance.hpp"
#include "altproj/iterate.hpp"
#include "support/oracles.hpp"

using namespace altproj;

TEST_CASE("two lines contract geometrically", "[iterate]") {
  ConvexSet x_axis = Hyperplane(Point({0, 1}), 0.0);
  ConvexSet diagonal = Hyperplane(Point({1, -1}), 0.0);  // y = x
  StopRule rule;
  rule.max_pairs = 4;
  rule.gap_stall_tol = 0.0;
  Trace t = alternate(x_axis, diagonal, Point({1, 1}), rule);

  // hand-iterated values; the contraction factor per pair is cos^2(pi/4)=1/2
  CHECK(approx_equal(*t.point(1), Point({1, 0}), 1e-15));
  CHECK(approx_equal(*t.point(2), Point({0.5, 0.5}), 1e-15));
  CHECK(approx_equal(*t.point(3), Point({0.5, 0}), 1e-15));
  CHECK(approx_equal(*t.point(4), Point({0.25, 0.25}), 1e-15));
  CHECK(norm(t.back()) < norm(t.start()));
}

TEST_CASE("start in both sets gives a constant trace", "[iterate]") {
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  StopRule rule;
  rule.max_pairs = 5;
  rule.gap_stall_tol = 0.0;
  Trace t = alternate(ball, ball, Point({0.2, 0.3}), rule);
  REQUIRE(t.size() == 11);
  for (std::size_t n = 0; n < t.size(); ++n)
    CHECK(*t.point(n) == Point({0.2, 0.3}));
  for (Scalar g : t.gap_even()) CHECK(g == 0.0);
}

TEST_CASE("two-ball iterates settle at the facing points", "[iterate]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  Trace t = alternate(b1, b2, Point({0, 3}));
  CHECK(t.stop_reason() == StopReason::GapStalled);
  CHECK(approx_equal(t.back(), Point({3, 0}), 1e-9));                // even
  CHECK(approx_equal(*t.point(t.size() - 2), Point({1, 0}), 1e-9));  // odd
  CHECK(fixed_point_residual(b1, b2, t.back()) < 1e-9);
}

TEST_CASE("traces replay bit-for-bit", "[iterate]") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g(0.0, 2.0);
  ConvexSet c1 = Ball(Point({0.3, -0.1, 0.5}), 1.2);
  ConvexSet c2 = Box(Point({1, 1, -2}), Point({3, 2, 2}));
  for (int rep = 0; rep < 5; ++rep) {
    Point x0({g(rng), g(rng), g(rng)});
    Trace t = alternate(c1, c2, x0, StopRule{.max_pairs = 50});
    for (std::size_t n = 0; n + 1 < t.size(); ++n) {
      const Point& from = *t.point(n);
      const Point& to = *t.point(n + 1);
      Point replay = (n % 2 == 0) ? c1.project(from) : c2.project(from);
      CHECK(replay == to);  // exact, not approximate
    }
  }
}

TEST_CASE("gap chain decreases along every trace", "[iterate]") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g(0.0, 3.0);
  std::vector<std::pair<ConvexSet, ConvexSet>> pairs;
  pairs.emplace_back(Ball(Point({0, 0}), 1.0), Ball(Point({4, 0}), 1.0));
  pairs.emplace_back(Box(Point({0, 0}), Point({1, 1})),
                     Halfspace(Point({1, 1}), 1.0));
  pairs.emplace_back(Hyperplane(Point({0, 1}), 0.0),
                     Ball(Point({0, 10}), 1.0));
  pairs.emplace_back(ConvexSet(Simplex(2)), Ball(Point({2, 2}), 0.5));
  for (const auto& [c1, c2] : pairs) {
    for (int rep = 0; rep < 10; ++rep) {
      Point x0({g(rng), g(rng)});
      Trace t = alternate(c1, c2, x0, StopRule{.max_pairs = 200});
      const auto& odd = t.gap_odd();
      const auto& even = t.gap_even();
      for (std::size_t n = 0; n + 1 < even.size(); ++n) {
        CHECK(even[n + 1] <= even[n] + 1e-12);
        CHECK(odd[n + 1] <= even[n] + 1e-12);
        if (n >= 1) {
          CHECK(odd[n + 1] <= odd[n] + 1e-12);
          CHECK(even[n] <= odd[n] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("the leading odd gap may exceed its successor", "[iterate]") {
  // x0 = (0,3) against the two balls: odd[0] = 2 but odd[1] > 2, which is
  // why the decrease of the odd sequence is only claimed from its second
  // entry on.
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  Trace t = alternate(b1, b2, Point({0, 3}), StopRule{.max_pairs = 3});
  CHECK(t.gap_odd()[0] == Catch::Approx(2.0).margin(1e-12));
  CHECK(t.gap_odd()[1] > t.gap_odd()[0]);
}

TEST_CASE("divergence sentinel fires past the norm threshold", "[iterate]") {
  // a set far from the origin sends the first iterate past the sentinel
  // 1e3 * factor * (1 + |x0|)
  ConvexSet far = Hyperplane(Point({0, 1}), 5e3);
  ConvexSet near = Ball(Point({0, 5e3}), 1.0);
  StopRule rule;
  rule.max_pairs = 10;
  Trace t = alternate(far, near, Point({0, 0}), rule);
  CHECK(t.stop_reason() == StopReason::NormExploded);
  CHECK(t.size() == 3);  // stopped after the first pair

  // a larger factor raises the threshold above the excursion
  rule.norm_explosion_factor = 10.0;
  Trace t2 = alternate(far, near, Point({0, 0}), rule);
  CHECK(t2.stop_reason() != StopReason::NormExploded);
}

TEST_CASE("stop rule validation", "[iterate]") {
  StopRule rule;
  rule.max_pairs = 0;
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
  rule.max_pairs = 10;
  rule.norm_explosion_factor = 0.5;
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
  rule.norm_explosion_factor = 1.0;
  rule.gap_stall_tol = -1.0;
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
}

TEST_CASE("windowed storage keeps scalars complete", "[iterate]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  StopRule rule;
  rule.max_pairs = 10001;  // beyond the full-store cap
  rule.gap_stall_tol = 0.0;
  Trace t = alternate(b1, b2, Point({0, 3}), rule);
  CHECK(t.windowed());
  CHECK(t.size() == 2 * 10001 + 1);
  CHECK(t.gap_even().size() == 10001);
  CHECK(t.norms().size() == t.size());
  CHECK(t.point(0) == nullptr);  // evicted
  CHECK(t.point(t.size() - 1) != nullptr);
  CHECK(t.first_stored() == t.size() - Trace::kWindow);
}

TEST_CASE("dykstra converges to the nearest intersection point", "[iterate]") {
  ConvexSet box = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet hs = Halfspace(Point({1, 1}), 1.0);
  StopRule rule;
  rule.max_pairs = 200;
  rule.gap_stall_tol = 0.0;

  Trace t = dykstra(box, hs, Point({1, 1}), rule);
  CHECK(approx_equal(t.back(), Point({0.5, 0.5}), 1e-9));

  // start inside the intersection: constant
  Trace t2 = dykstra(box, hs, Point({0.25, 0.25}), StopRule{.max_pairs = 5});
  for (std::size_t n = 0; n < t2.size(); ++n)
    CHECK(approx_equal(*t2.point(n), Point({0.25, 0.25}), 1e-12));

  // quarter-disc: nearest point of Ball(0,1) ∩ [0,1]^2 to (2,2)
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  ConvexSet square = Box(Point({0, 0}), Point({1, 1}));
  Trace t3 = dykstra(ball, square, Point({2, 2}), rule);
  // oracle: dense feasible grid over the quarter disc
  Point oracle = Point::zero(2);
  double best = 1e300;
  for (double x = 0; x <= 1.0; x += 1e-3) {
    for (double y = 0; y <= 1.0; y += 1e-3) {
      Point g({x, y});
      if (!ball.member(g, 0.0)) continue;
      double d = distance(g, Point({2, 2}));
      if (d < best) {
        best = d;
        oracle = g;
      }
    }
  }
  CHECK(distance(t3.back(), oracle) < 2e-3);
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(approx_equal(t3.back(), Point({inv_sqrt2, inv_sqrt2}), 1e-6));
}

TEST_CASE("dykstra vs plain alternation on box ∩ halfspace", "[iterate]") {
  // From (2, 0.8) the alternating limit (0.6, 0.4) is an intersection point
  // but not the nearest one; Dykstra reaches the nearest point (1, 0).
  ConvexSet box = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet hs = Halfspace(Point({1, 1}), 1.0);
  Point x0({2, 0.8});
  StopRule rule;
  rule.max_pairs = 4000;
  rule.gap_stall_tol = 0.0;

  Trace alt = alternate(box, hs, x0, rule);
  CHECK(box.member(alt.back(), 1e-6));
  CHECK(hs.member(alt.back(), 1e-6));
  CHECK(approx_equal(alt.back(), Point({0.6, 0.4}), 1e-9));

  Trace dyk = dykstra(box, hs, x0, rule);
  CHECK(approx_equal(dyk.back(), Point({1, 0}), 1e-6));
  CHECK(distance(alt.back(), dyk.back()) > 0.1);  // genuinely different
}

TEST_CASE("subspace intersection projector examples", "[iterate]") {
  AffineSubspace x_axis(Point::zero(2), {Point({1, 0})});
  AffineSubspace diag(Point::zero(2), {Point({1, 1})});
  SubspaceProjector p0 = subspace_intersection_projector(x_axis, diag);
  CHECK(p0.basis.empty());  // lines meet only at the origin
  CHECK(norm(p0(Point({3, -7}))) == 0.0);

  AffineSubspace line(Point::zero(3), {Point({1, 0, 0})});
  SubspaceProjector p1 = subspace_intersection_projector(line, line);
  REQUIRE(p1.basis.size() == 1);
  CHECK(approx_equal(p1(Point({2, 5, -1})), Point({2, 0, 0}), 1e-12));

  AffineSubspace s12(Point::zero(3), {Point({1, 0, 0}), Point({0, 1, 0})});
  AffineSubspace s23(Point::zero(3), {Point({0, 1, 0}), Point({0, 0, 1})});
  SubspaceProjector p2 = subspace_intersection_projector(s12, s23);
  REQUIRE(p2.basis.size() == 1);
  CHECK(approx_equal(p2(Point({0.4, 1.2, -0.8})), Point({0, 1.2, 0}), 1e-12));

  // idempotent and self-adjoint
  Point x({0.3, -1.2, 0.7}), y({1.1, 0.2, -0.4});
  CHECK(distance(p2(p2(x)), p2(x)) < 1e-12);
  CHECK(std::abs(inner(p2(x), y) - inner(x, p2(y))) < 1e-12);

  AffineSubspace off_origin(Point({1, 0, 0}), {Point({0, 1, 0})});
  CHECK_THROWS_AS(subspace_intersection_projector(off_origin, line),
                  std::invalid_argument);
}

TEST_CASE("fixed point residual on the two-ball pair", "[iterate]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  CHECK(fixed_point_residual(b1, b2, Point({3, 0})) == 0.0);
  CHECK(fixed_point_residual(b1, b2, Point({4, 1})) > 0.1);
  // a point in a nonempty intersection is always fixed
  ConvexSet c = Ball(Point({1, 0}), 1.0);
  CHECK(fixed_point_residual(b1, c, Point({0.5, 0.0})) == 0.0);
}

TEST_CASE("fixed points of P2P1 are exactly the distance-attaining points",
          "[iterate]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  int fixed_count = 0;
  for (int ir = 1; ir <= 10; ++ir) {
    for (int ia = 0; ia < 10; ++ia) {
      double r = 0.1 * ir;
      double th = 2.0 * 3.14159265358979323846 * ia / 10.0;
      Point z({4.0 + r * std::cos(th), r * std::sin(th)});
      bool is_fixed = fixed_point_residual(b1, b2, z) <= 1e-8;
      bool at_distance = std::abs(distance(z, b1.project(z)) - 2.0) <= 1e-6;
      CHECK(is_fixed == at_distance);
      fixed_count += is_fixed ? 1 : 0;
    }
  }
  CHECK(fixed_count == 1);  // the grid contains (3, 0) and nothing else fixed
}

TEST_CASE("dimension mismatches are rejected", "[iterate]") {
  ConvexSet b2d = Ball(Point({0, 0}), 1.0);
  ConvexSet b3d = Ball(Point({0, 0, 0}), 1.0);
  CHECK_THROWS_AS(alternate(b2d, b3d, Point({0, 0})), DimensionError);
  CHECK_THROWS_AS(alternate(b2d, b2d, Point({0, 0, 0})), DimensionError);
  CHECK_THROWS_AS(fixed_point_residual(b2d, b3d, Point({0, 0})),
                  DimensionError);
}
