#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "altproj/distance.hpp"
#include "altproj/verify.hpp"

using namespace altproj;

TEST_CASE("ball-ball distances", "[distance]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  auto da = analytic_distance(b1, b2);
  REQUIRE(da);
  CHECK(da->value == Catch::Approx(2.0).margin(1e-14));
  CHECK(da->attained);
  REQUIRE(da->witnesses);
  CHECK(approx_equal(da->witnesses->first, Point({1, 0}), 1e-12));
  CHECK(approx_equal(da->witnesses->second, Point({3, 0}), 1e-12));

  auto overlap = analytic_distance(b1, Ball(Point({1, 0}), 1.0));
  REQUIRE(overlap);
  CHECK(overlap->value == 0.0);
  CHECK(overlap->attained);
  REQUIRE(overlap->witnesses);
  // a witness of zero distance is a common point
  CHECK(b1.member(overlap->witnesses->first, 1e-12));
  CHECK(ConvexSet(Ball(Point({1, 0}), 1.0))
            .member(overlap->witnesses->first, 1e-12));

  auto concentric = analytic_distance(b1, Ball(Point({0, 0}), 0.25));
  REQUIRE(concentric);
  CHECK(concentric->value == 0.0);
  CHECK(concentric->attained);
}

TEST_CASE("epigraph vs halfspace distance is unattained", "[distance]") {
  ConvexSet hs = Halfspace(Point({0, 1}), 0.0);
  ConvexSet epi = Epigraph1D(epigraph_function("exp-neg"));
  auto da = analytic_distance(hs, epi);
  REQUIRE(da);
  CHECK(da->value == 0.0);
  CHECK_FALSE(da->attained);
  CHECK_FALSE(da->witnesses.has_value());

  // same answer with the arguments flipped
  auto flipped = analytic_distance(epi, hs);
  REQUIRE(flipped);
  CHECK(flipped->value == 0.0);
  CHECK_FALSE(flipped->attained);

  // a strictly separated halfspace {t <= -2}
  auto separated = analytic_distance(Halfspace(Point({0, 1}), -2.0), epi);
  REQUIRE(separated);
  CHECK(separated->value == Catch::Approx(2.0).margin(1e-14));
  CHECK_FALSE(separated->attained);

  // an overlapping halfspace {t <= 1}: intersection nonempty at s >= 0
  auto touching = analytic_distance(Halfspace(Point({0, 1}), 1.0), epi);
  REQUIRE(touching);
  CHECK(touching->value == 0.0);
  CHECK(touching->attained);
  REQUIRE(touching->witnesses);
  CHECK(epi.member(touching->witnesses->first, 1e-12));
}

TEST_CASE("halfspace and hyperplane distances", "[distance]") {
  // {t <= 0} vs {t >= 1}
  ConvexSet a = Halfspace(Point({0, 1}), 0.0);
  ConvexSet b = Halfspace(Point({0, -1}), -1.0);
  auto da = analytic_distance(a, b);
  REQUIRE(da);
  CHECK(da->value == Catch::Approx(1.0).margin(1e-14));
  CHECK(da->attained);

  // overlapping opposite halfspaces
  auto overlap =
      analytic_distance(a, ConvexSet(Halfspace(Point({0, -1}), 1.0)));
  REQUIRE(overlap);
  CHECK(overlap->value == 0.0);

  // non-parallel halfspaces have no closed form in the table
  CHECK_FALSE(analytic_distance(a, ConvexSet(Halfspace(Point({1, 0}), 0.0))));

  auto hyp = analytic_distance(ConvexSet(Hyperplane(Point({1, 1}), 0.0)),
                               ConvexSet(Hyperplane(Point({2, 2}), 4.0)));
  REQUIRE(hyp);
  CHECK(hyp->value == Catch::Approx(std::sqrt(2.0)).margin(1e-12));

  // anti-parallel normals describe parallel hyperplanes too
  auto anti = analytic_distance(ConvexSet(Hyperplane(Point({0, 1}), 2.0)),
                                ConvexSet(Hyperplane(Point({0, -1}), 1.0)));
  REQUIRE(anti);
  CHECK(anti->value == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("ball vs halfspace distance", "[distance]") {
  ConvexSet ball = Ball(Point({0, 0}), 1.0);
  ConvexSet hs = Halfspace(Point({0, 1}), -3.0);  // {t <= -3}
  auto da = analytic_distance(ball, hs);
  REQUIRE(da);
  CHECK(da->value == Catch::Approx(2.0).margin(1e-14));
  REQUIRE(da->witnesses);
  CHECK(approx_equal(da->witnesses->first, Point({0, -1}), 1e-12));
  CHECK(approx_equal(da->witnesses->second, Point({0, -3}), 1e-12));

  auto flipped = analytic_distance(hs, ball);
  REQUIRE(flipped);
  CHECK(flipped->value == Catch::Approx(2.0).margin(1e-14));
  CHECK(approx_equal(flipped->witnesses->first, Point({0, -3}), 1e-12));
}

TEST_CASE("affine-affine distances", "[distance]") {
  // parallel lines in R^3
  ConvexSet l1 = AffineSubspace(Point({0, 0, 0}), {Point({1, 0, 0})});
  ConvexSet l2 = AffineSubspace(Point({0, 1, 2}), {Point({1, 0, 0})});
  auto da = analytic_distance(l1, l2);
  REQUIRE(da);
  CHECK(da->value == Catch::Approx(std::sqrt(5.0)).margin(1e-12));
  CHECK(da->attained);
  REQUIRE(da->witnesses);
  CHECK(distance(da->witnesses->first, da->witnesses->second) ==
        Catch::Approx(da->value).margin(1e-10));

  // skew lines in R^3
  ConvexSet s1 = AffineSubspace(Point::zero(3), {Point({1, 0, 0})});
  ConvexSet s2 = AffineSubspace(Point({0, 0, 1}), {Point({0, 1, 0})});
  auto skew = analytic_distance(s1, s2);
  REQUIRE(skew);
  CHECK(skew->value == Catch::Approx(1.0).margin(1e-12));
  const auto& [p, q] = *skew->witnesses;
  CHECK(distance(s1.project(q), p) < 1e-8);
  CHECK(distance(s2.project(p), q) < 1e-8);
}

TEST_CASE("box-box distance", "[distance]") {
  ConvexSet a = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet b = Box(Point({2, 0.5}), Point({3, 1.5}));
  auto da = analytic_distance(a, b);
  REQUIRE(da);
  CHECK(da->value == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(da->witnesses);
  CHECK(approx_equal(da->witnesses->first, Point({1, 0.5}), 1e-12));
  CHECK(approx_equal(da->witnesses->second, Point({2, 0.5}), 1e-12));

  // diagonal separation
  auto diag = analytic_distance(
      a, ConvexSet(Box(Point({2, 2}), Point({3, 3}))));
  CHECK(diag->value == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("unsupported pairs report no closed form", "[distance]") {
  CHECK_FALSE(analytic_distance(ConvexSet(Ball(Point({0, 0}), 1.0)),
                                ConvexSet(Box(Point({0, 0}), Point({1, 1})))));
  CHECK_FALSE(least_norm_difference(
      ConvexSet(Ball(Point({0, 0}), 1.0)),
      ConvexSet(Box(Point({0, 0}), Point({1, 1})))));
  CHECK_THROWS_AS(analytic_distance(ConvexSet(Ball(Point({0, 0}), 1.0)),
                                    ConvexSet(Ball(Point({0, 0, 0}), 1.0))),
                  DimensionError);
}

TEST_CASE("least-norm difference examples", "[distance]") {
  auto v = least_norm_difference(ConvexSet(Ball(Point({0, 0}), 1.0)),
                                 ConvexSet(Ball(Point({4, 0}), 1.0)));
  REQUIRE(v);
  CHECK(approx_equal(*v, Point({2, 0}), 1e-12));

  // intersecting pair: zero vector
  auto z = least_norm_difference(ConvexSet(Ball(Point({0, 0}), 1.0)),
                                 ConvexSet(Ball(Point({1, 0}), 1.0)));
  REQUIRE(z);
  CHECK(norm(*z) == 0.0);

  // {t <= 0} vs {t >= 1}: the gap vector (0, 1)
  auto g = least_norm_difference(ConvexSet(Halfspace(Point({0, 1}), 0.0)),
                                 ConvexSet(Halfspace(Point({0, -1}), -1.0)));
  REQUIRE(g);
  CHECK(approx_equal(*g, Point({0, 1}), 1e-12));

  // orientation matters: swapping the sets negates the vector
  auto gswap = least_norm_difference(
      ConvexSet(Halfspace(Point({0, -1}), -1.0)),
      ConvexSet(Halfspace(Point({0, 1}), 0.0)));
  CHECK(approx_equal(*gswap, Point({0, -1}), 1e-12));
}

TEST_CASE("least-norm difference has norm equal to the distance",
          "[distance]") {
  auto check = [](const ConvexSet& a, const ConvexSet& b) {
    auto da = analytic_distance(a, b);
    auto v = least_norm_difference(a, b);
    REQUIRE(da);
    REQUIRE(v);
    CHECK(norm(*v) == Catch::Approx(da->value).margin(1e-10));
  };
  check(Ball(Point({0, 0}), 1.0), Ball(Point({4, 0}), 1.0));
  check(Ball(Point({1, 1}), 0.5), Halfspace(Point({0, 1}), -3.0));
  check(Halfspace(Point({0, 1}), -3.0), Ball(Point({1, 1}), 0.5));
  check(Halfspace(Point({0, 1}), 0.0), Halfspace(Point({0, -1}), -1.0));
  check(Hyperplane(Point({1, 1}), 0.0), Hyperplane(Point({2, 2}), 4.0));
  check(AffineSubspace(Point::zero(3), {Point({1, 0, 0})}),
        AffineSubspace(Point({0, 0, 1}), {Point({0, 1, 0})}));
  check(Box(Point({0, 0}), Point({1, 1})),
        Box(Point({2, 0.5}), Point({3, 1.5})));
  check(Halfspace(Point({0, 1}), -2.0),
        Epigraph1D(epigraph_function("exp-neg")));
  check(Epigraph1D(epigraph_function("exp-neg")),
        Halfspace(Point({0, 1}), -2.0));
}

TEST_CASE("witness difference equals the least-norm vector", "[distance]") {
  // q - p lies in C2 - C1 with |q - p| = d, and the least-norm element of
  // the closed convex difference is unique, so the two independent code
  // paths must produce the same vector.
  for (const OraclePair& pr : oracle_pair_samples()) {
    auto da = analytic_distance(pr.a, pr.b);
    auto v = least_norm_difference(pr.a, pr.b);
    REQUIRE(da);
    REQUIRE(v);
    REQUIRE(da->attained);
    REQUIRE(da->witnesses);
    const auto& [p, q] = *da->witnesses;
    INFO(pr.label);
    CHECK(approx_equal(q - p, *v, 1e-9));
    // witnesses are mutual projections (trivially so when p == q)
    CHECK(distance(pr.a.project(q), p) < 1e-8);
    CHECK(distance(pr.b.project(p), q) < 1e-8);
  }
}

TEST_CASE("grid fallback brackets the analytic distance", "[distance]") {
  ConvexSet b1 = Ball(Point({0, 0}), 1.0);
  ConvexSet b2 = Ball(Point({4, 0}), 1.0);
  GridSearchOptions opts{Point({-2, -2}), Point({5, 3}), 41, 4};
  GridDistanceAnswer ans = grid_distance(b1, b2, opts);
  CHECK(ans.value >= 2.0 - 1e-12);  // candidate pairs are always feasible
  CHECK(ans.value <= 2.0 + ans.tolerance);
  CHECK(b1.member(ans.p, 1e-9));
  CHECK(b2.member(ans.q, 1e-9));

  // an unsupported pair for which the table has no entry
  ConvexSet box = Box(Point({0, 0}), Point({1, 1}));
  ConvexSet ball = Ball(Point({3, 3}), 1.0);
  REQUIRE_FALSE(analytic_distance(box, ball));
  GridDistanceAnswer fb = grid_distance(box, ball, opts);
  double exact = std::sqrt(8.0) - 1.0;  // corner (1,1) to the ball
  CHECK(fb.value >= exact - 1e-12);
  CHECK(fb.value <= exact + fb.tolerance);
}
