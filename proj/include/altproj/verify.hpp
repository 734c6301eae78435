#pragma once

// Self-verification: every built-in scenario is checked against its expected
// block and the supporting operator properties are sampled at configurable
// counts. All randomness flows from one recorded seed, so two runs with the
// same seed print byte-identical tables.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "altproj/catalog.hpp"
#include "altproj/diagnostics.hpp"
#include "altproj/distance.hpp"
#include "altproj/scenario.hpp"

namespace altproj {

using ProjectFn = std::function<Point(const ConvexSet&, const Point&)>;

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 0x414c54504a31ULL;
  /// Test seam: replaces the projection used by the operator property
  /// suites. Leave empty for the real projection.
  ProjectFn project_hook;
};

struct SuiteResult {
  std::string suite;
  std::string claim;
  bool pass = false;
  Scalar worst = 0.0;  // worst residual observed (suite-specific meaning)
  std::string detail;
};

struct VerifyResult {
  std::vector<SuiteResult> suites;
  bool all_pass = true;
  std::string first_failure;   // "<suite> (<claim>)" of the first failed suite
  Scalar first_residual = 0.0;
};

struct NamedSet {
  std::string label;
  ConvexSet set;
};

namespace detail {

inline Point random_gaussian_point(std::size_t dim, std::mt19937_64& rng,
                                   Scalar scale = 2.0) {
  std::normal_distribution<Scalar> d(0.0, scale);
  std::vector<Scalar> c(dim);
  for (Scalar& v : c) v = d(rng);
  return Point(std::move(c));
}

inline Point random_unit_point(std::size_t dim, std::mt19937_64& rng) {
  for (;;) {
    Point p = random_gaussian_point(dim, rng, 1.0);
    Scalar n = norm(p);
    if (n > 1e-6) return p / n;
  }
}

}  // namespace detail

/// One randomized instance of every catalog variant at the given dimension
/// (epigraphs only exist in dimension 2).
inline std::vector<NamedSet> catalog_set_samples(std::size_t dim,
                                                 std::mt19937_64& rng) {
  using detail::random_gaussian_point;
  using detail::random_unit_point;
  std::uniform_real_distribution<Scalar> offset(-1.5, 1.5);
  std::uniform_real_distribution<Scalar> radius(0.2, 2.0);
  std::uniform_real_distribution<Scalar> width(0.1, 2.0);

  std::vector<NamedSet> out;
  out.push_back({"halfspace", Halfspace(random_unit_point(dim, rng),
                                        offset(rng))});
  out.push_back({"hyperplane", Hyperplane(random_unit_point(dim, rng),
                                          offset(rng))});
  {
    std::size_t k = rng() % (std::min<std::size_t>(dim, 3) + 1);
    std::vector<Point> basis;
    for (std::size_t i = 0; i < k; ++i)
      basis.push_back(random_gaussian_point(dim, rng, 1.0));
    out.push_back({"affine-subspace",
                   AffineSubspace(random_gaussian_point(dim, rng, 1.0),
                                  std::move(basis))});
  }
  {
    std::vector<Scalar> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = offset(rng);
      hi[i] = lo[i] + width(rng);
    }
    out.push_back({"box", Box(Point(lo), Point(hi))});
  }
  out.push_back(
      {"ball", Ball(random_gaussian_point(dim, rng, 0.5), radius(rng))});
  out.push_back({"simplex", ConvexSet(Simplex(dim))});
  out.push_back(
      {"translate(ball)",
       Translate(Ball(Point::zero(dim), radius(rng)),
                 random_gaussian_point(dim, rng, 1.0))});
  {
    std::vector<Scalar> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = offset(rng);
      hi[i] = lo[i] + width(rng);
    }
    out.push_back({"translate(box)",
                   Translate(Box(Point(lo), Point(hi)),
                             random_gaussian_point(dim, rng, 1.0))});
  }
  if (dim == 2) {
    for (const std::string& fname : epigraph_function_names())
      out.push_back({"epigraph(" + fname + ")",
                     Epigraph1D(epigraph_function(fname))});
  }
  return out;
}

/// True when every principal angle between the linear subspaces is either
/// zero (an intersection direction) or bounded away from zero. Near-tangent
/// pairs make alternation converge slower than any finite budget, so the
/// randomized suites redraw them. The eigenvalues of (I-P1)+(I-P2) are
/// 1 -/+ cos(theta_i) over the principal angles; the floor applies to the
/// smallest nonzero one.
inline bool well_separated_subspace_pair(const AffineSubspace& s1,
                                         const AffineSubspace& s2,
                                         Scalar eigenvalue_floor = 0.05) {
  const std::size_t d = s1.anchor.dim();
  detail::Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 2.0;
  for (const std::vector<Point>* onb : {&s1.onb, &s2.onb}) {
    for (const Point& e : *onb)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) -= e[i] * e[j];
  }
  detail::SymmetricEigen eig = detail::jacobi_symmetric_eigen(std::move(m));
  for (Scalar lambda : eig.values) {
    if (lambda >= 1e-10 && lambda < eigenvalue_floor) return false;
  }
  return true;
}

/// Supported closed-form pairs used by the oracle-based suites.
struct OraclePair {
  std::string label;
  ConvexSet a;
  ConvexSet b;
};

inline std::vector<OraclePair> oracle_pair_samples() {
  std::vector<OraclePair> out;
  out.push_back({"ball/ball disjoint", Ball(Point({0, 0}), 1.0),
                 Ball(Point({4, 0}), 1.0)});
  out.push_back({"ball/ball overlap", Ball(Point({0, 0}), 1.0),
                 Ball(Point({1, 0}), 1.0)});
  out.push_back({"ball/halfspace", Ball(Point({0, 0}), 1.0),
                 Halfspace(Point({0, 1}), -3.0)});
  out.push_back({"parallel halfspaces", Halfspace(Point({0, 1}), 0.0),
                 Halfspace(Point({0, -1}), -1.0)});
  out.push_back({"parallel hyperplanes", Hyperplane(Point({1, 1}), 0.0),
                 Hyperplane(Point({2, 2}), 4.0)});
  out.push_back(
      {"skew lines in R^3",
       AffineSubspace(Point::zero(3), {Point({1, 0, 0})}),
       AffineSubspace(Point({0, 0, 1}), {Point({0, 1, 0})})});
  out.push_back({"box/box", Box(Point({0, 0}), Point({1, 1})),
                 Box(Point({2, 0.5}), Point({3, 1.5}))});
  return out;
}

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(VerifyResult& result) : result_(result) {}

  void add(std::string suite, std::string claim, bool pass, Scalar worst,
           std::string detail) {
    if (!pass && result_.all_pass) {
      result_.all_pass = false;
      result_.first_failure = suite + " (" + claim + ")";
      result_.first_residual = worst;
    }
    result_.suites.push_back(
        {std::move(suite), std::move(claim), pass, worst, std::move(detail)});
  }

 private:
  VerifyResult& result_;
};

}  // namespace detail

inline VerifyResult run_verify(const VerifyOptions& opts, std::ostream& out) {
  VerifyResult result;
  detail::SuiteRecorder rec(result);
  std::mt19937_64 rng(opts.seed);
  const std::size_t nsamples = opts.quick ? 60 : 250;
  const std::vector<std::size_t> dims = {1, 2, 3, 10};
  ProjectFn proj = opts.project_hook
                       ? opts.project_hook
                       : [](const ConvexSet& s, const Point& x) {
                           return s.project(x);
                         };

  // --- projection inequality |y - Px|^2 + |x - Px|^2 <= |x - y|^2 ---
  {
    Scalar worst = -1e300;
    std::string at;
    for (std::size_t dim : dims) {
      for (const NamedSet& ns : catalog_set_samples(dim, rng)) {
        for (std::size_t i = 0; i < nsamples; ++i) {
          Point x = detail::random_gaussian_point(dim, rng);
          Point y = proj(ns.set, detail::random_gaussian_point(dim, rng));
          Point px = proj(ns.set, x);
          Scalar excess = norm_squared(y - px) + norm_squared(x - px) -
                          norm_squared(x - y);
          if (excess > worst) {
            worst = excess;
            at = ns.label + " d=" + std::to_string(dim);
          }
        }
      }
    }
    rec.add("projection-inequality", "Lemma 2.1", worst <= 1e-9, worst,
            "worst excess at " + at);
  }

  // --- firm nonexpansiveness |Px-Py|^2 <= <Px-Py, x-y> (+ 1-Lipschitz) ---
  {
    Scalar worst = -1e300;
    std::string at;
    for (std::size_t dim : dims) {
      for (const NamedSet& ns : catalog_set_samples(dim, rng)) {
        for (std::size_t i = 0; i < nsamples; ++i) {
          Point x = detail::random_gaussian_point(dim, rng);
          Point y = detail::random_gaussian_point(dim, rng);
          Point px = proj(ns.set, x), py = proj(ns.set, y);
          Point dp = px - py;
          Scalar firm = norm_squared(dp) - inner(dp, x - y);
          Scalar lips = norm(dp) - norm(x - y);
          Scalar excess = std::max(firm, lips);
          if (excess > worst) {
            worst = excess;
            at = ns.label + " d=" + std::to_string(dim);
          }
        }
      }
    }
    rec.add("firm-nonexpansiveness", "Lemma 2.4", worst <= 1e-9, worst,
            "worst excess at " + at);
  }

  // --- idempotence, membership of projections, identity on the set ---
  {
    Scalar worst = -1e300;
    std::size_t bad_members = 0;
    for (std::size_t dim : dims) {
      for (const NamedSet& ns : catalog_set_samples(dim, rng)) {
        for (std::size_t i = 0; i < nsamples / 4 + 1; ++i) {
          Point x = detail::random_gaussian_point(dim, rng);
          Point px = proj(ns.set, x);
          worst = std::max(worst, distance(proj(ns.set, px), px));
          if (!ns.set.member(px, 1e-9)) ++bad_members;
        }
      }
    }
    rec.add("projection-fixed-points", "Lemma 2.1",
            worst <= 1e-10 && bad_members == 0, worst,
            std::to_string(bad_members) + " projection(s) outside their set");
  }

  // --- gap monotonicity along alternating traces ---
  {
    Scalar worst = -1e300;
    StopRule rule;
    rule.max_pairs = 300;
    for (std::size_t rep = 0; rep < (opts.quick ? 4u : 12u); ++rep) {
      for (const OraclePair& pr : oracle_pair_samples()) {
        Point x0 = detail::random_gaussian_point(pr.a.dim(), rng, 3.0);
        Trace t = alternate(pr.a, pr.b, x0, rule);
        const auto& odd = t.gap_odd();
        const auto& even = t.gap_even();
        for (std::size_t n = 0; n + 1 < even.size(); ++n) {
          worst = std::max(worst, even[n + 1] - even[n]);   // even decreasing
          worst = std::max(worst, odd[n + 1] - even[n]);    // interleave
          if (n >= 1) {
            worst = std::max(worst, odd[n + 1] - odd[n]);   // odd decreasing
            worst = std::max(worst, even[n] - odd[n]);      // interleave
          }
        }
      }
    }
    rec.add("gap-monotonicity", "Theorem 1.4", worst <= 1e-12, worst,
            "max monotonicity excess over random traces");
  }

  // --- asymptotic regularity on every builtin ---
  {
    Scalar worst = -1e300;
    std::string at;
    for (const BuiltinScenario& b : builtin_scenarios()) {
      ScenarioOutcome oc = run_scenario(b.config);
      if (oc.report.regularity_tail > worst) {
        worst = oc.report.regularity_tail;
        at = b.name;
      }
    }
    rec.add("asymptotic-regularity", "Lemma 2.2", worst < 1e-5, worst,
            "largest tail at " + at);
  }

  // --- fixed point set of P2 P1 on the two-ball geometry ---
  {
    ConvexSet c1 = Ball(Point({0, 0}), 1.0);
    ConvexSet c2 = Ball(Point({4, 0}), 1.0);
    std::size_t mismatches = 0;
    for (int ir = 1; ir <= 10; ++ir) {
      for (int ia = 0; ia < 10; ++ia) {
        Scalar r = 0.1 * ir;
        Scalar th = 2.0 * 3.14159265358979323846 * ia / 10.0;
        Point z({4.0 + r * std::cos(th), r * std::sin(th)});
        bool is_fixed = fixed_point_residual(c1, c2, z) <= 1e-8;
        bool at_distance =
            std::abs(distance(z, c1.project(z)) - 2.0) <= 1e-6;
        if (is_fixed != at_distance) ++mismatches;
      }
    }
    rec.add("fixed-point-set", "Lemma 2.3", mismatches == 0,
            static_cast<Scalar>(mismatches),
            "equivalence mismatches over a 100-point grid in C_2");
  }

  // --- gap limit equals the oracle distance ---
  {
    Scalar worst = -1e300;
    std::string at;
    for (const OraclePair& pr : oracle_pair_samples()) {
      DistanceAnswer oracle = *analytic_distance(pr.a, pr.b);
      Point x0 = detail::random_gaussian_point(pr.a.dim(), rng, 2.0);
      Trace t = alternate(pr.a, pr.b, x0);
      GapLimit gl = gap_limit_estimate(gap_series(t));
      Scalar excess = std::abs(gl.value - oracle.value) -
                      std::max(1e-5, gl.uncertainty);
      if (excess > worst) {
        worst = excess;
        at = pr.label;
      }
    }
    rec.add("gap-limit-oracle", "Theorem 1.4", worst <= 0.0, worst,
            "worst |gap_limit - d| excess at " + at);
  }

  // --- displacement vectors against the least-norm oracle ---
  {
    Scalar worst = -1e300;
    std::string at;
    for (const OraclePair& pr : oracle_pair_samples()) {
      Point v = *least_norm_difference(pr.a, pr.b);
      Point x0 = detail::random_gaussian_point(pr.a.dim(), rng, 2.0);
      Trace t = alternate(pr.a, pr.b, x0);
      DisplacementEstimate de = displacement_estimate(displacement_series(t));
      Scalar excess = distance(de.value, v) - 1e-4;
      if (excess > worst) {
        worst = excess;
        at = pr.label + " (estimate)";
      }
      // the squared-distance bound holds at every stored pair
      DisplacementSeries ds = displacement_series(t);
      for (const Point& y : ds.even_disp) {
        Scalar bound = norm_squared(y - v) -
                       2.0 * (norm_squared(y) - norm_squared(v)) - 1e-9;
        if (bound > worst) {
          worst = bound;
          at = pr.label + " (bound)";
        }
      }
    }
    rec.add("displacement-limit", "Corollary 1.5", worst <= 0.0, worst,
            "worst excess at " + at);
  }

  // --- strong nonexpansiveness probe on the two-ball run ---
  {
    ConvexSet c1 = Ball(Point({0, 0}), 1.0);
    ConvexSet c2 = Ball(Point({4, 0}), 1.0);
    Trace t = alternate(c1, c2, Point({0, 3}));
    std::vector<Point> xs, ys;
    Point p1z = Point({1, 0});
    for (std::size_t n = 0; n < t.pairs(); ++n) {
      xs.push_back(*t.point(2 * n + 1));
      ys.push_back(p1z);
    }
    Scalar tail = strong_nonexpansiveness_probe(c2, xs, ys);
    rec.add("strong-nonexpansiveness", "Lemma 2.4", tail < 1e-6, tail,
            "tail of |(x-y) - (Px-Py)| along the odd iterates");
  }

  // --- direct intersection projector and the subspace limit ---
  {
    Scalar worst = -1e300;
    std::string at = "fixed cases";
    auto check_projector = [&](const AffineSubspace& s1,
                               const AffineSubspace& s2, const Point& x0) {
      SubspaceProjector ps = subspace_intersection_projector(s1, s2);
      Point px = ps(x0);
      worst = std::max(worst, distance(ps(px), px) - 1e-10);  // idempotent
      Point y = detail::random_gaussian_point(x0.dim(), rng);
      worst = std::max(worst,
                       std::abs(inner(px, y) - inner(x0, ps(y))) - 1e-10);
      StopRule rule;
      rule.max_pairs = 20000;
      rule.gap_stall_tol = 1e-15;
      Trace t = alternate(ConvexSet(s1), ConvexSet(s2), x0, rule);
      Scalar err = distance(t.back(), px) - 1e-6;
      if (err > worst) {
        worst = err;
        at = "limit check";
      }
    };
    check_projector(AffineSubspace(Point::zero(2), {Point({1, 0})}),
                    AffineSubspace(Point::zero(2), {Point({1, 1})}),
                    Point({0.7, -0.3}));
    check_projector(
        AffineSubspace(Point::zero(3), {Point({1, 0, 0}), Point({0, 1, 0})}),
        AffineSubspace(Point::zero(3), {Point({0, 1, 0}), Point({0, 0, 1})}),
        Point({0.4, 1.2, -0.8}));
    std::size_t pairs = opts.quick ? 3 : 6;
    for (std::size_t rep = 0; rep < pairs; ++rep) {
      for (int attempt = 0; attempt < 200; ++attempt) {
        std::size_t k1 = 2 + rng() % 3, k2 = 2 + rng() % 3;
        std::vector<Point> b1, b2;
        Point shared = detail::random_gaussian_point(6, rng, 1.0);
        b1.push_back(shared);
        b2.push_back(shared);
        for (std::size_t i = 1; i < k1; ++i)
          b1.push_back(detail::random_gaussian_point(6, rng, 1.0));
        for (std::size_t i = 1; i < k2; ++i)
          b2.push_back(detail::random_gaussian_point(6, rng, 1.0));
        AffineSubspace s1(Point::zero(6), b1);
        AffineSubspace s2(Point::zero(6), b2);
        if (!well_separated_subspace_pair(s1, s2)) continue;
        check_projector(s1, s2, detail::random_gaussian_point(6, rng, 2.0));
        break;
      }
    }
    rec.add("subspace-projector", "Theorem 1.1", worst <= 0.0, worst,
            "worst residual at " + at);
  }

  // --- witness consistency of the distance oracle ---
  {
    Scalar worst = -1e300;
    std::string at;
    auto check_pair = [&](const std::string& label, const ConvexSet& a,
                          const ConvexSet& b) {
      DistanceAnswer da = *analytic_distance(a, b);
      if (!da.witnesses) return;
      const auto& [p, q] = *da.witnesses;
      Scalar e1 = std::abs(distance(p, q) - da.value) - 1e-10;
      Scalar e2 = distance(a.project(q), p) - 1e-8;
      Scalar e3 = distance(b.project(p), q) - 1e-8;
      Scalar excess = std::max({e1, e2, e3});
      if (excess > worst) {
        worst = excess;
        at = label;
      }
    };
    check_pair("ball/ball", Ball(Point({0, 0}), 1.0), Ball(Point({4, 0}), 1.0));
    check_pair("halfspaces", Halfspace(Point({0, 1}), 0.0),
               Halfspace(Point({0, -1}), -1.0));
    rec.add("distance-witnesses", "oracle", worst <= 0.0, worst,
            "worst witness residual at " + at);
  }

  // --- every builtin against its expected block ---
  for (const BuiltinScenario& b : builtin_scenarios()) {
    ScenarioOutcome oc = run_scenario(b.config);
    std::string failed;
    std::size_t nfail = 0;
    for (const CheckResult& c : oc.report.checks) {
      if (!c.pass) {
        ++nfail;
        failed += (failed.empty() ? "" : ", ") + c.name;
      }
    }
    rec.add("builtin " + b.name, b.claim, oc.report.pass.value_or(false),
            static_cast<Scalar>(nfail),
            nfail == 0 ? "all expected checks hold" : "failed: " + failed);
  }

  // --- table ---
  char line[256];
  std::snprintf(line, sizeof(line), "%-28s %-32s %-5s %s\n", "suite", "claim",
                "state", "worst-residual");
  out << line;
  out << std::string(86, '-') << '\n';
  for (const SuiteResult& s : result.suites) {
    std::snprintf(line, sizeof(line), "%-28s %-32s %-5s %.3e  %s\n",
                  s.suite.c_str(), s.claim.c_str(), s.pass ? "PASS" : "FAIL",
                  s.worst, s.detail.c_str());
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "overall: %s (%zu suites, seed %llu, %s samples)\n",
                result.all_pass ? "PASS" : "FAIL", result.suites.size(),
                static_cast<unsigned long long>(opts.seed),
                opts.quick ? "quick" : "full");
  out << line;
  return result;
}

}  // namespace altproj
