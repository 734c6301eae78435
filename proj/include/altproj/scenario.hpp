#pragma once

// Executes a scenario configuration: runs the requested driver, derives all
// diagnostics, evaluates the expected block (when present) and serializes a
// deterministic report. Wall time is reported to the caller but deliberately
// kept out of the JSON so identical runs produce byte-identical files.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "altproj/config.hpp"
#include "altproj/diagnostics.hpp"
#include "altproj/distance.hpp"
#include "altproj/iterate.hpp"
#include "altproj/trace_io.hpp"

namespace altproj {

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> max_pairs_override;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct OracleBlock {
  Scalar distance = 0.0;
  bool attained = false;
  std::optional<Point> v;
};

struct ScenarioReport {
  std::string name;
  Algorithm algorithm = Algorithm::Alternate;
  std::size_t dimension = 0;
  Point x0;
  std::optional<std::uint64_t> seed;  // set iff x0 was drawn randomly
  std::size_t points = 0;
  std::size_t pairs = 0;
  StopReason stop_reason = StopReason::MaxIterations;
  std::optional<OracleBlock> oracle;
  GapLimit gap_limit;
  Point displacement;
  Scalar displacement_residual = 0.0;
  Scalar regularity_tail = 0.0;
  TrajectoryVerdict verdict;
  double wall_ms = 0.0;  // console-only; never serialized
  std::vector<CheckResult> checks;
  std::optional<bool> pass;  // present iff the config had an expected block
};

struct ScenarioOutcome {
  Trace trace;
  ScenarioReport report;
};

namespace detail {

inline Point draw_start(const RandomStart& rs, std::size_t dim) {
  std::mt19937_64 rng(rs.seed);
  std::uniform_real_distribution<Scalar> dist(-rs.scale, rs.scale);
  std::vector<Scalar> c(dim);
  for (Scalar& v : c) v = dist(rng);
  return Point(std::move(c));
}

}  // namespace detail

inline ScenarioOutcome run_scenario(const ScenarioConfig& cfg,
                                    const RunOptions& opts = {}) {
  Point x0 = Point::zero(cfg.dimension);
  std::optional<std::uint64_t> seed;
  if (const Point* p = std::get_if<Point>(&cfg.start)) {
    x0 = *p;
  } else {
    RandomStart rs = std::get<RandomStart>(cfg.start);
    if (opts.seed_override) rs.seed = *opts.seed_override;
    seed = rs.seed;
    x0 = detail::draw_start(rs, cfg.dimension);
  }
  StopRule stop = cfg.stop;
  if (opts.max_pairs_override) stop.max_pairs = *opts.max_pairs_override;

  auto t0 = std::chrono::steady_clock::now();
  Trace trace = cfg.algorithm == Algorithm::Alternate
                    ? alternate(cfg.set_a, cfg.set_b, x0, stop)
                    : dykstra(cfg.set_a, cfg.set_b, x0, stop);
  auto t1 = std::chrono::steady_clock::now();

  GapSeries gaps = gap_series(trace);
  DisplacementEstimate de = displacement_estimate(displacement_series(trace));

  ScenarioReport rep;
  rep.name = cfg.name;
  rep.algorithm = cfg.algorithm;
  rep.dimension = cfg.dimension;
  rep.x0 = x0;
  rep.seed = seed;
  rep.points = trace.size();
  rep.pairs = trace.pairs();
  rep.stop_reason = trace.stop_reason();
  rep.gap_limit = gap_limit_estimate(gaps);
  rep.displacement = de.value;
  rep.displacement_residual = de.residual;
  rep.regularity_tail = tail_max(asymptotic_regularity_series(trace), 10);
  rep.verdict = classify(trace, gaps);
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  if (auto da = analytic_distance(cfg.set_a, cfg.set_b)) {
    OracleBlock ob;
    ob.distance = da->value;
    ob.attained = da->attained;
    ob.v = least_norm_difference(cfg.set_a, cfg.set_b);
    rep.oracle = std::move(ob);
  }

  if (cfg.expected) {
    const ExpectedBlock& eb = *cfg.expected;
    auto add = [&](const std::string& name, bool ok, std::string detail) {
      rep.checks.push_back({name, ok, std::move(detail)});
    };
    char buf[160];
    if (eb.distance) {
      Scalar err = std::abs(rep.gap_limit.value - *eb.distance);
      Scalar tol = std::max(eb.distance_tol, rep.gap_limit.uncertainty);
      std::snprintf(buf, sizeof(buf), "|gap_limit - %.6g| = %.3e (tol %.1e)",
                    *eb.distance, err, tol);
      add("distance", err <= tol, buf);
    }
    if (eb.attained) {
      if (rep.oracle) {
        std::snprintf(buf, sizeof(buf), "oracle says %s, expected %s",
                      rep.oracle->attained ? "attained" : "unattained",
                      *eb.attained ? "attained" : "unattained");
        add("attained", rep.oracle->attained == *eb.attained, buf);
      } else {
        add("attained", false, "no closed-form oracle for this pair");
      }
    }
    if (eb.v) {
      Scalar err = distance(rep.displacement, *eb.v);
      std::snprintf(buf, sizeof(buf), "|displacement - v| = %.3e (tol %.1e)",
                    err, eb.v_tol);
      add("v", err <= eb.v_tol, buf);
    }
    if (eb.verdict_class) {
      std::snprintf(buf, sizeof(buf), "verdict %s, expected %s",
                    to_string(rep.verdict.cls), to_string(*eb.verdict_class));
      add("verdict_class", rep.verdict.cls == *eb.verdict_class, buf);
    }
    if (eb.limit) {
      Scalar err = distance(trace.back(), *eb.limit);
      std::snprintf(buf, sizeof(buf), "|final - limit| = %.3e (tol %.1e)", err,
                    eb.limit_tol);
      add("limit", err <= eb.limit_tol, buf);
    }
    bool all = true;
    for (const CheckResult& c : rep.checks) all = all && c.pass;
    rep.pass = all;
  }

  return {std::move(trace), std::move(rep)};
}

inline Json report_to_json(const ScenarioReport& r) {
  Json j;
  j["schema_version"] = 1;
  j["name"] = r.name;
  j["algorithm"] = to_string(r.algorithm);
  j["dimension"] = r.dimension;
  j["x0"] = detail::point_to_json(r.x0);
  if (r.seed) {
    j["x0_seed"] = *r.seed;
    j["x0_generator"] = "mt19937_64";
  }
  j["iterations"] = Json{{"points", r.points},
                         {"pairs", r.pairs},
                         {"stop_reason", to_string(r.stop_reason)}};
  if (r.oracle) {
    Json ob;
    ob["distance"] = r.oracle->distance;
    ob["attained"] = r.oracle->attained;
    if (r.oracle->v) ob["v"] = detail::point_to_json(*r.oracle->v);
    j["oracle"] = ob;
  } else {
    j["oracle"] = nullptr;
  }
  j["gap_limit"] = Json{{"value", r.gap_limit.value},
                        {"uncertainty", r.gap_limit.uncertainty}};
  j["displacement"] = Json{{"value", detail::point_to_json(r.displacement)},
                           {"residual", r.displacement_residual}};
  j["asymptotic_regularity_tail"] = r.regularity_tail;
  Json ev = Json::object();
  for (const auto& [k, val] : r.verdict.evidence) ev[k] = val;
  j["verdict"] = Json{{"class", to_string(r.verdict.cls)}, {"evidence", ev}};
  if (r.pass) {
    Json checks = Json::array();
    for (const CheckResult& c : r.checks)
      checks.push_back(
          Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["pass"] = *r.pass;
  }
  return j;
}

inline void write_report(const std::filesystem::path& path,
                         const ScenarioReport& r) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path.string());
  os << report_to_json(r).dump(2) << '\n';
}

}  // namespace altproj
