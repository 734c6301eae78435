#pragma once

// Alternating-projection and Dykstra drivers plus the direct (non-iterative)
// projector onto the intersection of two linear subspaces.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "altproj/detail/linalg.hpp"
#include "altproj/errors.hpp"
#include "altproj/point.hpp"
#include "altproj/sets.hpp"

namespace altproj {

enum class StopReason { MaxIterations, GapStalled, NormExploded };

enum class Algorithm { Alternate, Dykstra };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxIterations: return "MaxIterations";
    case StopReason::GapStalled: return "GapStalled";
    case StopReason::NormExploded: return "NormExploded";
  }
  return "?";
}

inline const char* to_string(Algorithm a) {
  return a == Algorithm::Alternate ? "alternate" : "dykstra";
}

/// Stopping policy for the drivers.
///  - max_pairs: hard budget of projection pairs (>= 1).
///  - gap_stall_tol: stop once successive even gaps differ by less than this
///    for kStallPairs consecutive pairs; 0 disables stalling.
///  - norm_explosion_factor: divergence sentinel fires when an iterate norm
///    exceeds 1e3 * factor * (1 + |x0|).
struct StopRule {
  std::size_t max_pairs = 10000;
  Scalar gap_stall_tol = 1e-12;
  Scalar norm_explosion_factor = 1.0;

  static constexpr int kStallPairs = 8;
  static constexpr Scalar kExplosionBase = 1e3;

  void validate() const {
    if (max_pairs < 1)
      throw std::invalid_argument("StopRule: max_pairs must be >= 1");
    if (!(gap_stall_tol >= 0.0))
      throw std::invalid_argument("StopRule: gap_stall_tol must be >= 0");
    if (!(norm_explosion_factor >= 1.0))
      throw std::invalid_argument(
          "StopRule: norm_explosion_factor must be >= 1");
  }

  Scalar explosion_threshold(const Point& x0) const {
    return kExplosionBase * norm_explosion_factor * (1.0 + norm(x0));
  }
};

/// The iterate sequence x_0, x_1, ..., x_N plus per-pair scalar series.
/// Parity convention: odd indices are outputs of P_1, even indices >= 2 are
/// outputs of P_2. Up to kFullStoreMaxPairs the full point sequence is kept;
/// for larger budgets only a sliding window of the last kWindow points is
/// stored while the scalar series (norms, gaps, regularity residuals) stay
/// complete.
class Trace {
 public:
  static constexpr std::size_t kFullStoreMaxPairs = 10000;
  static constexpr std::size_t kWindow = 64;

  Trace(ConvexSet c1, ConvexSet c2, Point x0, Algorithm algo, bool windowed)
      : c1_(std::move(c1)),
        c2_(std::move(c2)),
        x0_(std::move(x0)),
        algorithm_(algo),
        windowed_(windowed) {
    push(x0_);
  }

  const ConvexSet& set1() const { return c1_; }
  const ConvexSet& set2() const { return c2_; }
  const Point& start() const { return x0_; }
  Algorithm algorithm() const { return algorithm_; }
  StopReason stop_reason() const { return stop_reason_; }

  /// Total number of iterates produced (stored or not).
  std::size_t size() const { return total_; }
  std::size_t pairs() const { return gap_even_.size(); }
  bool windowed() const { return windowed_; }

  /// Index of the first iterate still stored.
  std::size_t first_stored() const { return first_stored_; }

  /// The n-th iterate, or nullptr if it was evicted from the window.
  const Point* point(std::size_t n) const {
    if (n >= total_ || n < first_stored_) return nullptr;
    return &stored_[n - first_stored_];
  }

  /// Final iterate (always an output of P_2).
  const Point& back() const { return stored_.back(); }

  const std::vector<Scalar>& norms() const { return norms_; }
  const std::vector<Scalar>& gap_odd() const { return gap_odd_; }
  const std::vector<Scalar>& gap_even() const { return gap_even_; }
  /// r_n = |x_{2n+2} - x_{2n}|.
  const std::vector<Scalar>& regularity() const { return ar_; }

  // --- driver-side mutation ---
  void push(const Point& x) {
    stored_.push_back(x);
    norms_.push_back(norm(x));
    ++total_;
    if (windowed_ && stored_.size() > kWindow) {
      stored_.erase(stored_.begin());
      ++first_stored_;
    }
  }
  void record_pair(Scalar godd, Scalar geven, Scalar reg) {
    gap_odd_.push_back(godd);
    gap_even_.push_back(geven);
    ar_.push_back(reg);
  }
  void set_stop_reason(StopReason r) { stop_reason_ = r; }

 private:
  ConvexSet c1_;
  ConvexSet c2_;
  Point x0_;
  Algorithm algorithm_;
  bool windowed_;
  StopReason stop_reason_ = StopReason::MaxIterations;
  std::size_t total_ = 0;
  std::size_t first_stored_ = 0;
  std::vector<Point> stored_;
  std::vector<Scalar> norms_;
  std::vector<Scalar> gap_odd_;
  std::vector<Scalar> gap_even_;
  std::vector<Scalar> ar_;
};

namespace detail {

template <typename PairStep>
Trace run_driver(const ConvexSet& c1, const ConvexSet& c2, const Point& x0,
                 const StopRule& rule, Algorithm algo, PairStep&& step) {
  rule.validate();
  if (c1.dim() != c2.dim() || x0.dim() != c1.dim())
    throw DimensionError("iterate: ambient dimensions disagree");

  Trace t(c1, c2, x0, algo, rule.max_pairs > Trace::kFullStoreMaxPairs);
  const Scalar blowup = rule.explosion_threshold(x0);
  Point x = x0;
  int stall_run = 0;

  for (std::size_t n = 0; n < rule.max_pairs; ++n) {
    Point x1, x2;
    try {
      step(x, x1, x2);
    } catch (const SolverError& e) {
      throw SolverError("projection failed at iterate " +
                        std::to_string(t.size()) + ": " + e.what());
    }
    t.push(x1);
    t.push(x2);
    t.record_pair(distance(x1, x), distance(x2, x1), distance(x2, x));
    x = x2;

    if (norm(x1) > blowup || norm(x2) > blowup) {
      t.set_stop_reason(StopReason::NormExploded);
      return t;
    }
    const auto& ge = t.gap_even();
    if (rule.gap_stall_tol > 0.0 && ge.size() >= 2) {
      Scalar diff = std::abs(ge[ge.size() - 1] - ge[ge.size() - 2]);
      stall_run = diff < rule.gap_stall_tol ? stall_run + 1 : 0;
      if (stall_run >= StopRule::kStallPairs) {
        t.set_stop_reason(StopReason::GapStalled);
        return t;
      }
    }
  }
  t.set_stop_reason(StopReason::MaxIterations);
  return t;
}

}  // namespace detail

/// Alternating nearest-point projections x_{2n+1} = P_1 x_{2n},
/// x_{2n+2} = P_2 x_{2n+1}.
inline Trace alternate(const ConvexSet& c1, const ConvexSet& c2,
                       const Point& x0, const StopRule& rule = {}) {
  return detail::run_driver(
      c1, c2, x0, rule, Algorithm::Alternate,
      [&](const Point& x, Point& x1, Point& x2) {
        x1 = c1.project(x);
        x2 = c2.project(x1);
      });
}

/// Two-set Dykstra iteration with correction terms initialized to zero.
/// With a nonempty intersection the iterates converge to the point of
/// C_1 ∩ C_2 nearest to x0 (plain alternation only reaches *some*
/// intersection point). Stored iterates are the projection outputs of the
/// corrected points, so the Trace parity convention still holds, but the
/// replay identity x_{n+1} = P(x_n) does not apply to Dykstra traces.
inline Trace dykstra(const ConvexSet& c1, const ConvexSet& c2, const Point& x0,
                     const StopRule& rule = {}) {
  Point p = Point::zero(x0.dim());
  Point q = Point::zero(x0.dim());
  return detail::run_driver(
      c1, c2, x0, rule, Algorithm::Dykstra,
      [&, p, q](const Point& x, Point& x1, Point& x2) mutable {
        Point yp = x + p;
        x1 = c1.project(yp);
        p = yp - x1;
        Point yq = x1 + q;
        x2 = c2.project(yq);
        q = yq - x2;
      });
}

/// |z - P_2(P_1 z)|: residual of z as a fixed point of the composition.
inline Scalar fixed_point_residual(const ConvexSet& c1, const ConvexSet& c2,
                                   const Point& z) {
  if (c1.dim() != c2.dim() || z.dim() != c1.dim())
    throw DimensionError("fixed_point_residual: dimensions disagree");
  return distance(z, c2.project(c1.project(z)));
}

/// Orthogonal projector onto the intersection of two linear subspaces,
/// computed directly from an orthonormal basis of the joint null space of
/// the two orthogonal-complement projectors (rank threshold 1e-10).
struct SubspaceProjector {
  std::size_t ambient_dim = 0;
  std::vector<Point> basis;  // orthonormal basis of S_1 ∩ S_2

  Point operator()(const Point& x) const {
    if (x.dim() != ambient_dim)
      throw DimensionError("SubspaceProjector: dimension mismatch");
    return detail::project_onto_span(basis, x);
  }
};

inline SubspaceProjector subspace_intersection_projector(
    const AffineSubspace& s1, const AffineSubspace& s2) {
  if (s1.anchor.dim() != s2.anchor.dim())
    throw DimensionError("subspace_intersection_projector: dims disagree");
  if (!s1.is_linear() || !s2.is_linear())
    throw std::invalid_argument(
        "subspace_intersection_projector: anchors must be the origin");

  const std::size_t d = s1.anchor.dim();
  // M = (I - P_1) + (I - P_2); its null space is exactly S_1 ∩ S_2.
  detail::Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 2.0;
  auto subtract_projector = [&](const std::vector<Point>& onb) {
    for (const Point& e : onb)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) -= e[i] * e[j];
  };
  subtract_projector(s1.onb);
  subtract_projector(s2.onb);

  detail::SymmetricEigen eig = detail::jacobi_symmetric_eigen(std::move(m));
  SubspaceProjector proj;
  proj.ambient_dim = d;
  for (std::size_t j = 0; j < d; ++j) {
    if (eig.values[j] < 1e-10) proj.basis.push_back(eig.vectors.column(j));
  }
  return proj;
}

}  // namespace altproj
