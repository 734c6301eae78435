#pragma once

// Scalar root finding and minimization used by the epigraph projection:
// a downhill triple bracket for a unimodal objective, safeguarded Newton
// inside a sign-change bracket, and a golden-section fallback.

#include <cmath>
#include <utility>

#include "altproj/errors.hpp"
#include "altproj/point.hpp"

namespace altproj::detail {

struct MinBracket {
  Scalar a, b, c;  // a < b < c with h(b) <= h(a), h(b) <= h(c)
};

/// Brackets the minimum of a unimodal function by doubling steps downhill
/// from `start`. Throws SolverError if no bracket emerges within 200 steps.
template <typename F>
MinBracket bracket_minimum(F&& h, Scalar start, Scalar initial_step) {
  Scalar step = initial_step;
  Scalar a = start, b, c;
  Scalar ha = h(a);
  // choose downhill direction
  if (h(start + step) <= ha) {
    b = start + step;
  } else if (h(start - step) <= ha) {
    step = -step;
    b = start + step;
  } else {
    // start already sits between two rising flanks
    return {start - step, start, start + step};
  }
  Scalar hb = h(b);
  for (int i = 0; i < 200; ++i) {
    step *= 2.0;
    c = b + step;
    Scalar hc = h(c);
    if (hc >= hb) {
      if (a > c) std::swap(a, c);
      return {a, b, c};
    }
    a = b;
    ha = hb;
    b = c;
    hb = hc;
  }
  throw SolverError("bracket_minimum: no bracket within 200 expansions");
}

/// Safeguarded Newton for g(s) = 0 on a bracket with g(lo) <= 0 <= g(hi).
/// Falls back to bisection whenever the Newton step leaves the bracket.
/// Terminates when |step| < step_tol.
template <typename G, typename DG>
Scalar safeguarded_newton(G&& g, DG&& dg, Scalar lo, Scalar hi,
                          Scalar step_tol = 1e-12, int max_iter = 200) {
  Scalar glo = g(lo);
  Scalar ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0) {
    throw SolverError("safeguarded_newton: bracket does not straddle a root");
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  Scalar s = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    Scalar gs = g(s);
    if (gs == 0.0) return s;
    if (gs < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    Scalar d = dg(s);
    Scalar next;
    if (d != 0.0) {
      next = s - gs / d;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    Scalar step = next - s;
    s = next;
    if (std::abs(step) < step_tol) return s;
  }
  return s;  // bisection safeguard guarantees the interval shrank anyway
}

/// Golden-section minimization of a unimodal function on [a, c].
template <typename F>
Scalar golden_section_min(F&& h, Scalar a, Scalar c, Scalar tol = 1e-12,
                          int max_iter = 300) {
  constexpr Scalar invphi = 0.6180339887498949;
  Scalar x1 = c - invphi * (c - a);
  Scalar x2 = a + invphi * (c - a);
  Scalar h1 = h(x1), h2 = h(x2);
  for (int i = 0; i < max_iter && (c - a) > tol; ++i) {
    if (h1 <= h2) {
      c = x2;
      x2 = x1;
      h2 = h1;
      x1 = c - invphi * (c - a);
      h1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      h1 = h2;
      x2 = a + invphi * (c - a);
      h2 = h(x2);
    }
  }
  return 0.5 * (a + c);
}

}  // namespace altproj::detail
