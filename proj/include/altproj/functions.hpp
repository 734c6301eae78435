#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "altproj/errors.hpp"

namespace altproj {

/// A smooth convex scalar function with derivatives, used as the boundary of
/// a 2-D epigraph set. Instances built by `epigraph_function` carry a registry
/// name and serialize by that name; hand-built instances do not serialize.
struct ConvexFn {
  std::string name;
  double (*f)(double) = nullptr;
  double (*df)(double) = nullptr;
  double (*ddf)(double) = nullptr;
};

namespace detail::fns {
inline double exp_neg(double s) { return std::exp(-s); }
inline double exp_neg_d(double s) { return -std::exp(-s); }
inline double exp_neg_dd(double s) { return std::exp(-s); }

inline double square(double s) { return s * s; }
inline double square_d(double s) { return 2.0 * s; }
inline double square_dd(double) { return 2.0; }

inline double softplus(double s) {
  // log(1 + e^s) without overflow for large s
  return s > 30.0 ? s + std::exp(-s) : std::log1p(std::exp(s));
}
inline double softplus_d(double s) { return 1.0 / (1.0 + std::exp(-s)); }
inline double softplus_dd(double s) {
  double p = softplus_d(s);
  return p * (1.0 - p);
}
}  // namespace detail::fns

/// Looks up a registry function by name ("exp-neg", "square", "softplus").
inline const ConvexFn& epigraph_function(std::string_view name) {
  static const std::vector<ConvexFn> registry = {
      {"exp-neg", detail::fns::exp_neg, detail::fns::exp_neg_d,
       detail::fns::exp_neg_dd},
      {"square", detail::fns::square, detail::fns::square_d,
       detail::fns::square_dd},
      {"softplus", detail::fns::softplus, detail::fns::softplus_d,
       detail::fns::softplus_dd},
  };
  for (const ConvexFn& fn : registry) {
    if (fn.name == name) return fn;
  }
  throw ConfigError("epigraph function not in registry: " + std::string(name));
}

inline std::vector<std::string> epigraph_function_names() {
  return {"exp-neg", "square", "softplus"};
}

}  // namespace altproj
