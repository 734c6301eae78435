#pragma once

#include <stdexcept>
#include <string>

namespace altproj {

/// Rejected input: operands live in different ambient dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed scenario configuration (unknown field, bad type, bad value).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal numerical failure (root finder could not bracket/converge).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace altproj
