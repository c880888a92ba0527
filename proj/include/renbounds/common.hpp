// Shared error types and numeric constants.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace renbounds {

// Thrown when a distribution lacks the moments an operation requires
// (e.g. Pareto with alpha <= 2 has no finite variance).
class UnsupportedDistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown on malformed configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown on runtime simulation failures such as the per-replicate
// event-count safety cap (CLI exit code 3).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double sqrt_2pi = 2.5066282746310005024;
inline constexpr double inv_sqrt_2pi = 0.3989422804014326779;
inline constexpr double inv_sqrt_2 = 0.7071067811865475244;
}  // namespace constants

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": argument must be finite");
  }
}

}  // namespace renbounds
