#pragma once

#include <stdexcept>
#include <string>

namespace hdclt {

/// Invalid user-supplied parameter (bad generator params, beta <= 0, ...).
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Configured (n, d, reps) plan exceeds memory/time budgets; raised before any work.
class planning_error : public std::runtime_error {
 public:
  explicit planning_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (indefinite covariance, non-convergent integral, ...).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed config file or inconsistent experiment settings.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hdclt
