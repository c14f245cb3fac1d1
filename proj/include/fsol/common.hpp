#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace fsol {

/// Argument outside the region where a function is defined or where the
/// chosen evaluation method converges.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid parameter combination (e.g. a pole of the hypergeometric series).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at the pole x = x0 of a fundamental solution.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Value of a truncated series together with its diagnostics.
struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute, estimated truncation error
  std::size_t terms = 0;        // terms (or multi-indices) summed
  bool converged = true;        // false when a term/degree cap was hit
};

/// Real number stored as mantissa * exp(log_scale). Series with large
/// shifted parameters overflow double long before their products do.
struct Scaled {
  double mant = 0.0;
  double log_scale = 0.0;

  static Scaled from(double v) { return {v, 0.0}; }
  static Scaled from_log(double log_abs, int sign) { return {static_cast<double>(sign), log_abs}; }

  [[nodiscard]] double value() const {
    if (mant == 0.0) return 0.0;
    return mant * std::exp(log_scale);
  }
  [[nodiscard]] int sign() const { return (mant > 0) - (mant < 0); }
  [[nodiscard]] double log_abs() const {
    return mant == 0.0 ? -std::numeric_limits<double>::infinity()
                       : std::log(std::abs(mant)) + log_scale;
  }
};

inline Scaled operator*(Scaled x, Scaled y) { return {x.mant * y.mant, x.log_scale + y.log_scale}; }

inline Scaled operator+(Scaled x, Scaled y) {
  if (x.mant == 0.0) return y;
  if (y.mant == 0.0) return x;
  if (x.log_scale < y.log_scale) std::swap(x, y);
  return {x.mant + y.mant * std::exp(y.log_scale - x.log_scale), x.log_scale};
}

inline Scaled scale_by_log(Scaled x, double log_factor) { return {x.mant, x.log_scale + log_factor}; }

/// True when v is 0, -1, -2, ... (to within a relative 1e-14).
inline bool is_nonpositive_integer(double v) {
  if (v > 0.5) return false;
  return std::abs(v - std::round(v)) <= 1e-14 * std::max(1.0, std::abs(v));
}

}  // namespace fsol
