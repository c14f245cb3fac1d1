#pragma once

// Numerical checks of the fundamental solutions: finite-difference residual
// of the operator, singularity order, behaviour at the singular hyperplanes
// and the product-rule identity that maps L_alpha onto L_B.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fsol/fundsol.hpp"

namespace fsol {

using ScalarField = std::function<double(const Point&)>;

struct FDScheme {
  double h = 1e-3;
  int order = 4;         // 2 or 4
  bool adaptive = true;  // step = h * min(r, min_j x_j) in residual_suite
};

/// Finite-difference value of an operator together with the sum of the
/// magnitudes of its terms (the normalization of the residual).
struct OperatorValue {
  double value = 0.0;
  double scale = 0.0;

  [[nodiscard]] double normalized() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// sum_i u_{x_i x_i} + sum_j (2 coef_j / x_j) u_{x_j} with step h. `coef`
/// has one entry per singular coordinate. Throws DomainError when the
/// stencil crosses x_j = 0.
OperatorValue apply_operator(const ScalarField& u, const Point& x, const std::vector<double>& coef, double h,
                             int order);
OperatorValue apply_operator(const ScalarField& u, const Point& x, const ProblemConfig& cfg, double h, int order);

enum class Execution { Serial, Parallel };

struct ResidualEntry {
  unsigned k = 0;
  std::size_t point = 0;
  double step = 0.0;
  double residual = 0.0;      // normalized, at the scheme's step
  /// max(res(hc), res(hc/2)) / max(res(hc/4), res(hc/8)) at the coarse step
  double refinement = 0.0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;  // ordered by (k, point)
  double max_residual = 0.0;
  double median_residual = 0.0;
  double min_refinement = 0.0;
};

struct ResidualOptions {
  FDScheme scheme;
  QOptions q;
  /// Relative coarse step for the refinement ratio; 0 disables it.
  double coarse_h = 0.2;
  Execution exec = Execution::Parallel;
};

/// Normalized residual of every q_k at every point.
ResidualReport residual_suite(const ProblemConfig& cfg, const Point& x0, const std::vector<Point>& points,
                              const ResidualOptions& opt = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> s;
  std::vector<double> q;
};

/// Least-squares slope of log|q_k(x0 + s e)| against log s over s = 2^-4 .. 2^-10.
SlopeFit singularity_fit(const ProblemConfig& cfg, const Point& x0, const Point& direction, const DeltaVector& d,
                         const QOptions& opt = {});

/// Polynomial extrapolation to 0 of samples f(t_i) by Neville's scheme.
double extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& f);

struct CheckLine {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  bool asserted = true;
  bool pass = false;
};

struct BoundaryReport {
  std::vector<double> ladder;       // x_j = 2^-3 .. 2^-10
  std::vector<double> derivative;   // dq/dx_j along the ladder
  std::vector<double> value;        // q along the ladder
  double reference_derivative = 0.0;  // at x_j = 0.5
  double reference_value = 0.0;
  std::vector<CheckLine> checks;
};

/// Behaviour of q_k as x_j -> 0+ along x = probe with coordinate j varied,
/// where probe is x0 shifted by 0.25 in every other coordinate. The check
/// named "stated" is the literal statement (for delta_j = 1: dq/dx_j -> 0;
/// for delta_j = 0: q -> 0, reported only). The checks named "conormal"
/// and "vanishing" test dq/dx_j -> 0 for delta_j = 0 and q -> 0 for
/// delta_j = 1.
BoundaryReport boundary_property_check(const ProblemConfig& cfg, const Point& x0, const DeltaVector& d, int j,
                                       const QOptions& opt = {});

struct IdentityReport {
  OperatorValue lhs;  // L_alpha(P u), P = prod x_j^{delta_j (1 - 2 alpha_j)}
  OperatorValue rhs;  // P L_B(u), B_j = alpha_j + (1 - 2 alpha_j) delta_j
  double discrepancy = 0.0;  // |lhs - rhs| / (lhs.scale + P rhs.scale)
};

IdentityReport constructive_identity_check(const ProblemConfig& cfg, const DeltaVector& d, const ScalarField& u,
                                           const Point& x, const FDScheme& s);

struct NamedField {
  std::string name;
  ScalarField f;
};

/// Ten smooth fields on R^m (polynomials, Gaussians, trigonometric products).
std::vector<NamedField> smooth_test_fields(int m);

}  // namespace fsol
