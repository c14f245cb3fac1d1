#pragma once

// Fundamental solutions q_k(x, x0) of
//   L u = sum_{i<=m} u_{x_i x_i} + sum_{j<=n} (2 alpha_j / x_j) u_{x_j} = 0
// in the domain x_1, ..., x_n > 0 of R^m. There are 2^n of them, one per
// vector delta in {0,1}^n:
//   q_k = gamma * prod_j (x_j x0_j)^{delta_j (1 - 2 alpha_j)} * (r^2)^{-(alpha + A_k)}
//         * F_A^(n)(alpha + A_k; B_k; 2 B_k; xi)
// with alpha = sum alpha_j - 1 + m/2, A_k = sum (1 - 2 alpha_j) delta_j,
// B_kj = alpha_j + (1 - 2 alpha_j) delta_j and xi_j = 1 - r_j^2 / r^2.

#include <string>
#include <vector>

#include "fsol/common.hpp"

namespace fsol {

using Point = std::vector<double>;
using DeltaVector = std::vector<int>;

struct ProblemConfig {
  int m = 3;
  int n = 0;
  std::vector<double> alpha;

  /// Throws ParameterError on m < 2, n outside [0, m], len(alpha) != n,
  /// alpha_j outside (0, 1/2), or the excluded case m = 2, n = 0.
  void validate() const;
  /// alpha_1 + ... + alpha_n - 1 + m/2
  [[nodiscard]] double alpha_total() const;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

struct Geometry {
  double r2 = 0.0;
  std::vector<double> rk2;
  std::vector<double> xi;       // 1 - r_k^2 / r^2 (always <= 0)
  std::vector<double> w;        // 1 - r^2 / r_k^2 in [0, 1)
  std::vector<double> gap;      // r_k^2 - r^2 = 4 x_k x0_k, kept exact
};

/// Throws SingularPointError when x == x0 and DomainError when a singular
/// coordinate of either point is not positive or dimensions disagree.
Geometry geometry(const Point& x, const Point& x0, const ProblemConfig& cfg);

/// k = 1 + sum_j delta_j 2^(n-j).
unsigned delta_to_index(const DeltaVector& d);
DeltaVector index_to_delta(int n, unsigned k);
/// All 2^n delta vectors ordered by index.
std::vector<DeltaVector> all_deltas(int n);

struct SolutionParams {
  double A = 0.0;
  std::vector<double> B;
  double gamma = 1.0;
  double a = 0.0;  // first Lauricella parameter alpha + A
};

SolutionParams solution_params(const ProblemConfig& cfg, const DeltaVector& d, double gamma = 1.0);

enum class EvalPath { Auto, Direct, Transformed };
/// Exponent of the radial factor: -2(alpha + A_k) or -2 alpha.
enum class RadialExponent { Shifted, Unshifted };

std::string to_string(EvalPath p);
std::string to_string(RadialExponent e);
RadialExponent radial_exponent_from_string(const std::string& s);

struct QOptions {
  double gamma = 1.0;
  double tol = 1e-15;
  EvalPath path = EvalPath::Auto;
  RadialExponent radial = RadialExponent::Shifted;
  double direct_threshold = 0.8;  // Auto uses Direct when sum |xi| is below this
  unsigned max_degree = 0;        // 0: per-path default
};

struct QResult : EvalResult {
  EvalPath path = EvalPath::Direct;
  unsigned degree_reached = 0;
};

/// Grid-degree cap of the transformed path. Near x0 that series converges
/// only algebraically, so the cap is larger for small n.
unsigned default_transformed_degree(int n);

QResult evaluate_q(const Point& x, const Point& x0, const ProblemConfig& cfg, const DeltaVector& d,
                   const QOptions& opt = {});

/// Product of Gamma ratios prod_j Gamma(2B_j) Gamma(a - B_j) / (Gamma(a) Gamma(B_j)),
/// a = alpha + A_k. This is the limit of the normalized solution for n = 1.
/// Throws DomainError unless a > B_j for every j.
double singular_limit_constant(const ProblemConfig& cfg, const DeltaVector& d);

/// Limit of the normalized solution summed over all grids (the constant
/// above is its zero-grid term). Converges algebraically for n >= 3.
EvalResult singular_limit_series(const ProblemConfig& cfg, const DeltaVector& d, double tol = 1e-12,
                                 unsigned max_degree = 0);

/// r^{m-2} prod_j r_j^{2 B_j} q_k / (gamma prod_j (x_j x0_j)^{delta_j (1 - 2 alpha_j)}).
double normalized_singular_value(const Point& x, const Point& x0, const ProblemConfig& cfg, const DeltaVector& d,
                                 const QOptions& opt = {});

}  // namespace fsol
