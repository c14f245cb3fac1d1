#pragma once

// Lauricella hypergeometric function F_A^(n)(a; b_1..b_n; c_1..c_n; x_1..x_n)
// by three independent routes:
//   fa_direct      the defining n-fold power series, summed by degree shells;
//   fa_decomposed  closed-form decomposition into products of Gauss 2F1
//                  factors indexed by triangular grids m_{i,j};
//   fa_recurrence  the recursive decomposition (2F1 times F_A^(n-1)), kept
//                  as an independent cross-check.

#include <vector>

#include "fsol/common.hpp"

namespace fsol {

struct LauricellaParams {
  double a = 0.0;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> x;

  [[nodiscard]] int n() const { return static_cast<int>(b.size()); }
  /// Checks lengths and that no c_i is a non-positive integer.
  void validate() const;
  [[nodiscard]] double abs_argument_sum() const;
};

struct FaResult : EvalResult {
  unsigned degree_reached = 0;
  /// Set when sum |x_i| >= 1: the value comes from a route that may converge
  /// outside the domain of the defining series, but is not claimed correct.
  bool beyond_direct_domain = false;
};

/// Degree caps used when the caller passes 0.
unsigned default_direct_degree(int n);
unsigned default_decomposition_degree(int n);

/// Requires sum |x_i| < 1.
FaResult fa_direct(const LauricellaParams& p, double tol = 1e-15, unsigned max_degree = 0);

/// Requires |x_k| < 1 for every k.
FaResult fa_decomposed(const LauricellaParams& p, double tol = 1e-15, unsigned max_total_degree = 0);

/// Requires |x_k| < 1 for every k.
FaResult fa_recurrence(const LauricellaParams& p, double tol = 1e-15, unsigned max_total_degree = 0);

}  // namespace fsol
