#pragma once

// Scalar special functions: log-gamma, digamma, Pochhammer symbol and the
// Gauss hypergeometric function 2F1 for real parameters.

#include <cstddef>

#include "fsol/common.hpp"

namespace fsol {

/// ln Gamma(z) for z > 0 (Lanczos approximation, g = 7).
double ln_gamma(double z);

/// ln|Gamma(z)| and the sign of Gamma(z) for any real z. At the poles
/// z = 0, -1, -2, ... the sign is 0 and the log is +inf.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog ln_gamma_signed(double z);

/// Digamma psi(z) for real z that is not a pole.
double digamma(double z);

/// Rising factorial (kappa)_nu = kappa (kappa+1) ... (kappa+nu-1); (kappa)_0 = 1.
double pochhammer(double kappa, unsigned nu);

/// ln|(kappa)_nu| and its sign, via ln_gamma_signed when kappa+nu-1 stays
/// off the poles and by the product otherwise.
SignedLog ln_pochhammer_signed(double kappa, unsigned nu);

struct GaussParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

struct SeriesOptions {
  double tol = 1e-15;
  std::size_t max_terms = 1'000'000;
};

/// Plain power series sum_k (a)_k (b)_k / (k! (c)_k) x^k for |x| < 1, with
/// the stopping rule |term| <= tol |sum| on three consecutive terms while
/// the terms are shrinking. No transformations are applied.
Scaled gauss_series(const GaussParams& p, double x, const SeriesOptions& opt, EvalResult* diag = nullptr);

/// 2F1(a,b;c;x) for |x| < 1. Negative arguments are mapped into [0,1) by the
/// Pfaff transformation; arguments close to 1 use the 1-x connection formulas.
EvalResult gauss_2f1(const GaussParams& p, double x, double tol = 1e-15);

/// Same as gauss_2f1 but accepts any x < 1 (continued through the Pfaff
/// transformation) and returns a scaled value so that large shifted
/// parameters do not overflow.
Scaled gauss_2f1_scaled(const GaussParams& p, double x, double tol = 1e-15, EvalResult* diag = nullptr);

/// Gauss summation: 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).
/// Requires c not a non-positive integer and c - a - b > 0.
double gauss_2f1_at_one(const GaussParams& p);

/// ln|2F1(a,b;c;1)| and sign, for callers that combine many such factors.
SignedLog ln_gauss_2f1_at_one(const GaussParams& p);

struct PfaffImage {
  GaussParams params;  // (c - a, b, c)
  double argument;     // x / (x - 1)
  double prefactor;    // (1 - x)^(-b)
};

/// F(a,b;c;x) = (1-x)^(-b) F(c-a,b;c;x/(x-1)); requires x < 1.
PfaffImage pfaff_transform(const GaussParams& p, double x);

}  // namespace fsol
