#include "fsol/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fsol {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// sin(pi x) with the argument reduced exactly before scaling by pi.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

double ln_gamma_lanczos(double z) {
  // valid for z >= 0.5
  z -= 1.0;
  double x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

double ln_gamma(double z) {
  if (!(z > 0.0)) throw DomainError("ln_gamma: argument must be positive");
  if (z == 1.0 || z == 2.0) return 0.0;
  if (z >= 0.5) return ln_gamma_lanczos(z);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(std::numbers::pi / sin_pi(z)) - ln_gamma_lanczos(1.0 - z);
}

SignedLog ln_gamma_signed(double z) {
  if (z > 0.0) return {ln_gamma(z), 1};
  if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0};
  const double s = sin_pi(z);
  return {std::log(std::numbers::pi / std::abs(s)) - ln_gamma(1.0 - z), s > 0 ? 1 : -1};
}

double digamma(double z) {
  if (is_nonpositive_integer(z)) throw DomainError("digamma: pole at non-positive integer");
  double result = 0.0;
  if (z < 0.0) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    result -= std::numbers::pi * sin_pi(z + 0.5) / sin_pi(z);
    z = 1.0 - z;
  }
  while (z < 12.0) {
    result -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  result += std::log(z) - 0.5 * inv -
            inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
  return result;
}

double pochhammer(double kappa, unsigned nu) {
  double p = 1.0;
  for (unsigned i = 0; i < nu; ++i) p *= kappa + i;
  return p;
}

SignedLog ln_pochhammer_signed(double kappa, unsigned nu) {
  if (nu == 0) return {0.0, 1};
  if (nu <= 64 || is_nonpositive_integer(kappa) || is_nonpositive_integer(kappa + nu)) {
    double log_abs = 0.0;
    int sign = 1;
    for (unsigned i = 0; i < nu; ++i) {
      const double f = kappa + i;
      if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
      if (f < 0) sign = -sign;
      log_abs += std::log(std::abs(f));
    }
    return {log_abs, sign};
  }
  const SignedLog top = ln_gamma_signed(kappa + nu);
  const SignedLog bottom = ln_gamma_signed(kappa);
  return {top.log_abs - bottom.log_abs, top.sign * bottom.sign};
}

}  // namespace fsol
