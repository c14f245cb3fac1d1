#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <numbers>

#include "fsol/special_functions.hpp"
#include "oracles.hpp"

using namespace fsol;

namespace {

// ln Gamma and psi at double inputs, 20 digits (mpmath)
struct GammaRef {
  double z, ln_gamma, digamma;
};
const GammaRef kGammaRefs[] = {
    {0.1, 2.252712651734205902, -10.423754940411076232},
    {0.5, 0.57236494292470008707, -1.9635100260214234794},
    {1.5, -0.12078223763524522235, 0.036489973978576520559},
    {2.5, 0.28468287047291915963, 0.70315664064524318723},
    {7.3, 7.1478925230222486921, 1.9178203356379860723},
    {33.3, 82.603723581654943008, 3.4904672385202427773},
    {-0.5, 1.2655121234846453965, 0.036489973978576520559},
    {-2.7, -0.071407085315645687684, -1.1153471291406896119},
};

// absolute near the zeros of ln Gamma, relative elsewhere
double mixed_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("ln_gamma matches reference values") {
  for (const auto& r : kGammaRefs) {
    CAPTURE(r.z);
    CHECK(mixed_err(ln_gamma_signed(r.z).log_abs, r.ln_gamma) < 1e-14);
    if (r.z > 0) CHECK(mixed_err(ln_gamma(r.z), r.ln_gamma) < 1e-14);
  }
}

TEST_CASE("ln_gamma vanishes at 1 and 2") {
  CHECK(std::abs(ln_gamma(1.0)) < 1e-15);
  CHECK(std::abs(ln_gamma(2.0)) < 1e-15);
}

TEST_CASE("ln_gamma agrees with the standard library over a wide range") {
  double worst = 0.0;
  for (double z = 0.01; z < 150.0; z *= 1.07) worst = std::max(worst, mixed_err(ln_gamma(z), std::lgamma(z)));
  CHECK(worst < 1e-13);
}

TEST_CASE("ln_gamma agrees with 50-digit lgamma") {
  for (double z : {0.003, 0.77, 1.9999, 3.25, 12.5, 99.9, 1234.5}) {
    CAPTURE(z);
    const double want = static_cast<double>(boost::math::lgamma(oracle::mp(z)));
    CHECK(mixed_err(ln_gamma(z), want) < 2e-15);
  }
}

TEST_CASE("ln_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("ln_gamma_signed reports the sign of Gamma and its poles") {
  CHECK(ln_gamma_signed(2.5).sign == 1);
  CHECK(ln_gamma_signed(-0.5).sign == -1);
  CHECK(ln_gamma_signed(-1.5).sign == 1);
  CHECK(ln_gamma_signed(-2.7).sign == -1);
  const SignedLog pole = ln_gamma_signed(-3.0);
  CHECK(pole.sign == 0);
  CHECK(std::isinf(pole.log_abs));
}

TEST_CASE("property: ln Gamma(z+1) - ln Gamma(z) = ln z") {
  oracle::Gen g(11);
  for (int i = 0; i < 500; ++i) {
    const double z = std::exp(g.uniform(std::log(1e-3), std::log(200.0)));
    CAPTURE(z);
    const double lhs = ln_gamma(z + 1.0) - ln_gamma(z);
    CHECK(std::abs(lhs - std::log(z)) <= 1e-13 * std::max(1.0, std::abs(ln_gamma(z))));
  }
}

TEST_CASE("property: reflection Gamma(z) Gamma(1-z) = pi / sin(pi z)") {
  oracle::Gen g(12);
  for (int i = 0; i < 300; ++i) {
    const double z = g.uniform(-6.0, 6.0);
    if (std::abs(z - std::round(z)) < 1e-3) continue;
    CAPTURE(z);
    const SignedLog p = ln_gamma_signed(z), q = ln_gamma_signed(1.0 - z);
    const double s = std::sin(std::numbers::pi * z);
    CHECK(p.sign * q.sign == (s > 0 ? 1 : -1));
    CHECK(std::abs(p.log_abs + q.log_abs - std::log(std::numbers::pi / std::abs(s))) < 1e-12);
  }
}

TEST_CASE("digamma matches reference values") {
  for (const auto& r : kGammaRefs) {
    CAPTURE(r.z);
    CHECK(oracle::rel_err(digamma(r.z), r.digamma) < 1e-13);
  }
}

TEST_CASE("digamma agrees with boost over positive and negative arguments") {
  oracle::Gen g(13);
  for (int i = 0; i < 400; ++i) {
    const double z = g.uniform(-8.0, 60.0);
    if (std::abs(z - std::round(z)) < 1e-4 && z < 0.5) continue;
    CAPTURE(z);
    const double want = boost::math::digamma(z);
    CHECK(std::abs(digamma(z) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
  CHECK_THROWS_AS(digamma(-2.0), DomainError);
}

TEST_CASE("pochhammer of small orders") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 6) == 720.0);
  CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5).epsilon(1e-15));
  CHECK(pochhammer(-2.5, 3) == doctest::Approx(-1.875).epsilon(1e-15));
  CHECK(pochhammer(-2.0, 3) == 0.0);
}

TEST_CASE("pochhammer agrees with boost rising_factorial") {
  oracle::Gen g(14);
  for (int i = 0; i < 300; ++i) {
    const double k = g.uniform(0.01, 30.0);
    const auto nu = static_cast<unsigned>(g.integer(0, 40));
    CAPTURE(k);
    CAPTURE(nu);
    CHECK(oracle::rel_err(pochhammer(k, nu), boost::math::rising_factorial(k, static_cast<int>(nu))) < 1e-12);
  }
}

TEST_CASE("ln_pochhammer_signed carries the sign for negative kappa") {
  const SignedLog p = ln_pochhammer_signed(-2.5, 3);
  CHECK(p.sign == -1);
  CHECK(std::exp(p.log_abs) == doctest::Approx(1.875).epsilon(1e-14));
  CHECK(ln_pochhammer_signed(-2.5, 4).sign == -1);
  CHECK(ln_pochhammer_signed(-2.5, 2).sign == 1);
  CHECK(ln_pochhammer_signed(-2.0, 5).sign == 0);
  const SignedLog big = ln_pochhammer_signed(0.5, 2000);
  CHECK(big.sign == 1);
  CHECK(std::abs(big.log_abs - (std::lgamma(2000.5) - std::lgamma(0.5))) < 1e-10);
}
