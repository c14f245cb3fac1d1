#include <doctest.h>

#include <Eigen/Dense>

#include "fsol/suites.hpp"
#include "fsol/verify.hpp"
#include "oracles.hpp"

using namespace fsol;

namespace {

double distance(const Point& x, const Point& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

// least-squares line through (log s, log |q|)
double eigen_slope(const std::vector<double>& s, const std::vector<double>& q) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(s.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = std::log(s[i]);
    y(static_cast<Eigen::Index>(i)) = std::log(std::abs(q[i]));
  }
  return a.colPivHouseholderQr().solve(y)(1);
}

}  // namespace

TEST_CASE("operator annihilates constants exactly and linear regular fields to rounding") {
  const ProblemConfig cfg{3, 1, {0.3}};
  const Point x{0.8, 0.2, -0.4};
  for (int order : {2, 4}) {
    CHECK(apply_operator([](const Point&) { return 1.0; }, x, cfg, 1e-3, order).value == 0.0);
    const OperatorValue lin = apply_operator([](const Point& y) { return y[1]; }, x, cfg, 1e-3, order);
    CHECK(std::abs(lin.value) < 1e-9);
  }
}

TEST_CASE("x_j^(1-2 alpha_j) solves the one-dimensional singular equation") {
  const ProblemConfig cfg{3, 1, {0.3}};
  const Point x{0.7, 0.1, 0.2};
  const OperatorValue v = apply_operator([](const Point& y) { return std::pow(y[0], 0.4); }, x, cfg, 1e-3, 4);
  CHECK(v.normalized() < 1e-9);
  const ProblemConfig c3{4, 3, {0.1, 0.25, 0.4}};
  auto product = [&](const Point& y) {
    double p = 1.0;
    for (int j = 0; j < 3; ++j) p *= std::pow(y[j], 1.0 - 2.0 * c3.alpha[j]);
    return p;
  };
  CHECK(apply_operator(product, {0.6, 0.9, 1.3, 0.0}, c3, 1e-3, 4).normalized() < 1e-10);
}

TEST_CASE("Newtonian kernel residual at h = 1e-4") {
  const ProblemConfig cfg{3, 0, {}};
  const Point x0{0.1, -0.2, 0.3}, x{1.0, 0.5, 0.2};
  auto u = [&](const Point& y) { return 1.0 / distance(y, x0); };
  CHECK(apply_operator(u, x, cfg, 1e-4, 4).normalized() <= 1e-6);
  CHECK(apply_operator(u, x, cfg, 1e-4, 2).normalized() <= 1e-6);
}

TEST_CASE("stencil error shrinks by 2^order under halving") {
  const ProblemConfig cfg{3, 1, {0.3}};
  const Point x{1.0, 0.4, 0.2};
  auto u = [](const Point& y) { return std::exp(0.3 * y[0]) * std::sin(y[1]) * std::cos(0.5 * y[2]); };
  const double exact = (0.09 - 1.0 - 0.25 + 2.0 * 0.3 * 0.3 / x[0]) * u(x);
  for (int order : {2, 4}) {
    const double e1 = std::abs(apply_operator(u, x, cfg, 0.05, order).value - exact);
    const double e2 = std::abs(apply_operator(u, x, cfg, 0.025, order).value - exact);
    const double ideal = std::ldexp(1.0, order);
    CAPTURE(order);
    CHECK(e1 / e2 == doctest::Approx(ideal).epsilon(0.1));
  }
}

TEST_CASE("operator input validation") {
  const ProblemConfig cfg{3, 1, {0.3}};
  auto u = [](const Point&) { return 1.0; };
  CHECK_THROWS_AS(apply_operator(u, {0.001, 0, 0}, cfg, 1e-3, 4), DomainError);
  CHECK_NOTHROW(apply_operator(u, {0.0021, 0, 0}, cfg, 1e-3, 4));
  CHECK_THROWS_AS(apply_operator(u, {0.5, 0, 0}, cfg, 1e-3, 3), ParameterError);
  CHECK_THROWS_AS(apply_operator(u, {0.5, 0, 0}, cfg, -1.0, 4), ParameterError);
  CHECK_THROWS_AS(apply_operator(u, {0.5, 0}, cfg, 1e-3, 4), DomainError);
}

TEST_CASE("residuals of the documented configurations") {
  ResidualOptions o;
  o.scheme = {1e-4, 4, false};
  o.coarse_h = 0.0;
  const ResidualReport r1 = residual_suite({3, 1, {0.25}}, {1, 0.5, 0.5}, {{1.3, 0.7, 0.4}}, o);
  REQUIRE(r1.entries.size() == 2);
  CHECK(r1.entries[0].residual <= 1e-5);

  ResidualOptions a;
  const ResidualReport r2 = residual_suite({2, 2, {0.2, 0.3}}, {0.5, 0.5}, {{1.1, 1.6}, {0.3, 1.5}, {2.0, 0.7}}, a);
  CHECK(r2.entries.size() == 12);
  CHECK(r2.max_residual <= 1e-5);
  CHECK(r2.min_refinement >= 8.0);
}

TEST_CASE("the unshifted radial exponent fails the residual test") {
  ResidualOptions o;
  o.q.radial = RadialExponent::Unshifted;
  o.coarse_h = 0.0;
  const ResidualReport r = residual_suite({3, 1, {0.25}}, {1, 0.5, 0.5}, {{1.3, 0.7, 0.4}, {2.2, -0.4, 1.0}}, o);
  CHECK(r.entries[0].residual <= 1e-5);  // q_1 is unaffected
  double worst_k2 = 0.0;
  for (const auto& e : r.entries)
    if (e.k == 2) worst_k2 = std::max(worst_k2, e.residual);
  CHECK(worst_k2 > 1e-2);
}

TEST_CASE("serial and parallel residual suites give identical reports") {
  const ProblemConfig cfg{3, 2, {0.15, 0.35}};
  const Point x0{1.0, 0.5, 0.0};
  const auto pts = sample_points(cfg, x0, 6, 3);
  ResidualOptions o;
  o.exec = Execution::Serial;
  const ResidualReport s = residual_suite(cfg, x0, pts, o);
  o.exec = Execution::Parallel;
  const ResidualReport p = residual_suite(cfg, x0, pts, o);
  REQUIRE(s.entries.size() == p.entries.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(s.entries[i].k == p.entries[i].k);
    CHECK(s.entries[i].point == p.entries[i].point);
    CHECK(s.entries[i].residual == p.entries[i].residual);
    CHECK(s.entries[i].refinement == p.entries[i].refinement);
  }
  CHECK(s.max_residual == p.max_residual);
}

TEST_CASE("singularity slopes against an independent least-squares fit") {
  struct C {
    ProblemConfig cfg;
    Point x0;
    double expected, tol;
  };
  const C cases[] = {
      {{3, 1, {0.25}}, {1.0, 0.5, 0.5}, -1.0, 0.01},
      {{4, 2, {0.2, 0.3}}, {1.0, 1.5, 0.3, -0.2}, -2.0, 0.01},
      {{5, 0, {}}, {0.0, 0.0, 0.0, 0.0, 0.0}, -3.0, 0.001},
  };
  for (const auto& c : cases)
    for (const auto& d : all_deltas(c.cfg.n)) {
      const SlopeFit f = singularity_fit(c.cfg, c.x0, Point(c.x0.size(), 1.0), d);
      CAPTURE(c.cfg.m);
      REQUIRE(f.s.size() == 7);
      CHECK(f.s.front() == 0.0625);
      CHECK(f.s.back() == std::ldexp(1.0, -10));
      CHECK(std::abs(f.slope - eigen_slope(f.s, f.q)) < 1e-10);
      CHECK(std::abs(f.slope / c.expected - 1.0) <= c.tol);
    }
  CHECK_THROWS_AS(singularity_fit({2, 1, {0.3}}, {1, 1}, {1, 1}, {0}), ParameterError);
}

TEST_CASE("extrapolation to zero recovers polynomials") {
  std::vector<double> t, f;
  for (int i = 1; i <= 5; ++i) {
    t.push_back(1.0 / i);
    f.push_back(2.5 - 3.0 * t.back() + 0.5 * t.back() * t.back() * t.back());
  }
  CHECK(extrapolate_to_zero(t, f) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(extrapolate_to_zero({}, {}), ParameterError);
}

TEST_CASE("boundary behaviour of q_k") {
  const ProblemConfig cfg{3, 1, {0.25}};
  const Point x0{1.0, 0.5, 0.5};
  CHECK(boundary_property_check({3, 0, {}}, {0, 0, 0}, {}, 1).checks.empty());
  CHECK_THROWS_AS(boundary_property_check(cfg, x0, {0}, 2), ParameterError);

  // delta_1 = 0: the conormal derivative vanishes, the value does not
  const BoundaryReport b0 = boundary_property_check(cfg, x0, {0}, 1);
  REQUIRE(b0.checks.size() == 2);
  CHECK_FALSE(b0.checks[0].asserted);
  CHECK_FALSE(b0.checks[0].pass);
  CHECK(b0.checks[1].pass);

  // delta_1 = 1: q vanishes like x_1^(1 - 2 alpha_1) and its derivative blows up
  const BoundaryReport b1 = boundary_property_check(cfg, x0, {1}, 1);
  REQUIRE(b1.checks.size() == 2);
  CHECK(b1.checks[1].pass);
  CHECK_FALSE(b1.checks[0].pass);
  CHECK(std::abs(b1.derivative.back()) > std::abs(b1.derivative.front()));
  CHECK(b1.value.back() < b1.value.front());
}

TEST_CASE("product-rule identity") {
  const FDScheme s{1e-3, 4, false};
  const Point x{0.9, 0.6, 0.3};
  const ProblemConfig c1{3, 1, {0.3}};
  auto poly = [](const Point& y) { return y[0] * y[0] + y[1]; };
  CHECK(constructive_identity_check(c1, {0}, poly, x, s).discrepancy == 0.0);
  CHECK(constructive_identity_check(c1, {1}, poly, x, s).discrepancy <= 1e-8);

  const ProblemConfig c2{3, 2, {0.15, 0.4}};
  const IdentityReport one = constructive_identity_check(c2, {1, 1}, [](const Point&) { return 1.0; }, x, s);
  CHECK(one.rhs.value == 0.0);
  CHECK(one.lhs.normalized() < 1e-9);

  const auto fields = smooth_test_fields(3);
  CHECK(fields.size() == 10);
  for (const auto& d : all_deltas(2))
    for (const auto& f : fields) {
      CAPTURE(f.name);
      CHECK(constructive_identity_check(c2, d, f.f, x, s).discrepancy <= 1e-6);
    }
}
