#include "fsol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

namespace fsol {

namespace {

struct Derivatives {
  double first = 0.0;
  double second = 0.0;
};

Derivatives central(const ScalarField& u, Point& x, std::size_t i, double h, int order, double u0) {
  const double xi = x[i];
  auto at = [&](double t) {
    x[i] = xi + t;
    const double v = u(x);
    x[i] = xi;
    return v;
  };
  const double p1 = at(h);
  const double m1 = at(-h);
  Derivatives d;
  if (order == 2) {
    d.first = (p1 - m1) / (2.0 * h);
    d.second = (p1 - 2.0 * u0 + m1) / (h * h);
    return d;
  }
  const double p2 = at(2.0 * h);
  const double m2 = at(-2.0 * h);
  d.first = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
  d.second = (-p2 + 16.0 * p1 - 30.0 * u0 + 16.0 * m1 - m2) / (12.0 * h * h);
  return d;
}

double first_derivative(const ScalarField& u, Point x, std::size_t i, double h) {
  return central(u, x, i, h, 4, 0.0).first;
}

double singular_product(const ProblemConfig& cfg, const DeltaVector& d, const Point& x) {
  double l = 0.0;
  for (int j = 0; j < cfg.n; ++j)
    if (d[j] == 1) l += (1.0 - 2.0 * cfg.alpha[j]) * std::log(x[j]);
  return std::exp(l);
}

double local_length(const ProblemConfig& cfg, const Point& x, const Point& x0) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - x0[i]) * (x[i] - x0[i]);
  double len = std::sqrt(r2);
  for (int j = 0; j < cfg.n; ++j) len = std::min(len, x[j]);
  return len;
}

}  // namespace

OperatorValue apply_operator(const ScalarField& u, const Point& x, const std::vector<double>& coef, double h,
                             int order) {
  if (order != 2 && order != 4) throw ParameterError("finite-difference order must be 2 or 4");
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  const double reach = order == 4 ? 2.0 * h : h;
  for (std::size_t j = 0; j < coef.size(); ++j)
    if (!(x[j] - reach > 0.0)) throw DomainError("finite-difference stencil leaves the domain x_j > 0");

  Point p = x;
  const double u0 = u(p);
  OperatorValue out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Derivatives d = central(u, p, i, h, order, u0);
    out.value += d.second;
    out.scale += std::abs(d.second);
    if (i < coef.size()) {
      const double t = 2.0 * coef[i] / x[i] * d.first;
      out.value += t;
      out.scale += std::abs(t);
    }
  }
  return out;
}

OperatorValue apply_operator(const ScalarField& u, const Point& x, const ProblemConfig& cfg, double h, int order) {
  if (static_cast<int>(x.size()) != cfg.m) throw DomainError("point dimension does not match m");
  return apply_operator(u, x, cfg.alpha, h, order);
}

ResidualReport residual_suite(const ProblemConfig& cfg, const Point& x0, const std::vector<Point>& points,
                              const ResidualOptions& opt) {
  cfg.validate();
  const auto deltas = all_deltas(cfg.n);
  const std::size_t np = points.size();
  ResidualReport rep;
  rep.entries.resize(deltas.size() * np);

  auto run = [&](std::size_t idx) {
    const DeltaVector& d = deltas[idx / np];
    const Point& x = points[idx % np];
    ScalarField u = [&](const Point& y) { return evaluate_q(y, x0, cfg, d, opt.q).value; };
    const double len = local_length(cfg, x, x0);
    ResidualEntry e;
    e.k = delta_to_index(d);
    e.point = idx % np;
    e.step = opt.scheme.adaptive ? opt.scheme.h * len : opt.scheme.h;
    e.residual = apply_operator(u, x, cfg, e.step, opt.scheme.order).normalized();
    if (opt.coarse_h > 0.0) {
      // envelopes over adjacent steps keep an accidental sign change of the
      // truncation error from masquerading as a failed refinement
      double r[4];
      for (int i = 0; i < 4; ++i)
        r[i] = apply_operator(u, x, cfg, std::ldexp(opt.coarse_h * len, -i), opt.scheme.order).normalized();
      const double coarse = std::max(r[0], r[1]);
      const double fine = std::max(r[2], r[3]);
      e.refinement = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
    }
    rep.entries[idx] = e;
  };

  const auto total = static_cast<long>(rep.entries.size());
  if (opt.exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < total; ++idx) {
      try {
        run(static_cast<std::size_t>(idx));
      } catch (...) {
#pragma omp critical(fsol_residual_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (long idx = 0; idx < total; ++idx) run(static_cast<std::size_t>(idx));
  }

  if (rep.entries.empty()) return rep;
  std::vector<double> r;
  r.reserve(rep.entries.size());
  rep.min_refinement = std::numeric_limits<double>::infinity();
  for (const auto& e : rep.entries) {
    r.push_back(e.residual);
    rep.max_residual = std::max(rep.max_residual, e.residual);
    if (opt.coarse_h > 0.0) rep.min_refinement = std::min(rep.min_refinement, e.refinement);
  }
  if (opt.coarse_h <= 0.0) rep.min_refinement = 0.0;
  std::sort(r.begin(), r.end());
  const std::size_t mid = r.size() / 2;
  rep.median_residual = r.size() % 2 == 1 ? r[mid] : 0.5 * (r[mid - 1] + r[mid]);
  return rep;
}

SlopeFit singularity_fit(const ProblemConfig& cfg, const Point& x0, const Point& direction, const DeltaVector& d,
                         const QOptions& opt) {
  if (cfg.m <= 2) throw ParameterError("singularity order fit needs m > 2");
  if (direction.size() != x0.size()) throw ParameterError("direction dimension does not match x0");
  const double norm = std::sqrt(std::inner_product(direction.begin(), direction.end(), direction.begin(), 0.0));
  if (!(norm > 0.0)) throw ParameterError("direction must be nonzero");

  SlopeFit fit;
  for (int j = 4; j <= 10; ++j) {
    const double s = std::ldexp(1.0, -j);
    Point x = x0;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * direction[i] / norm;
    fit.s.push_back(s);
    fit.q.push_back(evaluate_q(x, x0, cfg, d, opt).value);
  }
  const double n = static_cast<double>(fit.s.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit.s.size(); ++i) {
    const double lx = std::log(fit.s[i]);
    const double ly = std::log(std::abs(fit.q[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

double extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size() || t.empty()) throw ParameterError("extrapolation needs matching, nonempty samples");
  std::vector<double> p = f;
  for (std::size_t level = 1; level < p.size(); ++level)
    for (std::size_t i = 0; i + level < p.size(); ++i)
      p[i] = (t[i + level] * p[i] - t[i] * p[i + 1]) / (t[i + level] - t[i]);
  return p[0];
}

BoundaryReport boundary_property_check(const ProblemConfig& cfg, const Point& x0, const DeltaVector& d, int j,
                                       const QOptions& opt) {
  cfg.validate();
  BoundaryReport rep;
  if (cfg.n == 0) return rep;
  if (j < 1 || j > cfg.n) throw ParameterError("boundary index j must lie in [1, n]");
  const auto jj = static_cast<std::size_t>(j - 1);

  Point probe = x0;
  for (std::size_t i = 0; i < probe.size(); ++i)
    if (i != jj) probe[i] += 0.25;
  ScalarField u = [&](const Point& y) { return evaluate_q(y, x0, cfg, d, opt).value; };
  auto sample = [&](double t, double& value, double& deriv) {
    Point y = probe;
    y[jj] = t;
    value = u(y);
    deriv = first_derivative(u, y, jj, t / 8.0);
  };

  sample(0.5, rep.reference_value, rep.reference_derivative);
  for (int i = 3; i <= 10; ++i) {
    const double t = std::ldexp(1.0, -i);
    double v = 0.0, dv = 0.0;
    sample(t, v, dv);
    rep.ladder.push_back(t);
    rep.value.push_back(v);
    rep.derivative.push_back(dv);
  }

  const double d_limit = extrapolate_to_zero(rep.ladder, rep.derivative);
  const double d_ratio = std::abs(d_limit) / std::abs(rep.reference_derivative);
  if (d[jj] == 1) {
    rep.checks.push_back({"stated: dq/dx_j -> 0", d_ratio, 1e-3, true, d_ratio <= 1e-3});
    const std::size_t last = rep.ladder.size() - 1;
    const double exponent = std::log(rep.value[last - 1] / rep.value[last]) / std::log(2.0);
    const double expected = 1.0 - 2.0 * cfg.alpha[jj];
    const double dev = std::abs(exponent - expected);
    rep.checks.push_back({"vanishing: q ~ x_j^(1-2alpha_j) -> 0", dev, 1e-2, true, dev <= 1e-2});
  } else {
    const double v_limit = extrapolate_to_zero(rep.ladder, rep.value);
    const double v_ratio = std::abs(v_limit) / std::abs(rep.reference_value);
    rep.checks.push_back({"stated: q -> 0", v_ratio, 1e-3, false, v_ratio <= 1e-3});
    rep.checks.push_back({"conormal: dq/dx_j -> 0", d_ratio, 1e-3, true, d_ratio <= 1e-3});
  }
  return rep;
}

IdentityReport constructive_identity_check(const ProblemConfig& cfg, const DeltaVector& d, const ScalarField& u,
                                           const Point& x, const FDScheme& s) {
  cfg.validate();
  const SolutionParams sp = solution_params(cfg, d);
  ScalarField pu = [&](const Point& y) { return singular_product(cfg, d, y) * u(y); };
  IdentityReport rep;
  rep.lhs = apply_operator(pu, x, cfg.alpha, s.h, s.order);
  rep.rhs = apply_operator(u, x, sp.B, s.h, s.order);
  const double p = singular_product(cfg, d, x);
  const double denom = rep.lhs.scale + p * rep.rhs.scale;
  const double diff = std::abs(rep.lhs.value - p * rep.rhs.value);
  rep.discrepancy = denom > 0.0 ? diff / denom : diff;
  return rep;
}

std::vector<NamedField> smooth_test_fields(int m) {
  const auto last = static_cast<std::size_t>(m - 1);
  auto sq = [](const Point& x) { return std::inner_product(x.begin(), x.end(), x.begin(), 0.0); };
  return {
      {"constant", [](const Point&) { return 1.0; }},
      {"linear", [](const Point& x) { return std::accumulate(x.begin(), x.end(), 0.0); }},
      {"square norm", sq},
      {"x1^2 + x_m", [last](const Point& x) { return x[0] * x[0] + x[last]; }},
      {"cubic", [last](const Point& x) { return x[0] * x[0] * x[0] - 2.0 * x[0] * x[last] + 1.0; }},
      {"product", [](const Point& x) {
         double p = 1.0;
         for (double v : x) p *= 1.0 + v;
         return p;
       }},
      {"gaussian", [sq](const Point& x) { return std::exp(-sq(x)); }},
      {"shifted gaussian", [](const Point& x) {
         double s = 0.0;
         for (double v : x) s += (v - 0.5) * (v - 0.5);
         return std::exp(-0.5 * s);
       }},
      {"trigonometric", [last](const Point& x) { return std::sin(x[0]) * std::cos(x[last]); }},
      {"exponential", [](const Point& x) {
         double s = 0.0;
         for (std::size_t i = 0; i < x.size(); ++i) s += 0.3 * static_cast<double>(i + 1) * x[i];
         return std::exp(s);
       }},
  };
}

}  // namespace fsol
