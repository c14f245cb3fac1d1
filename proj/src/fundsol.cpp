#include "fsol/fundsol.hpp"

#include <cmath>
#include <cstdint>

#include "fsol/lauricella.hpp"
#include "fsol/special_functions.hpp"
#include "series_support.hpp"

namespace fsol {

void ProblemConfig::validate() const {
  if (m < 2) throw ParameterError("dimension m must be >= 2");
  if (n < 0 || n > m) throw ParameterError("n must satisfy 0 <= n <= m");
  if (static_cast<int>(alpha.size()) != n) throw ParameterError("alpha must have exactly n entries");
  for (double a : alpha)
    if (!(a > 0.0 && a < 0.5)) throw ParameterError("each alpha_j must lie in (0, 0.5)");
  if (m == 2 && n == 0) throw ParameterError("m = 2 with n = 0 has a logarithmic kernel and is not supported");
}

double ProblemConfig::alpha_total() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s - 1.0 + 0.5 * m;
}

Geometry geometry(const Point& x, const Point& x0, const ProblemConfig& cfg) {
  const auto m = static_cast<std::size_t>(cfg.m);
  if (x.size() != m || x0.size() != m) throw DomainError("point dimension does not match m");
  for (int j = 0; j < cfg.n; ++j)
    if (!(x[j] > 0.0) || !(x0[j] > 0.0)) throw DomainError("singular coordinates must be positive");
  Geometry g;
  for (std::size_t i = 0; i < m; ++i) g.r2 += (x[i] - x0[i]) * (x[i] - x0[i]);
  if (!(g.r2 > 0.0)) throw SingularPointError("x coincides with x0");
  for (int k = 0; k < cfg.n; ++k) {
    const double gap = 4.0 * x[k] * x0[k];
    g.gap.push_back(gap);
    g.rk2.push_back(g.r2 + gap);
    g.xi.push_back(-gap / g.r2);
    g.w.push_back(gap / (g.r2 + gap));
  }
  return g;
}

unsigned delta_to_index(const DeltaVector& d) {
  const auto n = d.size();
  unsigned k = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] != 0 && d[j] != 1) throw ParameterError("delta entries must be 0 or 1");
    if (d[j] == 1) k += 1U << (n - 1 - j);
  }
  return k;
}

DeltaVector index_to_delta(int n, unsigned k) {
  if (n < 0 || n > 31 || k < 1 || k > (1U << n)) throw ParameterError("index k outside [1, 2^n]");
  DeltaVector d(static_cast<std::size_t>(n));
  const unsigned bits = k - 1;
  for (int j = 0; j < n; ++j) d[j] = static_cast<int>((bits >> (n - 1 - j)) & 1U);
  return d;
}

std::vector<DeltaVector> all_deltas(int n) {
  std::vector<DeltaVector> out;
  for (unsigned k = 1; k <= (1U << n); ++k) out.push_back(index_to_delta(n, k));
  return out;
}

SolutionParams solution_params(const ProblemConfig& cfg, const DeltaVector& d, double gamma) {
  if (static_cast<int>(d.size()) != cfg.n) throw ParameterError("delta must have length n");
  SolutionParams sp;
  sp.gamma = gamma;
  for (int j = 0; j < cfg.n; ++j) {
    if (d[j] != 0 && d[j] != 1) throw ParameterError("delta entries must be 0 or 1");
    const double shift = (1.0 - 2.0 * cfg.alpha[j]) * d[j];
    sp.A += shift;
    sp.B.push_back(cfg.alpha[j] + shift);
  }
  sp.a = cfg.alpha_total() + sp.A;
  return sp;
}

std::string to_string(EvalPath p) {
  switch (p) {
    case EvalPath::Auto: return "auto";
    case EvalPath::Direct: return "direct";
    case EvalPath::Transformed: return "transformed";
  }
  return "?";
}

std::string to_string(RadialExponent e) { return e == RadialExponent::Shifted ? "shifted" : "unshifted"; }

RadialExponent radial_exponent_from_string(const std::string& s) {
  if (s == "shifted") return RadialExponent::Shifted;
  if (s == "unshifted") return RadialExponent::Unshifted;
  throw ParameterError("radial exponent must be 'shifted' or 'unshifted'");
}

unsigned default_transformed_degree(int n) {
  switch (n) {
    case 0:
    case 1: return 0;
    case 2: return 2000;
    case 3: return 160;
    case 4: return 40;
    default: return 24;
  }
}

namespace {

// ln of gamma * prod (x_j x0_j)^{delta_j (1 - 2 alpha_j)} * (r^2)^{-e}
double log_prefactor(const Point& x, const Point& x0, const ProblemConfig& cfg, const DeltaVector& d,
                     const SolutionParams& sp, const Geometry& g, RadialExponent radial) {
  double l = 0.0;
  for (int j = 0; j < cfg.n; ++j)
    if (d[j] == 1) l += (1.0 - 2.0 * cfg.alpha[j]) * (std::log(x[j]) + std::log(x0[j]));
  const double e = radial == RadialExponent::Shifted ? sp.a : cfg.alpha_total();
  return l - e * std::log(g.r2);
}

// ln F_A(a; B; 2B; xi) through the per-factor Pfaff image: every Gauss factor
// becomes (r^2/r_k^2)^{a+N-B-M} F(a+N, B; 2B+M; w_k), w_k = 1 - r^2/r_k^2,
// and the powers xi_k^M turn into (-w_k)^M with an even total.
QResult transformed_log(const SolutionParams& sp, const Geometry& g, double tol, unsigned cap) {
  const int n = static_cast<int>(sp.B.size());
  std::vector<double> c(sp.B.size());
  std::vector<double> log_ratio(sp.B.size());  // ln(r^2 / r_k^2)
  std::vector<double> log_w(sp.B.size());
  double log_outer = 0.0;
  for (int k = 0; k < n; ++k) {
    c[k] = 2.0 * sp.B[k];
    log_ratio[k] = std::log(g.r2) - std::log(g.rk2[k]);
    log_w[k] = std::log(g.gap[k]) - std::log(g.rk2[k]);
    log_outer += sp.B[k] * log_ratio[k];
  }
  std::vector<detail::PairMemo<Scaled>> memo(sp.B.size());
  bool gauss_ok = true;
  auto factor = [&](int k, unsigned mm, unsigned nn) -> Scaled {
    const Scaled& v = memo[k].get(mm, nn, [&] {
      EvalResult diag;
      const Scaled f = gauss_2f1_scaled({sp.a + nn, sp.B[k], c[k] + mm}, g.w[k], tol, &diag);
      gauss_ok = gauss_ok && diag.converged;
      return scale_by_log(f, (sp.a + nn - sp.B[k] - mm) * log_ratio[k]);
    });
    return scale_by_log(v, mm * log_w[k]);
  };
  const auto s = detail::grid_series(sp.a, sp.B, c, tol, cap, factor);
  QResult out;
  out.path = EvalPath::Transformed;
  out.value = log_outer + std::log(s.sum);
  out.error_estimate = s.error / s.sum;
  out.terms = s.terms;
  out.converged = s.converged && gauss_ok;
  out.degree_reached = s.degree;
  return out;
}

}  // namespace

QResult evaluate_q(const Point& x, const Point& x0, const ProblemConfig& cfg, const DeltaVector& d,
                   const QOptions& opt) {
  cfg.validate();
  const SolutionParams sp = solution_params(cfg, d, opt.gamma);
  const Geometry g = geometry(x, x0, cfg);
  const double log_pref = log_prefactor(x, x0, cfg, d, sp, g, opt.radial);

  double xi_sum = 0.0;
  for (double v : g.xi) xi_sum += std::abs(v);
  EvalPath path = opt.path;
  if (path == EvalPath::Auto) path = xi_sum < opt.direct_threshold ? EvalPath::Direct : EvalPath::Transformed;

  QResult out;
  if (cfg.n == 0) {
    out.path = path;
    out.value = opt.gamma * std::exp(log_pref);
    return out;
  }
  if (path == EvalPath::Direct) {
    LauricellaParams lp{sp.a, sp.B, {}, g.xi};
    for (double b : sp.B) lp.c.push_back(2.0 * b);
    FaResult fa;
    if (cfg.n == 1) {
      // a single Gauss factor, continued to any xi < 0
      EvalResult diag;
      fa.value = gauss_2f1_scaled({lp.a, lp.b[0], lp.c[0]}, lp.x[0], opt.tol, &diag).value();
      fa.error_estimate = diag.error_estimate;
      fa.terms = diag.terms;
      fa.converged = diag.converged;
    } else {
      fa = fa_decomposed(lp, opt.tol, opt.max_degree);
    }
    out.value = opt.gamma * std::exp(log_pref) * fa.value;
    out.error_estimate = std::abs(opt.gamma * std::exp(log_pref)) * fa.error_estimate;
    out.terms = fa.terms;
    out.converged = fa.converged;
    out.degree_reached = fa.degree_reached;
    out.path = EvalPath::Direct;
    return out;
  }
  const unsigned cap = opt.max_degree == 0 ? default_transformed_degree(cfg.n) : opt.max_degree;
  const QResult t = transformed_log(sp, g, opt.tol, cap);
  out = t;
  const double magnitude = std::exp(log_pref + t.value);
  out.value = opt.gamma * magnitude;
  out.error_estimate = std::abs(out.value) * t.error_estimate;
  return out;
}

double singular_limit_constant(const ProblemConfig& cfg, const DeltaVector& d) {
  cfg.validate();
  const SolutionParams sp = solution_params(cfg, d);
  double l = 0.0;
  for (double b : sp.B) {
    // a - b is a difference of O(1) sums; treat rounding-level values as zero
    if (!(sp.a - b > 1e-12 * sp.a)) throw DomainError("limit constant requires alpha + A_k > B_kj for every j");
    l += ln_gamma(2.0 * b) + ln_gamma(sp.a - b) - ln_gamma(sp.a) - ln_gamma(b);
  }
  return std::exp(l);
}

EvalResult singular_limit_series(const ProblemConfig& cfg, const DeltaVector& d, double tol, unsigned max_degree) {
  const double base = singular_limit_constant(cfg, d);
  const SolutionParams sp = solution_params(cfg, d);
  EvalResult out;
  if (cfg.n <= 1) {
    out.value = base;
    out.terms = 1;
    return out;
  }
  if (cfg.n == 2) {
    // the single-index sum collapses to 2F1(B_1, B_2; a; 1)
    const GaussParams at_one{sp.B[0], sp.B[1], sp.a};
    if (!(sp.a - sp.B[0] - sp.B[1] > 1e-12 * sp.a)) throw DomainError("limit series diverges: alpha + A_k <= B_1 + B_2");
    out.value = base * gauss_2f1_at_one(at_one);
    out.terms = 1;
    return out;
  }
  std::vector<double> c;
  for (double b : sp.B) c.push_back(2.0 * b);
  // each Gauss factor tends to Gamma(c+M) Gamma(a+N-B-M) / (Gamma(a+N) Gamma(c-B))
  auto factor = [&](int k, unsigned mm, unsigned nn) -> Scaled {
    const double b = sp.B[k];
    return Scaled::from_log(
        ln_gamma(c[k] + mm) + ln_gamma(sp.a + nn - b - mm) - ln_gamma(sp.a + nn) - ln_gamma(c[k] - b), 1);
  };
  const unsigned cap = max_degree == 0 ? 200 : max_degree;
  const auto s = detail::grid_series(sp.a, sp.B, c, tol, cap, factor);
  out.value = s.sum;
  out.error_estimate = s.error;
  out.terms = s.terms;
  out.converged = s.converged;
  return out;
}

double normalized_singular_value(const Point& x, const Point& x0, const ProblemConfig& cfg, const DeltaVector& d,
                                 const QOptions& opt) {
  const QResult q = evaluate_q(x, x0, cfg, d, opt);
  const SolutionParams sp = solution_params(cfg, d, opt.gamma);
  const Geometry g = geometry(x, x0, cfg);
  double l = 0.5 * (cfg.m - 2) * std::log(g.r2);
  for (int j = 0; j < cfg.n; ++j) {
    l += sp.B[j] * std::log(g.rk2[j]);
    if (d[j] == 1) l -= (1.0 - 2.0 * cfg.alpha[j]) * (std::log(x[j]) + std::log(x0[j]));
  }
  return q.value * std::exp(l) / opt.gamma;
}

}  // namespace fsol
