// Gauss hypergeometric function 2F1 for real parameters and real x < 1.
//
// Evaluation strategy:
//   x < 0       Pfaff transformation to x/(x-1) in (0,1), choosing the form
//               whose parameters are all positive (terms then never cancel).
//   0 < x <= .9 direct power series, after an Euler transformation when that
//               turns negative parameters positive.
//   x > 0.9     connection formulas in 1-x; the logarithmic variants when
//               c-a-b is an integer.

#include <cmath>
#include <numbers>

#include "fsol/special_functions.hpp"

namespace fsol {

namespace {

constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kConnectionThreshold = 0.9;
constexpr double kIntegerSnap = 1e-9;

struct Diag {
  std::size_t terms = 0;
  double rel_err = 0.0;
  bool converged = true;

  void absorb(const EvalResult& r, double magnitude) {
    terms += r.terms;
    converged = converged && r.converged;
    if (magnitude > 0) rel_err += r.error_estimate / magnitude;
  }
};

Scaled series_core(double a, double b, double c, double x, const SeriesOptions& opt, EvalResult* diag) {
  if (is_nonpositive_integer(c)) throw ParameterError("2F1: c is a non-positive integer");
  double sum = 1.0;
  double term = 1.0;
  double log_scale = 0.0;
  double tail = 0.0;
  int small = 0;
  bool converged = false;
  std::size_t k = 0;
  for (; k < opt.max_terms; ++k) {
    const double kk = static_cast<double>(k);
    const double num = (a + kk) * (b + kk);
    if (num == 0.0) {
      converged = true;
      break;
    }
    const double ratio = num / ((c + kk) * (kk + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (std::abs(sum) > kRescale || std::abs(term) > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += kLogRescale;
    }
    const double r = std::abs(ratio);
    if (std::abs(term) <= opt.tol * std::abs(sum) && r < 1.0) {
      if (++small >= 3) {
        converged = true;
        tail = std::abs(term) * r / (1.0 - r);
        break;
      }
    } else {
      small = 0;
    }
  }
  if (!converged) tail = std::abs(term);
  if (diag != nullptr) {
    diag->terms = k + 1;
    diag->converged = converged;
    diag->error_estimate = tail * std::exp(log_scale);
    diag->value = sum * std::exp(log_scale);
  }
  return {sum, log_scale};
}

Scaled series_tracked(double a, double b, double c, double x, double tol, Diag& d) {
  EvalResult r;
  const Scaled s = series_core(a, b, c, x, SeriesOptions{tol, 1'000'000}, &r);
  d.terms += r.terms;
  d.converged = d.converged && r.converged;
  if (s.mant != 0.0) d.rel_err += std::abs(r.error_estimate / s.value());
  return s;
}

Scaled gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  double log_abs = 0.0;
  int sign = 1;
  for (double v : num) {
    const SignedLog g = ln_gamma_signed(v);
    if (g.sign == 0) throw DomainError("2F1: gamma pole in connection coefficient");
    log_abs += g.log_abs;
    sign *= g.sign;
  }
  for (double v : den) {
    const SignedLog g = ln_gamma_signed(v);
    if (g.sign == 0) return {};  // 1/Gamma at a pole vanishes
    log_abs -= g.log_abs;
    sign *= g.sign;
  }
  return Scaled::from_log(log_abs, sign);
}

// c - a - b not an integer.
Scaled connection_generic(double a, double b, double c, double x, double tol, Diag& d) {
  const double s = c - a - b;
  const double y = 1.0 - x;
  Scaled out{};
  const Scaled k1 = gamma_ratio({c, s}, {c - a, c - b});
  if (k1.mant != 0.0) out = out + k1 * series_tracked(a, b, 1.0 - s, y, tol, d);
  const Scaled k2 = scale_by_log(gamma_ratio({c, -s}, {a, b}), s * std::log(y));
  if (k2.mant != 0.0) out = out + k2 * series_tracked(c - a, c - b, 1.0 + s, y, tol, d);
  return out;
}

// c = a + b + m with integer m >= 0; a, b are not non-positive integers.
Scaled connection_log(double a, double b, int m, double x, double tol, Diag& d) {
  const double y = 1.0 - x;
  const double ly = std::log(y);
  constexpr std::size_t kMaxTerms = 100'000;

  auto log_series = [&](double a0, double b0, double first_term, auto bracket_at) {
    // sum_n t_n * bracket(n), t_{n+1}/t_n = (a0+n)(b0+n)/((n+1)(n+1+m)) y
    double t = first_term;
    double sum = 0.0;
    int small = 0;
    std::size_t n = 0;
    bool conv = false;
    for (; n < kMaxTerms; ++n) {
      const double contrib = t * bracket_at(n);
      sum += contrib;
      if (std::abs(contrib) <= tol * std::abs(sum) && n > 2) {
        if (++small >= 3) {
          conv = true;
          break;
        }
      } else {
        small = 0;
      }
      const double nn = static_cast<double>(n);
      t *= (a0 + nn) * (b0 + nn) / ((nn + 1.0) * (nn + 1.0 + m)) * y;
      if (t == 0.0) {
        conv = true;
        break;
      }
    }
    d.terms += n + 1;
    d.converged = d.converged && conv;
    return sum;
  };

  if (m == 0) {
    // 2F1(a,b;a+b;x) = Gamma(a+b)/(Gamma(a)Gamma(b)) sum (a)_n(b)_n/(n!)^2
    //   [2 psi(n+1) - psi(a+n) - psi(b+n) - ln(1-x)] (1-x)^n
    double psi1 = -kEulerGamma;
    double psia = digamma(a);
    double psib = digamma(b);
    std::size_t last = 0;
    const double sum = log_series(a, b, 1.0, [&](std::size_t n) {
      for (; last < n; ++last) {
        const double l = static_cast<double>(last);
        psi1 += 1.0 / (l + 1.0);
        psia += 1.0 / (a + l);
        psib += 1.0 / (b + l);
      }
      return 2.0 * psi1 - psia - psib - ly;
    });
    return gamma_ratio({a + b}, {a, b}) * Scaled::from(sum);
  }

  // m >= 1:
  //   Gamma(m)Gamma(a+b+m)/(Gamma(a+m)Gamma(b+m)) sum_{n<m} (a)_n(b)_n/(n!(1-m)_n) (1-x)^n
  // - (x-1)^m Gamma(a+b+m)/(Gamma(a)Gamma(b)) sum_n (a+m)_n(b+m)_n/(n!(n+m)!) (1-x)^n
  //   [ln(1-x) - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
  double finite = 0.0;
  double t = 1.0;
  for (int n = 0; n < m; ++n) {
    finite += t;
    t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * y;
  }
  d.terms += static_cast<std::size_t>(m);
  Scaled out = gamma_ratio({static_cast<double>(m), a + b + m}, {a + m, b + m}) * Scaled::from(finite);

  double psi1 = -kEulerGamma;
  double psim = digamma(m + 1.0);
  double psia = digamma(a + m);
  double psib = digamma(b + m);
  std::size_t last = 0;
  const double sum = log_series(a + m, b + m, 1.0, [&](std::size_t n) {
    for (; last < n; ++last) {
      const double l = static_cast<double>(last);
      psi1 += 1.0 / (l + 1.0);
      psim += 1.0 / (l + m + 1.0);
      psia += 1.0 / (a + m + l);
      psib += 1.0 / (b + m + l);
    }
    return ly - psi1 - psim + psia + psib;
  });
  // (x-1)^m / m! folded into the coefficient
  const double sign_m = (m % 2 == 0) ? -1.0 : 1.0;
  Scaled tail = gamma_ratio({a + b + m}, {a, b, m + 1.0});
  tail = scale_by_log(tail, m * ly) * Scaled::from(sign_m * sum);
  return out + tail;
}

Scaled near_one(double a, double b, double c, double x, double tol, Diag& d) {
  const double s = c - a - b;
  const double si = std::round(s);
  if (std::abs(s - si) > kIntegerSnap * std::max(1.0, std::abs(s))) return connection_generic(a, b, c, x, tol, d);
  if (si >= 0) return connection_log(a, b, static_cast<int>(si), x, tol, d);
  // Euler: F(a,b;c;x) = (1-x)^(c-a-b) F(c-a,c-b;c;x), the latter with integer excess -si > 0
  const double ca = c - a;
  const double cb = c - b;
  Scaled inner = (is_nonpositive_integer(ca) || is_nonpositive_integer(cb))
                     ? series_tracked(ca, cb, c, x, tol, d)
                     : connection_log(ca, cb, static_cast<int>(-si), x, tol, d);
  return scale_by_log(inner, s * std::log1p(-x));
}

Scaled hyp2f1_impl(double a, double b, double c, double x, double tol, Diag& d) {
  if (is_nonpositive_integer(c)) throw ParameterError("2F1: c is a non-positive integer");
  if (!(x < 1.0)) throw DomainError("2F1: argument must be < 1");
  if (x == 0.0) return Scaled::from(1.0);
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_tracked(a, b, c, x, tol, d);

  if (x < 0.0) {
    const double w = x / (x - 1.0);
    const double l1x = std::log1p(-x);
    if (a > 0 && c - b > 0 && c > 0) return scale_by_log(hyp2f1_impl(a, c - b, c, w, tol, d), -a * l1x);
    if (c - a > 0 && b > 0 && c > 0) return scale_by_log(hyp2f1_impl(c - a, b, c, w, tol, d), -b * l1x);
    if (x >= -0.5) return series_tracked(a, b, c, x, tol, d);
    return scale_by_log(hyp2f1_impl(c - a, b, c, w, tol, d), -b * l1x);
  }

  if (x > kConnectionThreshold) return near_one(a, b, c, x, tol, d);
  if (a > 0 && b > 0 && c > 0) return series_tracked(a, b, c, x, tol, d);
  if (c - a > 0 && c - b > 0 && c > 0)
    return scale_by_log(series_tracked(c - a, c - b, c, x, tol, d), (c - a - b) * std::log1p(-x));
  return series_tracked(a, b, c, x, tol, d);
}

}  // namespace

Scaled gauss_series(const GaussParams& p, double x, const SeriesOptions& opt, EvalResult* diag) {
  if (!(std::abs(x) < 1.0)) throw DomainError("argument outside |x|<1");
  return series_core(p.a, p.b, p.c, x, opt, diag);
}

Scaled gauss_2f1_scaled(const GaussParams& p, double x, double tol, EvalResult* diag) {
  if (!(tol > 0.0)) throw ParameterError("2F1: tolerance must be positive");
  Diag d;
  const Scaled v = hyp2f1_impl(p.a, p.b, p.c, x, tol, d);
  if (diag != nullptr) {
    diag->value = v.value();
    diag->terms = d.terms;
    diag->converged = d.converged;
    diag->error_estimate = d.rel_err * std::abs(diag->value);
  }
  return v;
}

EvalResult gauss_2f1(const GaussParams& p, double x, double tol) {
  if (!(std::abs(x) < 1.0)) throw DomainError("argument outside |x|<1");
  EvalResult r;
  gauss_2f1_scaled(p, x, tol, &r);
  return r;
}

SignedLog ln_gauss_2f1_at_one(const GaussParams& p) {
  if (is_nonpositive_integer(p.c)) throw ParameterError("2F1(1): c is a non-positive integer");
  if (!(p.c - p.a - p.b > 0.0)) throw DomainError("2F1(1): requires c - a - b > 0 (series diverges)");
  const Scaled g = gamma_ratio({p.c, p.c - p.a - p.b}, {p.c - p.a, p.c - p.b});
  if (g.mant == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {g.log_scale, g.sign()};
}

double gauss_2f1_at_one(const GaussParams& p) {
  const SignedLog g = ln_gauss_2f1_at_one(p);
  return g.sign == 0 ? 0.0 : g.sign * std::exp(g.log_abs);
}

PfaffImage pfaff_transform(const GaussParams& p, double x) {
  if (!(x < 1.0)) throw DomainError("pfaff_transform: requires x < 1");
  return {GaussParams{p.c - p.a, p.b, p.c}, x / (x - 1.0), std::exp(-p.b * std::log1p(-x))};
}

}  // namespace fsol
