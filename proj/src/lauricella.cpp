#include "fsol/lauricella.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "fsol/special_functions.hpp"
#include "series_support.hpp"

namespace fsol {

using detail::LogPochhammer;
using detail::ShellAccumulator;

void LauricellaParams::validate() const {
  if (b.empty()) throw ParameterError("F_A: need n >= 1 variables");
  if (c.size() != b.size() || x.size() != b.size())
    throw ParameterError("F_A: b, c and x must all have length n");
  for (double ci : c)
    if (is_nonpositive_integer(ci)) throw ParameterError("F_A: c_i is a non-positive integer");
}

double LauricellaParams::abs_argument_sum() const {
  return std::accumulate(x.begin(), x.end(), 0.0, [](double s, double v) { return s + std::abs(v); });
}

unsigned default_direct_degree(int n) { return n <= 3 ? 400U : 160U; }

unsigned default_decomposition_degree(int n) { return n <= 3 ? 24U : 16U; }

namespace {

// Per-variable table of ln|(b)_m / ((c)_m m!) x^m| and its sign.
struct VariableTable {
  std::vector<double> log_abs;
  std::vector<int> sign;

  VariableTable(double b, double c, double x, unsigned max_m) : log_abs(max_m + 1), sign(max_m + 1) {
    LogPochhammer pb(b);
    LogPochhammer pc(c);
    const double lx = x == 0.0 ? 0.0 : std::log(std::abs(x));
    for (unsigned m = 0; m <= max_m; ++m) {
      const int sx = (m == 0) ? 1 : (x == 0.0 ? 0 : (x < 0 && (m % 2 == 1) ? -1 : 1));
      sign[m] = pb.sign(m) * pc.sign(m) * sx;
      log_abs[m] = pb.log_abs(m) - pc.log_abs(m) - detail::log_factorial(m) + m * lx;
    }
  }
};

void require_each_below_one(const LauricellaParams& p, const char* who) {
  for (double v : p.x)
    if (!(std::abs(v) < 1.0)) throw DomainError(std::string(who) + ": every |x_k| must be < 1");
}

}  // namespace

FaResult fa_direct(const LauricellaParams& p, double tol, unsigned max_degree) {
  p.validate();
  if (!(p.abs_argument_sum() < 1.0)) throw DomainError("fa_direct: requires |x_1|+...+|x_n| < 1");
  const int n = p.n();
  const unsigned cap = max_degree == 0 ? default_direct_degree(n) : max_degree;

  std::vector<VariableTable> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) vars.emplace_back(p.b[k], p.c[k], p.x[k], cap);
  LogPochhammer pa(p.a);

  ShellAccumulator acc(tol);
  FaResult out;
  bool converged = false;
  unsigned d = 0;
  for (; d <= cap; ++d) {
    double shell = 0.0;
    double shell_abs = 0.0;
    const double la = pa.log_abs(d);
    const int sa = pa.sign(d);
    detail::for_each_grid_of_degree(static_cast<std::size_t>(n), d, [&](const std::vector<unsigned>& m) {
      int s = sa;
      double l = la;
      for (int k = 0; k < n && s != 0; ++k) {
        s *= vars[k].sign[m[k]];
        l += vars[k].log_abs[m[k]];
      }
      ++out.terms;
      if (s == 0) return;
      const double t = s * std::exp(l);
      shell += t;
      shell_abs += std::abs(t);
    });
    if (acc.add_shell(shell, shell_abs)) {
      converged = true;
      break;
    }
  }
  out.value = acc.sum();
  out.error_estimate = acc.error();
  out.converged = converged;
  out.degree_reached = std::min(d, cap);
  return out;
}

FaResult fa_decomposed(const LauricellaParams& p, double tol, unsigned max_total_degree) {
  p.validate();
  require_each_below_one(p, "fa_decomposed");
  const int n = p.n();
  const unsigned cap = max_total_degree == 0 ? default_decomposition_degree(n) : max_total_degree;

  std::vector<double> lx(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) lx[k] = p.x[k] == 0.0 ? 0.0 : std::log(std::abs(p.x[k]));
  // 2F1(a + N, b_k + M; c_k + M; x_k), memoized per (k, M, N)
  std::vector<detail::PairMemo<Scaled>> memo(static_cast<std::size_t>(n));
  bool gauss_converged = true;
  auto factor = [&](int k, unsigned m, unsigned nn) -> Scaled {
    if (m > 0 && p.x[k] == 0.0) return Scaled::from(0.0);
    const Scaled& g = memo[k].get(m, nn, [&] {
      EvalResult diag;
      const Scaled f = gauss_2f1_scaled({p.a + nn, p.b[k] + m, p.c[k] + m}, p.x[k], tol, &diag);
      gauss_converged = gauss_converged && diag.converged;
      return f;
    });
    Scaled v = scale_by_log(g, m * lx[k]);
    if (p.x[k] < 0 && (m % 2 == 1)) v.mant = -v.mant;
    return v;
  };
  const auto g = detail::grid_series(p.a, p.b, p.c, tol, cap, factor);

  FaResult out;
  out.value = g.sum;
  out.error_estimate = g.error;
  out.terms = g.terms;
  out.converged = g.converged && gauss_converged;
  out.degree_reached = g.degree;
  out.beyond_direct_domain = !(p.abs_argument_sum() < 1.0);
  return out;
}

namespace {

// Recursive evaluation of
//   F_A^(n)(a; b; c; x) = sum_{m_2..m_n} (a)_S (b_1)_S prod (b_j)_{m_j}
//       / (prod m_j! (c_1)_S prod (c_j)_{m_j}) x_1^S prod x_j^{m_j}
//       2F1(a+S, b_1+S; c_1+S; x_1) F_A^(n-1)(a+S; b_j+m_j; c_j+m_j; x_2..x_n)
// with S = m_2 + ... + m_n. Parameters are tracked as integer shifts of the
// original ones so Pochhammer tables and 2F1 values can be shared.
class Recurrence {
 public:
  Recurrence(const LauricellaParams& p, double tol, unsigned cap)
      : p_(p), tol_(tol), cap_(cap), pa_(p.a), memo_(p.b.size()) {
    for (int k = 0; k < p.n(); ++k) {
      pb_.emplace_back(p.b[k]);
      pc_.emplace_back(p.c[k]);
    }
  }

  double eval(std::size_t first, unsigned a_shift, std::vector<unsigned>& bc_shift) {
    const std::size_t n = p_.b.size();
    if (first + 1 == n) return gauss(first, a_shift, bc_shift[first]);

    const std::size_t rest = n - first - 1;
    ShellAccumulator acc(tol_);
    bool converged = false;
    for (unsigned s = 0; s <= cap_; ++s) {
      double shell = 0.0;
      double shell_abs = 0.0;
      detail::for_each_grid_of_degree(rest, s, [&](const std::vector<unsigned>& m) {
        ++terms_;
        const unsigned bf = bc_shift[first];
        int sign = pa_.sign(a_shift + s) * pa_.sign(a_shift) * pb_[first].sign(bf + s) * pb_[first].sign(bf) *
                   pc_[first].sign(bf + s) * pc_[first].sign(bf);
        double l = pa_.log_abs(a_shift + s) - pa_.log_abs(a_shift) + pb_[first].log_abs(bf + s) -
                   pb_[first].log_abs(bf) - pc_[first].log_abs(bf + s) + pc_[first].log_abs(bf);
        if (!add_power(p_.x[first], s, sign, l)) return;
        for (std::size_t j = 0; j < rest; ++j) {
          const std::size_t v = first + 1 + j;
          const unsigned bj = bc_shift[v];
          sign *= pb_[v].sign(bj + m[j]) * pb_[v].sign(bj) * pc_[v].sign(bj + m[j]) * pc_[v].sign(bj);
          l += pb_[v].log_abs(bj + m[j]) - pb_[v].log_abs(bj) - pc_[v].log_abs(bj + m[j]) + pc_[v].log_abs(bj) -
               detail::log_factorial(m[j]);
          if (!add_power(p_.x[v], m[j], sign, l)) return;
        }
        if (sign == 0) return;
        const double g = gauss(first, a_shift + s, bf + s);
        for (std::size_t j = 0; j < rest; ++j) bc_shift[first + 1 + j] += m[j];
        const double inner = eval(first + 1, a_shift + s, bc_shift);
        for (std::size_t j = 0; j < rest; ++j) bc_shift[first + 1 + j] -= m[j];
        const double t = sign * std::exp(l) * g * inner;
        shell += t;
        shell_abs += std::abs(t);
      });
      if (acc.add_shell(shell, shell_abs)) {
        converged = true;
        break;
      }
      max_degree_seen_ = std::max(max_degree_seen_, s);
    }
    converged_ = converged_ && converged;
    if (first == 0) error_ = acc.error();
    return acc.sum();
  }

  [[nodiscard]] std::size_t terms() const { return terms_; }
  [[nodiscard]] bool converged() const { return converged_; }
  [[nodiscard]] double error() const { return error_; }
  [[nodiscard]] unsigned degree() const { return max_degree_seen_; }

 private:
  static bool add_power(double x, unsigned e, int& sign, double& l) {
    if (e == 0) return true;
    if (x == 0.0) return false;
    if (x < 0 && (e % 2 == 1)) sign = -sign;
    l += e * std::log(std::abs(x));
    return true;
  }

  double gauss(std::size_t k, unsigned a_shift, unsigned bc_shift) {
    auto [it, fresh] = memo_[k].try_emplace(detail::pair_key(a_shift, bc_shift));
    if (fresh) {
      EvalResult diag;
      it->second = gauss_2f1_scaled({p_.a + a_shift, p_.b[k] + bc_shift, p_.c[k] + bc_shift}, p_.x[k], tol_, &diag)
                       .value();
      converged_ = converged_ && diag.converged;
    }
    return it->second;
  }

  const LauricellaParams& p_;
  double tol_;
  unsigned cap_;
  LogPochhammer pa_;
  std::vector<LogPochhammer> pb_;
  std::vector<LogPochhammer> pc_;
  std::vector<std::unordered_map<std::uint64_t, double>> memo_;
  std::size_t terms_ = 0;
  bool converged_ = true;
  double error_ = 0.0;
  unsigned max_degree_seen_ = 0;
};

}  // namespace

FaResult fa_recurrence(const LauricellaParams& p, double tol, unsigned max_total_degree) {
  p.validate();
  require_each_below_one(p, "fa_recurrence");
  const unsigned cap = max_total_degree == 0 ? default_decomposition_degree(p.n()) : max_total_degree;
  Recurrence rec(p, tol, cap);
  std::vector<unsigned> shifts(p.b.size(), 0U);
  FaResult out;
  out.value = rec.eval(0, 0, shifts);
  out.terms = rec.terms();
  out.converged = rec.converged();
  out.error_estimate = rec.error();
  out.degree_reached = rec.degree();
  out.beyond_direct_domain = !(p.abs_argument_sum() < 1.0);
  return out;
}

}  // namespace fsol
