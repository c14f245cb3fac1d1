#pragma once

// Shared machinery for the multi-index series: shell-based stopping, log
// Pochhammer tables and the cell layout of M_2(k,n), N_2(k,n).

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "fsol/common.hpp"
#include "fsol/multiindex.hpp"
#include "fsol/special_functions.hpp"

namespace fsol::detail {

/// Sums degree shells; converged once two consecutive shells contribute at
/// most tol * |sum| (measured by the shell's absolute-value sum).
class ShellAccumulator {
 public:
  explicit ShellAccumulator(double tol) : tol_(tol) {}

  bool add_shell(double shell_sum, double shell_abs) {
    sum_ += shell_sum;
    quiet_ = (shell_abs <= tol_ * std::abs(sum_)) ? quiet_ + 1 : 0;
    if (prev_abs_ > 0.0 && shell_abs > 0.0) {
      const double q = shell_abs / prev_abs_;
      error_ = q < 1.0 ? shell_abs * q / (1.0 - q) : shell_abs;
    } else {
      error_ = shell_abs;
    }
    prev_abs_ = shell_abs;
    return quiet_ >= 2;
  }

  [[nodiscard]] double sum() const { return sum_; }
  [[nodiscard]] double error() const { return error_; }

 private:
  double tol_;
  double sum_ = 0.0;
  double prev_abs_ = -1.0;
  double error_ = 0.0;
  int quiet_ = 0;
};

/// ln|(base)_k| and sign for k = 0, 1, ..., grown on demand.
class LogPochhammer {
 public:
  explicit LogPochhammer(double base) : base_(base), log_{0.0}, sign_{1} {}

  void ensure(std::size_t k) {
    while (log_.size() <= k) {
      const double f = base_ + static_cast<double>(log_.size() - 1);
      const int s = sign_.back() * ((f > 0) - (f < 0));
      log_.push_back(f == 0.0 ? log_.back() : log_.back() + std::log(std::abs(f)));
      sign_.push_back(s);
    }
  }
  double log_abs(std::size_t k) {
    ensure(k);
    return log_[k];
  }
  int sign(std::size_t k) {
    ensure(k);
    return sign_[k];
  }

 private:
  double base_;
  std::vector<double> log_;
  std::vector<int> sign_;
};

/// For each k = 1..n, the storage offsets of the cells summed by M_2(k,n)
/// and N_2(k,n).
struct DecompositionLayout {
  int n = 1;
  std::vector<std::vector<std::size_t>> m_cells;
  std::vector<std::vector<std::size_t>> n_cells;

  explicit DecompositionLayout(int n_vars) : n(n_vars), m_cells(n_vars), n_cells(n_vars) {
    const std::size_t t = MultiIndexGrid::cells_for(n_vars);
    for (std::size_t cell = 0; cell < t; ++cell) {
      std::vector<unsigned> unit(t, 0U);
      unit[cell] = 1;
      const MultiIndexGrid g(n_vars, unit);
      for (int k = 1; k <= n_vars; ++k) {
        if (m_count(g, 2, k) != 0) m_cells[k - 1].push_back(cell);
        if (n_count(g, 2, k) != 0) n_cells[k - 1].push_back(cell);
      }
    }
  }

  [[nodiscard]] unsigned m_of(int k0, const std::vector<unsigned>& parts) const {
    unsigned s = 0;
    for (std::size_t c : m_cells[k0]) s += parts[c];
    return s;
  }
  [[nodiscard]] unsigned n_of(int k0, const std::vector<unsigned>& parts) const {
    unsigned s = 0;
    for (std::size_t c : n_cells[k0]) s += parts[c];
    return s;
  }
};

inline std::uint64_t pair_key(unsigned m, unsigned n) { return (static_cast<std::uint64_t>(m) << 32) | n; }

/// Dense memo over index pairs (m, n), grown on demand.
template <class T>
class PairMemo {
 public:
  template <class Compute>
  const T& get(unsigned m, unsigned n, Compute&& compute) {
    if (n >= rows_.size()) rows_.resize(n + 1);
    auto& row = rows_[n];
    if (m >= row.size()) row.resize(m + 1);
    auto& slot = row[m];
    if (!slot) slot = compute();
    return *slot;
  }

 private:
  std::vector<std::vector<std::optional<T>>> rows_;
};

/// Calls f(parts) for each grid of total degree d (cells in lexicographic order).
template <class F>
void for_each_grid_of_degree(std::size_t cells, unsigned d, F&& f) {
  std::vector<unsigned> parts(cells, 0U);
  if (cells == 0) {
    if (d == 0) f(parts);
    return;
  }
  parts.back() = d;
  do {
    f(parts);
  } while (next_composition(parts));
}

inline double log_factorial(unsigned k) { return ln_gamma(static_cast<double>(k) + 1.0); }

struct GridSeriesResult {
  double sum = 0.0;
  double error = 0.0;
  std::size_t terms = 0;
  unsigned degree = 0;
  bool converged = false;
};

/// Sums over triangular grids m_{i,j} by total degree d:
///   (a)_d / prod m_{i,j}! * prod_k (b_k)_{M_k} / (c_k)_{M_k} * factor(k, M_k, N_k)
/// with M_k = M_2(k,n), N_k = N_2(k,n). `factor` returns a Scaled value and
/// carries any power of the argument and the Gauss factor.
template <class Factor>
GridSeriesResult grid_series(double a, const std::vector<double>& b, const std::vector<double>& c, double tol,
                             unsigned max_degree, Factor&& factor) {
  const int n = static_cast<int>(b.size());
  const DecompositionLayout layout(n);
  const std::size_t cells = MultiIndexGrid::cells_for(n);
  LogPochhammer pa(a);
  std::vector<LogPochhammer> pb;
  std::vector<LogPochhammer> pc;
  for (int k = 0; k < n; ++k) {
    pb.emplace_back(b[k]);
    pc.emplace_back(c[k]);
  }

  std::vector<double> log_fact(max_degree + 1U);
  for (unsigned v = 0; v <= max_degree; ++v) log_fact[v] = log_factorial(v);

  GridSeriesResult out;
  ShellAccumulator acc(tol);
  for (unsigned d = 0; d <= max_degree; ++d) {
    out.degree = d;
    double shell = 0.0;
    double shell_abs = 0.0;
    for_each_grid_of_degree(cells, d, [&](const std::vector<unsigned>& parts) {
      ++out.terms;
      int sign = pa.sign(d);
      double log_coef = pa.log_abs(d);
      for (unsigned v : parts) log_coef -= log_fact[v];
      Scaled prod = Scaled::from(1.0);
      for (int k = 0; k < n && sign != 0; ++k) {
        const unsigned m = layout.m_of(k, parts);
        sign *= pb[k].sign(m) * pc[k].sign(m);
        log_coef += pb[k].log_abs(m) - pc[k].log_abs(m);
        prod = prod * factor(k, m, layout.n_of(k, parts));
        if (prod.mant == 0.0) return;
      }
      if (sign == 0) return;
      const double t = sign * scale_by_log(prod, log_coef).value();
      shell += t;
      shell_abs += std::abs(t);
    });
    if (acc.add_shell(shell, shell_abs) || cells == 0) {
      // with no cells the zero grid is the whole sum
      out.converged = true;
      break;
    }
  }
  out.sum = acc.sum();
  out.error = acc.error();
  return out;
}

}  // namespace fsol::detail
