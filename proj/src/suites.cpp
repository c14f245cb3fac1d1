#include "fsol/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fsol {

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return !c.asserted || c.pass; });
}

namespace {

std::string k_label(const DeltaVector& d) { return "q" + std::to_string(delta_to_index(d)); }

CheckLine at_most(std::string name, double observed, double threshold) {
  return {std::move(name), observed, threshold, true, observed <= threshold};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

}  // namespace

SuiteReport pde_suite(const RunConfig& cfg, Execution exec) {
  SuiteReport rep{"pde", {}};
  ResidualOptions o;
  o.scheme = {cfg.fd_h, cfg.fd_order, true};
  o.q = cfg.q_options();
  o.coarse_h = cfg.fd_coarse_h;
  o.exec = exec;
  const auto pts = cfg.points.empty() ? sample_points(cfg.problem, cfg.x0, cfg.sample.count, cfg.sample.seed)
                                      : cfg.points;
  const ResidualReport r = residual_suite(cfg.problem, cfg.x0, pts, o);
  rep.checks.push_back(at_most("max normalized residual", r.max_residual, 1e-5));
  rep.checks.push_back({"median normalized residual", r.median_residual, 1e-5, false, r.median_residual <= 1e-5});
  if (cfg.fd_coarse_h > 0.0)
    rep.checks.push_back({"min residual decrease over two halvings", r.min_refinement, 8.0, true,
                          r.min_refinement >= 8.0});
  return rep;
}

SuiteReport singularity_suite(const RunConfig& cfg) {
  SuiteReport rep{"singularity", {}};
  if (cfg.problem.m <= 2) return rep;
  const Point dir = cfg.direction.empty() ? Point(static_cast<std::size_t>(cfg.problem.m), 1.0) : cfg.direction;
  const double expected = -(cfg.problem.m - 2.0);
  for (const auto& d : all_deltas(cfg.problem.n)) {
    const SlopeFit f = singularity_fit(cfg.problem, cfg.x0, dir, d, cfg.q_options());
    rep.checks.push_back(
        at_most(k_label(d) + " slope " + format_double(f.slope), std::abs(f.slope / expected - 1.0), 0.01));
  }
  return rep;
}

SuiteReport boundary_suite(const RunConfig& cfg) {
  SuiteReport rep{"boundary", {}};
  for (const auto& d : all_deltas(cfg.problem.n))
    for (int j = 1; j <= cfg.problem.n; ++j) {
      const BoundaryReport b = boundary_property_check(cfg.problem, cfg.x0, d, j, cfg.q_options());
      for (const auto& c : b.checks) {
        CheckLine line = c;
        line.name = k_label(d) + " j=" + std::to_string(j) + " " + c.name;
        rep.checks.push_back(line);
      }
    }
  return rep;
}

SuiteReport identity_suite(const RunConfig& cfg) {
  SuiteReport rep{"identity", {}};
  // a point at unit distance from the boundary keeps the stencil well inside
  Point x = cfg.x0;
  for (int j = 0; j < cfg.problem.n; ++j) x[j] = std::max(x[j], 0.5);
  const FDScheme s{cfg.fd_h, cfg.fd_order, false};
  for (const auto& d : all_deltas(cfg.problem.n)) {
    double worst = 0.0;
    for (const auto& f : smooth_test_fields(cfg.problem.m))
      worst = std::max(worst, constructive_identity_check(cfg.problem, d, f.f, x, s).discrepancy);
    rep.checks.push_back(at_most(k_label(d) + " max discrepancy over test fields", worst, 1e-6));
  }
  return rep;
}

std::vector<LauricellaParams> random_fa_params(int n, int count, std::uint64_t seed, double max_abs_sum) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<LauricellaParams> out;
  for (int s = 0; s < count; ++s) {
    LauricellaParams p;
    p.a = 1.5 * unit(rng);
    double raw_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      p.b.push_back(1.5 * unit(rng));
      p.c.push_back(0.5 + 1.5 * unit(rng));
      p.x.push_back(unit(rng));
      raw_sum += p.x.back();
    }
    const double target = max_abs_sum * unit(rng);
    for (double& v : p.x) v *= target / raw_sum;
    out.push_back(std::move(p));
  }
  return out;
}

SuiteReport decomposition_suite(const RunConfig& cfg) {
  SuiteReport rep{"decomposition", {}};
  const int n = std::max(cfg.problem.n, 1);
  double worst_dec = 0.0;
  double worst_rec = 0.0;
  for (const auto& p : random_fa_params(n, cfg.decomposition_sets, cfg.decomposition_seed)) {
    const double direct = fa_direct(p, cfg.tol).value;
    worst_dec = std::max(worst_dec, rel_diff(fa_decomposed(p, cfg.tol).value, direct));
    worst_rec = std::max(worst_rec, rel_diff(fa_recurrence(p, cfg.tol).value, direct));
  }
  const std::string tag = "n=" + std::to_string(n) + " ";
  rep.checks.push_back(at_most(tag + "max rel |direct - decomposed|", worst_dec, 1e-8));
  rep.checks.push_back(at_most(tag + "max rel |direct - recurrence|", worst_rec, 1e-8));
  return rep;
}

std::vector<SuiteReport> run_suites(const RunConfig& cfg, const std::string& which, Execution exec) {
  cfg.validate();
  std::vector<SuiteReport> out;
  auto want = [&](const char* s) { return which == "all" || which == s; };
  if (which != "all" && std::find(suite_names().begin(), suite_names().end(), which) == suite_names().end())
    throw ParameterError("unknown suite '" + which + "'");
  if (want("pde")) out.push_back(pde_suite(cfg, exec));
  if (want("singularity")) out.push_back(singularity_suite(cfg));
  if (want("boundary")) out.push_back(boundary_suite(cfg));
  if (want("identity")) out.push_back(identity_suite(cfg));
  if (want("decomposition")) out.push_back(decomposition_suite(cfg));
  return out;
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json j;
  bool all = true;
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
      s["checks"].push_back({{"name", c.name},
                             {"threshold", c.threshold},
                             {"observed", c.observed},
                             {"asserted", c.asserted},
                             {"pass", c.pass}});
    s["pass"] = r.all_pass();
    all = all && r.all_pass();
    j["suites"].push_back(s);
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

std::string report_text(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "[" << r.suite << "] " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks) {
      const char* verdict = !c.asserted ? "info" : (c.pass ? "pass" : "FAIL");
      os << "  " << verdict << "  " << c.name << ": observed " << format_double(c.observed) << ", threshold "
         << format_double(c.threshold) << "\n";
    }
  }
  return os.str();
}

}  // namespace fsol
