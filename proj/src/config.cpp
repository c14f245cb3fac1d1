#include "fsol/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fsol {

using nlohmann::ordered_json;

void RunConfig::validate() const {
  problem.validate();
  const auto m = static_cast<std::size_t>(problem.m);
  if (x0.size() != m) throw ParameterError("x0 must have m coordinates");
  for (int j = 0; j < problem.n; ++j)
    if (!(x0[j] > 0.0)) throw ParameterError("singular coordinates of x0 must be positive");
  if (!delta.empty() && static_cast<int>(delta.size()) != problem.n)
    throw ParameterError("delta must have n entries");
  if (!grid.empty() && grid.size() != m) throw ParameterError("grid must have one axis per coordinate");
  for (const auto& a : grid)
    if (a.count < 1) throw ParameterError("grid axis count must be >= 1");
  for (const auto& p : points)
    if (p.size() != m) throw ParameterError("every point must have m coordinates");
  if (!direction.empty() && direction.size() != m) throw ParameterError("direction must have m coordinates");
  if (fd_order != 2 && fd_order != 4) throw ParameterError("fd order must be 2 or 4");
  if (!(fd_h > 0.0) || !(tol > 0.0)) throw ParameterError("fd h and tol must be positive");
  if (!(fd_coarse_h >= 0.0 && fd_coarse_h <= 0.25)) throw ParameterError("fd coarse_h must lie in [0, 0.25]");
}

QOptions RunConfig::q_options() const {
  QOptions o;
  o.gamma = gamma;
  o.tol = tol;
  o.radial = radial;
  return o;
}

DeltaVector RunConfig::delta_or_default() const {
  return delta.empty() ? DeltaVector(static_cast<std::size_t>(problem.n), 0) : delta;
}

namespace {

template <class T>
T get_or(const ordered_json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  try {
    c.problem.m = j.at("m").get<int>();
    c.problem.alpha = get_or(j, "alpha", std::vector<double>{});
    c.problem.n = get_or(j, "n", static_cast<int>(c.problem.alpha.size()));
    c.x0 = j.at("x0").get<Point>();
    c.gamma = get_or(j, "gamma", c.gamma);
    c.tol = get_or(j, "tol", c.tol);
    c.radial = radial_exponent_from_string(get_or<std::string>(j, "radial_exponent", "shifted"));
    c.delta = get_or(j, "delta", DeltaVector{});
    if (j.contains("fd")) {
      const auto& f = j.at("fd");
      c.fd_h = get_or(f, "h", c.fd_h);
      c.fd_order = get_or(f, "order", c.fd_order);
      c.fd_coarse_h = get_or(f, "coarse_h", c.fd_coarse_h);
    }
    if (j.contains("grid"))
      for (const auto& a : j.at("grid"))
        c.grid.push_back({a.at("lo").get<double>(), a.at("hi").get<double>(), a.at("count").get<int>()});
    c.points = get_or(j, "points", std::vector<Point>{});
    if (j.contains("sample")) {
      c.sample.count = get_or(j.at("sample"), "count", c.sample.count);
      c.sample.seed = get_or(j.at("sample"), "seed", c.sample.seed);
    }
    c.direction = get_or(j, "direction", Point{});
    if (j.contains("decomposition")) {
      c.decomposition_sets = get_or(j.at("decomposition"), "sets", c.decomposition_sets);
      c.decomposition_seed = get_or(j.at("decomposition"), "seed", c.decomposition_seed);
    }
  } catch (const ordered_json::exception& e) {
    throw ParameterError(std::string("config field error: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string dump_run_config(const RunConfig& c) {
  ordered_json j;
  j["m"] = c.problem.m;
  j["n"] = c.problem.n;
  j["alpha"] = c.problem.alpha;
  j["x0"] = c.x0;
  j["gamma"] = c.gamma;
  j["tol"] = c.tol;
  j["radial_exponent"] = to_string(c.radial);
  j["delta"] = c.delta;
  j["fd"] = {{"h", c.fd_h}, {"order", c.fd_order}, {"coarse_h", c.fd_coarse_h}};
  j["grid"] = ordered_json::array();
  for (const auto& a : c.grid) j["grid"].push_back({{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
  j["points"] = c.points;
  j["sample"] = {{"count", c.sample.count}, {"seed", c.sample.seed}};
  j["direction"] = c.direction;
  j["decomposition"] = {{"sets", c.decomposition_sets}, {"seed", c.decomposition_seed}};
  return j.dump(2) + "\n";
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScanResult scan_field(const RunConfig& cfg, const DeltaVector& d, Execution exec) {
  cfg.validate();
  if (cfg.grid.empty()) throw ParameterError("scan needs a grid");
  const auto m = static_cast<std::size_t>(cfg.problem.m);
  std::size_t total = 1;
  for (const auto& a : cfg.grid) total *= static_cast<std::size_t>(a.count);

  auto node = [&](std::size_t idx) {
    Point x(m);
    for (std::size_t i = m; i-- > 0;) {
      const auto& a = cfg.grid[i];
      const auto cnt = static_cast<std::size_t>(a.count);
      const std::size_t t = idx % cnt;
      idx /= cnt;
      x[i] = cnt == 1 ? a.lo : a.lo + (a.hi - a.lo) * static_cast<double>(t) / static_cast<double>(cnt - 1);
    }
    return x;
  };
  // 0: skipped, 1: value, 2: singular node
  std::vector<int> kind(total, 1);
  std::vector<double> value(total, 0.0);
  const QOptions qo = cfg.q_options();
  auto eval = [&](std::size_t idx) {
    const Point x = node(idx);
    for (int j = 0; j < cfg.problem.n; ++j)
      if (!(x[j] > 0.0)) {
        kind[idx] = 0;
        return;
      }
    if (x == cfg.x0) {
      kind[idx] = 2;
      return;
    }
    value[idx] = evaluate_q(x, cfg.x0, cfg.problem, d, qo).value;
  };
  const auto n_nodes = static_cast<long>(total);
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n_nodes; ++i) {
      try {
        eval(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(fsol_scan_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (long i = 0; i < n_nodes; ++i) eval(static_cast<std::size_t>(i));
  }

  ScanResult out;
  std::string& s = out.csv;
  for (std::size_t i = 0; i < m; ++i) s += "x" + std::to_string(i + 1) + ",";
  s += "q\n";
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (kind[idx] == 0) {
      ++out.skipped;
      continue;
    }
    for (double c : node(idx)) s += format_double(c) + ",";
    s += kind[idx] == 2 ? std::string("inf") : format_double(value[idx]);
    s += "\n";
    ++out.rows;
  }
  return out;
}

std::vector<Point> sample_points(const ProblemConfig& cfg, const Point& x0, int count, std::uint64_t seed) {
  cfg.validate();
  double s = 1.0;
  for (int j = 0; j < cfg.n; ++j) s = std::max(s, x0[j]);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  const auto m = static_cast<std::size_t>(cfg.m);
  for (long attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    if (attempt > 1'000'000) throw DomainError("could not sample interior points for this configuration");
    Point x(m);
    for (std::size_t i = 0; i < m; ++i)
      x[i] = static_cast<int>(i) < cfg.n ? s * (0.25 + 2.75 * unit(rng)) : x0[i] + s * (4.0 * unit(rng) - 2.0);
    double r2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) r2 += (x[i] - x0[i]) * (x[i] - x0[i]);
    bool keep = r2 >= 0.09 * s * s;
    for (int j = 0; j < cfg.n && keep; ++j) keep = r2 >= 3.0 * x[j] * x0[j];
    if (keep) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace fsol
