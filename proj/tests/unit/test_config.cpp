#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "fsol/config.hpp"
#include "fsol/suites.hpp"
#include "oracles.hpp"

using namespace fsol;

namespace {

const char* kMinimal = R"({"m": 2, "n": 1, "alpha": [0.3], "x0": [1.0, 0.0]})";

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

RunConfig random_config(oracle::Gen& g) {
  RunConfig c;
  const int m = g.integer(2, 5);
  const int n = g.integer(m == 2 ? 1 : 0, std::min(m, 3));
  c.problem = {m, n, g.uniform_vec(static_cast<std::size_t>(n), 0.01, 0.49)};
  c.x0 = g.uniform_vec(static_cast<std::size_t>(m), 0.01, 3.0);
  c.gamma = g.uniform(0.1, 10.0);
  c.tol = std::exp(g.uniform(-35.0, -10.0));
  c.radial = g.integer(0, 1) ? RadialExponent::Shifted : RadialExponent::Unshifted;
  if (g.integer(0, 1))
    for (int j = 0; j < n; ++j) c.delta.push_back(g.integer(0, 1));
  c.fd_h = g.uniform(1e-5, 1e-2);
  c.fd_order = g.integer(0, 1) ? 2 : 4;
  c.fd_coarse_h = g.uniform(0.0, 0.2);
  if (g.integer(0, 1))
    for (int i = 0; i < m; ++i) c.grid.push_back({g.uniform(-2, 0), g.uniform(0, 2), g.integer(1, 9)});
  for (int p = g.integer(0, 3); p > 0; --p) c.points.push_back(g.uniform_vec(static_cast<std::size_t>(m), 0.1, 2.0));
  c.sample = {g.integer(1, 50), static_cast<std::uint64_t>(g.integer(0, 1 << 30)) << 20};
  if (g.integer(0, 1)) c.direction = g.uniform_vec(static_cast<std::size_t>(m), -1.0, 1.0);
  c.decomposition_sets = g.integer(1, 40);
  c.decomposition_seed = static_cast<std::uint64_t>(g.integer(0, 1000));
  return c;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const RunConfig c = parse_run_config(kMinimal);
  CHECK(c.problem == ProblemConfig{2, 1, {0.3}});
  CHECK(c.gamma == 1.0);
  CHECK(c.tol == 1e-15);
  CHECK(c.radial == RadialExponent::Shifted);
  CHECK(c.delta_or_default() == DeltaVector{0});
  CHECK(c.fd_order == 4);
  CHECK(c.q_options().gamma == 1.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_run_config("{not json"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"n": 1})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0]})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [-1.0, 0.0]})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0], "delta": [1, 0]})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0], "fd": {"order": 6}})"),
                  ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0], "radial_exponent": "x"})"),
                  ParameterError);
  CHECK_THROWS_AS(
      parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0], "grid": [{"lo": 0, "hi": 1, "count": 2}]})"),
      ParameterError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ParameterError);
}

TEST_CASE("property: dump and parse round-trip exactly") {
  oracle::Gen g(61);
  for (int t = 0; t < 200; ++t) {
    const RunConfig c = random_config(g);
    const std::string text = dump_run_config(c);
    const RunConfig back = parse_run_config(text);
    CAPTURE(text);
    CHECK(back == c);
    CHECK(dump_run_config(back) == text);
  }
}

TEST_CASE("shipped configs round-trip") {
  const std::filesystem::path dir = std::filesystem::path(FSOL_SOURCE_DIR) / "configs";
  int seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    const RunConfig c = load_run_config(e.path().string());
    CHECK(parse_run_config(dump_run_config(c)) == c);
    ++seen;
  }
  CHECK(seen >= 3);
}

TEST_CASE("property: format_double is the shortest round-trip form") {
  oracle::Gen g(62);
  for (int t = 0; t < 2000; ++t) {
    const double v = std::ldexp(g.uniform(-1.0, 1.0), g.integer(-300, 300));
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    // one significant digit fewer no longer round-trips
    std::string mant = s.substr(0, s.find('e'));
    std::erase_if(mant, [](char ch) { return ch == '-' || ch == '.'; });
    const auto first = mant.find_first_not_of('0');
    const auto last = mant.find_last_not_of('0');
    const int digits = first == std::string::npos ? 0 : static_cast<int>(last - first + 1);
    if (digits > 1 && s.find_first_of(".e") != std::string::npos) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*e", digits - 2, v);
      CHECK(std::stod(buf) != v);
    }
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("scan writes a header and one row per node") {
  RunConfig c = parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0],
      "grid": [{"lo": 0.5, "hi": 1.5, "count": 3}, {"lo": -1, "hi": 1, "count": 4}]})");
  const ScanResult r = scan_field(c, {0});
  const auto ls = lines(r.csv);
  CHECK(ls.front() == "x1,x2,q");
  CHECK(r.rows == 12);
  CHECK(r.skipped == 0);
  CHECK(ls.size() == 13);
  CHECK(ls[1].rfind("0.5,-1,", 0) == 0);
  CHECK(ls[2].rfind("0.5," + format_double(-1.0 + 2.0 * 1.0 / 3.0) + ",", 0) == 0);
  CHECK(r.csv.find('\r') == std::string::npos);
  // value column agrees with direct evaluation
  const double q = std::stod(ls[1].substr(ls[1].rfind(',') + 1));
  CHECK(q == evaluate_q({0.5, -1.0}, c.x0, c.problem, {0}).value);
}

TEST_CASE("scan skips nodes outside the domain and marks the pole") {
  const RunConfig c = parse_run_config(R"({"m": 2, "alpha": [0.3], "x0": [1.0, 0.0],
      "grid": [{"lo": -1, "hi": 1, "count": 3}, {"lo": -1, "hi": 1, "count": 3}]})");
  const ScanResult r = scan_field(c, {1});
  CHECK(r.skipped == 6);
  CHECK(r.rows == 3);
  CHECK(r.csv.find("1,0,inf\n") != std::string::npos);
  CHECK_THROWS_AS(scan_field(parse_run_config(kMinimal), {0}), ParameterError);
}

TEST_CASE("property: serial and parallel scans are byte-identical") {
  oracle::Gen g(63);
  for (int t = 0; t < 5; ++t) {
    RunConfig c;
    c.problem = {3, 2, g.uniform_vec(2, 0.05, 0.45)};
    c.x0 = {g.uniform(0.2, 1.5), g.uniform(0.2, 1.5), 0.0};
    for (int i = 0; i < 3; ++i) c.grid.push_back({g.uniform(-0.5, 0.3), g.uniform(1.0, 2.5), g.integer(2, 5)});
    const DeltaVector d{g.integer(0, 1), g.integer(0, 1)};
    const ScanResult s = scan_field(c, d, Execution::Serial);
    CHECK(scan_field(c, d, Execution::Parallel).csv == s.csv);
    CHECK(scan_field(c, d, Execution::Parallel).csv == s.csv);
  }
}

TEST_CASE("sampled residual points are deterministic and respect the sampling rule") {
  const ProblemConfig cfg{3, 2, {0.2, 0.3}};
  const Point x0{0.5, 2.0, -1.0};
  const auto a = sample_points(cfg, x0, 30, 9);
  CHECK(a == sample_points(cfg, x0, 30, 9));
  CHECK(a != sample_points(cfg, x0, 30, 10));
  for (const auto& x : a) {
    double r2 = 0.0;
    for (int i = 0; i < 3; ++i) r2 += (x[i] - x0[i]) * (x[i] - x0[i]);
    CHECK(r2 >= 0.09 * 4.0);
    for (int j = 0; j < 2; ++j) {
      CHECK(x[j] >= 0.5);
      CHECK(x[j] <= 6.0);
      CHECK(r2 >= 3.0 * x[j] * x0[j]);
    }
  }
}

TEST_CASE("suite reports") {
  const RunConfig c = load_run_config(std::string(FSOL_SOURCE_DIR) + "/configs/m3_n0.json");
  const auto reps = run_suites(c, "singularity", Execution::Serial);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].all_pass());
  const auto j = nlohmann::json::parse(report_json(reps));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("suites")[0].at("suite") == "singularity");
  const auto& check = j.at("suites")[0].at("checks")[0];
  for (const char* key : {"name", "threshold", "observed", "asserted", "pass"}) CHECK(check.contains(key));
  CHECK(report_text(reps).find("[singularity] PASS") == 0);
  CHECK_THROWS_AS(run_suites(c, "nope"), ParameterError);
}

TEST_CASE("decomposition suite parameter sets stay in the test domain") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : random_fa_params(n, 25, 5)) {
      CHECK(p.n() == n);
      CHECK(p.abs_argument_sum() <= 0.6 + 1e-15);
      for (int i = 0; i < n; ++i) {
        CHECK(p.b[i] < 1.5);
        CHECK(p.c[i] >= 0.5);
        CHECK(p.c[i] < 2.0);
      }
    }
}
