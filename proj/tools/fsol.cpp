// fsol: command-line front end for the hypergeometric evaluators, the
// fundamental solutions and their verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "fsol/config.hpp"
#include "fsol/fundsol.hpp"
#include "fsol/lauricella.hpp"
#include "fsol/special_functions.hpp"
#include "fsol/suites.hpp"

namespace {

using namespace fsol;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

LauricellaParams load_fa_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open parameter file " + path);
  nlohmann::json j;
  try {
    in >> j;
    return {j.at("a").get<double>(), j.at("b").get<std::vector<double>>(), j.at("c").get<std::vector<double>>(),
            j.at("x").get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("parameter file: ") + e.what());
  }
}

void print_eval(const std::string& label, const EvalResult& r) {
  std::cout << label << format_double(r.value) << "\n"
            << "  error estimate: " << format_double(r.error_estimate) << "\n"
            << "  terms: " << r.terms << (r.converged ? "" : " (cap reached, not converged)") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lauricella F_A, Gauss 2F1 and fundamental solutions of elliptic equations with singular coefficients"};
  app.require_subcommand(1);
  int code = kOk;

  // eval-2f1
  auto* e2 = app.add_subcommand("eval-2f1", "Evaluate the Gauss function 2F1(a,b;c;x)");
  double ga = 0, gb = 0, gc = 1, gx = 0, gtol = 1e-15;
  e2->add_option("--a", ga, "upper parameter a")->required();
  e2->add_option("--b", gb, "upper parameter b")->required();
  e2->add_option("--c", gc, "lower parameter c")->required();
  e2->add_option("--x", gx, "argument, |x| < 1")->required();
  e2->add_option("--tol", gtol, "relative tolerance")->capture_default_str();
  e2->callback([&] { print_eval("2F1 = ", gauss_2f1({ga, gb, gc}, gx, gtol)); });

  // eval-fa
  auto* ef = app.add_subcommand("eval-fa", "Evaluate the Lauricella function F_A^(n)");
  std::string fa_file;
  double fa_a = 0;
  std::vector<double> fa_b, fa_c, fa_x;
  std::string fa_method = "decomposed";
  double fa_tol = 1e-15;
  unsigned fa_degree = 0;
  ef->add_option("--params", fa_file, "JSON file with a, b, c, x");
  ef->add_option("--a", fa_a, "upper parameter a");
  ef->add_option("--b", fa_b, "upper parameters b_1..b_n")->delimiter(',');
  ef->add_option("--c", fa_c, "lower parameters c_1..c_n")->delimiter(',');
  ef->add_option("--x", fa_x, "arguments x_1..x_n")->delimiter(',');
  ef->add_option("--method", fa_method, "direct, decomposed, recurrence or all")
      ->check(CLI::IsMember({"direct", "decomposed", "recurrence", "all"}))
      ->capture_default_str();
  ef->add_option("--tol", fa_tol, "relative tolerance")->capture_default_str();
  ef->add_option("--max-degree", fa_degree, "degree cap (0: default)");
  ef->callback([&] {
    const LauricellaParams p = fa_file.empty() ? LauricellaParams{fa_a, fa_b, fa_c, fa_x} : load_fa_params(fa_file);
    std::vector<std::pair<std::string, FaResult>> rows;
    if (fa_method == "direct" || fa_method == "all") rows.emplace_back("direct", fa_direct(p, fa_tol, fa_degree));
    if (fa_method == "decomposed" || fa_method == "all")
      rows.emplace_back("decomposed", fa_decomposed(p, fa_tol, fa_degree));
    if (fa_method == "recurrence" || fa_method == "all")
      rows.emplace_back("recurrence", fa_recurrence(p, fa_tol, fa_degree));
    for (const auto& [name, r] : rows) {
      print_eval(name + ": F_A = ", r);
      if (r.beyond_direct_domain) std::cout << "  beyond the domain of the defining series\n";
    }
    if (rows.size() > 1) {
      std::cout << "agreement (relative to direct):\n";
      for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ref = rows[0].second.value;
        std::cout << "  " << rows[i].first << ": "
                  << format_double(std::abs(rows[i].second.value - ref) / std::abs(ref)) << "\n";
      }
    }
  });

  // eval-fundsol
  auto* eq = app.add_subcommand("eval-fundsol", "Evaluate a fundamental solution q_k(x, x0)");
  std::string q_config, q_path = "auto";
  Point q_x;
  DeltaVector q_delta;
  eq->add_option("--config", q_config, "run configuration (JSON)")->required();
  eq->add_option("--x", q_x, "evaluation point")->delimiter(',')->required();
  eq->add_option("--delta", q_delta, "delta vector in {0,1}^n (default: zeros)")->delimiter(',');
  eq->add_option("--path", q_path, "auto, direct or transformed")
      ->check(CLI::IsMember({"auto", "direct", "transformed"}))
      ->capture_default_str();
  eq->callback([&] {
    const RunConfig cfg = load_run_config(q_config);
    const DeltaVector d = q_delta.empty() ? cfg.delta_or_default() : q_delta;
    if (static_cast<int>(d.size()) != cfg.problem.n) throw ParameterError("delta must have n entries");
    QOptions o = cfg.q_options();
    o.path = q_path == "direct" ? EvalPath::Direct : (q_path == "transformed" ? EvalPath::Transformed : EvalPath::Auto);
    const QResult r = evaluate_q(q_x, cfg.x0, cfg.problem, d, o);
    std::cout << "q" << delta_to_index(d) << " = " << format_double(r.value) << "\n"
              << "  path: " << to_string(r.path) << "\n"
              << "  degree: " << r.degree_reached << (r.converged ? "" : " (cap reached, not converged)") << "\n";
  });

  // verify
  auto* ev = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  std::string v_config, v_suite = "all", v_report, v_dump;
  bool v_serial = false;
  ev->add_option("--config", v_config, "run configuration (JSON)")->required();
  ev->add_option("--suite", v_suite, "pde, singularity, boundary, identity, decomposition or all")
      ->check(CLI::IsMember({"pde", "singularity", "boundary", "identity", "decomposition", "all"}))
      ->capture_default_str();
  ev->add_option("--report", v_report, "write the JSON report to this path");
  ev->add_option("--dump-config", v_dump, "write the effective configuration and exit");
  ev->add_flag("--serial", v_serial, "disable parallel execution");
  ev->callback([&] {
    const RunConfig cfg = load_run_config(v_config);
    if (!v_dump.empty()) {
      write_file(v_dump, dump_run_config(cfg));
      return;
    }
    const auto reports = run_suites(cfg, v_suite, v_serial ? Execution::Serial : Execution::Parallel);
    std::cout << report_text(reports);
    if (!v_report.empty()) write_file(v_report, report_json(reports));
    for (const auto& r : reports)
      if (!r.all_pass()) code = kVerifyFailed;
  });

  // scan
  auto* es = app.add_subcommand("scan", "Tabulate q_k over the configured grid as CSV");
  std::string s_config, s_out, s_dump;
  DeltaVector s_delta;
  bool s_serial = false;
  es->add_option("--config", s_config, "run configuration (JSON)")->required();
  es->add_option("--delta", s_delta, "delta vector in {0,1}^n (default: from config)")->delimiter(',');
  es->add_option("--out", s_out, "CSV output path (default: stdout)");
  es->add_option("--dump-config", s_dump, "write the effective configuration and exit");
  es->add_flag("--serial", s_serial, "disable parallel execution");
  es->callback([&] {
    const RunConfig cfg = load_run_config(s_config);
    if (!s_dump.empty()) {
      write_file(s_dump, dump_run_config(cfg));
      return;
    }
    const DeltaVector d = s_delta.empty() ? cfg.delta_or_default() : s_delta;
    if (static_cast<int>(d.size()) != cfg.problem.n) throw ParameterError("delta must have n entries");
    const ScanResult r = scan_field(cfg, d, s_serial ? Execution::Serial : Execution::Parallel);
    if (s_out.empty()) {
      std::cout << r.csv;
    } else {
      write_file(s_out, r.csv);
    }
    std::cerr << "rows: " << r.rows << ", skipped (outside domain): " << r.skipped << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
