#pragma once

// Run configuration shared by the command-line tool, the field scan and the
// verification suites. Stored as JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "fsol/fundsol.hpp"
#include "fsol/verify.hpp"

namespace fsol {

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 1;

  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct SampleSpec {
  int count = 20;
  std::uint64_t seed = 1;

  friend bool operator==(const SampleSpec&, const SampleSpec&) = default;
};

struct RunConfig {
  ProblemConfig problem;
  Point x0;
  double gamma = 1.0;
  double tol = 1e-15;
  RadialExponent radial = RadialExponent::Shifted;
  DeltaVector delta;            // empty: all zeros
  double fd_h = 1e-3;
  int fd_order = 4;
  double fd_coarse_h = 0.2;
  std::vector<GridAxis> grid;   // one axis per coordinate
  std::vector<Point> points;    // explicit residual points; empty: sampled
  SampleSpec sample;
  Point direction;              // empty: (1, ..., 1)
  int decomposition_sets = 25;
  std::uint64_t decomposition_seed = 7;

  /// Throws ParameterError on inconsistent dimensions or out-of-domain ranges.
  void validate() const;
  [[nodiscard]] QOptions q_options() const;
  [[nodiscard]] DeltaVector delta_or_default() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
/// Pretty-printed JSON; doubles are written in shortest round-trip form.
std::string dump_run_config(const RunConfig& cfg);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

struct ScanResult {
  std::string csv;
  std::size_t rows = 0;
  std::size_t skipped = 0;  // nodes with a nonpositive singular coordinate
};

/// Evaluates q_k on the tensor grid (last axis varying fastest). Header
/// x1,...,xm,q; the node x = x0 gets the value `inf`.
ScanResult scan_field(const RunConfig& cfg, const DeltaVector& d, Execution exec = Execution::Parallel);

/// Random interior points for the residual suite. Singular coordinates are
/// drawn from [0.25 s, 3 s], the others from x0_i + [-2 s, 2 s], with
/// s = max(1, max x0_j); a draw is kept when r >= 0.3 s and
/// r^2 >= 3 x_j x0_j for every singular j (so that 1 - r^2/r_j^2 <= 4/7).
std::vector<Point> sample_points(const ProblemConfig& cfg, const Point& x0, int count, std::uint64_t seed);

}  // namespace fsol
