#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ulcm/objective.hpp"
#include "ulcm/solvers.hpp"

namespace ulcm::bench {

enum class StopMode {
  Target,      // f(y_k) <= f* + 5 eps
  DualGap,     // f(y_k) - fhat_k <= eps, requires theta
  Iterations,  // run to max_iterations
};

std::string to_string(StopMode m);
StopMode stop_mode_from_string(const std::string& s);

struct RunConfig {
  std::string solver = "ulcm";  // ufgm | ulcm | ulcm-fixed | ncg
  std::string problem = "quad";  // quad | maxquad | composite
  std::size_t n = 1000;
  double mu = 0.1;
  double eps = 1e-4;
  double delta = 0.0;
  double L0 = 1.0;
  /// Explicit bound on 0.5*||x0 - x*||^2.
  std::optional<double> theta;
  /// Use theta = 0.5*||x0 - x*||^2 from the problem's known minimizer.
  bool theta_exact = false;
  double x0_scale = 10.0;
  StopMode stop = StopMode::Target;
  std::size_t max_iterations = 10'000'000;
  std::optional<double> time_cap_s;
  /// Trace stride; unset gives 1 for n <= 1e4 and 100 above.
  std::optional<std::size_t> stride;
  std::string trace_path;
  std::uint64_t seed = 1;
  double lambda = 0.0;

  std::size_t effective_stride() const noexcept;
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct BenchmarkConfig {
  std::vector<RunConfig> runs;
  std::string out_path;
};

struct RunRecord {
  RunConfig config;
  std::size_t iterations = 0;
  double wall_time_s = 0.0;
  OracleCounts calls;
  double initial_f = 0.0;
  double final_f = 0.0;
  /// to_string(Termination), or "error" when the run threw.
  std::string termination;
  std::string message;
  std::string trace_path;

  bool operator==(const RunRecord& o) const;
};

std::unique_ptr<Objective> make_problem(const RunConfig& cfg);
Vector make_start(const RunConfig& cfg);
SolverOptions make_options(const RunConfig& cfg, const Objective& obj, const Vector& x0);
SolverReport solve(const std::string& solver, const Objective& obj, const Vector& x0,
                   const SolverOptions& opts);

/// Trace CSV with header k,gap,L,A,t_s. Rows: k = 0, every stride-th
/// iteration, and the final iteration. gap is f - f* (plain f if f* unknown).
void write_trace(const std::string& path, const SolverReport& report, std::optional<double> fstar,
                 std::size_t stride);

RunRecord run_one(const RunConfig& cfg);
/// Runs every configured run; per-run failures are recorded, never thrown.
std::vector<RunRecord> run_benchmark(const BenchmarkConfig& cfg);

struct ComparisonTable {
  struct Cell {
    std::size_t iterations;
    double seconds;
  };
  struct Row {
    std::string problem;
    std::size_t n;
    double initial_f;
    /// One entry per solver column; empty when that solver has no record.
    std::vector<std::optional<Cell>> cells;
  };
  std::vector<std::string> solvers;
  std::vector<Row> rows;

  std::string to_text() const;
  std::string to_csv() const;
};

/// Rows keyed by (problem, n), columns by solver in the fixed order
/// ufgm, ulcm, ulcm-fixed, ncg.
ComparisonTable compare_report(const std::vector<RunRecord>& records);

std::string records_to_csv(const std::vector<RunRecord>& records, bool include_times = true);
std::vector<RunRecord> parse_records_csv(const std::string& csv);

struct PlotFiles {
  std::string by_iteration;
  std::string by_time;
};

/// Writes "<prefix>_iter.dat" (k gap) and "<prefix>_time.dat" (t_s gap),
/// gap clamped below at 1e-300.
PlotFiles emit_plot_data(const std::string& trace_path, const std::string& out_prefix);

/// YAML config: optional `out`, optional `defaults` map, and a `runs` list.
/// A run's `solver` and `n` may be lists, expanded as a cross product.
BenchmarkConfig load_config(const std::string& path);
BenchmarkConfig parse_config(const std::string& yaml_text);

}  // namespace ulcm::bench
