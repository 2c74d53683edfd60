#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ulcm/bench.hpp"
#include "ulcm/problems.hpp"

namespace ulcm::bench {

std::string to_string(StopMode m) {
  switch (m) {
    case StopMode::Target: return "target";
    case StopMode::DualGap: return "gap";
    case StopMode::Iterations: return "iterations";
  }
  return "target";
}

StopMode stop_mode_from_string(const std::string& s) {
  if (s == "target" || s == "target-value") return StopMode::Target;
  if (s == "gap" || s == "dual-gap") return StopMode::DualGap;
  if (s == "iterations") return StopMode::Iterations;
  throw std::invalid_argument("unknown stop mode: " + s);
}

std::size_t RunConfig::effective_stride() const noexcept {
  if (stride) return *stride;
  return n <= 10'000 ? 1 : 100;
}

void RunConfig::validate() const {
  if (solver != "ufgm" && solver != "ulcm" && solver != "ulcm-fixed" && solver != "ncg")
    throw std::invalid_argument("unknown solver: " + solver);
  if (problem != "quad" && problem != "maxquad" && problem != "composite")
    throw std::invalid_argument("unknown problem: " + problem);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  if (!(L0 > 0.0)) throw std::invalid_argument("L0 must be positive");
  if (problem == "maxquad" && !(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (stride && *stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!std::isfinite(x0_scale)) throw std::invalid_argument("x0 scale must be finite");
  if (stop == StopMode::DualGap && !theta && !theta_exact)
    throw std::invalid_argument("dual-gap stop needs theta");
}

bool RunRecord::operator==(const RunRecord& o) const {
  return config == o.config && iterations == o.iterations && wall_time_s == o.wall_time_s &&
         calls.value == o.calls.value && calls.gradient == o.calls.gradient &&
         calls.ray_value == o.calls.ray_value && calls.ray_derivative == o.calls.ray_derivative &&
         initial_f == o.initial_f && final_f == o.final_f && termination == o.termination &&
         message == o.message && trace_path == o.trace_path;
}

std::unique_ptr<Objective> make_problem(const RunConfig& cfg) {
  if (cfg.problem == "quad") return std::make_unique<QuadraticProblem>(cfg.n);
  if (cfg.problem == "maxquad") return std::make_unique<MaxQuadProblem>(cfg.n, cfg.mu);
  if (cfg.problem == "composite") return make_random_composite(cfg.n, cfg.seed, cfg.lambda);
  throw std::invalid_argument("unknown problem: " + cfg.problem);
}

Vector make_start(const RunConfig& cfg) {
  return Vector(std::vector<double>(cfg.n, cfg.x0_scale));
}

SolverOptions make_options(const RunConfig& cfg, const Objective& obj, const Vector& x0) {
  SolverOptions o;
  o.L0 = cfg.L0;
  o.eps = cfg.eps;
  o.delta = cfg.delta;
  o.max_iterations = cfg.max_iterations;
  o.time_cap_s = cfg.time_cap_s;
  if (cfg.theta) {
    o.theta = *cfg.theta;
  } else if (cfg.theta_exact) {
    const auto xs = obj.minimizer();
    if (!xs) throw std::invalid_argument("theta: exact requires a known minimizer");
    const double d = distance(x0, *xs);
    // A start at the optimum leaves nothing to bound; any positive value works.
    o.theta = d > 0.0 ? 0.5 * d * d : 1e-300;
  }
  if (cfg.stop == StopMode::Target) {
    const auto fs = obj.optimal_value();
    if (!fs) throw std::invalid_argument("target stop requires a known optimal value");
    o.target_value = *fs + 5.0 * cfg.eps;
  }
  // The solvers stop on the dual gap whenever theta is set.
  if (cfg.stop == StopMode::Iterations) o.theta.reset();
  return o;
}

SolverReport solve(const std::string& solver, const Objective& obj, const Vector& x0,
                   const SolverOptions& opts) {
  if (solver == "ufgm") return ufgm_solve(obj, x0, opts);
  if (solver == "ulcm") return ulcm_solve(obj, x0, opts);
  if (solver == "ulcm-fixed") return ulcm_fixed_step(obj, x0, opts);
  if (solver == "ncg") return ncg_solve(obj, x0, opts);
  throw std::invalid_argument("unknown solver: " + solver);
}

void write_trace(const std::string& path, const SolverReport& report, std::optional<double> fstar,
                 std::size_t stride) {
  if (stride < 1) throw std::invalid_argument("write_trace: stride must be >= 1");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open trace file " + path);
  const double shift = fstar.value_or(0.0);
  std::fprintf(f, "k,gap,L,A,t_s\n");
  std::fprintf(f, "0,%.17g,%.17g,0,0.000\n", report.f0 - shift, report.L0);
  const std::size_t T = report.trace.size();
  for (std::size_t i = 0; i < T; ++i) {
    const IterationRecord& r = report.trace[i];
    if (r.k % stride != 0 && i + 1 != T) continue;
    std::fprintf(f, "%zu,%.17g,%.17g,%.17g,%.3f\n", r.k, r.f - shift, r.L, r.A, r.elapsed_s);
  }
  const bool ok = std::ferror(f) == 0;
  if (std::fclose(f) != 0 || !ok) throw std::runtime_error("failed writing trace file " + path);
}

RunRecord run_one(const RunConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  try {
    cfg.validate();
    const auto obj = make_problem(cfg);
    const Vector x0 = make_start(cfg);
    const SolverOptions opts = make_options(cfg, *obj, x0);
    const SolverReport rep = solve(cfg.solver, *obj, x0, opts);
    rec.iterations = rep.iterations();
    rec.wall_time_s = std::round(rep.wall_time_s * 1000.0) / 1000.0;
    rec.calls = rep.calls;
    rec.initial_f = rep.f0;
    rec.final_f = rep.f;
    rec.termination = std::string(to_string(rep.reason));
    rec.message = rep.message;
    if (!cfg.trace_path.empty()) {
      write_trace(cfg.trace_path, rep, obj->optimal_value(), cfg.effective_stride());
      rec.trace_path = cfg.trace_path;
    }
  } catch (const std::exception& e) {
    rec.termination = "error";
    rec.message = e.what();
  }
  return rec;
}

std::vector<RunRecord> run_benchmark(const BenchmarkConfig& cfg) {
  std::vector<RunRecord> out;
  out.reserve(cfg.runs.size());
  for (const RunConfig& run : cfg.runs) out.push_back(run_one(run));
  return out;
}

PlotFiles emit_plot_data(const std::string& trace_path, const std::string& out_prefix) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("trace file not found: " + trace_path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,gap", 0) != 0)
    throw std::runtime_error("not a trace file: " + trace_path);
  PlotFiles files{out_prefix + "_iter.dat", out_prefix + "_time.dat"};
  std::ofstream by_iter(files.by_iteration), by_time(files.by_time);
  if (!by_iter || !by_time) throw std::runtime_error("cannot write plot data at " + out_prefix);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    unsigned long long k = 0;
    double gap = 0, L = 0, A = 0, t = 0;
    if (std::sscanf(line.c_str(), "%llu,%lf,%lf,%lf,%lf", &k, &gap, &L, &A, &t) != 5)
      throw std::runtime_error("malformed trace row: " + line);
    gap = std::max(gap, 1e-300);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%llu %.17g\n", k, gap);
    by_iter << buf;
    std::snprintf(buf, sizeof buf, "%.3f %.17g\n", t, gap);
    by_time << buf;
  }
  return files;
}

}  // namespace ulcm::bench
