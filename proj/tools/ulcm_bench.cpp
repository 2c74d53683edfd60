// ulcm-bench: run solver/problem benchmarks and render comparison tables.
//
//   ulcm-bench --solver ulcm --problem quad --n 1000
//   ulcm-bench --config table1.yaml --out table1.csv
//   ulcm-bench plot --trace run.csv --prefix run

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ulcm/bench.hpp"

namespace {

struct Overrides {
  std::optional<std::string> solver, problem, theta, stop, trace;
  std::optional<std::size_t> n, max_iters, stride;
  std::optional<double> eps, delta, l0, mu, time_cap_s, x0_scale;
  std::optional<std::uint64_t> seed;

  void apply(ulcm::bench::RunConfig& run) const {
    if (solver) run.solver = *solver;
    if (problem) run.problem = *problem;
    if (n) run.n = *n;
    if (eps) run.eps = *eps;
    if (delta) run.delta = *delta;
    if (l0) run.L0 = *l0;
    if (mu) run.mu = *mu;
    if (max_iters) run.max_iterations = *max_iters;
    if (time_cap_s) run.time_cap_s = *time_cap_s;
    if (stride) run.stride = *stride;
    if (x0_scale) run.x0_scale = *x0_scale;
    if (seed) run.seed = *seed;
    if (stop) run.stop = ulcm::bench::stop_mode_from_string(*stop);
    if (theta) {
      if (*theta == "exact") {
        run.theta_exact = true;
        run.theta.reset();
      } else {
        run.theta = std::stod(*theta);
        run.theta_exact = false;
      }
    }
  }
};

std::string suffixed(const std::string& path, const ulcm::bench::RunConfig& run) {
  const std::filesystem::path p(path);
  std::string name = p.stem().string() + "_" + run.problem + "_" + run.solver + "_n" +
                     std::to_string(run.n) + p.extension().string();
  return (p.parent_path() / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark ULCM, UFGM and NCG on the quadratic and max-type test problems"};
  app.require_subcommand(0, 1);

  std::string config_path, out_path, records_path;
  Overrides ov;
  app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--solver", ov.solver, "ufgm | ulcm | ulcm-fixed | ncg");
  app.add_option("--problem", ov.problem, "quad | maxquad | composite");
  app.add_option("--n", ov.n, "Dimension");
  app.add_option("--eps", ov.eps, "Method accuracy (default 1e-4)");
  app.add_option("--delta", ov.delta, "Line-search slack (default 0)");
  app.add_option("--l0", ov.l0, "Initial Lipschitz estimate (default 1)");
  app.add_option("--theta", ov.theta, "Bound on 0.5*||x0 - x*||^2, or 'exact'");
  app.add_option("--mu", ov.mu, "maxquad regularization (default 0.1)");
  app.add_option("--max-iters", ov.max_iters, "Iteration cap");
  app.add_option("--time-cap-s", ov.time_cap_s, "Wall-clock cap per run");
  app.add_option("--stop", ov.stop, "target | gap | iterations");
  app.add_option("--x0-scale", ov.x0_scale, "Start at x0 = scale * e (default 10)");
  app.add_option("--seed", ov.seed, "Seed for the composite problem");
  app.add_option("--trace", ov.trace, "Trace CSV path; suffixed per run for batches");
  app.add_option("--stride", ov.stride, "Trace stride");
  app.add_option("--out", out_path, "Write the summary table as CSV");
  app.add_option("--records", records_path, "Write one CSV row per run");

  CLI::App* plot = app.add_subcommand("plot", "Turn a trace CSV into gap-vs-iteration/time data");
  std::string plot_trace, plot_prefix;
  plot->add_option("--trace", plot_trace, "Trace CSV")->required();
  plot->add_option("--prefix", plot_prefix, "Output prefix (default: trace path without extension)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plot) {
      if (plot_prefix.empty())
        plot_prefix = std::filesystem::path(plot_trace).replace_extension().string();
      const auto files = ulcm::bench::emit_plot_data(plot_trace, plot_prefix);
      std::cout << files.by_iteration << "\n" << files.by_time << "\n";
      return 0;
    }

    ulcm::bench::BenchmarkConfig cfg;
    if (!config_path.empty()) cfg = ulcm::bench::load_config(config_path);
    if (cfg.runs.empty()) cfg.runs.emplace_back();
    for (auto& run : cfg.runs) ov.apply(run);
    if (ov.trace) {
      for (auto& run : cfg.runs)
        run.trace_path = cfg.runs.size() == 1 ? *ov.trace : suffixed(*ov.trace, run);
    }
    if (!out_path.empty()) cfg.out_path = out_path;

    const auto records = ulcm::bench::run_benchmark(cfg);
    int status = 0;
    for (const auto& r : records) {
      if (r.termination == "error") {
        std::cerr << r.config.solver << "/" << r.config.problem << " n=" << r.config.n
                  << ": error: " << r.message << "\n";
        status = 1;
      } else {
        std::fprintf(stderr, "%s/%s n=%zu: %zu iterations, f=%.10g, %s, %.3f s\n",
                     r.config.solver.c_str(), r.config.problem.c_str(), r.config.n, r.iterations,
                     r.final_f, r.termination.c_str(), r.wall_time_s);
      }
    }
    const auto table = ulcm::bench::compare_report(records);
    std::cout << table.to_text();
    if (!cfg.out_path.empty()) write_file(cfg.out_path, table.to_csv());
    if (!records_path.empty()) write_file(records_path, ulcm::bench::records_to_csv(records));
    return status;
  } catch (const std::exception& e) {
    std::cerr << "ulcm-bench: " << e.what() << "\n";
    return 2;
  }
}
