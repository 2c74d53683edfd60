#include <fstream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

#include "ulcm/bench.hpp"

namespace ulcm::bench {

namespace {

void apply(RunConfig& run, const YAML::Node& node) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "solver") run.solver = v.as<std::string>();
    else if (key == "problem") run.problem = v.as<std::string>();
    else if (key == "n") run.n = v.as<std::size_t>();
    else if (key == "mu") run.mu = v.as<double>();
    else if (key == "eps") run.eps = v.as<double>();
    else if (key == "delta") run.delta = v.as<double>();
    else if (key == "l0" || key == "L0") run.L0 = v.as<double>();
    else if (key == "theta") {
      if (v.as<std::string>() == "exact") {
        run.theta_exact = true;
        run.theta.reset();
      } else {
        run.theta = v.as<double>();
        run.theta_exact = false;
      }
    }
    else if (key == "x0_scale") run.x0_scale = v.as<double>();
    else if (key == "stop") run.stop = stop_mode_from_string(v.as<std::string>());
    else if (key == "max_iters") run.max_iterations = v.as<std::size_t>();
    else if (key == "time_cap_s") run.time_cap_s = v.as<double>();
    else if (key == "stride") run.stride = v.as<std::size_t>();
    else if (key == "trace") run.trace_path = v.as<std::string>();
    else if (key == "seed") run.seed = v.as<std::uint64_t>();
    else if (key == "lambda") run.lambda = v.as<double>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::vector<YAML::Node> as_list(const YAML::Node& v) {
  std::vector<YAML::Node> out;
  if (v.IsSequence()) {
    for (const auto& item : v) out.push_back(item);
  } else {
    out.push_back(v);
  }
  return out;
}

}  // namespace

BenchmarkConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("config: top level must be a mapping");

  BenchmarkConfig cfg;
  RunConfig defaults;
  try {
    if (root["out"]) cfg.out_path = root["out"].as<std::string>();
    if (root["defaults"]) apply(defaults, root["defaults"]);
    const YAML::Node runs = root["runs"];
    if (!runs || !runs.IsSequence()) throw std::invalid_argument("config: `runs` must be a list");
    for (const auto& entry : runs) {
      if (!entry.IsMap()) throw std::invalid_argument("config: each run must be a mapping");
      YAML::Node scalars(YAML::NodeType::Map);
      for (const auto& kv : entry) {
        const std::string key = kv.first.as<std::string>();
        if (key != "solver" && key != "n") scalars[key] = kv.second;
      }
      RunConfig base = defaults;
      apply(base, scalars);
      const std::vector<YAML::Node> ns =
          entry["n"] ? as_list(entry["n"]) : std::vector<YAML::Node>{};
      const std::vector<YAML::Node> solvers =
          entry["solver"] ? as_list(entry["solver"]) : std::vector<YAML::Node>{};
      const std::size_t n_count = ns.empty() ? 1 : ns.size();
      const std::size_t s_count = solvers.empty() ? 1 : solvers.size();
      for (std::size_t i = 0; i < n_count; ++i) {
        for (std::size_t j = 0; j < s_count; ++j) {
          RunConfig run = base;
          if (!ns.empty()) run.n = ns[i].as<std::size_t>();
          if (!solvers.empty()) run.solver = solvers[j].as<std::string>();
          run.validate();
          cfg.runs.push_back(run);
        }
      }
    }
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

BenchmarkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ulcm::bench
