#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "ulcm/bench.hpp"

namespace ulcm::bench {

namespace {

constexpr std::array<const char*, 4> kSolverOrder = {"ufgm", "ulcm", "ulcm-fixed", "ncg"};

constexpr std::array<const char*, 28> kRecordColumns = {
    "solver",         "problem",        "n",
    "mu",             "eps",            "delta",
    "L0",             "theta",          "theta_exact",
    "x0_scale",       "stop",           "max_iters",
    "time_cap_s",     "stride",         "trace_config",
    "seed",           "lambda",         "iterations",
    "time_s",         "value_calls",    "gradient_calls",
    "ray_value_calls", "ray_derivative_calls", "f0",
    "final_f",        "termination",    "message",
    "trace"};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (in_quotes) throw std::invalid_argument("csv: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || s[0] == '-')
    throw std::invalid_argument("csv: bad integer '" + s + "'");
  return v;
}

std::vector<std::string> text_cells(const ComparisonTable::Row& r) {
  std::vector<std::string> out;
  char buf[64];
  for (const auto& c : r.cells) {
    if (c) std::snprintf(buf, sizeof buf, " | %10zu %9.3f", c->iterations, c->seconds);
    else std::snprintf(buf, sizeof buf, " | %10s %9s", "-", "-");
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace

ComparisonTable compare_report(const std::vector<RunRecord>& records) {
  ComparisonTable table;
  if (records.empty()) return table;
  for (const char* s : kSolverOrder) {
    const bool present = std::any_of(records.begin(), records.end(),
                                     [&](const RunRecord& r) { return r.config.solver == s; });
    if (present) table.solvers.emplace_back(s);
  }
  std::map<std::pair<std::string, std::size_t>, ComparisonTable::Row> rows;
  for (const RunRecord& r : records) {
    const auto key = std::make_pair(r.config.problem, r.config.n);
    auto [it, inserted] = rows.try_emplace(key);
    ComparisonTable::Row& row = it->second;
    if (inserted) {
      row.problem = r.config.problem;
      row.n = r.config.n;
      row.initial_f = r.initial_f;
      row.cells.resize(table.solvers.size());
    }
    const auto col = std::find(table.solvers.begin(), table.solvers.end(), r.config.solver);
    if (col == table.solvers.end()) continue;
    auto& cell = row.cells[static_cast<std::size_t>(col - table.solvers.begin())];
    if (!cell) cell = ComparisonTable::Cell{r.iterations, r.wall_time_s};
  }
  for (auto& [key, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

std::string ComparisonTable::to_text() const {
  if (rows.empty()) return {};
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %9s %12s", "problem", "n", "f(x0)");
  out += buf;
  for (const std::string& s : solvers) {
    std::snprintf(buf, sizeof buf, " | %10s %9s", (s + " it").c_str(), "t, sec");
    out += buf;
  }
  out += '\n';
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %9zu %12.6g", r.problem.c_str(), r.n, r.initial_f);
    out += buf;
    for (const auto& c : text_cells(r)) out += c;
    out += '\n';
  }
  return out;
}

std::string ComparisonTable::to_csv() const {
  if (rows.empty()) return {};
  std::string out = "problem,n,f0";
  for (const std::string& s : solvers) out += "," + s + "_iterations," + s + "_t_s";
  out += '\n';
  for (const Row& r : rows) {
    out += quote(r.problem) + "," + std::to_string(r.n) + "," + fmt_double(r.initial_f);
    for (const auto& c : r.cells) {
      if (c) out += "," + std::to_string(c->iterations) + "," + fmt_seconds(c->seconds);
      else out += ",,";
    }
    out += '\n';
  }
  return out;
}

std::string records_to_csv(const std::vector<RunRecord>& records, bool include_times) {
  std::string out;
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) {
    if (i) out += ',';
    out += kRecordColumns[i];
  }
  out += '\n';
  for (const RunRecord& r : records) {
    const RunConfig& c = r.config;
    const std::vector<std::string> f = {
        quote(c.solver),
        quote(c.problem),
        std::to_string(c.n),
        fmt_double(c.mu),
        fmt_double(c.eps),
        fmt_double(c.delta),
        fmt_double(c.L0),
        c.theta ? fmt_double(*c.theta) : "",
        c.theta_exact ? "1" : "0",
        fmt_double(c.x0_scale),
        to_string(c.stop),
        std::to_string(c.max_iterations),
        c.time_cap_s ? fmt_double(*c.time_cap_s) : "",
        c.stride ? std::to_string(*c.stride) : "",
        quote(c.trace_path),
        std::to_string(c.seed),
        fmt_double(c.lambda),
        std::to_string(r.iterations),
        include_times ? fmt_double(r.wall_time_s) : "",
        std::to_string(r.calls.value),
        std::to_string(r.calls.gradient),
        std::to_string(r.calls.ray_value),
        std::to_string(r.calls.ray_derivative),
        fmt_double(r.initial_f),
        fmt_double(r.final_f),
        quote(r.termination),
        quote(r.message),
        quote(r.trace_path)};
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& csv) {
  const auto rows = split_csv(csv);
  if (rows.empty()) throw std::invalid_argument("csv: missing header");
  const auto& header = rows.front();
  if (header.size() != kRecordColumns.size() ||
      !std::equal(header.begin(), header.end(), kRecordColumns.begin()))
    throw std::invalid_argument("csv: unexpected header");
  std::vector<RunRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != kRecordColumns.size())
      throw std::invalid_argument("csv: row " + std::to_string(i) + " has " +
                                  std::to_string(f.size()) + " fields");
    RunRecord r;
    RunConfig& c = r.config;
    c.solver = f[0];
    c.problem = f[1];
    c.n = parse_uint(f[2]);
    c.mu = parse_double(f[3]);
    c.eps = parse_double(f[4]);
    c.delta = parse_double(f[5]);
    c.L0 = parse_double(f[6]);
    if (!f[7].empty()) c.theta = parse_double(f[7]);
    c.theta_exact = f[8] == "1";
    c.x0_scale = parse_double(f[9]);
    c.stop = stop_mode_from_string(f[10]);
    c.max_iterations = parse_uint(f[11]);
    if (!f[12].empty()) c.time_cap_s = parse_double(f[12]);
    if (!f[13].empty()) c.stride = parse_uint(f[13]);
    c.trace_path = f[14];
    c.seed = parse_uint(f[15]);
    c.lambda = parse_double(f[16]);
    r.iterations = parse_uint(f[17]);
    r.wall_time_s = f[18].empty() ? 0.0 : parse_double(f[18]);
    r.calls.value = parse_uint(f[19]);
    r.calls.gradient = parse_uint(f[20]);
    r.calls.ray_value = parse_uint(f[21]);
    r.calls.ray_derivative = parse_uint(f[22]);
    r.initial_f = parse_double(f[23]);
    r.final_f = parse_double(f[24]);
    r.termination = f[25];
    r.message = f[26];
    r.trace_path = f[27];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ulcm::bench
