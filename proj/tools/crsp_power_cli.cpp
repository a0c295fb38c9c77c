// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Flags are translated into a JSON run
// configuration and handed to the shared library; reports go to stdout,
// diagnostics to stderr. Exit codes: 0 success, 1 numeric failure,
// 2 usage or validation error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsp_power.h"

namespace {

std::string format_config_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal JSON object builder; keys and string values are plain ASCII here.
class ConfigBuilder {
 public:
  void add(const std::string& key, double value) { raw(key, format_config_double(value)); }
  void add(const std::string& key, long long value) { raw(key, std::to_string(value)); }
  void add(const std::string& key, unsigned long long value) { raw(key, std::to_string(value)); }
  void add(const std::string& key, const std::string& value) { raw(key, "\"" + value + "\""); }
  void add_params(const std::vector<std::pair<std::string, double>>& params) {
    std::string obj = "{";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) obj += ",";
      obj += "\"" + params[i].first + "\":" + format_config_double(params[i].second);
    }
    obj += "}";
    raw("params", obj);
  }
  void add_grid(const std::vector<double>& grid) {
    std::string arr = "[";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i) arr += ",";
      arr += format_config_double(grid[i]);
    }
    arr += "]";
    raw("grid", arr);
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  void raw(const std::string& key, const std::string& value) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + key + "\":" + value;
  }
  std::string body_;
};

// Grid specs: "start:stop:step" (inclusive endpoints) or a comma list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double start, stop, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
      throw CLI::ValidationError("--grid", "expected start:stop:step with step > 0");
    for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(stop)); v += step)
      grid.push_back(v);
    return grid;
  }
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--grid", "expected a comma-separated list of numbers");
    }
  }
  if (grid.empty()) throw CLI::ValidationError("--grid", "empty grid");
  return grid;
}

int run_engine(const std::string& command, const std::string& config) {
  crsp_engine* engine = crsp_engine_create();
  if (!engine) {
    std::cerr << "error: failed to create engine\n";
    return 1;
  }
  crsp_result* result = nullptr;
  const crsp_status status = crsp_engine_run(engine, command.c_str(), config.c_str(), &result);
  int code = crsp_status_exit_code(status);
  if (status == CRSP_OK) {
    std::fwrite(crsp_result_text(result), 1, crsp_result_size(result), stdout);
    crsp_result_destroy(result);
  } else {
    std::cerr << "error: " << crsp_engine_last_error(engine) << "\n";
  }
  crsp_engine_destroy(engine);
  return code;
}

struct McOptions {
  std::string protocol;
  double b2 = 0.0, c = 0.0, d = 0.0, a2 = 0.0;
  long long n = 0, m = 0, dim = 0;
  std::string ensemble = "haar";
  long long samples = 10000;
  unsigned long long seed = 0;
  std::string format;
  double tol = 1e-6;
  long long threads = 1;
};

void add_mc_options(CLI::App* cmd, McOptions& opt, const char* default_format) {
  cmd->add_option("protocol", opt.protocol, "protocol id (P1..P7)")->required();
  cmd->add_option("--b2", opt.b2, "squared smaller channel coefficient (P1, P2)");
  cmd->add_option("--c", opt.c, "maximal-slice coefficient c (P1, P2)");
  cmd->add_option("--d", opt.d,
                  "maximal-slice coefficient d (P1, P2) or qudit dimension (P6, P7)");
  cmd->add_option("--a2", opt.a2, "squared larger channel coefficient (P5)");
  cmd->add_option("--N", opt.n, "number of target qubits/qudits");
  cmd->add_option("--M", opt.m, "number of controllers");
  cmd->add_option("--dim", opt.dim, "qudit dimension (alias of --d for P6, P7)");
  cmd->add_option("--ensemble", opt.ensemble, "target ensemble: haar or equatorial")
      ->check(CLI::IsMember({"haar", "equatorial"}));
  cmd->add_option("--samples", opt.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "Monte Carlo seed (or env CRSP_POWER_SEED)");
  cmd->add_option("--format", opt.format, "output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->default_str(default_format);
  cmd->add_option("--tol", opt.tol, "verdict tolerance for analytic values");
  cmd->add_option("--threads", opt.threads, "worker threads (reports are thread-count invariant)")
      ->check(CLI::PositiveNumber);
}

void fill_mc_config(const CLI::App* cmd, const McOptions& opt, ConfigBuilder& cfg,
                    const char* default_format) {
  cfg.add("protocol", opt.protocol);
  std::vector<std::pair<std::string, double>> params;
  if (cmd->count("--b2")) params.emplace_back("b2", opt.b2);
  if (cmd->count("--c")) params.emplace_back("c", opt.c);
  if (cmd->count("--d")) params.emplace_back("d", opt.d);
  if (cmd->count("--a2")) params.emplace_back("a2", opt.a2);
  if (cmd->count("--N")) params.emplace_back("N", static_cast<double>(opt.n));
  if (cmd->count("--M")) params.emplace_back("M", static_cast<double>(opt.m));
  if (cmd->count("--dim")) params.emplace_back("dim", static_cast<double>(opt.dim));
  cfg.add_params(params);
  cfg.add("ensemble", opt.ensemble);
  cfg.add("samples", opt.samples);
  if (cmd->count("--seed")) {
    cfg.add("seed", opt.seed);
  } else if (const char* env = std::getenv("CRSP_POWER_SEED")) {
    cfg.add("seed", static_cast<unsigned long long>(std::strtoull(env, nullptr, 10)));
  }
  cfg.add("format", opt.format.empty() ? std::string(default_format) : opt.format);
  cfg.add("tol", opt.tol);
  cfg.add("threads", opt.threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"control-power analyzer for controlled remote state preparation schemes"};
  app.set_version_flag("--version", std::string(crsp_version()));
  app.require_subcommand(1);

  McOptions analyze_opt;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze one protocol instance");
  add_mc_options(analyze_cmd, analyze_opt, "json");

  McOptions sweep_opt;
  std::string sweep_param, sweep_grid;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep a protocol parameter over a grid");
  add_mc_options(sweep_cmd, sweep_opt, "csv");
  sweep_cmd->add_option("--param", sweep_param, "parameter to sweep")->required();
  sweep_cmd->add_option("--grid", sweep_grid, "grid: start:stop:step or v1,v2,...")->required();

  double table_d = 0.6, table_a2 = 0.8;
  std::string table_format = "text";
  auto* table_cmd =
      app.add_subcommand("entropy-table", "subsystem entropies of the 3-qubit channels");
  table_cmd->add_option("--d", table_d, "maximal-slice coefficient d (default 0.6)");
  table_cmd->add_option("--a2", table_a2, "partially entangled GHZ weight a^2 (default 0.8)");
  table_cmd->add_option("--format", table_format, "output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  std::string catalog_format = "text";
  auto* catalog_cmd = app.add_subcommand("catalog", "list channels and protocols");
  catalog_cmd->add_option("--format", catalog_format, "output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  if (analyze_cmd->parsed()) {
    ConfigBuilder cfg;
    fill_mc_config(analyze_cmd, analyze_opt, cfg, "json");
    return run_engine("analyze", cfg.str());
  }
  if (sweep_cmd->parsed()) {
    ConfigBuilder cfg;
    fill_mc_config(sweep_cmd, sweep_opt, cfg, "csv");
    cfg.add("param", sweep_param);
    try {
      cfg.add_grid(parse_grid(sweep_grid));
    } catch (const CLI::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return run_engine("sweep", cfg.str());
  }
  if (table_cmd->parsed()) {
    ConfigBuilder cfg;
    cfg.add("ms_d", table_d);
    cfg.add("pghz_a2", table_a2);
    cfg.add("format", table_format);
    return run_engine("entropy-table", cfg.str());
  }
  if (catalog_cmd->parsed()) {
    ConfigBuilder cfg;
    cfg.add("format", catalog_format);
    return run_engine("catalog", cfg.str());
  }
  return 2;
}
