// SPDX-License-Identifier: Apache-2.0

#include "run.hpp"

#include <json.hpp>

#include "report_io.hpp"

namespace crsp {

namespace {

using nlohmann::json;

std::map<std::string, double> parse_params(const json& cfg) {
  std::map<std::string, double> params;
  if (!cfg.contains("params")) return params;
  const json& p = cfg.at("params");
  if (!p.is_object()) throw std::invalid_argument("config: params must be an object");
  for (const auto& [key, value] : p.items()) {
    if (!value.is_number()) throw std::invalid_argument("config: parameter '" + key + "' must be numeric");
    // `dim` is accepted as an alias for the qudit dimension d.
    params[key == "dim" ? "d" : key] = value.get<double>();
  }
  return params;
}

OutputFormat parse_format_field(const json& cfg, OutputFormat fallback) {
  if (!cfg.contains("format")) return fallback;
  return parse_format(cfg.at("format").get<std::string>());
}

EnsembleSpec parse_ensemble(const json& cfg) {
  EnsembleSpec spec;
  if (cfg.contains("ensemble")) {
    const std::string kind = cfg.at("ensemble").get<std::string>();
    if (kind == "haar")
      spec.kind = TargetEnsemble::Kind::Haar;
    else if (kind == "equatorial")
      spec.kind = TargetEnsemble::Kind::Equatorial;
    else
      throw std::invalid_argument("config: ensemble must be 'haar' or 'equatorial'");
  }
  if (cfg.contains("samples")) {
    const auto samples = cfg.at("samples").get<long long>();
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    spec.samples = static_cast<std::size_t>(samples);
  }
  if (!cfg.contains("seed"))
    throw std::invalid_argument("config: Monte Carlo commands require an explicit seed");
  spec.seed = cfg.at("seed").get<std::uint64_t>();
  return spec;
}

double parse_tolerance(const json& cfg) {
  if (!cfg.contains("tol")) return 1e-6;
  const double tol = cfg.at("tol").get<double>();
  if (tol < 0.0) throw std::invalid_argument("config: tol must be non-negative");
  return tol;
}

unsigned parse_threads(const json& cfg) {
  if (!cfg.contains("threads")) return 1;
  const auto threads = cfg.at("threads").get<long long>();
  if (threads < 1 || threads > 256)
    throw std::invalid_argument("config: threads must lie in [1, 256]");
  return static_cast<unsigned>(threads);
}

std::string run_analyze(const json& cfg) {
  if (!cfg.contains("protocol"))
    throw std::invalid_argument("config: analyze requires a protocol id");
  const auto bundle = builtin(cfg.at("protocol").get<std::string>(), parse_params(cfg));
  const auto report =
      analyze(bundle, parse_ensemble(cfg), parse_tolerance(cfg), parse_threads(cfg));
  return render_report(report, parse_format_field(cfg, OutputFormat::Json));
}

std::string run_sweep(const json& cfg) {
  if (!cfg.contains("protocol"))
    throw std::invalid_argument("config: sweep requires a protocol id");
  if (!cfg.contains("param") || !cfg.contains("grid"))
    throw std::invalid_argument("config: sweep requires 'param' and 'grid'");
  const std::string parameter = cfg.at("param").get<std::string>();
  if (!cfg.at("grid").is_array() || cfg.at("grid").empty())
    throw std::invalid_argument("config: grid must be a non-empty array of numbers");
  std::vector<double> grid;
  for (const auto& v : cfg.at("grid")) {
    if (!v.is_number()) throw std::invalid_argument("config: grid entries must be numeric");
    grid.push_back(v.get<double>());
  }
  const auto rows = sweep(cfg.at("protocol").get<std::string>(), parse_params(cfg), parameter,
                          grid, parse_ensemble(cfg), parse_tolerance(cfg), parse_threads(cfg));
  return render_sweep(rows, parameter, parse_format_field(cfg, OutputFormat::Csv));
}

std::string run_entropy_table(const json& cfg) {
  double ms_d = 0.6, pghz_a2 = 0.8;
  if (cfg.contains("ms_d")) ms_d = cfg.at("ms_d").get<double>();
  if (cfg.contains("pghz_a2")) pghz_a2 = cfg.at("pghz_a2").get<double>();
  return render_entropy_table(entropy_table(ms_d, pghz_a2),
                              parse_format_field(cfg, OutputFormat::Text));
}

std::string run_catalog(const json& cfg) {
  return render_catalog(parse_format_field(cfg, OutputFormat::Text));
}

}  // namespace

RunOutcome run_command(const std::string& command, const std::string& config_json) {
  RunOutcome outcome;
  json cfg;
  try {
    cfg = config_json.empty() ? json::object() : json::parse(config_json);
    if (!cfg.is_object()) throw std::invalid_argument("config: expected a JSON object");
  } catch (const json::exception& e) {
    outcome.status = RunStatus::UsageError;
    outcome.error = std::string("config: invalid JSON: ") + e.what();
    return outcome;
  } catch (const std::invalid_argument& e) {
    outcome.status = RunStatus::UsageError;
    outcome.error = e.what();
    return outcome;
  }

  try {
    if (command == "analyze")
      outcome.output = run_analyze(cfg);
    else if (command == "sweep")
      outcome.output = run_sweep(cfg);
    else if (command == "entropy-table")
      outcome.output = run_entropy_table(cfg);
    else if (command == "catalog")
      outcome.output = run_catalog(cfg);
    else {
      outcome.status = RunStatus::UsageError;
      outcome.error = "unknown command '" + command +
                      "' (expected analyze, sweep, entropy-table or catalog)";
    }
  } catch (const json::exception& e) {
    outcome.status = RunStatus::UsageError;
    outcome.error = std::string("config: ") + e.what();
  } catch (const std::invalid_argument& e) {
    outcome.status = RunStatus::UsageError;
    outcome.error = e.what();
  } catch (const DegenerateProtocolError& e) {
    outcome.status = RunStatus::NumericError;
    outcome.error = e.what();
  } catch (const std::exception& e) {
    outcome.status = RunStatus::NumericError;
    outcome.error = e.what();
  }
  return outcome;
}

const char* library_version() { return "1.0.0"; }

}  // namespace crsp
