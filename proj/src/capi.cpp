// SPDX-License-Identifier: Apache-2.0
//
// extern "C" wrappers around the core library. Exceptions never cross the
// ABI boundary; failures are reported through status codes and the engine's
// last-error string.

#include "crsp_power.h"

#include <string>

#include "analyzer.hpp"
#include "run.hpp"

struct crsp_engine {
  std::string last_error;
};

struct crsp_result {
  std::string text;
};

extern "C" {

const char* crsp_version(void) { return crsp::library_version(); }

crsp_engine* crsp_engine_create(void) {
  try {
    return new crsp_engine();
  } catch (...) {
    return nullptr;
  }
}

void crsp_engine_destroy(crsp_engine* engine) { delete engine; }

const char* crsp_engine_last_error(const crsp_engine* engine) {
  return engine ? engine->last_error.c_str() : "null engine";
}

crsp_status crsp_engine_run(crsp_engine* engine, const char* command, const char* config_json,
                            crsp_result** out_result) {
  if (!engine) return CRSP_ERR_NULL_POINTER;
  engine->last_error.clear();
  if (!command || !out_result) {
    engine->last_error = "null argument";
    return CRSP_ERR_NULL_POINTER;
  }
  *out_result = nullptr;

  crsp::RunOutcome outcome;
  try {
    outcome = crsp::run_command(command, config_json ? config_json : "");
  } catch (...) {
    engine->last_error = "internal error";
    return CRSP_ERR_NUMERIC;
  }

  switch (outcome.status) {
    case crsp::RunStatus::Ok:
      break;
    case crsp::RunStatus::NumericError:
      engine->last_error = outcome.error;
      return CRSP_ERR_NUMERIC;
    case crsp::RunStatus::UsageError:
      engine->last_error = outcome.error;
      return CRSP_ERR_INVALID_ARGUMENT;
  }

  try {
    auto* result = new crsp_result{std::move(outcome.output)};
    *out_result = result;
  } catch (...) {
    engine->last_error = "out of memory";
    return CRSP_ERR_NUMERIC;
  }
  return CRSP_OK;
}

const char* crsp_result_text(const crsp_result* result) {
  return result ? result->text.c_str() : "";
}

size_t crsp_result_size(const crsp_result* result) { return result ? result->text.size() : 0; }

void crsp_result_destroy(crsp_result* result) { delete result; }

crsp_status crsp_classical_limit(int dimension, double* out_value) {
  if (!out_value) return CRSP_ERR_NULL_POINTER;
  if (dimension < 2) return CRSP_ERR_INVALID_ARGUMENT;
  *out_value = crsp::classical_limit(static_cast<std::size_t>(dimension));
  return CRSP_OK;
}

crsp_status crsp_power_bound(int dimension, double* out_value) {
  if (!out_value) return CRSP_ERR_NULL_POINTER;
  if (dimension < 2) return CRSP_ERR_INVALID_ARGUMENT;
  *out_value = crsp::power_bound(static_cast<std::size_t>(dimension));
  return CRSP_OK;
}

const char* crsp_status_name(crsp_status status) {
  switch (status) {
    case CRSP_OK: return "ok";
    case CRSP_ERR_NUMERIC: return "numeric_error";
    case CRSP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CRSP_ERR_NULL_POINTER: return "null_pointer";
  }
  return "unknown";
}

int crsp_status_exit_code(crsp_status status) {
  switch (status) {
    case CRSP_OK: return 0;
    case CRSP_ERR_NUMERIC: return 1;
    case CRSP_ERR_INVALID_ARGUMENT: return 2;
    case CRSP_ERR_NULL_POINTER: return 2;
  }
  return 1;
}

}  // extern "C"
