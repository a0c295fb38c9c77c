// SPDX-License-Identifier: Apache-2.0
//
// Command dispatch behind the C API: parses a JSON run configuration,
// executes one of the commands (analyze, sweep, entropy-table, catalog) and
// renders the deterministic report.

#pragma once

#include <string>

namespace crsp {

enum class RunStatus {
  Ok = 0,
  NumericError = 1,  // degenerate protocol or numeric failure
  UsageError = 2,    // unknown command/protocol, invalid configuration
};

struct RunOutcome {
  RunStatus status = RunStatus::Ok;
  std::string output;  // rendered report on success
  std::string error;   // diagnostic on failure
};

/// Executes `command` with a JSON configuration string. Never throws.
RunOutcome run_command(const std::string& command, const std::string& config_json);

const char* library_version();

}  // namespace crsp
