#pragma once

// Batch commands behind the command-line front end. Each writes its tables
// under config.output.dir and returns a JSON summary.

#include <string>
#include <vector>

#include "basm/session.hpp"

namespace basm {

enum ExitCode : int {
  exit_pass = 0,
  exit_gate_failed = 1,
  exit_domain_violation = 2,
  exit_config_error = 3,
};

struct CommandResult {
  int exit_code = exit_pass;
  std::string summary;             // JSON text, also written as summary.json
  std::vector<std::string> files;  // written paths, in order
};

/// RedLex table (p, q, word, len) with 1-based p and q.
CommandResult cmd_enumerate(const SessionConfig& config);
CommandResult cmd_verify(const SessionConfig& config);
CommandResult cmd_dimension(const SessionConfig& config);
/// Needs a closed path; writes the table and a per-sample identity log.
CommandResult cmd_monodromy(const SessionConfig& config);
CommandResult cmd_gaps(const SessionConfig& config);

/// Dispatch by command name. Library errors become exit codes and a
/// structured error summary (written as error.json when possible).
CommandResult run_command(const std::string& name, const SessionConfig& config);

/// Structured error text for failures outside any command (bad flags, config).
std::string error_summary(const std::string& kind, const std::string& message, int exit_code);

}  // namespace basm
