// commands.hpp: the etapt subcommands as library calls.

#pragma once

#include <string>

#include "cli/config.hpp"
#include "cli/json_io.hpp"
#include "etapt/error.hpp"

namespace etapt::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

struct CommandResult {
  int exit_code = kExitPass;
  Json report;  // full envelope
  CsvTable table;
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_gram(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);

// Dispatches by name and turns library errors into an error envelope with the
// matching exit code. UsageError propagates.
CommandResult run_command(const std::string& name, const RunConfig& config);

std::string render(const CommandResult& result, OutputFormat format);

int exit_code_for(ErrorKind kind);

}  // namespace etapt::cli
