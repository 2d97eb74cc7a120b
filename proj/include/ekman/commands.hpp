#pragma once
#include <iosfwd>
#include <string>

#include "ekman/config.hpp"

namespace ekman {

// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or
// usage error.
enum ExitCode { exit_pass = 0, exit_fail = 1, exit_config = 2 };

struct CommandContext {
  RunConfig cfg;
  std::string out;  // results directory
  std::ostream* log = nullptr;
};

int cmd_verify(const CommandContext& c);
// which: convergence, residual, nonlinear, gradient
int cmd_study(const CommandContext& c, const std::string& which);
int cmd_solve(const CommandContext& c);
int cmd_compare(const CommandContext& c);
int cmd_report(const std::string& dir, std::ostream* log = nullptr);

extern const char* const tool_version;

}  // namespace ekman
