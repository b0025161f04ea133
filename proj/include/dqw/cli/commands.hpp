#pragma once

#include <iosfwd>

#include "dqw/cli/run_config.hpp"

namespace dqw::cli {

/// Runs cfg.command, writing to cfg.out or to out when no path is set.
/// Returns the process exit status; diagnostics go to err.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_measures(const RunConfig& cfg, std::ostream& out);
int cmd_gqd(const RunConfig& cfg, std::ostream& out);
int cmd_wigner(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

/// Exact text of a doubled coordinate: "3/2", "-1", "0".
std::string half_int_text(int twice);

}  // namespace dqw::cli
