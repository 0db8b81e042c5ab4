#pragma once

#include "config.hpp"
#include "report.hpp"

namespace laxscatter::cli {

struct CommandResult {
    Json results;
    double tolerance = 0;
    bool passed = true;
};

const std::vector<std::string>& command_names();

CommandResult run_jost(const RunConfig& cfg);
CommandResult run_transmission(const RunConfig& cfg);
CommandResult run_det2(const RunConfig& cfg);
CommandResult run_verify_equality(const RunConfig& cfg);
CommandResult run_greens(const RunConfig& cfg);
CommandResult run_gradcheck(const RunConfig& cfg);
CommandResult run_energy(const RunConfig& cfg);
CommandResult run_evolve(const RunConfig& cfg);
CommandResult run_norms(const RunConfig& cfg);
CommandResult run_full_report(const RunConfig& cfg);

// Runs cfg.command, writes <out>/<command>.json next to the CSV artifacts and returns the
// process exit code: 0 on success, 2 when a tolerance check fails.
int run_command(const RunConfig& cfg);

}  // namespace laxscatter::cli
