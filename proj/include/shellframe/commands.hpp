#pragma once

#include <iosfwd>
#include <string>

#include "shellframe/config.hpp"

namespace shellframe {

/// Command bodies shared by the CLI binary and the test suite. Each returns
/// a process exit code: 0 success/pass, 1 validation failure. Exceptions for
/// divergence (2) and bad input files (3) propagate to run_command.
int cmd_check_geometry(const ScenarioConfig& config, const std::string& out_dir,
                       std::ostream& out);
int cmd_strain(const ScenarioConfig& config, const std::string& out_dir,
               std::ostream& out);
int cmd_resultants(const ScenarioConfig& config, const std::string& out_dir,
                   std::ostream& out);
int cmd_residual(const ScenarioConfig& config, const std::string& out_dir,
                 std::ostream& out);
int cmd_dispersion(const ScenarioConfig& config, const std::string& out_dir,
                   std::ostream& out);
int cmd_simulate(const ScenarioConfig& config, const std::string& out_dir,
                 std::ostream& out);

/// Dispatches by name and maps exceptions to the exit-code contract
/// (1 validation, 2 divergence, 3 bad input).
int run_command(const std::string& name, const ScenarioConfig& config,
                const std::string& out_dir, std::ostream& out, std::ostream& err);

} // namespace shellframe
