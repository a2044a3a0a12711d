// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "o2bp/regime.hpp"

namespace o2bp::cli {

/// Tool name, version, seed and the resolved config.
nlohmann::json metadata(const RunConfig& cfg);

nlohmann::json report_json(const regime::RegimeReport& report);

/// A named pass/fail comparison against a configured tolerance.
struct Check
{
    std::string name;
    double value;
    double limit;
    bool pass;
};

/// Result of one subcommand: the summary document and any data file.
struct Outcome
{
    nlohmann::json result;
    std::vector<Check> checks;
    std::string csv;          //!< written to <out>.csv when non-empty
    nlohmann::json sidecar;   //!< written to <out>.events.json when not null
};

Outcome run_classify(const RunConfig& cfg);
Outcome run_simulate(const RunConfig& cfg);
Outcome run_hitting(const RunConfig& cfg);
Outcome run_stationary(const RunConfig& cfg);
Outcome run_martingale(const RunConfig& cfg);
Outcome run_importance(const RunConfig& cfg);
Outcome run_phase(const RunConfig& cfg);

/// Runs cfg.command, prints the summary to `out`, writes files under
/// cfg.out, and returns the exit code (0 pass, 1 tolerance failure).
int execute(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace o2bp::cli
