// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "o2bp/integrator.hpp"
#include "o2bp/montecarlo.hpp"
#include "o2bp/params.hpp"

namespace o2bp::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitToleranceFail = 1;
inline constexpr int kExitInvalidInput = 2;

/// Bad flags, config files or parameters; maps to exit code 2.
class InvalidInput : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Command
{
    Classify,
    Simulate,
    Hitting,
    Stationary,
    Martingale,
    Importance,
    Phase
};

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct Tolerances
{
    double ks_max = 0.02;
    double se_multiplier = 3.0;
    double corr_max = 0.05;
    std::optional<double> min_frequency;
    std::optional<double> max_frequency;
};

struct PhaseAxis
{
    std::string name;
    double min = 0;
    double max = 0;
    int steps = 1;
};

struct PhaseConfig
{
    PhaseAxis x{"beta", -1.0, 1.0, 5};
    std::optional<PhaseAxis> y;
    std::string mode = "classify";     //!< classify | hitting
    std::string verdict = "existence";  //!< existence | corner | x_edge | y_edge | stationary | skew
};

/// Everything a run needs; serializes losslessly to the versioned schema.
/// The thread count is deliberately not part of it.
struct RunConfig
{
    Command command = Command::Classify;
    O2BPParams params;
    mc::EnsembleConfig ensemble;
    EventSpec events;
    mc::HitTarget which = mc::HitTarget::Corner;
    mc::StationaryConfig stationary;
    mc::MartingaleConfig martingale;
    mc::ImportanceConfig importance;
    PhaseConfig phase;
    std::size_t stride = 1;
    Tolerances tolerances;
    std::string out;
    /// Set when a config file or flag supplied the seed; not serialized.
    bool seed_given = false;
};

/// Command-specific defaults, before any config file or flag.
RunConfig default_config(Command c);

nlohmann::json to_json(const RunConfig& cfg);

/// Overlays `j` onto `cfg`. Rejects unknown fields, wrong types and a
/// missing or unsupported schema_version.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Reads and applies a config file.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Seed from O2BP_DEFAULT_SEED, if set. Throws InvalidInput when malformed.
std::optional<std::uint64_t> env_default_seed();

std::string to_string(mc::HitTarget t);
mc::HitTarget parse_hit_target(const std::string& s);

} // namespace o2bp::cli
