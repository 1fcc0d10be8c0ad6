#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddmag/experiments.hpp"

namespace ddmag {

enum class Experiment {
    FidelityVsSeparation,
    SignalVsDetuning,
    RotationVsLength,
    Heatmap,
    SingleRun,
};

std::string_view experiment_name(Experiment experiment);
std::optional<Experiment> parse_experiment(std::string_view name);

/// Sweep grids; unset entries fall back to the per-experiment defaults.
struct SweepGrids {
    std::optional<std::vector<double>> separations;
    std::optional<std::vector<double>> placement_fractions;
    std::optional<std::vector<double>> detuning_fractions;
    std::optional<std::vector<double>> lengths;
    int cycles = kDefaultCycles;
};

struct RunConfig {
    Experiment experiment = Experiment::SingleRun;
    SimulationConfig simulation;
    SweepGrids sweep;
    std::string output_path; // empty: "<experiment>.csv"
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parse a flat `key = value` document (dotted keys, `#` comments) and apply
/// `overrides` on top. Unknown keys, unparsable values and out-of-range
/// values throw ConfigError naming the key.
///
/// Defaults: V = -32 rad/(T m), n = 1.45, y = 0.1 m, L = 500 m, B0 = 10 uT,
/// L_c = 3 m, total phase std = 100 rad, lambda = 1064 nm, 1000 realizations,
/// master seed 1.
RunConfig parse_config(std::string_view file_contents, const KeyValues& overrides = {});

/// Split `key=value`; throws ConfigError when there is no '='.
std::pair<std::string, std::string> split_assignment(std::string_view text);

/// Every accepted key, in documentation order.
std::vector<std::string> config_keys();

/// Run the configured experiment with its grids resolved.
SweepResult run_experiment(const RunConfig& config);

} // namespace ddmag
