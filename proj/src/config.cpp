#include "ddmag/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

#include "ddmag/errors.hpp"

namespace ddmag {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 5> kExperimentNames{{
    {Experiment::FidelityVsSeparation, "fidelity-vs-separation"},
    {Experiment::SignalVsDetuning, "signal-vs-detuning"},
    {Experiment::RotationVsLength, "rotation-vs-length"},
    {Experiment::Heatmap, "heatmap"},
    {Experiment::SingleRun, "single-run"},
}};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(const std::string& key, std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_double(key, text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text = text.substr(comma + 1);
        if (trim(text).empty()) {
            throw ConfigError(key, "trailing comma in list");
        }
    }
    if (out.empty()) {
        throw ConfigError(key, "expected a comma-separated list of numbers");
    }
    return out;
}

void require(bool ok, const std::string& key, const char* what) {
    if (!ok) {
        throw ConfigError(key, what);
    }
}

using Setter = std::function<void(RunConfig&, const std::string& key, std::string_view value)>;

struct KeyHandler {
    std::string_view key;
    Setter set;
};

template <class Pick, class Check>
Setter real(Pick pick, Check check, const char* constraint) {
    return [pick, check, constraint](RunConfig& c, const std::string& key, std::string_view v) {
        const double value = parse_double(key, v);
        require(check(value), key, constraint);
        pick(c) = value;
    };
}

template <class Pick, class Check>
Setter list(Pick pick, Check check, const char* constraint) {
    return [pick, check, constraint](RunConfig& c, const std::string& key, std::string_view v) {
        std::vector<double> values = parse_list(key, v);
        for (double value : values) {
            require(check(value), key, constraint);
        }
        pick(c) = std::move(values);
    };
}

const std::vector<KeyHandler>& handlers() {
    static const std::vector<KeyHandler> table = [] {
        auto positive = [](double v) { return v > 0.0; };
        auto non_negative = [](double v) { return v >= 0.0; };
        auto any = [](double) { return true; };
        auto fraction = [](double v) { return v >= 0.0 && v < 0.5; };
        auto detuning = [](double v) { return v > -1.0; };

        std::vector<KeyHandler> t;
        t.push_back({"fiber.length",
                     real([](RunConfig& c) -> double& { return c.simulation.fiber.length; }, positive,
                          "must be positive")});
        t.push_back({"fiber.placement_error_fraction",
                     real([](RunConfig& c) -> double& { return c.simulation.fiber.placement_error_fraction; },
                          fraction, "must lie in [0, 0.5)")});
        t.push_back({"fiber.dd_enabled", [](RunConfig& c, const std::string& key, std::string_view v) {
                         c.simulation.fiber.dd_enabled = parse_bool(key, v);
                     }});
        t.push_back({"fiber.integration_step", [](RunConfig& c, const std::string& key, std::string_view v) {
                         if (trim(v) == "auto") {
                             c.simulation.auto_integration_step = true;
                             return;
                         }
                         const double step = parse_double(key, v);
                         require(step > 0.0, key, "must be positive or 'auto'");
                         c.simulation.fiber.integration_step = step;
                         c.simulation.auto_integration_step = false;
                     }});
        t.push_back({"optics.verdet",
                     real([](RunConfig& c) -> double& { return c.simulation.fiber.optics.verdet; }, any, "")});
        t.push_back({"optics.refractive_index",
                     real([](RunConfig& c) -> double& { return c.simulation.fiber.optics.refractive_index; },
                          [](double v) { return v >= 1.0; }, "must be >= 1")});
        t.push_back({"optics.waveplate_separation",
                     real([](RunConfig& c) -> double& { return c.simulation.fiber.optics.waveplate_separation; },
                          positive, "must be positive")});
        t.push_back({"field.amplitude",
                     real([](RunConfig& c) -> double& { return c.simulation.field.amplitude; }, non_negative,
                          "must be non-negative")});
        t.push_back({"field.detuning_fraction",
                     real([](RunConfig& c) -> double& { return c.simulation.field.detuning_fraction; }, detuning,
                          "must exceed -1")});
        t.push_back({"field.phase_offset",
                     real([](RunConfig& c) -> double& { return c.simulation.field.phase_offset; }, any, "")});
        t.push_back({"noise.coherence_length",
                     real([](RunConfig& c) -> double& { return c.simulation.noise.coherence_length; }, positive,
                          "must be positive")});
        t.push_back({"noise.total_phase_std",
                     real([](RunConfig& c) -> double& { return c.simulation.noise.total_phase_std; },
                          non_negative, "must be non-negative")});
        t.push_back({"noise.wavelength",
                     real([](RunConfig& c) -> double& { return c.simulation.noise.wavelength; }, positive,
                          "must be positive")});
        t.push_back({"run.experiment", [](RunConfig& c, const std::string& key, std::string_view v) {
                         const auto experiment = parse_experiment(trim(v));
                         require(experiment.has_value(), key, "unknown experiment name");
                         c.experiment = *experiment;
                     }});
        t.push_back({"realizations", [](RunConfig& c, const std::string& key, std::string_view v) {
                         const std::uint64_t n = parse_unsigned(key, v);
                         require(n >= 1, key, "must be at least 1");
                         c.simulation.realizations = n;
                     }});
        t.push_back({"master_seed", [](RunConfig& c, const std::string& key, std::string_view v) {
                         c.simulation.master_seed = parse_unsigned(key, v);
                     }});
        t.push_back({"run.threads", [](RunConfig& c, const std::string& key, std::string_view v) {
                         const std::uint64_t n = parse_unsigned(key, v);
                         require(n <= std::numeric_limits<unsigned>::max(), key, "too large");
                         c.simulation.threads = static_cast<unsigned>(n);
                     }});
        t.push_back({"run.output", [](RunConfig& c, const std::string&, std::string_view v) {
                         c.output_path = std::string(trim(v));
                     }});
        t.push_back({"sweep.separations",
                     list([](RunConfig& c) -> auto& { return c.sweep.separations; }, positive,
                          "separations must be positive")});
        t.push_back({"sweep.placement_fractions",
                     list([](RunConfig& c) -> auto& { return c.sweep.placement_fractions; }, fraction,
                          "fractions must lie in [0, 0.5)")});
        t.push_back({"sweep.detuning_fractions",
                     list([](RunConfig& c) -> auto& { return c.sweep.detuning_fractions; }, detuning,
                          "detunings must exceed -1")});
        t.push_back({"sweep.lengths",
                     list([](RunConfig& c) -> auto& { return c.sweep.lengths; }, non_negative,
                          "lengths must be non-negative")});
        t.push_back({"sweep.cycles", [](RunConfig& c, const std::string& key, std::string_view v) {
                         const std::uint64_t m = parse_unsigned(key, v);
                         require(m >= 1 && m <= 10'000'000, key, "must lie in [1, 1e7]");
                         c.sweep.cycles = static_cast<int>(m);
                     }});
        return t;
    }();
    return table;
}

void apply(RunConfig& config, const std::string& key, std::string_view value) {
    for (const KeyHandler& handler : handlers()) {
        if (handler.key == key) {
            handler.set(config, key, value);
            return;
        }
    }
    throw ConfigError(key, "unknown key");
}

// Cross-field invariants, reported against the key most likely at fault.
void check_consistency(const RunConfig& config) {
    const SimulationConfig& sim = config.simulation;
    if (!sim.auto_integration_step) {
        require(sim.fiber.integration_step <= sim.fiber.optics.waveplate_separation / 20.0 * (1.0 + 1e-12),
                "fiber.integration_step", "must not exceed optics.waveplate_separation / 20");
    }
}

} // namespace

std::string_view experiment_name(Experiment experiment) {
    for (const auto& [value, name] : kExperimentNames) {
        if (value == experiment) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& [value, known] : kExperimentNames) {
        if (known == name) {
            return value;
        }
    }
    return std::nullopt;
}

std::pair<std::string, std::string> split_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(trim(text)), "expected 'key = value'");
    }
    return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const KeyHandler& handler : handlers()) {
        keys.emplace_back(handler.key);
    }
    return keys;
}

RunConfig parse_config(std::string_view file_contents, const KeyValues& overrides) {
    RunConfig config;
    std::size_t line_number = 0;
    while (!file_contents.empty()) {
        ++line_number;
        const auto newline = file_contents.find('\n');
        std::string_view line = file_contents.substr(0, newline);
        file_contents = newline == std::string_view::npos ? std::string_view{} : file_contents.substr(newline + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.find('=') == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_number), "expected 'key = value'");
        }
        const auto [key, value] = split_assignment(line);
        apply(config, key, value);
    }
    for (const auto& [key, value] : overrides) {
        apply(config, key, value);
    }
    check_consistency(config);
    return config;
}

SweepResult run_experiment(const RunConfig& config) {
    const SimulationConfig& sim = config.simulation;
    const SweepGrids& grids = config.sweep;
    switch (config.experiment) {
    case Experiment::FidelityVsSeparation:
        return sweep_fidelity_vs_separation(sim, grids.separations.value_or(default_separations()),
                                            grids.placement_fractions.value_or(default_placement_fractions()));
    case Experiment::SignalVsDetuning:
        return sweep_signal_vs_detuning(sim, grids.detuning_fractions.value_or(default_detunings()),
                                        grids.cycles);
    case Experiment::RotationVsLength:
        return sweep_rotation_vs_length(sim, grids.lengths.value_or(default_lengths()),
                                        grids.placement_fractions.value_or(default_placement_fractions()));
    case Experiment::Heatmap:
        return sweep_heatmap(sim, grids.placement_fractions.value_or(default_placement_fractions()),
                             grids.detuning_fractions.value_or(default_heatmap_detunings()));
    case Experiment::SingleRun:
        return single_run(sim);
    }
    throw InvalidArgument("unhandled experiment");
}

} // namespace ddmag
