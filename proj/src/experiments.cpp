#include "ddmag/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

#include "ddmag/errors.hpp"
#include "ddmag/metrics.hpp"

#ifndef DDMAG_REVISION
#define DDMAG_REVISION "unknown"
#endif

namespace ddmag {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

SweepResult make_result(const std::string& name, std::vector<Column> columns, const SimulationConfig& base) {
    SweepResult result(name, std::move(columns));
    result.set_metadata("run.experiment", name);
    for (auto& [key, value] : describe(base)) {
        result.set_metadata(key, std::move(value));
    }
    result.set_metadata("revision", DDMAG_REVISION);
    result.set_metadata("timestamp", utc_timestamp());
    return result;
}

SimulationConfig with_separation(const SimulationConfig& base, double separation) {
    SimulationConfig config = base;
    config.fiber.optics.waveplate_separation = separation;
    return config;
}

PhaseProfile quiet_profile(const SimulationConfig& config, double length) {
    NoiseSpec quiet = config.noise;
    quiet.total_phase_std = 0.0;
    return sample_profile(quiet, length);
}

} // namespace

FiberSpec SimulationConfig::resolved_fiber() const {
    FiberSpec out = fiber;
    if (auto_integration_step) {
        out.integration_step = default_integration_step(fiber.optics, noise);
    }
    return out;
}

void validate(const SimulationConfig& config) {
    validate(config.resolved_fiber());
    validate(config.field);
    validate(config.noise);
    if (config.realizations == 0) {
        throw InvalidArgument("realizations must be at least 1");
    }
}

SweepResult::SweepResult(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void SweepResult::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
        throw InvalidArgument("row has " + std::to_string(row.size()) + " values for " +
                              std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(row));
}

void SweepResult::set_metadata(const std::string& key, std::string value) {
    for (auto& entry : metadata_) {
        if (entry.first == key) {
            entry.second = std::move(value);
            return;
        }
    }
    metadata_.emplace_back(key, std::move(value));
}

std::optional<std::string> SweepResult::metadata_value(const std::string& key) const {
    for (const auto& entry : metadata_) {
        if (entry.first == key) {
            return entry.second;
        }
    }
    return std::nullopt;
}

std::size_t SweepResult::column_index(const std::string& label) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].label == label) {
            return i;
        }
    }
    throw InvalidArgument("no column named '" + label + "'");
}

std::vector<double> SweepResult::column(const std::string& label) const {
    const std::size_t index = column_index(label);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
        out.push_back(row[index]);
    }
    return out;
}

std::string format_number(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

std::string format_list(std::span<const double> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += format_number(values[i]);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> describe(const SimulationConfig& config) {
    const FiberSpec& fiber = config.fiber;
    return {
        {"fiber.length", format_number(fiber.length)},
        {"fiber.placement_error_fraction", format_number(fiber.placement_error_fraction)},
        {"fiber.dd_enabled", fiber.dd_enabled ? "true" : "false"},
        {"fiber.integration_step", config.auto_integration_step ? "auto" : format_number(fiber.integration_step)},
        {"optics.verdet", format_number(fiber.optics.verdet)},
        {"optics.refractive_index", format_number(fiber.optics.refractive_index)},
        {"optics.waveplate_separation", format_number(fiber.optics.waveplate_separation)},
        {"field.amplitude", format_number(config.field.amplitude)},
        {"field.detuning_fraction", format_number(config.field.detuning_fraction)},
        {"field.phase_offset", format_number(config.field.phase_offset)},
        {"noise.coherence_length", format_number(config.noise.coherence_length)},
        {"noise.total_phase_std", format_number(config.noise.total_phase_std)},
        {"noise.wavelength", format_number(config.noise.wavelength)},
        {"realizations", std::to_string(config.realizations)},
        {"master_seed", std::to_string(config.master_seed)},
    };
}

std::vector<double> default_separations() {
    std::vector<double> out = linspace(std::log(0.02), std::log(3.0), 25);
    for (double& v : out) {
        v = std::exp(v);
    }
    out.front() = 0.02;
    out.back() = 3.0;
    return out;
}

std::vector<double> default_placement_fractions() { return {0.0, 0.04, 0.08, 0.12}; }

std::vector<double> default_detunings() {
    constexpr int kPerSide = 250;
    std::vector<double> out;
    out.reserve(2 * kPerSide + 1);
    for (int i = -kPerSide; i <= kPerSide; ++i) {
        out.push_back(0.05 * static_cast<double>(i) / kPerSide);
    }
    return out;
}

std::vector<double> default_lengths() { return linspace(50.0, 500.0, 10); }

std::vector<double> default_heatmap_detunings() { return linspace(-1e-3, 1e-3, 81); }

SweepResult sweep_fidelity_vs_separation(const SimulationConfig& base, std::span<const double> separations,
                                         std::span<const double> placement_fractions) {
    if (separations.empty() || placement_fractions.empty()) {
        throw InvalidArgument("fidelity sweep needs separations and placement fractions");
    }
    validate(base);
    SweepResult result = make_result("fidelity-vs-separation",
                                     {{"separation", "m"},
                                      {"placement_fraction", "1"},
                                      {"dd_enabled", "bool"},
                                      {"fidelity", "1"},
                                      {"fidelity_stderr", "1"}},
                                     base);
    result.set_metadata("sweep.separations", format_list(separations));
    result.set_metadata("sweep.placement_fractions", format_list(placement_fractions));

    for (double separation : separations) {
        SimulationConfig point = with_separation(base, separation);
        point.fiber.dd_enabled = false;
        point.fiber.placement_error_fraction = 0.0;
        const EnsembleResult off = run_ensemble(point.resolved_fiber(), point.field, point.noise,
                                                point.realizations, point.master_seed, point.threads);
        result.add_row({separation, 0.0, 0.0, off.fidelity, off.fidelity_stderr});

        point.fiber.dd_enabled = true;
        for (double fraction : placement_fractions) {
            point.fiber.placement_error_fraction = fraction;
            const EnsembleResult on = run_ensemble(point.resolved_fiber(), point.field, point.noise,
                                                   point.realizations, point.master_seed, point.threads);
            result.add_row({separation, fraction, 1.0, on.fidelity, on.fidelity_stderr});
        }
    }
    return result;
}

SweepResult sweep_signal_vs_detuning(const SimulationConfig& base, std::span<const double> detunings,
                                     int cycles) {
    if (cycles < 1) {
        throw InvalidArgument("cycle count must be at least 1");
    }
    if (detunings.empty()) {
        throw InvalidArgument("detuning sweep needs at least one detuning");
    }
    SimulationConfig config = base;
    config.fiber.length = 2.0 * cycles * config.fiber.optics.waveplate_separation;
    config.fiber.dd_enabled = true;
    config.fiber.placement_error_fraction = 0.0;
    config.noise.total_phase_std = 0.0;
    validate(config);

    SweepResult result = make_result("signal-vs-detuning",
                                     {{"detuning_fraction", "1"}, {"ratio", "1"}, {"envelope", "1"}}, config);
    result.set_metadata("sweep.cycles", std::to_string(cycles));
    result.set_metadata("sweep.detuning_fractions", format_list(detunings));

    const FiberSpec fiber = config.resolved_fiber();
    const PhaseProfile profile = quiet_profile(config, fiber.length);
    const WaveplateLattice lattice = build_lattice(fiber, 0);
    auto rotation_at = [&](double detuning) {
        FieldSpec field = config.field;
        field.detuning_fraction = detuning;
        return propagate(fiber, field, profile, lattice).toggled_azimuth;
    };

    const double theta_max = rotation_at(0.0);
    for (double detuning : detunings) {
        const double theta = detuning == 0.0 ? theta_max : rotation_at(detuning);
        const double envelope = detuning == 0.0 ? 1.0 : detuning_envelope(detuning, cycles);
        result.add_row({detuning, signal_strength(theta, theta_max).ratio, envelope});
    }
    return result;
}

SweepResult sweep_rotation_vs_length(const SimulationConfig& base, std::span<const double> lengths,
                                     std::span<const double> placement_fractions) {
    if (lengths.empty() || placement_fractions.empty()) {
        throw InvalidArgument("length sweep needs lengths and placement fractions");
    }
    validate(base);
    SweepResult result = make_result("rotation-vs-length",
                                     {{"length", "m"},
                                      {"placement_fraction", "1"},
                                      {"mean_toggled_azimuth", "rad"},
                                      {"stderr", "rad"},
                                      {"ideal_toggled_azimuth", "rad"}},
                                     base);
    result.set_metadata("sweep.lengths", format_list(lengths));
    result.set_metadata("sweep.placement_fractions", format_list(placement_fractions));

    for (double length : lengths) {
        for (double fraction : placement_fractions) {
            if (length == 0.0) {
                result.add_row({0.0, fraction, 0.0, 0.0, 0.0});
                continue;
            }
            SimulationConfig point = base;
            point.fiber.length = length;
            point.fiber.dd_enabled = true;
            point.fiber.placement_error_fraction = fraction;
            const EnsembleResult r = run_ensemble(point.resolved_fiber(), point.field, point.noise,
                                                  point.realizations, point.master_seed, point.threads);
            result.add_row({length, fraction, r.mean_toggled_azimuth, r.toggled_azimuth_stderr,
                            r.desired_toggled_azimuth});
        }
    }
    return result;
}

SweepResult sweep_heatmap(const SimulationConfig& base, std::span<const double> placement_fractions,
                          std::span<const double> detunings) {
    if (placement_fractions.empty() || detunings.empty()) {
        throw InvalidArgument("heatmap needs placement fractions and detunings");
    }
    validate(base);
    SweepResult result = make_result("heatmap",
                                     {{"placement_fraction", "1"},
                                      {"detuning_fraction", "1"},
                                      {"normalized_rotation", "1"}},
                                     base);
    result.set_metadata("sweep.placement_fractions", format_list(placement_fractions));
    result.set_metadata("sweep.detuning_fractions", format_list(detunings));

    auto mean_rotation = [&](double fraction, double detuning) {
        SimulationConfig point = base;
        point.fiber.dd_enabled = true;
        point.fiber.placement_error_fraction = fraction;
        point.field.detuning_fraction = detuning;
        return run_ensemble(point.resolved_fiber(), point.field, point.noise, point.realizations,
                            point.master_seed, point.threads)
            .mean_toggled_azimuth;
    };

    const double reference = mean_rotation(0.0, 0.0);
    if (reference == 0.0) {
        throw DegenerateError("heatmap reference rotation is zero");
    }
    for (double fraction : placement_fractions) {
        for (double detuning : detunings) {
            const double value =
                fraction == 0.0 && detuning == 0.0 ? reference : mean_rotation(fraction, detuning);
            result.add_row({fraction, detuning, value / reference});
        }
    }
    return result;
}

SweepResult single_run(const SimulationConfig& base) {
    validate(base);
    SweepResult result = make_result("single-run",
                                     {{"fidelity", "1"},
                                      {"fidelity_stderr", "1"},
                                      {"mean_toggled_azimuth", "rad"},
                                      {"toggled_azimuth_stderr", "rad"},
                                      {"desired_toggled_azimuth", "rad"},
                                      {"mean_bloch_x", "1"},
                                      {"mean_bloch_y", "1"},
                                      {"mean_bloch_z", "1"}},
                                     base);
    const EnsembleResult r = run_ensemble(base.resolved_fiber(), base.field, base.noise, base.realizations,
                                          base.master_seed, base.threads);
    const Eigen::Vector3d mean = r.ensemble.mean();
    result.add_row({r.fidelity, r.fidelity_stderr, r.mean_toggled_azimuth, r.toggled_azimuth_stderr,
                    r.desired_toggled_azimuth, mean.x(), mean.y(), mean.z()});
    return result;
}

} // namespace ddmag
