#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddmag/propagation.hpp"

namespace ddmag {

/// Every physical and Monte Carlo parameter of a run.
struct SimulationConfig {
    FiberSpec fiber;
    FieldSpec field;
    NoiseSpec noise;
    /// When set, fiber.integration_step is replaced by
    /// default_integration_step() for whatever separation a sweep point uses.
    bool auto_integration_step = true;
    std::uint64_t realizations = 1000;
    std::uint64_t master_seed = 1;
    unsigned threads = 0; // 0 = one per hardware thread

    /// fiber with the integration step resolved.
    FiberSpec resolved_fiber() const;
};

void validate(const SimulationConfig& config);

struct Column {
    std::string label;
    std::string unit;
};

/// Tabular output of one experiment, destined for CSV.
class SweepResult {
public:
    SweepResult(std::string name, std::vector<Column> columns);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return metadata_; }

    /// Throws InvalidArgument if the row width differs from the column count.
    void add_row(std::vector<double> row);

    /// Replaces an existing key in place, otherwise appends.
    void set_metadata(const std::string& key, std::string value);
    std::optional<std::string> metadata_value(const std::string& key) const;

    /// Throws InvalidArgument for an unknown label.
    std::size_t column_index(const std::string& label) const;
    std::vector<double> column(const std::string& label) const;

private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

/// `key = value` pairs for every field of `config`, using the same dotted keys
/// the config parser accepts.
std::vector<std::pair<std::string, std::string>> describe(const SimulationConfig& config);

/// Shortest decimal form that round-trips (up to 17 significant digits).
std::string format_number(double value);
std::string format_list(std::span<const double> values);

// Default grids.
std::vector<double> default_separations();         // 25 log-spaced points in [0.02, 3] m
std::vector<double> default_placement_fractions(); // 0, 0.04, 0.08, 0.12
std::vector<double> default_detunings();           // 0 plus 500 points in [-0.05, 0.05]
std::vector<double> default_lengths();             // 10 points in [50, 500] m
std::vector<double> default_heatmap_detunings();   // 81 points in [-1e-3, 1e-3]
inline constexpr int kDefaultCycles = 600;

/// Ensemble fidelity vs waveplate separation. One no-DD row and one DD row
/// per placement fraction at every separation.
/// Columns: separation, placement_fraction, dd_enabled, fidelity, fidelity_stderr.
SweepResult sweep_fidelity_vs_separation(const SimulationConfig& base, std::span<const double> separations,
                                         std::span<const double> placement_fractions);

/// Noiseless signal strength vs detuning for a fiber that spans `cycles`
/// field periods (length 2 * cycles * y). Columns: detuning_fraction, ratio,
/// envelope; the envelope is reported as 1 on resonance.
SweepResult sweep_signal_vs_detuning(const SimulationConfig& base, std::span<const double> detunings,
                                     int cycles);

/// Mean toggled azimuth vs fiber length. A zero length yields a zero row.
/// Columns: length, placement_fraction, mean_toggled_azimuth, stderr,
/// ideal_toggled_azimuth (noiseless, error-free lattice).
SweepResult sweep_rotation_vs_length(const SimulationConfig& base, std::span<const double> lengths,
                                     std::span<const double> placement_fractions);

/// Mean toggled azimuth over (placement error, detuning), normalized to the
/// error-free on-resonance value. Columns: placement_fraction,
/// detuning_fraction, normalized_rotation.
SweepResult sweep_heatmap(const SimulationConfig& base, std::span<const double> placement_fractions,
                          std::span<const double> detunings);

/// One ensemble at the base configuration.
SweepResult single_run(const SimulationConfig& base);

} // namespace ddmag
