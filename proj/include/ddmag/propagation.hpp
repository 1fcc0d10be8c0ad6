#pragma once

#include <cstdint>
#include <vector>

#include "ddmag/field.hpp"
#include "ddmag/noise.hpp"
#include "ddmag/polarization.hpp"

namespace ddmag {

struct FiberSpec {
    double length = 500.0; // m
    OpticsSpec optics;
    double placement_error_fraction = 0.0; // sigma_dy / y
    bool dd_enabled = true;
    double integration_step = 0.002; // m, must not exceed y / 20
};

void validate(const FiberSpec& fiber);

/// min(y, L_c) / 50: resolves both the field half-cycle and noise segments.
double default_integration_step(const OpticsSpec& optics, const NoiseSpec& noise);

/// Number of interior waveplates k * y < L, k >= 1. A waveplate that would sit
/// on the fiber end is not placed.
std::size_t nominal_waveplate_count(const FiberSpec& fiber);

struct WaveplateLattice {
    std::vector<double> positions; // strictly increasing, inside (0, L)
};

/// Waveplate k sits at k * y + e_k with e_k ~ N(0, (fraction * y)^2). Positions
/// are sorted; any outside the fiber are pulled in to one integration step
/// from the end. Empty when DD is disabled.
WaveplateLattice build_lattice(const FiberSpec& fiber, std::uint64_t seed);

struct TrajectoryPoint {
    double position = 0.0;        // m
    double toggled_azimuth = 0.0; // rad
};

struct RealizationResult {
    PolarizationState final_state;
    /// Signal rotation with the sign flipped at every pulse; excludes noise.
    double toggled_azimuth = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    std::size_t pulses = 0;
};

/// Carry one photon from position 0 (time 0, state (1, 0, 0)) to the end of
/// the fiber.
///
/// Between consecutive events (waveplates, noise segment boundaries and, when
/// recording, multiples of the integration step) the medium is homogeneous:
/// the photon picks up a z-rotation equal to V times the exact integral of the
/// field over the interval plus the covered fraction of the segment phase.
/// Coaxial z-rotations are summed and applied in one step before each pulse.
///
/// Throws CoverageError if the profile is shorter than the fiber.
RealizationResult propagate(const FiberSpec& fiber, const FieldSpec& field, const PhaseProfile& profile,
                            const WaveplateLattice& lattice, bool record_trajectory = false);

struct EnsembleResult {
    PolarizationEnsemble ensemble;
    double mean_toggled_azimuth = 0.0;
    double toggled_azimuth_stderr = 0.0;
    /// Noiseless run with an error-free lattice.
    PolarizationState desired_state;
    double desired_toggled_azimuth = 0.0;
    double fidelity = 0.0;
    double fidelity_stderr = 0.0;
};

/// Monte Carlo over `realizations` noise profiles and lattice draws. The
/// per-realization seeds come from derive_seed(master_seed, stream, index),
/// and reductions run in index order, so the result is bit-identical for any
/// thread count.
EnsembleResult run_ensemble(const FiberSpec& fiber, const FieldSpec& field, const NoiseSpec& noise,
                            std::uint64_t realizations, std::uint64_t master_seed, unsigned threads = 0);

} // namespace ddmag
