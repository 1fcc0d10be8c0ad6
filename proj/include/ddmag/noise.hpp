#pragma once

#include <cstdint>
#include <vector>

namespace ddmag {

/// Birefringence noise parameters.
///
/// `total_phase_std` is the standard deviation of the phase accumulated over
/// the whole fiber; each coherence-length segment gets total/sqrt(N).
struct NoiseSpec {
    double coherence_length = 3.0;  // m
    double total_phase_std = 100.0; // rad
    double wavelength = 1064e-9;    // m, carried for provenance only
    std::uint64_t seed = 0;
};

void validate(const NoiseSpec& spec);

/// Piecewise-constant birefringence: phases[i] is the total z-rotation a
/// photon picks up crossing segment i in full.
struct PhaseProfile {
    double segment_length = 0.0;
    std::vector<double> phases;

    double covered_length() const noexcept {
        return segment_length * static_cast<double>(phases.size());
    }
};

/// ceil(fiber_length / coherence_length) i.i.d. zero-mean Gaussian segment
/// phases. Deterministic in spec.seed.
PhaseProfile sample_profile(const NoiseSpec& spec, double fiber_length);

/// Total phase of the segment containing `position`. Throws std::out_of_range
/// outside [0, covered_length).
double phase_at(const PhaseProfile& profile, double position);

/// Index of the segment containing `position`, same range rules as phase_at.
std::size_t segment_index(const PhaseProfile& profile, double position);

} // namespace ddmag
