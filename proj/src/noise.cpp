#include "ddmag/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ddmag/errors.hpp"

namespace ddmag {

void validate(const NoiseSpec& spec) {
    if (!(spec.coherence_length > 0.0) || !std::isfinite(spec.coherence_length)) {
        throw InvalidArgument("noise coherence_length must be positive");
    }
    if (!(spec.total_phase_std >= 0.0) || !std::isfinite(spec.total_phase_std)) {
        throw InvalidArgument("noise total_phase_std must be non-negative");
    }
    if (!(spec.wavelength > 0.0) || !std::isfinite(spec.wavelength)) {
        throw InvalidArgument("noise wavelength must be positive");
    }
}

PhaseProfile sample_profile(const NoiseSpec& spec, double fiber_length) {
    validate(spec);
    if (!(fiber_length > 0.0) || !std::isfinite(fiber_length)) {
        throw InvalidArgument("fiber length must be positive");
    }
    const auto segments = static_cast<std::size_t>(std::ceil(fiber_length / spec.coherence_length));

    PhaseProfile profile;
    profile.segment_length = spec.coherence_length;
    profile.phases.assign(segments, 0.0);
    if (spec.total_phase_std == 0.0) {
        return profile;
    }

    const double segment_std = spec.total_phase_std / std::sqrt(static_cast<double>(segments));
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, segment_std);
    for (double& phase : profile.phases) {
        phase = gauss(rng);
    }
    return profile;
}

std::size_t segment_index(const PhaseProfile& profile, double position) {
    if (!(position >= 0.0) || !(position < profile.covered_length())) {
        throw std::out_of_range("position " + std::to_string(position) + " m outside noise profile");
    }
    const auto index = static_cast<std::size_t>(position / profile.segment_length);
    // position/segment_length can round up to size() just below the end.
    return std::min(index, profile.phases.size() - 1);
}

double phase_at(const PhaseProfile& profile, double position) {
    return profile.phases[segment_index(profile, position)];
}

} // namespace ddmag
