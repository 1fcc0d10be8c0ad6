#include "ddmag/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ddmag/errors.hpp"
#include "ddmag/parallel.hpp"
#include "ddmag/seeding.hpp"

namespace ddmag {

namespace {

constexpr std::size_t kRenormalizeEvery = 1000;

// Sample mean and standard error of the mean, accumulated in index order.
struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& values) {
    MeanStderr out;
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    out.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

void check_lattice(const WaveplateLattice& lattice, double length) {
    double previous = 0.0;
    for (double p : lattice.positions) {
        if (!(p > previous) || !(p < length)) {
            throw InvalidArgument("waveplate positions must be strictly increasing inside (0, L)");
        }
        previous = p;
    }
}

} // namespace

void validate(const FiberSpec& fiber) {
    validate(fiber.optics);
    if (!(fiber.length > 0.0) || !std::isfinite(fiber.length)) {
        throw InvalidArgument("fiber length must be positive");
    }
    if (!(fiber.placement_error_fraction >= 0.0 && fiber.placement_error_fraction < 0.5)) {
        throw InvalidArgument("placement_error_fraction must lie in [0, 0.5)");
    }
    const double max_step = fiber.optics.waveplate_separation / 20.0;
    if (!(fiber.integration_step > 0.0) || fiber.integration_step > max_step * (1.0 + 1e-12)) {
        throw InvalidArgument("integration_step must lie in (0, y/20]");
    }
}

double default_integration_step(const OpticsSpec& optics, const NoiseSpec& noise) {
    return std::min(optics.waveplate_separation, noise.coherence_length) / 50.0;
}

std::size_t nominal_waveplate_count(const FiberSpec& fiber) {
    const double y = fiber.optics.waveplate_separation;
    // A plate within rounding distance of the far end counts as on the end.
    const double limit = fiber.length - 1e-9 * y;
    auto count = static_cast<std::size_t>(std::max(0.0, std::floor(fiber.length / y)));
    while (count > 0 && static_cast<double>(count) * y >= limit) {
        --count;
    }
    while (static_cast<double>(count + 1) * y < limit) {
        ++count;
    }
    return count;
}

WaveplateLattice build_lattice(const FiberSpec& fiber, std::uint64_t seed) {
    validate(fiber);
    WaveplateLattice lattice;
    if (!fiber.dd_enabled) {
        return lattice;
    }
    const double y = fiber.optics.waveplate_separation;
    const std::size_t count = nominal_waveplate_count(fiber);
    lattice.positions.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        lattice.positions[k] = static_cast<double>(k + 1) * y;
    }
    if (fiber.placement_error_fraction == 0.0 || count == 0) {
        return lattice;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, fiber.placement_error_fraction * y);
    for (double& p : lattice.positions) {
        p += gauss(rng);
    }
    std::sort(lattice.positions.begin(), lattice.positions.end());

    const double lo = fiber.integration_step;
    const double hi = fiber.length - fiber.integration_step;
    double previous = 0.0;
    for (double& p : lattice.positions) {
        if (p <= 0.0) {
            p = lo;
        } else if (p >= fiber.length) {
            p = hi;
        }
        if (p <= previous) {
            p = std::nextafter(previous, std::numeric_limits<double>::infinity());
        }
        previous = p;
    }
    return lattice;
}

RealizationResult propagate(const FiberSpec& fiber, const FieldSpec& field, const PhaseProfile& profile,
                            const WaveplateLattice& lattice, bool record_trajectory) {
    validate(fiber);
    validate(field);
    if (!(profile.segment_length > 0.0) || profile.phases.empty() ||
        profile.covered_length() < fiber.length) {
        throw CoverageError("noise profile covers " + std::to_string(profile.covered_length()) +
                            " m of a " + std::to_string(fiber.length) + " m fiber");
    }
    check_lattice(lattice, fiber.length);

    const double length = fiber.length;
    const double seconds_per_metre = fiber.optics.refractive_index / kSpeedOfLight;
    // V * B dl with dl = (c/n) dt.
    const double signal_scale = fiber.optics.verdet / seconds_per_metre;
    const std::size_t segments = profile.phases.size();
    const std::vector<double>& plates = lattice.positions;

    RealizationResult result;
    PolarizationState state;
    double pending_z = 0.0;
    double toggle_sign = 1.0;
    std::size_t applications = 0;

    auto count_application = [&] {
        if (++applications % kRenormalizeEvery == 0) {
            state = state.renormalized();
        }
    };
    auto flush_z = [&] {
        if (pending_z != 0.0) {
            state = apply_rotation(state, {Axis::Z, pending_z});
            pending_z = 0.0;
            count_application();
        }
    };

    if (record_trajectory) {
        result.trajectory.push_back({0.0, 0.0});
    }

    double x = 0.0;
    std::size_t segment = 0;
    std::size_t plate = 0;
    std::size_t grid = 1;
    while (x < length) {
        double next = length;
        if (plate < plates.size()) {
            next = std::min(next, plates[plate]);
        }
        if (segment + 1 < segments) {
            next = std::min(next, profile.segment_length * static_cast<double>(segment + 1));
        }
        const double grid_point = fiber.integration_step * static_cast<double>(grid);
        if (record_trajectory && grid_point < length) {
            next = std::min(next, grid_point);
        }

        if (next > x) {
            const double signal =
                signal_scale * field_time_integral(field, fiber.optics, x * seconds_per_metre,
                                                   next * seconds_per_metre);
            pending_z += signal + profile.phases[segment] * (next - x) / profile.segment_length;
            result.toggled_azimuth += toggle_sign * signal;
            x = next;
        }

        while (segment + 1 < segments && profile.segment_length * static_cast<double>(segment + 1) <= x) {
            ++segment;
        }
        if (plate < plates.size() && plates[plate] <= x) {
            flush_z();
            state = apply_pi_pulse_x(state);
            count_application();
            toggle_sign = -toggle_sign;
            ++plate;
            ++result.pulses;
        }
        if (record_trajectory && grid_point < length && grid_point <= x) {
            result.trajectory.push_back({x, result.toggled_azimuth});
            ++grid;
        }
    }
    flush_z();

    if (record_trajectory && result.trajectory.back().position < length) {
        result.trajectory.push_back({length, result.toggled_azimuth});
    }
    result.final_state = state.renormalized();
    return result;
}

EnsembleResult run_ensemble(const FiberSpec& fiber, const FieldSpec& field, const NoiseSpec& noise,
                            std::uint64_t realizations, std::uint64_t master_seed, unsigned threads) {
    validate(fiber);
    validate(field);
    validate(noise);
    if (realizations == 0) {
        throw InvalidArgument("realizations must be at least 1");
    }

    EnsembleResult out;
    {
        FiberSpec reference_fiber = fiber;
        reference_fiber.placement_error_fraction = 0.0;
        NoiseSpec quiet = noise;
        quiet.total_phase_std = 0.0;
        const RealizationResult reference =
            propagate(reference_fiber, field, sample_profile(quiet, fiber.length),
                      build_lattice(reference_fiber, 0));
        out.desired_state = reference.final_state;
        out.desired_toggled_azimuth = reference.toggled_azimuth;
    }

    const auto n = static_cast<std::size_t>(realizations);
    std::vector<Eigen::Vector3d> finals(n);
    std::vector<double> toggled(n);
    parallel_for(n, threads, [&](std::size_t i) {
        NoiseSpec realization_noise = noise;
        realization_noise.seed = derive_seed(master_seed, Stream::Noise, i);
        const PhaseProfile profile = sample_profile(realization_noise, fiber.length);
        const WaveplateLattice lattice = build_lattice(fiber, derive_seed(master_seed, Stream::Lattice, i));
        const RealizationResult r = propagate(fiber, field, profile, lattice);
        finals[i] = r.final_state.bloch();
        toggled[i] = r.toggled_azimuth;
    });

    std::vector<double> overlaps(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PolarizationState state = PolarizationState::from_bloch(finals[i]);
        out.ensemble = accumulate(out.ensemble, state);
        overlaps[i] = fidelity(state, out.desired_state);
    }
    const MeanStderr f = mean_stderr(overlaps);
    const MeanStderr t = mean_stderr(toggled);
    out.fidelity = fidelity(out.ensemble, out.desired_state);
    out.fidelity_stderr = f.stderr_;
    out.mean_toggled_azimuth = t.mean;
    out.toggled_azimuth_stderr = t.stderr_;
    return out;
}

} // namespace ddmag
