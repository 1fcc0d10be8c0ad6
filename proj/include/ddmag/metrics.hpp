#pragma once

#include <span>

namespace ddmag {

/// Rotation angle relative to the on-resonance rotation.
struct SignalStrength {
    double theta = 0.0;     // rad
    double theta_max = 0.0; // rad
    double ratio = 0.0;
};

/// Throws DegenerateError when theta_max is zero.
SignalStrength signal_strength(double theta, double theta_max);

/// 1 / (2 pi m |detuning|), capped at 1. Throws DegenerateError at zero
/// detuning and InvalidArgument for m < 1.
double detuning_envelope(double detuning_fraction, int cycles);

/// Number of sign changes in `values`; exact zeros are skipped.
int count_sign_changes(std::span<const double> values);

/// Number of roots of a sampled curve: sign changes between samples plus
/// runs of samples with |value| <= tolerance, each run counted once and a
/// sign change across a run not counted again.
int count_zero_crossings(std::span<const double> values, double tolerance);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Full width of the region around the peak of |values| where |values| stays
/// at or above half the peak, with linear interpolation between samples.
/// `abscissa` must be strictly increasing. Throws InvalidArgument if the
/// curve never drops below half maximum on one side.
double half_max_width(std::span<const double> abscissa, std::span<const double> values);

} // namespace ddmag
