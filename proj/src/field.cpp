#include "ddmag/field.hpp"

#include <cmath>
#include <numbers>

#include "ddmag/errors.hpp"

namespace ddmag {

void validate(const FieldSpec& field) {
    if (!(field.amplitude >= 0.0) || !std::isfinite(field.amplitude)) {
        throw InvalidArgument("field amplitude must be non-negative");
    }
    if (!(field.detuning_fraction > -1.0) || !std::isfinite(field.detuning_fraction)) {
        throw InvalidArgument("field detuning_fraction must exceed -1");
    }
    if (!std::isfinite(field.phase_offset)) {
        throw InvalidArgument("field phase_offset must be finite");
    }
}

void validate(const OpticsSpec& optics) {
    if (!std::isfinite(optics.verdet)) {
        throw InvalidArgument("optics verdet must be finite");
    }
    if (!(optics.refractive_index >= 1.0) || !std::isfinite(optics.refractive_index)) {
        throw InvalidArgument("optics refractive_index must be >= 1");
    }
    if (!(optics.waveplate_separation > 0.0) || !std::isfinite(optics.waveplate_separation)) {
        throw InvalidArgument("optics waveplate_separation must be positive");
    }
}

double characteristic_frequency(const OpticsSpec& optics) {
    return 2.0 * std::numbers::pi * kSpeedOfLight /
           (2.0 * optics.waveplate_separation * optics.refractive_index);
}

double field_angular_frequency(const FieldSpec& field, const OpticsSpec& optics) {
    return (1.0 + field.detuning_fraction) * characteristic_frequency(optics);
}

double field_value(const FieldSpec& field, const OpticsSpec& optics, double t) {
    return field.amplitude * std::sin(field_angular_frequency(field, optics) * t + field.phase_offset);
}

double field_time_integral(const FieldSpec& field, const OpticsSpec& optics, double t0, double t1) {
    const double omega = field_angular_frequency(field, optics);
    const double a = omega * t0 + field.phase_offset;
    const double b = omega * t1 + field.phase_offset;
    // cos(a) - cos(b) in product form stays accurate for short steps.
    return field.amplitude * 2.0 * std::sin(0.5 * (a + b)) * std::sin(0.5 * (b - a)) / omega;
}

double faraday_rotation_angle(double verdet, double field, double length) {
    return verdet * field * length;
}

} // namespace ddmag
