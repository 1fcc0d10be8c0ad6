#pragma once

namespace ddmag {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

/// AC field B(t) = amplitude * sin((1 + detuning_fraction) * w0 * t + phase_offset),
/// uniform along the fiber.
struct FieldSpec {
    double amplitude = 10e-6;       // T
    double detuning_fraction = 0.0; // (w - w0) / w0
    double phase_offset = 0.0;      // rad at photon entry
};

/// Fiber optics. The waveplate separation together with the refractive index
/// fixes the field frequency whose nodes line up with the waveplates.
struct OpticsSpec {
    double verdet = -32.0;             // rad / (T m)
    double refractive_index = 1.45;
    double waveplate_separation = 0.1; // m
};

void validate(const FieldSpec& field);
void validate(const OpticsSpec& optics);

/// w0 = 2 pi c / (2 y n), rad/s.
double characteristic_frequency(const OpticsSpec& optics);

/// Angular frequency actually driving the field, (1 + detuning) * w0.
double field_angular_frequency(const FieldSpec& field, const OpticsSpec& optics);

double field_value(const FieldSpec& field, const OpticsSpec& optics, double t);

/// Exact integral of field_value over [t0, t1], in T s.
double field_time_integral(const FieldSpec& field, const OpticsSpec& optics, double t0, double t1);

/// Uniform-field Faraday angle V * B * length.
double faraday_rotation_angle(double verdet, double field, double length);

} // namespace ddmag
