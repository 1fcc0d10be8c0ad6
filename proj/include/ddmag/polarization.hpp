#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace ddmag {

enum class Axis { X, Y, Z };

struct AxisRotation {
    Axis axis = Axis::Z;
    double angle = 0.0; // radians, right-hand rule about +axis
};

/// Pure photon polarization state as a unit Bloch vector.
///
/// The equator holds linear polarizations; Faraday signal and birefringence
/// noise both act as rotations about z, and a half-waveplate acts as a
/// pi rotation about x.
class PolarizationState {
public:
    static constexpr double kNormTolerance = 1e-9;

    /// Launch state (1, 0, 0).
    PolarizationState() : bloch_(1.0, 0.0, 0.0) {}

    /// Throws InvalidArgument unless |r| = 1 within kNormTolerance.
    static PolarizationState from_bloch(double x, double y, double z);
    static PolarizationState from_bloch(const Eigen::Vector3d& r);

    const Eigen::Vector3d& bloch() const noexcept { return bloch_; }
    double x() const noexcept { return bloch_.x(); }
    double y() const noexcept { return bloch_.y(); }
    double z() const noexcept { return bloch_.z(); }

    /// Rescale to exactly unit length, removing accumulated rounding drift.
    PolarizationState renormalized() const;

private:
    struct Unchecked {};
    PolarizationState(const Eigen::Vector3d& r, Unchecked) : bloch_(r) {}

    friend PolarizationState apply_rotation(const PolarizationState&, const AxisRotation&);
    friend PolarizationState apply_pi_pulse_x(const PolarizationState&);

    Eigen::Vector3d bloch_;
};

/// Rotate `state` by `rot` (counterclockwise seen from the positive axis).
/// Throws InvalidArgument for a non-finite angle.
PolarizationState apply_rotation(const PolarizationState& state, const AxisRotation& rot);

/// Half-waveplate: (x, y, z) -> (x, -y, -z).
PolarizationState apply_pi_pulse_x(const PolarizationState& state);

/// Angle of the equatorial projection measured from +x, in (-pi, pi].
/// Throws DegenerateError at a pole.
double azimuth(const PolarizationState& state);

/// Running mean of Bloch vectors over Monte Carlo realizations.
///
/// Stored as (sum, count) so partial ensembles from different workers can be
/// merged. A default-constructed ensemble is empty (count 0); every query of
/// the mean requires count >= 1.
class PolarizationEnsemble {
public:
    PolarizationEnsemble() = default;

    std::uint64_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    const Eigen::Vector3d& sum() const noexcept { return sum_; }

    /// Throws InvalidArgument on an empty ensemble.
    Eigen::Vector3d mean() const;

    friend PolarizationEnsemble accumulate(const PolarizationEnsemble& ensemble,
                                           const PolarizationState& state);
    friend PolarizationEnsemble merge(const PolarizationEnsemble& a, const PolarizationEnsemble& b);

private:
    Eigen::Vector3d sum_ = Eigen::Vector3d::Zero();
    std::uint64_t count_ = 0;
};

PolarizationEnsemble accumulate(const PolarizationEnsemble& ensemble, const PolarizationState& state);
PolarizationEnsemble merge(const PolarizationEnsemble& a, const PolarizationEnsemble& b);

/// <psi_d| rho |psi_d> = (1 + r_avg . r_desired) / 2, clamped to [0, 1].
double fidelity(const PolarizationEnsemble& ensemble, const PolarizationState& desired);

/// Single-state overlap, the per-realization term of the ensemble fidelity.
double fidelity(const PolarizationState& actual, const PolarizationState& desired);

} // namespace ddmag
