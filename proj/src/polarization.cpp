#include "ddmag/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ddmag/errors.hpp"

namespace ddmag {

PolarizationState PolarizationState::from_bloch(const Eigen::Vector3d& r) {
    if (!r.allFinite()) {
        throw InvalidArgument("Bloch vector has non-finite components");
    }
    const double norm = r.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidArgument("Bloch vector norm " + std::to_string(norm) + " is not 1");
    }
    return PolarizationState(r, Unchecked{});
}

PolarizationState PolarizationState::from_bloch(double x, double y, double z) {
    return from_bloch(Eigen::Vector3d(x, y, z));
}

PolarizationState PolarizationState::renormalized() const {
    return PolarizationState(bloch_ / bloch_.norm(), Unchecked{});
}

PolarizationState apply_rotation(const PolarizationState& state, const AxisRotation& rot) {
    if (!std::isfinite(rot.angle)) {
        throw InvalidArgument("rotation angle must be finite");
    }
    const double c = std::cos(rot.angle);
    const double s = std::sin(rot.angle);
    const Eigen::Vector3d& r = state.bloch_;
    Eigen::Vector3d out;
    switch (rot.axis) {
    case Axis::X:
        out << r.x(), c * r.y() - s * r.z(), s * r.y() + c * r.z();
        break;
    case Axis::Y:
        out << c * r.x() + s * r.z(), r.y(), -s * r.x() + c * r.z();
        break;
    case Axis::Z:
        out << c * r.x() - s * r.y(), s * r.x() + c * r.y(), r.z();
        break;
    }
    return PolarizationState(out, PolarizationState::Unchecked{});
}

PolarizationState apply_pi_pulse_x(const PolarizationState& state) {
    const Eigen::Vector3d& r = state.bloch_;
    return PolarizationState(Eigen::Vector3d(r.x(), -r.y(), -r.z()), PolarizationState::Unchecked{});
}

double azimuth(const PolarizationState& state) {
    const double x = state.x();
    const double y = state.y();
    if (x * x + y * y <= 1e-18) {
        throw DegenerateError("azimuth undefined for a state at the pole");
    }
    const double phi = std::atan2(y, x);
    // atan2 yields -pi for (negative x, -0.0); fold onto the closed end.
    return phi == -std::numbers::pi ? std::numbers::pi : phi;
}

Eigen::Vector3d PolarizationEnsemble::mean() const {
    if (count_ == 0) {
        throw InvalidArgument("mean of an empty ensemble");
    }
    return sum_ / static_cast<double>(count_);
}

PolarizationEnsemble accumulate(const PolarizationEnsemble& ensemble, const PolarizationState& state) {
    PolarizationEnsemble out = ensemble;
    out.sum_ += state.bloch();
    ++out.count_;
    return out;
}

PolarizationEnsemble merge(const PolarizationEnsemble& a, const PolarizationEnsemble& b) {
    PolarizationEnsemble out = a;
    out.sum_ += b.sum_;
    out.count_ += b.count_;
    return out;
}

double fidelity(const PolarizationEnsemble& ensemble, const PolarizationState& desired) {
    const double overlap = 0.5 * (1.0 + ensemble.mean().dot(desired.bloch()));
    return std::clamp(overlap, 0.0, 1.0);
}

double fidelity(const PolarizationState& actual, const PolarizationState& desired) {
    return std::clamp(0.5 * (1.0 + actual.bloch().dot(desired.bloch())), 0.0, 1.0);
}

} // namespace ddmag
