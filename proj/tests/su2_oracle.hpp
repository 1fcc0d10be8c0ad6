#pragma once

// Independent reference for rotation sequences: evolve a spin-1/2 spinor with
// 2x2 unitaries exp(-i angle sigma_axis / 2) and read the Bloch vector back
// off the density matrix. Shares nothing with the Bloch-vector engine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ddmag/polarization.hpp"

namespace su2 {

using cd = std::complex<double>;

inline Eigen::Matrix2cd pauli(ddmag::Axis axis) {
    Eigen::Matrix2cd m;
    switch (axis) {
    case ddmag::Axis::X:
        m << 0, 1, 1, 0;
        break;
    case ddmag::Axis::Y:
        m << 0, cd(0, -1), cd(0, 1), 0;
        break;
    case ddmag::Axis::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

inline Eigen::Matrix2cd unitary(const ddmag::AxisRotation& rot) {
    return std::cos(rot.angle / 2) * Eigen::Matrix2cd::Identity() -
           cd(0, 1) * std::sin(rot.angle / 2) * pauli(rot.axis);
}

// Spinor with Bloch vector (sin t cos p, sin t sin p, cos t).
inline Eigen::Vector2cd spinor_from_bloch(const Eigen::Vector3d& r) {
    const double theta = std::acos(std::clamp(r.z(), -1.0, 1.0));
    const double phi = std::atan2(r.y(), r.x());
    return {std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2)};
}

inline Eigen::Vector3d bloch_from_spinor(const Eigen::Vector2cd& psi) {
    const Eigen::Matrix2cd rho = psi * psi.adjoint();
    return {(rho * pauli(ddmag::Axis::X)).trace().real(), (rho * pauli(ddmag::Axis::Y)).trace().real(),
            (rho * pauli(ddmag::Axis::Z)).trace().real()};
}

inline Eigen::Vector3d evolve(const Eigen::Vector3d& start, const std::vector<ddmag::AxisRotation>& sequence) {
    Eigen::Vector2cd psi = spinor_from_bloch(start);
    for (const auto& rot : sequence) {
        psi = unitary(rot) * psi;
    }
    return bloch_from_spinor(psi);
}

} // namespace su2
