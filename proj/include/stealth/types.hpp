// SPDX-License-Identifier: Apache-2.0
//
// Shared scalar/vector aliases and angle helpers.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace stealth {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Azimuth/elevation pair in radians.
struct AnglePair {
    double azimuth = 0.0;
    double elevation = 0.0;
};

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace stealth
