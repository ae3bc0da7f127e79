// SPDX-License-Identifier: Apache-2.0
//
// Absorber/IRS reflection states and the reduction of the physical model to
// the echo coefficients (d, c): the objective then reads |d^H theta + c|^2.

#pragma once

#include <string>

#include "stealth/channel.hpp"
#include "stealth/rng.hpp"
#include "stealth/types.hpp"

namespace stealth {

// Per-element absorbing efficiency p in [0,1] and reflection phase psi; the
// residual reflection coefficient is gamma_n = sqrt(1 - p_n) e^{j psi_n}.
struct EwamProfile {
    RVec absorb;
    RVec phase;

    int size() const { return static_cast<int>(absorb.size()); }
    CVec coefficients() const;  // gamma
    void validate() const;

    static EwamProfile uniform(int n, double p, SeedStream& rng);  // psi ~ U[0, 2pi)
    // JSON array of {"p": .., "psi": ..} records.
    static EwamProfile from_json(const std::string& text);
    std::string to_json() const;
};

struct IrsState {
    CVec theta;  // |theta_n| <= 1
};

// Reduced problem data. d_n is the conjugated square of the n-th IRS
// steering entry (unit modulus), c aggregates the absorber echo.
struct EchoCoefficients {
    CVec d;
    Complex c{0.0, 0.0};

    // sum |d_n| - |c|; nonnegative means exact cancellation is feasible
    double cancellation_margin() const;
};

EchoCoefficients build_echo_coefficients(const CVec& irs_resp, const CVec& ewam_resp,
                                         const EwamProfile& ewam);

// G_out * diag(coeffs) * G_in: cascaded echo through one reflecting surface.
CMat apply_reflection(const LosChannel& inbound, const CVec& coeffs, const LosChannel& outbound);

// |d^H theta + c|^2
double echo_objective(const EchoCoefficients& coeffs, const CVec& theta);

}  // namespace stealth
