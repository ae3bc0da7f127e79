// SPDX-License-Identifier: Apache-2.0
//
// Radar-side quantities: echo SNR in full-matrix and factored forms, the
// Marcum-Q detection probability, and synthetic received blocks.

#pragma once

#include <utility>
#include <vector>

#include "stealth/channel.hpp"
#include "stealth/rng.hpp"
#include "stealth/steering.hpp"
#include "stealth/surface.hpp"
#include "stealth/types.hpp"

namespace stealth {

struct RadarConfig {
    RadarArrayShape shape;
    double noise_variance = 1e-13;  // default puts the unprotected echo near 18 dB
    double false_alarm = 1e-4;
    int samples_per_block = 64;  // L, must exceed the antenna count

    void validate() const;
};

// M x M target echo: G_ri^T diag(theta) G_ri + G_rew^T diag(gamma) G_rew.
CMat echo_matrix(const LosChannel& radar_to_irs, const LosChannel& radar_to_ewam,
                 const CVec& theta, const CVec& gamma);

// ||echo||_F^2 / sigma^2 from the full channel matrices.
double snr_full(const LosChannel& radar_to_irs, const LosChannel& radar_to_ewam,
                const CVec& theta, const CVec& gamma, double noise_variance);

// ||alpha^2 a_R a_R^T||_F^2 = |alpha|^4 ||a_R||^4, the scenario constant.
double radar_norm(Complex path_gain, const CVec& radar_response);

// |d^H theta + c|^2 * radar_norm / sigma^2, the factored form of the SNR.
double snr_factored(const EchoCoefficients& coeffs, const CVec& theta, double radar_norm_value,
                    double noise_variance);

// First-order Marcum Q function, series evaluation with a bounded tail.
double marcum_q1(double a, double b);

// Q1(sqrt(2 snr), sqrt(-2 ln pfa))
double detection_probability(double snr, double false_alarm);

struct ReceivedBlock {
    CMat samples;  // M x L
    bool target_present = false;
};

// Under H1: Y = echo * S + Z with S a random waveform with orthonormal rows
// (S S^H = I_M exactly); under H0: Y = Z. Noise is i.i.d. CN(0, sigma^2).
ReceivedBlock synthesize_block(const CMat& echo, const RadarConfig& radar, bool target_present,
                               SeedStream& rng);

struct DetectionCurve {
    std::vector<std::pair<double, double>> points;  // (snr, p_d) at fixed P_fa
};

DetectionCurve detection_curve(const std::vector<double>& snr_grid, double false_alarm);

}  // namespace stealth
