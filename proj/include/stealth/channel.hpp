// SPDX-License-Identifier: Apache-2.0
//
// Far-field LoS channels: complex path gains with Doppler, and rank-1
// outer-product channel matrices between the radar and the target surface.

#pragma once

#include "stealth/types.hpp"

namespace stealth {

// alpha = (sqrt(beta)/d) * exp(-j 2 pi (d/lambda + f T_c))
struct PathGain {
    double reference_gain = 1.0;       // beta, power gain at 1 m
    double distance = 1.0;             // m
    double wavelength = 0.1;           // m
    double doppler_hz = 0.0;
    double coherence_interval = 1e-3;  // s

    Complex value() const;
};

// f = v cos(el) cos(az) / lambda
double doppler_frequency(double speed, const AnglePair& angles, double wavelength);

// Radar at the origin, target surface at `distance` along the LoS. The same
// path gain applies to the IRS and absorber links since both surfaces are
// co-located on the target.
struct ScenarioGeometry {
    double reference_gain = 1.0;
    double distance = 5000.0;
    double speed = 300.0;
    double wavelength = 0.1;
    double coherence_interval = 1e-3;
    AnglePair radar_angles;    // AoA/AoD at the radar
    AnglePair surface_angles;  // AoA/AoD at the target surface

    PathGain path_gain() const;  // Doppler from the radar-side pair
};

// matrix = alpha * a_rx a_tx^T, rank 1 by construction. Reciprocity:
// the reverse link is the transpose with the same gain.
struct LosChannel {
    CMat matrix;
    Complex gain;
};

LosChannel los_channel(const PathGain& gain, const CVec& rx_response, const CVec& tx_response);

}  // namespace stealth
