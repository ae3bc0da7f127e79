// SPDX-License-Identifier: Apache-2.0
//
// Steering vectors for symmetric ULAs, UPA responses built as Kronecker
// products of two steering vectors, and the split of the full surface
// response into IRS and absorber sub-responses.

#pragma once

#include "stealth/types.hpp"

namespace stealth {

// Planar array of n_x * n_z elements, split into a centered IRS block of
// n_irs elements and n_ewam absorber elements (n_ewam/2 on each side in the
// linearized element order, so n_ewam must be even).
struct SurfaceLayout {
    int n_x = 1;
    int n_z = 1;
    int n_irs = 0;
    int n_ewam = 0;
    double spacing = 0.05;     // meters
    double wavelength = 0.1;   // meters

    int total() const { return n_x * n_z; }
    void validate() const;  // throws ConfigError
};

struct RadarArrayShape {
    int m_x = 1;
    int m_z = 1;
    double spacing = 0.05;
    double wavelength = 0.1;

    int total() const { return m_x * m_z; }
    void validate() const;
};

// e(phi, n): entry k = exp(j (k - (n-1)/2) pi phi). All entries have unit
// modulus and the vector is conjugate-symmetric about its center.
CVec steering_vector(double phase_step, int n);

// Kronecker product e(2d/lambda cos(el) cos(az), n_x) (x) e(2d/lambda cos(el) sin(az), n_z).
CVec upa_response(const AnglePair& angles, int n_x, int n_z, double spacing, double wavelength);
CVec upa_response(const AnglePair& angles, const SurfaceLayout& layout);
CVec upa_response(const AnglePair& angles, const RadarArrayShape& shape);

// Zero-padded IRS and absorber parts of the surface response. Their
// elementwise sum reproduces the input exactly.
struct SplitResponse {
    CVec irs_padded;
    CVec ewam_padded;
};
SplitResponse decompose_response(const CVec& es_response, const SurfaceLayout& layout);

// Compact sub-responses with the zero padding removed.
CVec irs_response(const CVec& es_response, const SurfaceLayout& layout);
CVec ewam_response(const CVec& es_response, const SurfaceLayout& layout);

}  // namespace stealth
