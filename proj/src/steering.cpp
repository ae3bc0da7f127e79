// SPDX-License-Identifier: Apache-2.0

#include "stealth/steering.hpp"

#include <cmath>
#include <stdexcept>

#include "stealth/errors.hpp"

namespace stealth {

void SurfaceLayout::validate() const {
    if (n_x < 1 || n_z < 1) throw ConfigError("surface layout: grid dimensions must be >= 1");
    if (n_irs < 0 || n_ewam < 0) throw ConfigError("surface layout: element counts must be >= 0");
    if (n_x * n_z != n_irs + n_ewam)
        throw ConfigError("surface layout: n_x*n_z must equal n_irs + n_ewam");
    if (n_ewam % 2 != 0)
        throw ConfigError("surface layout: n_ewam must be even (symmetric padding)");
    if (!(spacing > 0.0)) throw ConfigError("surface layout: spacing must be positive");
    if (!(wavelength > 0.0)) throw ConfigError("surface layout: wavelength must be positive");
}

void RadarArrayShape::validate() const {
    if (m_x < 1 || m_z < 1) throw ConfigError("radar array: dimensions must be >= 1");
    if (!(spacing > 0.0)) throw ConfigError("radar array: spacing must be positive");
    if (!(wavelength > 0.0)) throw ConfigError("radar array: wavelength must be positive");
}

CVec steering_vector(double phase_step, int n) {
    if (n < 1) throw std::invalid_argument("steering_vector: element count must be >= 1");
    if (!std::isfinite(phase_step))
        throw std::invalid_argument("steering_vector: phase step must be finite");
    CVec e(n);
    const double center = (n - 1) / 2.0;
    for (int k = 0; k < n; ++k) e[k] = std::polar(1.0, (k - center) * kPi * phase_step);
    return e;
}

CVec upa_response(const AnglePair& angles, int n_x, int n_z, double spacing, double wavelength) {
    const double scale = 2.0 * spacing / wavelength * std::cos(angles.elevation);
    const CVec ex = steering_vector(scale * std::cos(angles.azimuth), n_x);
    const CVec ez = steering_vector(scale * std::sin(angles.azimuth), n_z);
    CVec out(n_x * n_z);
    for (int ix = 0; ix < n_x; ++ix)
        for (int iz = 0; iz < n_z; ++iz) out[ix * n_z + iz] = ex[ix] * ez[iz];
    return out;
}

CVec upa_response(const AnglePair& angles, const SurfaceLayout& layout) {
    layout.validate();
    return upa_response(angles, layout.n_x, layout.n_z, layout.spacing, layout.wavelength);
}

CVec upa_response(const AnglePair& angles, const RadarArrayShape& shape) {
    shape.validate();
    return upa_response(angles, shape.m_x, shape.m_z, shape.spacing, shape.wavelength);
}

SplitResponse decompose_response(const CVec& es_response, const SurfaceLayout& layout) {
    layout.validate();
    if (es_response.size() != layout.total())
        throw std::invalid_argument("decompose_response: response length does not match layout");
    const int pad = layout.n_ewam / 2;
    SplitResponse split;
    split.irs_padded = CVec::Zero(layout.total());
    split.ewam_padded = CVec::Zero(layout.total());
    for (int n = 0; n < layout.total(); ++n) {
        if (n >= pad && n < pad + layout.n_irs)
            split.irs_padded[n] = es_response[n];
        else
            split.ewam_padded[n] = es_response[n];
    }
    return split;
}

CVec irs_response(const CVec& es_response, const SurfaceLayout& layout) {
    layout.validate();
    if (es_response.size() != layout.total())
        throw std::invalid_argument("irs_response: response length does not match layout");
    return es_response.segment(layout.n_ewam / 2, layout.n_irs);
}

CVec ewam_response(const CVec& es_response, const SurfaceLayout& layout) {
    layout.validate();
    if (es_response.size() != layout.total())
        throw std::invalid_argument("ewam_response: response length does not match layout");
    const int pad = layout.n_ewam / 2;
    CVec out(layout.n_ewam);
    out.head(pad) = es_response.head(pad);
    out.tail(pad) = es_response.tail(pad);
    return out;
}

}  // namespace stealth
