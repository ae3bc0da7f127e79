// SPDX-License-Identifier: Apache-2.0

#include "stealth/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace stealth {

Complex PathGain::value() const {
    if (!(distance > 0.0))
        throw std::invalid_argument("path gain: distance must be positive (singular path loss)");
    if (!(wavelength > 0.0)) throw std::invalid_argument("path gain: wavelength must be positive");
    if (reference_gain < 0.0)
        throw std::invalid_argument("path gain: reference gain must be nonnegative");
    const double amplitude = std::sqrt(reference_gain) / distance;
    const double phase = -2.0 * kPi * (distance / wavelength + doppler_hz * coherence_interval);
    return std::polar(amplitude, phase);
}

double doppler_frequency(double speed, const AnglePair& angles, double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("doppler_frequency: wavelength must be positive");
    return speed * std::cos(angles.elevation) * std::cos(angles.azimuth) / wavelength;
}

PathGain ScenarioGeometry::path_gain() const {
    PathGain gain;
    gain.reference_gain = reference_gain;
    gain.distance = distance;
    gain.wavelength = wavelength;
    gain.doppler_hz = doppler_frequency(speed, radar_angles, wavelength);
    gain.coherence_interval = coherence_interval;
    return gain;
}

LosChannel los_channel(const PathGain& gain, const CVec& rx_response, const CVec& tx_response) {
    LosChannel channel;
    channel.gain = gain.value();
    channel.matrix = channel.gain * (rx_response * tx_response.transpose());
    return channel;
}

}  // namespace stealth
