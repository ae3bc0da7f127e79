// SPDX-License-Identifier: Apache-2.0

#include "stealth/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stealth/errors.hpp"

namespace stealth {

namespace {

// Regularized upper incomplete gamma Q(s, y); series for small y, Lentz
// continued fraction otherwise.
double reg_gamma_q(double s, double y) {
    if (y <= 0.0) return 1.0;
    if (y < s + 1.0) {
        double ap = s;
        double term = 1.0 / s;
        double sum = term;
        for (int i = 0; i < 2000; ++i) {
            ap += 1.0;
            term *= y / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-y + s * std::log(y) - std::lgamma(s));
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    double b = y + 1.0 - s;
    double cc = 1.0 / 1e-300;
    double dd = 1.0 / b;
    double h = dd;
    for (int i = 1; i <= 2000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        dd = an * dd + b;
        if (std::abs(dd) < 1e-300) dd = 1e-300;
        cc = b + an / cc;
        if (std::abs(cc) < 1e-300) cc = 1e-300;
        dd = 1.0 / dd;
        const double del = dd * cc;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::clamp(std::exp(-y + s * std::log(y) - std::lgamma(s)) * h, 0.0, 1.0);
}

double log_poisson_pmf(double k, double rate) {
    return -rate + k * std::log(rate) - std::lgamma(k + 1.0);
}

// Series evaluation windowed around the Poisson mode, for arguments where
// exp(-x) or exp(-y) underflows. Window half-width 12 sqrt(x) + 60 leaves
// tail mass far below the 1e-12 target.
double marcum_q1_windowed(double x, double y) {
    const long k0 = std::lround(x);
    const long half = std::lround(12.0 * std::sqrt(std::max(x, 1.0)) + 60.0);
    const long k_lo = std::max(0L, k0 - half);
    const long k_hi = k0 + half;
    double pois = std::exp(log_poisson_pmf(static_cast<double>(k_lo), x));
    double pmf_y = std::exp(log_poisson_pmf(static_cast<double>(k_lo), y));
    double cdf_y = reg_gamma_q(static_cast<double>(k_lo) + 1.0, y);
    double sum = pois * cdf_y;
    for (long k = k_lo + 1; k <= k_hi; ++k) {
        pois *= x / static_cast<double>(k);
        pmf_y *= y / static_cast<double>(k);
        cdf_y = std::min(1.0, cdf_y + pmf_y);
        sum += pois * cdf_y;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

void RadarConfig::validate() const {
    shape.validate();
    if (!(noise_variance > 0.0)) throw ConfigError("radar config: noise variance must be positive");
    if (!(false_alarm > 0.0 && false_alarm < 1.0))
        throw ConfigError("radar config: false alarm probability must lie in (0,1)");
    if (samples_per_block <= shape.total())
        throw ConfigError("radar config: samples per block must exceed the antenna count");
}

CMat echo_matrix(const LosChannel& radar_to_irs, const LosChannel& radar_to_ewam,
                 const CVec& theta, const CVec& gamma) {
    const LosChannel irs_return{radar_to_irs.matrix.transpose(), radar_to_irs.gain};
    const LosChannel ewam_return{radar_to_ewam.matrix.transpose(), radar_to_ewam.gain};
    return apply_reflection(radar_to_irs, theta, irs_return) +
           apply_reflection(radar_to_ewam, gamma, ewam_return);
}

double snr_full(const LosChannel& radar_to_irs, const LosChannel& radar_to_ewam,
                const CVec& theta, const CVec& gamma, double noise_variance) {
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("snr_full: noise variance must be positive");
    return echo_matrix(radar_to_irs, radar_to_ewam, theta, gamma).squaredNorm() / noise_variance;
}

double radar_norm(Complex path_gain, const CVec& radar_response) {
    const double a4 = std::norm(path_gain) * std::norm(path_gain);
    const double r2 = radar_response.squaredNorm();
    return a4 * r2 * r2;
}

double snr_factored(const EchoCoefficients& coeffs, const CVec& theta, double radar_norm_value,
                    double noise_variance) {
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("snr_factored: noise variance must be positive");
    return echo_objective(coeffs, theta) * radar_norm_value / noise_variance;
}

double marcum_q1(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a < 0.0 || b < 0.0)
        throw std::domain_error("marcum_q1: arguments must be finite and nonnegative");
    if (b == 0.0) return 1.0;
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (a == 0.0) return std::exp(-y);
    if (x > 700.0 && y < 0.5 * x) return 1.0;  // complement is below 1e-20 here
    if (x > 700.0 || y > 700.0) return marcum_q1_windowed(x, y);

    // Poisson-weighted ascending series: sum_k P(K = k; x) P[Pois(y) <= k].
    // The inner CDF is bounded by one, so the truncated tail is bounded by
    // the remaining Poisson mass.
    double pois = std::exp(-x);
    double pois_cum = pois;
    double pmf_y = std::exp(-y);
    double cdf_y = pmf_y;
    double sum = pois * cdf_y;
    for (int k = 1; k < 100000; ++k) {
        pois *= x / static_cast<double>(k);
        pmf_y *= y / static_cast<double>(k);
        cdf_y = std::min(1.0, cdf_y + pmf_y);
        sum += pois * cdf_y;
        pois_cum += pois;
        if (1.0 - pois_cum < 1e-14 && static_cast<double>(k) > x) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double detection_probability(double snr, double false_alarm) {
    if (!std::isfinite(snr) || snr < 0.0)
        throw std::domain_error("detection_probability: snr must be finite and nonnegative");
    if (!(false_alarm > 0.0 && false_alarm < 1.0))
        throw std::domain_error("detection_probability: false alarm must lie in (0,1)");
    return marcum_q1(std::sqrt(2.0 * snr), std::sqrt(-2.0 * std::log(false_alarm)));
}

ReceivedBlock synthesize_block(const CMat& echo, const RadarConfig& radar, bool target_present,
                               SeedStream& rng) {
    radar.validate();
    const int m = radar.shape.total();
    const int l = radar.samples_per_block;
    if (echo.rows() != m || echo.cols() != m)
        throw std::invalid_argument("synthesize_block: echo matrix does not match the radar array");
    CMat samples = CMat::Zero(m, l);
    if (target_present) {
        CMat gauss(l, m);
        for (int col = 0; col < m; ++col)
            for (int row = 0; row < l; ++row) gauss(row, col) = rng.next_cgauss();
        const Eigen::HouseholderQR<CMat> qr(gauss);
        const CMat q = qr.householderQ() * CMat::Identity(l, m);
        samples = echo * q.transpose();  // rows of S = q^T are orthonormal
    }
    const double sd = std::sqrt(radar.noise_variance);
    for (int col = 0; col < l; ++col)
        for (int row = 0; row < m; ++row) samples(row, col) += sd * rng.next_cgauss();
    return {std::move(samples), target_present};
}

DetectionCurve detection_curve(const std::vector<double>& snr_grid, double false_alarm) {
    DetectionCurve curve;
    curve.points.reserve(snr_grid.size());
    for (const double snr : snr_grid)
        curve.points.emplace_back(snr, detection_probability(snr, false_alarm));
    return curve;
}

}  // namespace stealth
