// SPDX-License-Identifier: Apache-2.0

#include "stealth/surface.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "stealth/errors.hpp"

namespace stealth {

CVec EwamProfile::coefficients() const {
    validate();
    CVec gamma(size());
    for (int n = 0; n < size(); ++n)
        gamma[n] = std::polar(std::sqrt(1.0 - absorb[n]), phase[n]);
    return gamma;
}

void EwamProfile::validate() const {
    if (absorb.size() != phase.size())
        throw ConfigError("ewam profile: absorb/phase length mismatch");
    for (Eigen::Index n = 0; n < absorb.size(); ++n) {
        if (!(absorb[n] >= 0.0 && absorb[n] <= 1.0))
            throw ConfigError("ewam profile: absorbing efficiency must lie in [0,1]");
        if (!std::isfinite(phase[n])) throw ConfigError("ewam profile: phase must be finite");
    }
}

EwamProfile EwamProfile::uniform(int n, double p, SeedStream& rng) {
    if (n < 0) throw ConfigError("ewam profile: element count must be >= 0");
    EwamProfile profile;
    profile.absorb = RVec::Constant(n, p);
    profile.phase = RVec(n);
    for (int i = 0; i < n; ++i) profile.phase[i] = rng.next_uniform(0.0, 2.0 * kPi);
    profile.validate();
    return profile;
}

EwamProfile EwamProfile::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("ewam profile: ") + e.what());
    }
    if (!doc.is_array()) throw ConfigError("ewam profile: expected a JSON array of {p, psi}");
    EwamProfile profile;
    profile.absorb = RVec(doc.size());
    profile.phase = RVec(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        if (!rec.contains("p") || !rec.contains("psi"))
            throw ConfigError("ewam profile: each record needs fields p and psi");
        profile.absorb[static_cast<Eigen::Index>(i)] = rec["p"].get<double>();
        profile.phase[static_cast<Eigen::Index>(i)] = rec["psi"].get<double>();
    }
    profile.validate();
    return profile;
}

std::string EwamProfile::to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (int n = 0; n < size(); ++n) doc.push_back({{"p", absorb[n]}, {"psi", phase[n]}});
    return doc.dump();
}

double EchoCoefficients::cancellation_margin() const {
    return d.cwiseAbs().sum() - std::abs(c);
}

EchoCoefficients build_echo_coefficients(const CVec& irs_resp, const CVec& ewam_resp,
                                         const EwamProfile& ewam) {
    if (ewam_resp.size() != ewam.size())
        throw std::invalid_argument("build_echo_coefficients: absorber response/profile length mismatch");
    EchoCoefficients coeffs;
    coeffs.d = CVec(irs_resp.size());
    for (Eigen::Index n = 0; n < irs_resp.size(); ++n)
        coeffs.d[n] = std::conj(irs_resp[n] * irs_resp[n]);
    const CVec gamma = ewam.coefficients();
    Complex c{0.0, 0.0};
    for (Eigen::Index n = 0; n < ewam_resp.size(); ++n)
        c += ewam_resp[n] * ewam_resp[n] * gamma[n];
    coeffs.c = c;
    return coeffs;
}

CMat apply_reflection(const LosChannel& inbound, const CVec& coeffs, const LosChannel& outbound) {
    if (inbound.matrix.rows() != coeffs.size())
        throw std::invalid_argument("apply_reflection: inbound channel does not match surface size");
    if (outbound.matrix.cols() != coeffs.size())
        throw std::invalid_argument("apply_reflection: outbound channel does not match surface size");
    return outbound.matrix * coeffs.asDiagonal() * inbound.matrix;
}

double echo_objective(const EchoCoefficients& coeffs, const CVec& theta) {
    if (theta.size() != coeffs.d.size())
        throw std::invalid_argument("echo_objective: reflection vector length mismatch");
    return std::norm(coeffs.d.dot(theta) + coeffs.c);
}

}  // namespace stealth
