// SPDX-License-Identifier: Apache-2.0

#include "stealth/surface.hpp"

#include "stealth/errors.hpp"
#include "stealth/rng.hpp"
#include "stealth/steering.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace stealth;

static EwamProfile random_profile(int n, double p, SeedStream& rng) {
    EwamProfile profile;
    profile.absorb = RVec::Constant(n, p);
    profile.phase = RVec(n);
    for (int i = 0; i < n; ++i) profile.phase[i] = rng.next_uniform(0.0, 2.0 * kPi);
    return profile;
}

static void test_build_echo_coefficients() {
    SeedStream rng(23);

    // full absorption kills the reflection gain
    {
        EwamProfile profile = random_profile(50, 1.0, rng);
        const SurfaceLayout layout{7, 10, 20, 50, 0.05, 0.1};
        const CVec a_es = upa_response(AnglePair{0.4, 0.0}, layout);
        const EchoCoefficients coeffs = build_echo_coefficients(
            irs_response(a_es, layout), ewam_response(a_es, layout), profile);
        CHECK_NEAR(std::abs(coeffs.c), 0.0, 1e-14);
        CHECK(coeffs.d.size() == 20);
    }

    // all-ones steering with no absorption: c equals the element count
    {
        EwamProfile profile;
        profile.absorb = RVec::Zero(50);
        profile.phase = RVec::Zero(50);
        const SurfaceLayout layout{7, 10, 20, 50, 0.05, 0.1};
        const CVec a_es = upa_response(AnglePair{0.0, kPi / 2}, layout);
        const EchoCoefficients coeffs = build_echo_coefficients(
            irs_response(a_es, layout), ewam_response(a_es, layout), profile);
        CHECK_NEAR(std::abs(coeffs.c - Complex(50.0, 0.0)), 0.0, 1e-10);
    }

    // independent summation oracle at random angles, p = 0.7
    for (int trial = 0; trial < 50; ++trial) {
        const SurfaceLayout layout{7, 10, 20, 50, 0.05, 0.1};
        EwamProfile profile = random_profile(50, 0.7, rng);
        const AnglePair angles{rng.next_uniform(-kPi / 2, kPi / 2), 0.0};
        const CVec a_es = upa_response(angles, layout);
        const CVec a_ewam = ewam_response(a_es, layout);
        const EchoCoefficients coeffs =
            build_echo_coefficients(irs_response(a_es, layout), a_ewam, profile);
        const Complex want = oracle::reflection_gain_sum(a_ewam, profile.absorb, profile.phase);
        CHECK_NEAR(std::abs(coeffs.c - want), 0.0, 1e-12);
        // |d_n| = 1 exactly up to rounding, margin = N1 - |c|
        for (Eigen::Index k = 0; k < coeffs.d.size(); ++k)
            CHECK_NEAR(std::abs(coeffs.d[k]), 1.0, 1e-14);
        CHECK_NEAR(coeffs.cancellation_margin(), 20.0 - std::abs(coeffs.c), 1e-10);
        // |c| is bounded by the total residual reflection
        CHECK(std::abs(coeffs.c) <= 50.0 * std::sqrt(1.0 - 0.7) + 1e-9);
    }

    // c is linear in gamma
    {
        const SurfaceLayout layout{2, 3, 2, 4, 0.05, 0.1};
        const CVec a_es = upa_response(AnglePair{0.3, 0.1}, layout);
        const CVec a_ewam = ewam_response(a_es, layout);
        EwamProfile pa = random_profile(4, 0.2, rng);
        EwamProfile pb = random_profile(4, 0.8, rng);
        const Complex ca = build_echo_coefficients(irs_response(a_es, layout), a_ewam, pa).c;
        const Complex cb = build_echo_coefficients(irs_response(a_es, layout), a_ewam, pb).c;
        Complex combined{0.0, 0.0};
        const CVec ga = pa.coefficients(), gb = pb.coefficients();
        for (int k = 0; k < 4; ++k) combined += a_ewam[k] * a_ewam[k] * (ga[k] + gb[k]);
        CHECK_NEAR(std::abs(combined - (ca + cb)), 0.0, 1e-12);
    }

    // length mismatch
    EwamProfile profile = random_profile(4, 0.5, rng);
    CHECK_THROWS(build_echo_coefficients(CVec::Ones(2), CVec::Ones(3), profile),
                 std::invalid_argument);
}

static void test_apply_reflection() {
    SeedStream rng(29);

    // dark IRS: zero coefficients, zero echo
    {
        const CVec a_irs = upa_response(AnglePair{0.2, 0.0}, 1, 4, 0.05, 0.1);
        const CVec a_radar = upa_response(AnglePair{-0.4, 0.0}, 2, 2, 0.05, 0.1);
        PathGain gain{1.0, 2000.0, 0.1, 0.0, 1e-3};
        const LosChannel in = los_channel(gain, a_irs, a_radar);
        const LosChannel out{in.matrix.transpose(), in.gain};
        const CMat echo = apply_reflection(in, CVec::Zero(4), out);
        CHECK_NEAR(echo.cwiseAbs().maxCoeff(), 0.0, 0.0);
    }

    // 1x1 chain: scalar alpha^2 a^2 theta
    {
        PathGain gain{1.0, 1500.0, 0.1, 0.0, 1e-3};
        const CVec a_surface = upa_response(AnglePair{0.7, 0.2}, 1, 1, 0.05, 0.1);
        const CVec a_radar = upa_response(AnglePair{-0.1, 0.0}, 1, 1, 0.05, 0.1);
        const LosChannel in = los_channel(gain, a_surface, a_radar);
        const LosChannel out{in.matrix.transpose(), in.gain};
        CVec theta(1);
        theta[0] = Complex(0.3, -0.4);
        const CMat echo = apply_reflection(in, theta, out);
        const Complex alpha = gain.value();
        const Complex want = alpha * alpha * a_surface[0] * a_surface[0] * theta[0] * a_radar[0] *
                             a_radar[0];
        CHECK_NEAR(std::abs(echo(0, 0) - want), 0.0, 1e-18);
    }

    // Frobenius-norm factorization: ||G^T Theta G||_F = |a^T Theta a| ||alpha^2 a_R a_R^T||_F
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(8));
        const int m = 1 + static_cast<int>(rng.next_below(3));
        const CVec a_surface =
            upa_response(AnglePair{rng.next_uniform(-1.5, 1.5), rng.next_uniform(-1.5, 1.5)}, 1,
                         n, 0.05, 0.1);
        const CVec a_radar =
            upa_response(AnglePair{rng.next_uniform(-1.5, 1.5), rng.next_uniform(-1.5, 1.5)}, m,
                         m, 0.05, 0.1);
        PathGain gain{1.0, rng.next_uniform(500.0, 8000.0), 0.1, 0.0, 1e-3};
        const LosChannel in = los_channel(gain, a_surface, a_radar);
        const LosChannel out{in.matrix.transpose(), in.gain};
        CVec theta(n);
        for (int k = 0; k < n; ++k)
            theta[k] = std::polar(rng.next_unit(), rng.next_uniform(0.0, 2.0 * kPi));
        const CMat echo = apply_reflection(in, theta, out);
        Complex inner{0.0, 0.0};
        for (int k = 0; k < n; ++k) inner += a_surface[k] * a_surface[k] * theta[k];
        const Complex alpha = gain.value();
        const double want =
            std::abs(inner) * std::norm(alpha) * a_radar.squaredNorm();  // |a^2| ||a_R a_R^T||_F
        CHECK_NEAR(echo.norm(), want, 1e-10 * std::max(1.0, want));
    }

    // dimension mismatch
    PathGain gain{1.0, 100.0, 0.1, 0.0, 1e-3};
    const LosChannel in = los_channel(gain, CVec::Ones(3), CVec::Ones(2));
    const LosChannel out{in.matrix.transpose(), in.gain};
    CHECK_THROWS(apply_reflection(in, CVec::Ones(4), out), std::invalid_argument);
}

static void test_profile_json() {
    const std::string text = R"([{"p":0.7,"psi":1.25},{"p":0.1,"psi":4.5}])";
    const EwamProfile profile = EwamProfile::from_json(text);
    CHECK(profile.size() == 2);
    CHECK_NEAR(profile.absorb[0], 0.7, 0.0);
    CHECK_NEAR(profile.phase[1], 4.5, 0.0);
    const EwamProfile round = EwamProfile::from_json(profile.to_json());
    CHECK_NEAR(round.absorb[1], profile.absorb[1], 0.0);
    CHECK_NEAR(round.phase[0], profile.phase[0], 0.0);

    CHECK_THROWS(EwamProfile::from_json("{\"p\":1}"), ConfigError);
    CHECK_THROWS(EwamProfile::from_json("[{\"p\":2.0,\"psi\":0}]"), ConfigError);

    // |gamma_n| = sqrt(1 - p_n)
    const CVec gamma = profile.coefficients();
    CHECK_NEAR(std::abs(gamma[0]), std::sqrt(0.3), 1e-15);
}

int main() {
    test_build_echo_coefficients();
    test_apply_reflection();
    test_profile_json();
    return finish("test_surface");
}
