// SPDX-License-Identifier: Apache-2.0

#include "stealth/channel.hpp"

#include <Eigen/SVD>

#include "stealth/rng.hpp"
#include "stealth/steering.hpp"
#include "support.hpp"

using namespace stealth;

static void test_doppler() {
    CHECK_NEAR(doppler_frequency(0.0, AnglePair{0.7, -0.3}, 0.1), 0.0, 0.0);
    CHECK_NEAR(doppler_frequency(300.0, AnglePair{0.0, 0.0}, 0.1), 3000.0, 1e-9);
    // cos(pi/3) = 1/2
    CHECK_NEAR(doppler_frequency(300.0, AnglePair{kPi / 3, 0.0}, 0.1), 1500.0, 1e-9);
    CHECK_THROWS(doppler_frequency(300.0, AnglePair{}, 0.0), std::invalid_argument);
}

static void test_path_gain() {
    PathGain unit{1.0, 1.0, 1.0, 0.0, 1e-3};
    CHECK_NEAR(std::abs(unit.value() - Complex(1.0, 0.0)), 0.0, 1e-12);  // exp(-j 2 pi)

    PathGain bad = unit;
    bad.distance = 0.0;
    CHECK_THROWS(bad.value(), std::invalid_argument);

    // |alpha| = sqrt(beta)/d, halves when the distance doubles
    SeedStream rng(3);
    for (int i = 0; i < 50; ++i) {
        PathGain g{rng.next_uniform(0.1, 4.0), rng.next_uniform(100.0, 9000.0), 0.1,
                   rng.next_uniform(-5000.0, 5000.0), 1e-3};
        CHECK_NEAR(std::abs(g.value()), std::sqrt(g.reference_gain) / g.distance, 1e-15);
        PathGain far = g;
        far.distance *= 2.0;
        CHECK_NEAR(std::abs(far.value()), 0.5 * std::abs(g.value()), 1e-15);
    }
}

static void test_los_channel() {
    PathGain unit{1.0, 1.0, 1.0, 0.0, 1e-3};
    const LosChannel trivial = los_channel(unit, CVec::Ones(1), CVec::Ones(1));
    CHECK_NEAR(std::abs(trivial.matrix(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-12);

    SeedStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        ScenarioGeometry geom;
        geom.distance = rng.next_uniform(500.0, 9000.0);
        geom.speed = rng.next_uniform(0.0, 600.0);
        geom.radar_angles = {rng.next_uniform(-1.5, 1.5), rng.next_uniform(-1.5, 1.5)};
        geom.surface_angles = {rng.next_uniform(-1.5, 1.5), rng.next_uniform(-1.5, 1.5)};
        const PathGain gain = geom.path_gain();
        const CVec rx = upa_response(geom.surface_angles, 2, 2, 0.05, 0.1);
        const CVec tx = upa_response(geom.radar_angles, 3, 3, 0.05, 0.1);
        const LosChannel fwd = los_channel(gain, rx, tx);
        const LosChannel rev = los_channel(gain, tx, rx);

        // reciprocity: G_XY = (G_YX)^T with matching gains
        CHECK_NEAR(std::abs(fwd.gain - rev.gain), 0.0, 0.0);
        CHECK_NEAR((fwd.matrix - rev.matrix.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-15);

        // rank-1 Frobenius identity: ||alpha a b^T||_F = |alpha| sqrt(N M)
        CHECK_NEAR(fwd.matrix.norm(), std::abs(fwd.gain) * 6.0, 1e-12);

        // second singular value vanishes
        const Eigen::JacobiSVD<CMat> svd(fwd.matrix);
        CHECK(svd.singularValues()[1] < 1e-12 * svd.singularValues()[0]);
    }
}

int main() {
    test_doppler();
    test_path_gain();
    test_los_channel();
    return finish("test_channel");
}
