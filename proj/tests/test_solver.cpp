// SPDX-License-Identifier: Apache-2.0

#include "stealth/solver.hpp"

#include <cmath>

#include "stealth/errors.hpp"
#include "stealth/rng.hpp"
#include "stealth/steering.hpp"
#include "support.hpp"

using namespace stealth;

namespace {

// Physical instance: d from squared steering entries (unit modulus), c from a
// random absorber draw.
EchoCoefficients random_instance(SeedStream& rng, int n1, int n2, double p) {
    const SurfaceLayout layout{1, n1 + n2, n1, n2, 0.05, 0.1};
    const AnglePair angles{rng.next_uniform(-kPi / 2, kPi / 2),
                           rng.next_uniform(-kPi / 2, kPi / 2)};
    const CVec a_es = upa_response(angles, layout);
    EwamProfile profile;
    profile.absorb = RVec::Constant(n2, p);
    profile.phase = RVec(n2);
    for (int i = 0; i < n2; ++i) profile.phase[i] = rng.next_uniform(0.0, 2.0 * kPi);
    return build_echo_coefficients(irs_response(a_es, layout), ewam_response(a_es, layout),
                                   profile);
}

// Synthetic instance with arbitrary entry moduli, off the physical path.
EchoCoefficients synthetic_instance(SeedStream& rng, int n) {
    EchoCoefficients coeffs;
    coeffs.d = CVec(n);
    for (int i = 0; i < n; ++i)
        coeffs.d[i] = std::polar(rng.next_uniform(0.1, 2.0), rng.next_uniform(0.0, 2.0 * kPi));
    coeffs.c = std::polar(rng.next_uniform(0.0, 3.0 * n), rng.next_uniform(0.0, 2.0 * kPi));
    return coeffs;
}

double closed_form(const EchoCoefficients& coeffs) {
    const double margin = std::abs(coeffs.c) - coeffs.d.cwiseAbs().sum();
    return margin > 0.0 ? margin * margin : 0.0;
}

}  // namespace

static void test_kkt_trivial_and_derived() {
    SeedStream rng(41);

    // c = 0: nothing to cancel
    {
        EchoCoefficients coeffs = random_instance(rng, 8, 4, 1.0);
        CHECK_NEAR(std::abs(coeffs.c), 0.0, 1e-13);
        coeffs.c = Complex(0.0, 0.0);
        const SolveReport report = solve_kkt(coeffs);
        CHECK_NEAR(report.primal_value, 0.0, 1e-18);
        CHECK_NEAR(report.theta.cwiseAbs().maxCoeff(), 0.0, 0.0);
        CHECK_NEAR(report.lambda.cwiseAbs().maxCoeff(), 0.0, 0.0);
    }

    // |c| <= N1: exact cancellation via the minimum-norm point
    for (int trial = 0; trial < 100; ++trial) {
        const int n1 = 5 + static_cast<int>(rng.next_below(40));
        const EchoCoefficients coeffs = random_instance(rng, n1, 30, 0.5);
        if (std::abs(coeffs.c) > n1) continue;
        const SolveReport report = solve_kkt(coeffs);
        CHECK_NEAR(report.primal_value, 0.0, 1e-16);
        const Complex scale = -coeffs.c / static_cast<double>(n1);
        for (int k = 0; k < n1; ++k) {
            CHECK_NEAR(std::abs(report.theta[k] - scale * coeffs.d[k]), 0.0, 1e-12);
            CHECK(std::abs(report.theta[k]) <= std::abs(coeffs.c) / n1 + 1e-12);
        }
        const SolveReport pg = solve_projected_gradient(coeffs);
        CHECK_NEAR(report.primal_value, pg.primal_value, 1e-6);
    }

    // |c| > N1: all constraints active, lambda_n = |c| - N1
    for (int trial = 0; trial < 100; ++trial) {
        const int n1 = 1 + static_cast<int>(rng.next_below(6));
        EchoCoefficients coeffs = random_instance(rng, n1, 50, 0.0);
        if (std::abs(coeffs.c) <= n1 + 0.5) continue;
        const double abs_c = std::abs(coeffs.c);
        const SolveReport report = solve_kkt(coeffs);
        const double expect = (abs_c - n1) * (abs_c - n1);
        CHECK_NEAR(report.primal_value, expect, 1e-9 * std::max(1.0, expect));
        for (int k = 0; k < n1; ++k) {
            CHECK_NEAR(report.lambda[k], abs_c - n1, 1e-9);
            const Complex want = -(coeffs.c / abs_c) * coeffs.d[k];
            CHECK_NEAR(std::abs(report.theta[k] - want), 0.0, 1e-10);
        }
        // |d^H theta + c| = |c| - N1
        CHECK_NEAR(std::abs(coeffs.d.dot(report.theta) + coeffs.c), abs_c - n1, 1e-9);
        const SolveReport pg = solve_projected_gradient(coeffs);
        CHECK_NEAR(report.primal_value, pg.primal_value, 1e-6);
    }

    CHECK_THROWS(solve_kkt(EchoCoefficients{}), std::invalid_argument);
}

static void test_dual() {
    SeedStream rng(43);

    {
        EchoCoefficients coeffs = random_instance(rng, 6, 10, 0.3);
        coeffs.c = Complex(0.0, 0.0);
        const DualSolution dual = solve_dual(coeffs);
        CHECK_NEAR(dual.value, 0.0, 0.0);
        CHECK_NEAR(dual.lambda.cwiseAbs().maxCoeff(), 0.0, 0.0);
    }

    // |c| > N1: dual value matches (|c| - N1)^2, evaluated at lambda = (|c|-N1) 1
    for (int trial = 0; trial < 50; ++trial) {
        const int n1 = 1 + static_cast<int>(rng.next_below(5));
        const EchoCoefficients coeffs = random_instance(rng, n1, 60, 0.0);
        const double abs_c = std::abs(coeffs.c);
        if (abs_c <= n1 + 0.5) continue;
        const DualSolution dual = solve_dual(coeffs);
        const double expect = (abs_c - n1) * (abs_c - n1);
        CHECK_NEAR(dual.value, expect, 1e-9 * std::max(1.0, expect));
    }

    // feasible instances have zero dual value (zero duality gap at primal 0)
    for (int trial = 0; trial < 50; ++trial) {
        const EchoCoefficients coeffs = random_instance(rng, 40, 30, 0.5);
        if (std::abs(coeffs.c) > 40) continue;
        const DualSolution dual = solve_dual(coeffs);
        CHECK_NEAR(dual.value, 0.0, 1e-8);
    }
}

static void test_nonuniform_instances() {
    SeedStream rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(12));
        const EchoCoefficients coeffs = synthetic_instance(rng, n);
        const SolveReport kkt = solve_kkt(coeffs);
        SolverOptions opts;
        opts.max_iter = 5000;
        const SolveReport pg = solve_projected_gradient(coeffs, opts);
        // closed-form law holds for arbitrary moduli with S1 = sum |d_n|
        const double law = closed_form(coeffs);
        CHECK_NEAR(kkt.primal_value, law, 1e-8 * std::max(1.0, law));
        CHECK_NEAR(kkt.primal_value, pg.primal_value, 1e-6 * std::max(1.0, law));
        CHECK(kkt.primal_value - kkt.dual_value <= 1e-8 * std::max(1.0, kkt.primal_value));
        CHECK(kkt.residuals.feasibility <= 1e-9);
        CHECK(kkt.residuals.stationarity <= 1e-7 * std::max(1.0, std::abs(coeffs.c)));
    }
}

static void test_projected_gradient() {
    SeedStream rng(53);
    {
        EchoCoefficients coeffs = random_instance(rng, 10, 20, 0.5);
        coeffs.c = Complex(0.0, 0.0);
        const SolveReport report = solve_projected_gradient(coeffs);
        CHECK_NEAR(report.primal_value, 0.0, 1e-18);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const EchoCoefficients coeffs = random_instance(rng, 30, 40, 0.6);
        if (std::abs(coeffs.c) > 30) continue;
        const SolveReport report = solve_projected_gradient(coeffs);
        CHECK(report.primal_value <= 1e-9);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const EchoCoefficients coeffs = random_instance(rng, 2, 68, 0.0);
        const double abs_c = std::abs(coeffs.c);
        if (abs_c <= 2.5) continue;
        const SolveReport report = solve_projected_gradient(coeffs);
        CHECK_NEAR(report.primal_value, (abs_c - 2) * (abs_c - 2), 1e-6);
    }
}

static void test_baselines() {
    SeedStream rng(59);

    // none: objective |c|^2
    {
        const EchoCoefficients coeffs = random_instance(rng, 10, 30, 0.4);
        SeedStream unused(0);
        const CVec theta = baseline_reflection(coeffs, ReflectionMode::none, unused);
        CHECK_NEAR(echo_objective(coeffs, theta), std::norm(coeffs.c), 0.0);
    }

    // random_phase: unit moduli, deterministic for a fixed stream
    {
        const EchoCoefficients coeffs = random_instance(rng, 12, 20, 0.4);
        const CVec a = baseline_reflection(coeffs, ReflectionMode::random_phase, 99u);
        const CVec b = baseline_reflection(coeffs, ReflectionMode::random_phase, 99u);
        const CVec c = baseline_reflection(coeffs, ReflectionMode::random_phase, 100u);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
        for (int k = 0; k < 12; ++k) CHECK_NEAR(std::abs(a[k]), 1.0, 1e-15);
    }

    // phase_only: unit moduli and exact cancellation when |c| <= N1
    for (int trial = 0; trial < 200; ++trial) {
        const int n1 = 2 + static_cast<int>(rng.next_below(30));
        const EchoCoefficients coeffs = random_instance(rng, n1, 30, 0.5);
        SeedStream unused(0);
        const CVec theta = baseline_reflection(coeffs, ReflectionMode::phase_only, unused);
        for (int k = 0; k < n1; ++k) CHECK_NEAR(std::abs(theta[k]), 1.0, 1e-12);
        if (std::abs(coeffs.c) <= n1) CHECK(echo_objective(coeffs, theta) <= 1e-9);
    }

    // phase-only control matches full control (N1 >= 2)
    for (int trial = 0; trial < 1000; ++trial) {
        const int n1 = 2 + static_cast<int>(rng.next_below(40));
        const int n2 = 2 * (1 + static_cast<int>(rng.next_below(25)));
        const EchoCoefficients coeffs = random_instance(rng, n1, n2, rng.next_unit());
        SeedStream unused(0);
        const CVec phase = baseline_reflection(coeffs, ReflectionMode::phase_only, unused);
        const double full = solve_kkt(coeffs).primal_value;
        CHECK_NEAR(echo_objective(coeffs, phase), full, 1e-6);
    }

    // amplitude-only: real entries in [0,1], objective between full and none
    for (int trial = 0; trial < 50; ++trial) {
        const int n1 = 2 + static_cast<int>(rng.next_below(20));
        const EchoCoefficients coeffs = random_instance(rng, n1, 40, 0.6);
        SeedStream unused(0);
        const CVec theta = baseline_reflection(coeffs, ReflectionMode::amplitude_only, unused);
        for (int k = 0; k < n1; ++k) {
            CHECK(theta[k].imag() == 0.0);
            CHECK(theta[k].real() >= 0.0 && theta[k].real() <= 1.0);
        }
        const double amp = echo_objective(coeffs, theta);
        const double full = solve_kkt(coeffs).primal_value;
        CHECK(amp + 1e-12 >= full);
        CHECK(amp <= std::norm(coeffs.c) + 1e-12);
    }

    CHECK_THROWS(reflection_mode_from_string("sideways"), ConfigError);
}

static void test_invariants() {
    SeedStream rng(61);

    // feasibility, oracle triangle, complementarity, stationarity
    for (int trial = 0; trial < 300; ++trial) {
        const int n1 = 1 + static_cast<int>(rng.next_below(64));
        const int n2 = 2 * (1 + static_cast<int>(rng.next_below(30)));
        const EchoCoefficients coeffs = random_instance(rng, n1, n2, rng.next_unit());
        const SolveReport kkt = solve_kkt(coeffs);
        const SolveReport pg = solve_projected_gradient(coeffs);
        CHECK(kkt.theta.cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
        CHECK(pg.theta.cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
        CHECK(std::abs(kkt.primal_value - pg.primal_value) <= 1e-6);
        CHECK(std::abs(kkt.primal_value - kkt.dual_value) <= 1e-8);
        CHECK(kkt.residuals.stationarity <= 1e-8);
        for (int k = 0; k < n1; ++k)
            if (kkt.lambda[k] > 1e-8) CHECK(std::abs(std::abs(kkt.theta[k]) - 1.0) <= 1e-6);
    }

    // optimal objective is non-increasing in N1 for fixed c
    for (int trial = 0; trial < 50; ++trial) {
        const int n1 = 1 + static_cast<int>(rng.next_below(8));
        EchoCoefficients coeffs = random_instance(rng, n1, 60, 0.0);
        EchoCoefficients larger = coeffs;
        const int extra = 1 + static_cast<int>(rng.next_below(8));
        larger.d = CVec(n1 + extra);
        larger.d.head(n1) = coeffs.d;
        for (int k = 0; k < extra; ++k)
            larger.d[n1 + k] = std::polar(1.0, rng.next_uniform(0.0, 2.0 * kPi));
        CHECK(solve_kkt(larger).primal_value <= solve_kkt(coeffs).primal_value + 1e-9);
    }
}

int main() {
    test_kkt_trivial_and_derived();
    test_dual();
    test_nonuniform_instances();
    test_projected_gradient();
    test_baselines();
    test_invariants();
    return finish("test_solver");
}
