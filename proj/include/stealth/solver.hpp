// SPDX-License-Identifier: Apache-2.0
//
// Solvers for min |d^H theta + c|^2 subject to |theta_n| <= 1: the KKT/dual
// route, an independent projected-gradient cross-check, and the benchmark
// reflection designs.

#pragma once

#include <cstdint>
#include <string>

#include "stealth/rng.hpp"
#include "stealth/surface.hpp"

namespace stealth {

enum class ReflectionMode { full, phase_only, amplitude_only, random_phase, none };

ReflectionMode reflection_mode_from_string(const std::string& name);
std::string to_string(ReflectionMode mode);

struct SolverOptions {
    double gap_tol = 1e-8;
    int max_iter = 500;
    double ascent_step = 1.0;  // initial dual ascent step before backtracking
    ReflectionMode mode = ReflectionMode::full;
};

struct KktResiduals {
    double stationarity = 0.0;     // ||d d^H theta + c d + diag(lambda) theta||_2
    double complementarity = 0.0;  // max_n |lambda_n (|theta_n|^2 - 1)|
    double feasibility = 0.0;      // max(0, max_n |theta_n| - 1)
};

struct SolveReport {
    CVec theta;
    RVec lambda;
    double primal_value = 0.0;
    double dual_value = 0.0;
    KktResiduals residuals;
    int iterations = 0;
    std::string method;
};

struct DualSolution {
    RVec lambda;
    double value = 0.0;
    int iterations = 0;
};

// Maximizes g(lambda) = |c|^2/(1+s) - sum lambda_n, s = sum |d_n|^2/lambda_n
// (the Sherman-Morrison form of the dual), over lambda >= 0.
DualSolution solve_dual(const EchoCoefficients& coeffs, const SolverOptions& opts = {});

// Recovers theta* = -c (d d^H + diag(lambda*))^{-1} d from the dual optimum;
// the lambda* = 0 branch returns the minimum-norm cancelling point.
SolveReport solve_kkt(const EchoCoefficients& coeffs, const SolverOptions& opts = {});

// Independent oracle: projected gradient with per-entry projection onto the
// unit disk and the 1/(2||d||^2) Lipschitz step.
SolveReport solve_projected_gradient(const EchoCoefficients& coeffs, const SolverOptions& opts = {});

// Benchmark designs. `none` returns zeros, `random_phase` draws unit-modulus
// entries, `amplitude_only` solves the box-constrained real problem,
// `phase_only` uses the balanced-fan construction, `full` defers to solve_kkt.
CVec baseline_reflection(const EchoCoefficients& coeffs, ReflectionMode mode, SeedStream& rng);
CVec baseline_reflection(const EchoCoefficients& coeffs, ReflectionMode mode, std::uint64_t seed);

// Uniform entry point for the CLI and sweep driver. Non-optimizing modes
// return an evaluation-only report (dual set equal to primal).
SolveReport optimize_reflection(const EchoCoefficients& coeffs, const SolverOptions& opts,
                                SeedStream& rng);

}  // namespace stealth
