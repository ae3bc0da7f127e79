// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo sweep driver and the offline angle -> reflection lookup table.
// Trials draw the surface azimuth from a 1-degree-quantized grid and fresh
// absorber phases; per-trial streams are keyed (seed, trial) so every grid
// point reuses the same draws (common random numbers).

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stealth/detection.hpp"
#include "stealth/solver.hpp"
#include "stealth/steering.hpp"

namespace stealth {

enum class SweepVariable {
    irs_elements,             // N1 grid, total element count fixed
    absorb_efficiency,        // p grid, N1 and N2 fixed
    irs_elements_fixed_ewam,  // N1 grid, absorber count fixed
};

inline constexpr std::array<ReflectionMode, 5> kSweepMethods = {
    ReflectionMode::full, ReflectionMode::none, ReflectionMode::random_phase,
    ReflectionMode::amplitude_only, ReflectionMode::phase_only};

// Plot/CSV label: full control is reported as "proposed", none as "no_irs".
const char* method_label(ReflectionMode mode);

struct ExperimentConfig {
    SweepVariable variable = SweepVariable::irs_elements;
    std::vector<double> grid;
    int total_elements = 70;  // N, for irs_elements sweeps
    int ewam_elements = 40;   // N2, for irs_elements_fixed_ewam sweeps
    int irs_elements = 20;    // N1, for absorb_efficiency sweeps
    double absorb = 0.7;      // uniform p when not swept
    int trials = 1000;
    double angle_step_deg = 1.0;
    std::uint64_t seed = 0;
    double wavelength = 0.1;
    double spacing = 0.05;
    RadarConfig radar;            // noise variance / P_fa for absolute reporting
    ScenarioGeometry scenario;    // path-loss constants

    void validate() const;
    static ExperimentConfig figure_preset(int figure);
};

struct MethodStats {
    double snr_mean = 0.0;
    double snr_median = 0.0;
    double snr_min = 0.0;
    double snr_max = 0.0;
    double pd_mean = 0.0;
};

struct GridPointResult {
    double grid_value = 0.0;
    int trials = 0;
    std::string error;  // set when the point has an infeasible layout
    std::array<MethodStats, 5> stats;
    std::array<std::vector<double>, 5> snr_samples;  // per-trial normalized SNR
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<GridPointResult> points;
};

SweepResult run_sweep(const ExperimentConfig& cfg);

// Order-invariant reduction of per-trial values (summation over sorted data).
MethodStats aggregate_samples(std::vector<double> snr, std::vector<double> pd);

struct LookupEntry {
    double azimuth_deg = 0.0;
    CVec theta;
    double objective = 0.0;
};

struct LookupTable {
    SurfaceLayout layout;
    double absorb = 0.7;
    std::uint64_t psi_seed = 0;
    double angle_step_deg = 1.0;
    std::vector<LookupEntry> entries;

    const LookupEntry& lookup(double azimuth_rad) const;  // nearest grid angle
    std::string to_json() const;
    static LookupTable from_json(const std::string& text);
};

// Solves every quantized azimuth in [-90, 90] degrees (elevation zero) for a
// fixed absorber profile drawn from psi_seed.
LookupTable build_lookup_table(const SurfaceLayout& layout, double absorb, std::uint64_t psi_seed,
                               double angle_step_deg);

}  // namespace stealth
