// SPDX-License-Identifier: Apache-2.0
//
// JSON application config: one document with sections
// {layout, ewam, radar, scenario, sweep, seed}, every field defaulted.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "stealth/solver.hpp"
#include "stealth/sweep.hpp"

namespace stealth {

struct EwamSettings {
    double absorb = 0.7;
    std::optional<EwamProfile> fixed;  // explicit {p, psi} records override absorb

    // Fixed records when present, otherwise a uniform profile with random
    // phases drawn from the stream.
    EwamProfile realize(int n, SeedStream& rng) const;
};

struct AppConfig {
    SurfaceLayout layout{7, 10, 20, 50, 0.05, 0.1};
    EwamSettings ewam;
    RadarConfig radar{RadarArrayShape{4, 4, 0.05, 0.1}, 1e-13, 1e-4, 64};
    ScenarioGeometry scenario;
    ExperimentConfig sweep = ExperimentConfig::figure_preset(2);
    std::uint64_t seed = 0;
};

AppConfig parse_app_config(const std::string& json_text);
AppConfig load_app_config(const std::string& path);  // reads the file, then parses

std::string solve_report_to_json(const SolveReport& report);

}  // namespace stealth
