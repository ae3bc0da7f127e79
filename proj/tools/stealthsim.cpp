// SPDX-License-Identifier: Apache-2.0
//
// stealthsim: solve one reflection instance, simulate radar detection, run
// Monte-Carlo sweeps, build lookup tables, or cross-check the solvers.
//
// Exit codes: 0 success, 1 config error, 2 solver failure, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stealth/config.hpp"
#include "stealth/detection.hpp"
#include "stealth/emit.hpp"
#include "stealth/errors.hpp"
#include "stealth/solver.hpp"
#include "stealth/sweep.hpp"

namespace {

using namespace stealth;

AppConfig make_config(const std::string& path) {
    if (path.empty()) return AppConfig{};
    return load_app_config(path);
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content << '\n';
    if (!out) throw IoError("write failed: " + path);
}

AnglePair parse_angles_deg(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ConfigError("--angles expects 'azimuth,elevation' in degrees");
    try {
        return {deg_to_rad(std::stod(text.substr(0, comma))),
                deg_to_rad(std::stod(text.substr(comma + 1)))};
    } catch (const std::exception&) {
        throw ConfigError("--angles expects numeric 'azimuth,elevation' in degrees");
    }
}

EchoCoefficients coefficients_for(const AppConfig& cfg, const AnglePair& angles,
                                  const EwamProfile& profile) {
    const CVec a_es = upa_response(angles, cfg.layout);
    return build_echo_coefficients(irs_response(a_es, cfg.layout),
                                   ewam_response(a_es, cfg.layout), profile);
}

int run_solve(const std::string& config_path, const std::string& angles_text,
              const std::string& mode_name, const std::string& out_path,
              std::optional<std::uint64_t> seed) {
    AppConfig cfg = make_config(config_path);
    if (seed) cfg.seed = *seed;
    AnglePair angles = cfg.scenario.surface_angles;
    if (!angles_text.empty()) angles = parse_angles_deg(angles_text);
    SeedStream rng(cfg.seed, 1);
    const EwamProfile profile = cfg.ewam.realize(cfg.layout.n_ewam, rng);
    const EchoCoefficients coeffs = coefficients_for(cfg, angles, profile);
    SolverOptions opts;
    opts.mode = reflection_mode_from_string(mode_name);
    SeedStream mode_rng(cfg.seed, 2);
    const SolveReport report = optimize_reflection(coeffs, opts, mode_rng);
    write_text(out_path, solve_report_to_json(report));
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& mode_name,
                 const std::string& out_path, std::optional<std::uint64_t> seed) {
    AppConfig cfg = make_config(config_path);
    if (seed) cfg.seed = *seed;
    SeedStream rng(cfg.seed, 1);
    const EwamProfile profile = cfg.ewam.realize(cfg.layout.n_ewam, rng);
    const EchoCoefficients coeffs = coefficients_for(cfg, cfg.scenario.surface_angles, profile);
    SolverOptions opts;
    opts.mode = reflection_mode_from_string(mode_name);
    SeedStream mode_rng(cfg.seed, 2);
    const SolveReport report = optimize_reflection(coeffs, opts, mode_rng);

    const PathGain gain = cfg.scenario.path_gain();
    const CVec a_es = upa_response(cfg.scenario.surface_angles, cfg.layout);
    const CVec a_radar = upa_response(cfg.scenario.radar_angles, cfg.radar.shape);
    const LosChannel to_irs = los_channel(gain, irs_response(a_es, cfg.layout), a_radar);
    const LosChannel to_ewam = los_channel(gain, ewam_response(a_es, cfg.layout), a_radar);
    const double snr = snr_full(to_irs, to_ewam, report.theta, profile.coefficients(),
                                cfg.radar.noise_variance);
    const double p_d = detection_probability(snr, cfg.radar.false_alarm);

    nlohmann::json doc;
    doc["snr"] = snr;
    doc["snr_db"] = snr > 0.0 ? 10.0 * std::log10(snr) : -200.0;
    doc["p_d"] = p_d;
    doc["p_fa"] = cfg.radar.false_alarm;
    doc["method"] = report.method;
    doc["scenario"] = {{"distance", cfg.scenario.distance},
                       {"speed", cfg.scenario.speed},
                       {"wavelength", cfg.scenario.wavelength},
                       {"reference_gain", cfg.scenario.reference_gain},
                       {"noise_variance", cfg.radar.noise_variance},
                       {"radar_antennas", cfg.radar.shape.total()},
                       {"surface_azimuth_deg", rad_to_deg(cfg.scenario.surface_angles.azimuth)},
                       {"radar_azimuth_deg", rad_to_deg(cfg.scenario.radar_angles.azimuth)},
                       {"n_irs", cfg.layout.n_irs},
                       {"n_ewam", cfg.layout.n_ewam},
                       {"normalized_snr", echo_objective(coeffs, report.theta)},
                       {"seed", cfg.seed}};
    write_text(out_path, doc.dump(2));
    return 0;
}

int run_sweep_cmd(const std::string& config_path, int figure, const std::string& csv_path,
                  const std::string& svg_path, std::optional<std::uint64_t> seed,
                  std::optional<int> trials) {
    AppConfig cfg = make_config(config_path);
    if (figure != 0) {
        ExperimentConfig preset = ExperimentConfig::figure_preset(figure);
        preset.seed = cfg.sweep.seed;
        preset.wavelength = cfg.sweep.wavelength;
        preset.spacing = cfg.sweep.spacing;
        preset.radar = cfg.sweep.radar;
        preset.scenario = cfg.sweep.scenario;
        preset.trials = cfg.sweep.trials;
        cfg.sweep = preset;
    }
    if (seed) cfg.sweep.seed = *seed;
    if (trials) cfg.sweep.trials = *trials;
    const SweepResult result = run_sweep(cfg.sweep);
    emit_csv(result, csv_path);
    if (!svg_path.empty()) emit_plot(result, svg_path);
    for (const auto& point : result.points)
        if (!point.error.empty())
            std::cerr << "warning: grid point " << point.grid_value << " skipped: " << point.error
                      << '\n';
    return 0;
}

int run_table(const std::string& config_path, const std::string& out_path, double step_deg,
              std::optional<std::uint64_t> seed) {
    AppConfig cfg = make_config(config_path);
    if (seed) cfg.seed = *seed;
    const LookupTable table =
        build_lookup_table(cfg.layout, cfg.ewam.absorb, cfg.seed, step_deg);
    write_text(out_path, table.to_json());
    return 0;
}

// Oracle cross-check: closed-form law, projected-gradient agreement, duality
// gap, KKT residuals, the two SNR routes, and the Marcum-Q symmetry relation.
int run_validate(int instances) {
    SeedStream rng(20240915);
    double worst_gap = 0.0, worst_pg = 0.0, worst_law = 0.0, worst_resid = 0.0;
    for (int i = 0; i < instances; ++i) {
        const int n1 = 1 + static_cast<int>(rng.next_below(128));
        const int n2 = 2 * (1 + static_cast<int>(rng.next_below(20)));
        const SurfaceLayout layout{1, n1 + n2, n1, n2, 0.05, 0.1};
        const AnglePair angles{rng.next_uniform(-kPi / 2, kPi / 2),
                               rng.next_uniform(-kPi / 2, kPi / 2)};
        const CVec a_es = upa_response(angles, layout);
        EwamProfile profile;
        profile.absorb = RVec(n2);
        profile.phase = RVec(n2);
        for (int k = 0; k < n2; ++k) {
            profile.absorb[k] = rng.next_unit();
            profile.phase[k] = rng.next_uniform(0.0, 2.0 * kPi);
        }
        const EchoCoefficients coeffs = build_echo_coefficients(
            irs_response(a_es, layout), ewam_response(a_es, layout), profile);
        const SolveReport kkt = solve_kkt(coeffs);
        const SolveReport pg = solve_projected_gradient(coeffs);
        const double law = std::pow(std::max(0.0, std::abs(coeffs.c) - n1), 2);
        worst_gap = std::max(worst_gap, std::abs(kkt.primal_value - kkt.dual_value));
        worst_pg = std::max(worst_pg, std::abs(kkt.primal_value - pg.primal_value));
        worst_law = std::max(worst_law,
                             std::abs(kkt.primal_value - law) / std::max(1.0, law));
        worst_resid = std::max({worst_resid, kkt.residuals.stationarity,
                                kkt.residuals.complementarity, kkt.residuals.feasibility});
    }
    std::printf("solver cross-check over %d instances:\n", instances);
    std::printf("  max |primal-dual| gap      %.3e\n", worst_gap);
    std::printf("  max |kkt - proj.grad|      %.3e\n", worst_pg);
    std::printf("  max closed-form deviation  %.3e\n", worst_law);
    std::printf("  max KKT residual           %.3e\n", worst_resid);

    double worst_snr = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n1 = 1 + static_cast<int>(rng.next_below(12));
        const int n2 = 2 * (1 + static_cast<int>(rng.next_below(10)));
        const SurfaceLayout layout{1, n1 + n2, n1, n2, 0.05, 0.1};
        const RadarArrayShape radar{1 + static_cast<int>(rng.next_below(3)),
                                    1 + static_cast<int>(rng.next_below(3)), 0.05, 0.1};
        ScenarioGeometry geom;
        geom.distance = rng.next_uniform(1000.0, 10000.0);
        geom.radar_angles = {rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0)};
        geom.surface_angles = {rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0)};
        const PathGain gain = geom.path_gain();
        const CVec a_es = upa_response(geom.surface_angles, layout);
        const CVec a_radar = upa_response(geom.radar_angles, radar);
        EwamProfile profile;
        profile.absorb = RVec::Constant(n2, rng.next_unit());
        profile.phase = RVec(n2);
        for (int k = 0; k < n2; ++k) profile.phase[k] = rng.next_uniform(0.0, 2.0 * kPi);
        const CVec a_irs = irs_response(a_es, layout);
        const CVec a_ewam = ewam_response(a_es, layout);
        const EchoCoefficients coeffs = build_echo_coefficients(a_irs, a_ewam, profile);
        CVec theta(n1);
        for (int k = 0; k < n1; ++k)
            theta[k] = std::polar(rng.next_unit(), rng.next_uniform(0.0, 2.0 * kPi));
        const double sigma2 = 1e-10;
        const LosChannel to_irs = los_channel(gain, a_irs, a_radar);
        const LosChannel to_ewam = los_channel(gain, a_ewam, a_radar);
        const double full = snr_full(to_irs, to_ewam, theta, profile.coefficients(), sigma2);
        const double factored =
            snr_factored(coeffs, theta, radar_norm(to_irs.gain, a_radar), sigma2);
        worst_snr = std::max(worst_snr,
                             std::abs(full - factored) / std::max({full, factored, 1e-300}));
    }
    std::printf("  max SNR route deviation    %.3e (relative)\n", worst_snr);

    double worst_marcum = 0.0;
    for (double a = 0.5; a <= 4.0; a += 0.5) {
        for (double b = 0.5; b <= 4.0; b += 0.5) {
            const double lhs = marcum_q1(a, b) + marcum_q1(b, a);
            const double rhs =
                1.0 + std::exp(-(a * a + b * b) / 2.0) * std::cyl_bessel_i(0.0, a * b);
            worst_marcum = std::max(worst_marcum, std::abs(lhs - rhs));
        }
    }
    std::printf("  max Marcum symmetry error  %.3e\n", worst_marcum);

    const bool ok = worst_gap <= 1e-8 && worst_pg <= 1e-6 && worst_law <= 1e-9 &&
                    worst_resid <= 1e-8 && worst_snr <= 1e-10 && worst_marcum <= 1e-8;
    std::printf("validation %s\n", ok ? "passed" : "FAILED");
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-aided electromagnetic stealth simulator"};
    app.require_subcommand(1);

    std::string config_path, angles_text, mode_name = "full", out_path = "-";
    std::string csv_path, svg_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int figure = 0;
    double step_deg = 1.0;
    int instances = 500;

    auto* solve = app.add_subcommand("solve", "solve one reflection instance");
    solve->add_option("--config", config_path, "JSON config file");
    solve->add_option("--angles", angles_text, "surface azimuth,elevation in degrees");
    solve->add_option("--mode", mode_name,
                      "full|phase_only|amplitude_only|random_phase|none");
    solve->add_option("--out", out_path, "output path ('-' for stdout)");
    solve->add_option("--seed", seed, "seed override");

    auto* simulate = app.add_subcommand("simulate", "compute radar SNR and detection probability");
    simulate->add_option("--config", config_path, "JSON config file");
    simulate->add_option("--mode", mode_name,
                         "full|phase_only|amplitude_only|random_phase|none");
    simulate->add_option("--out", out_path, "output path ('-' for stdout)");
    simulate->add_option("--seed", seed, "seed override");

    auto* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep");
    sweep->add_option("--config", config_path, "JSON config file");
    sweep->add_option("--figure", figure, "figure preset (2, 3, or 4)")
        ->check(CLI::IsMember({2, 3, 4}));
    sweep->add_option("--out-csv", csv_path, "CSV output path")->required();
    sweep->add_option("--out-svg", svg_path, "SVG output path");
    sweep->add_option("--seed", seed, "seed override");
    sweep->add_option("--trials", trials, "trials per grid point override");

    auto* table = app.add_subcommand("table", "build the offline angle -> reflection table");
    table->add_option("--config", config_path, "JSON config file");
    table->add_option("--out", out_path, "output path")->required();
    table->add_option("--step", step_deg, "angle grid step in degrees");
    table->add_option("--seed", seed, "seed override");

    auto* validate = app.add_subcommand("validate", "run the oracle cross-check suite");
    validate->add_option("--instances", instances, "number of random instances");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(config_path, angles_text, mode_name, out_path, seed);
        if (simulate->parsed()) return run_simulate(config_path, mode_name, out_path, seed);
        if (sweep->parsed())
            return run_sweep_cmd(config_path, figure, csv_path, svg_path, seed, trials);
        if (table->parsed()) return run_table(config_path, out_path, step_deg, seed);
        if (validate->parsed()) return run_validate(instances);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
