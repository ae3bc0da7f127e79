// SPDX-License-Identifier: Apache-2.0

#include "stealth/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "stealth/errors.hpp"

namespace stealth {

namespace {

// Near-square factorization used for per-point layouts; any split gives the
// same objective statistics since entry moduli are one.
std::pair<int, int> layout_shape(int total) {
    int best = 1;
    for (int k = 1; k * k <= total; ++k)
        if (total % k == 0) best = k;
    return {best, total / best};
}

struct TrialDraw {
    double azimuth = 0.0;
    RVec psi;
    RVec random_phases;
};

TrialDraw draw_trial(std::uint64_t seed, int trial, int n_angles, double step_deg, int n_ewam,
                     int n_irs) {
    SeedStream rng(seed, static_cast<std::uint64_t>(trial));
    TrialDraw draw;
    const auto idx = static_cast<double>(rng.next_below(static_cast<std::uint64_t>(n_angles)));
    draw.azimuth = deg_to_rad(-90.0 + idx * step_deg);
    draw.psi = RVec(n_ewam);
    for (int i = 0; i < n_ewam; ++i) draw.psi[i] = rng.next_uniform(0.0, 2.0 * kPi);
    draw.random_phases = RVec(n_irs);
    for (int i = 0; i < n_irs; ++i) draw.random_phases[i] = rng.next_uniform(0.0, 2.0 * kPi);
    return draw;
}

}  // namespace

const char* method_label(ReflectionMode mode) {
    switch (mode) {
        case ReflectionMode::full: return "proposed";
        case ReflectionMode::none: return "no_irs";
        case ReflectionMode::random_phase: return "random_phase";
        case ReflectionMode::amplitude_only: return "amplitude_only";
        case ReflectionMode::phase_only: return "phase_only";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (grid.empty()) throw ConfigError("sweep config: grid must be non-empty");
    if (trials < 1) throw ConfigError("sweep config: trials must be >= 1");
    if (!(angle_step_deg > 0.0)) throw ConfigError("sweep config: angle step must be positive");
    const double steps = 180.0 / angle_step_deg;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw ConfigError("sweep config: angle step must divide the 180-degree range");
    if (!(wavelength > 0.0) || !(spacing > 0.0))
        throw ConfigError("sweep config: wavelength and spacing must be positive");
    if (variable == SweepVariable::absorb_efficiency) {
        for (const double p : grid)
            if (!(p >= 0.0 && p <= 1.0))
                throw ConfigError("sweep config: absorbing efficiency grid must lie in [0,1]");
    }
    radar.validate();
}

ExperimentConfig ExperimentConfig::figure_preset(int figure) {
    ExperimentConfig cfg;
    cfg.radar.shape = RadarArrayShape{4, 4, 0.05, 0.1};
    switch (figure) {
        case 2:
            cfg.variable = SweepVariable::irs_elements;
            cfg.total_elements = 70;
            cfg.absorb = 0.7;
            cfg.grid = {0, 10, 20, 30, 40, 50, 60};
            break;
        case 3:
            cfg.variable = SweepVariable::absorb_efficiency;
            cfg.total_elements = 70;
            cfg.irs_elements = 20;
            cfg.grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
            break;
        case 4:
            cfg.variable = SweepVariable::irs_elements_fixed_ewam;
            cfg.ewam_elements = 40;
            cfg.absorb = 0.7;
            cfg.grid = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
            break;
        default:
            throw ConfigError("figure preset must be 2, 3, or 4");
    }
    return cfg;
}

MethodStats aggregate_samples(std::vector<double> snr, std::vector<double> pd) {
    MethodStats stats;
    if (snr.empty()) return stats;
    std::sort(snr.begin(), snr.end());
    std::sort(pd.begin(), pd.end());
    const auto n = snr.size();
    stats.snr_mean = std::accumulate(snr.begin(), snr.end(), 0.0) / static_cast<double>(n);
    stats.snr_median = n % 2 ? snr[n / 2] : 0.5 * (snr[n / 2 - 1] + snr[n / 2]);
    stats.snr_min = snr.front();
    stats.snr_max = snr.back();
    stats.pd_mean = std::accumulate(pd.begin(), pd.end(), 0.0) / static_cast<double>(n);
    return stats;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    const int n_angles = static_cast<int>(std::lround(180.0 / cfg.angle_step_deg)) + 1;
    const Complex alpha = cfg.scenario.path_gain().value();
    const double m_total = cfg.radar.shape.total();
    const double norm_const =
        std::norm(alpha) * std::norm(alpha) * m_total * m_total / cfg.radar.noise_variance;

    for (const double value : cfg.grid) {
        GridPointResult point;
        point.grid_value = value;
        point.trials = cfg.trials;
        int n1 = 0, n2 = 0;
        double p = cfg.absorb;
        switch (cfg.variable) {
            case SweepVariable::irs_elements:
                n1 = static_cast<int>(std::lround(value));
                n2 = cfg.total_elements - n1;
                break;
            case SweepVariable::absorb_efficiency:
                n1 = cfg.irs_elements;
                n2 = cfg.total_elements - n1;
                p = value;
                break;
            case SweepVariable::irs_elements_fixed_ewam:
                n1 = static_cast<int>(std::lround(value));
                n2 = cfg.ewam_elements;
                break;
        }
        if (n1 < 0 || n2 < 0 || n2 % 2 != 0) {
            point.error = "infeasible layout: n_irs=" + std::to_string(n1) +
                          " n_ewam=" + std::to_string(n2);
            result.points.push_back(std::move(point));
            continue;
        }
        const auto [nx, nz] = layout_shape(n1 + n2);
        const SurfaceLayout layout{nx, nz, n1, n2, cfg.spacing, cfg.wavelength};
        layout.validate();

        std::array<std::vector<double>, 5> pd_samples;
        for (auto& s : point.snr_samples) s.reserve(cfg.trials);
        for (auto& s : pd_samples) s.reserve(cfg.trials);

        for (int trial = 0; trial < cfg.trials; ++trial) {
            const TrialDraw draw =
                draw_trial(cfg.seed, trial, n_angles, cfg.angle_step_deg, n2, n1);
            const AnglePair angles{draw.azimuth, 0.0};
            const CVec a_es = upa_response(angles, layout);
            EwamProfile profile;
            profile.absorb = RVec::Constant(n2, p);
            profile.phase = draw.psi;
            const EchoCoefficients coeffs =
                build_echo_coefficients(irs_response(a_es, layout), ewam_response(a_es, layout), profile);

            for (std::size_t m = 0; m < kSweepMethods.size(); ++m) {
                const ReflectionMode mode = kSweepMethods[m];
                CVec theta;
                if (n1 == 0) {
                    theta = CVec();
                } else if (mode == ReflectionMode::full) {
                    theta = solve_kkt(coeffs).theta;
                } else if (mode == ReflectionMode::random_phase) {
                    theta = CVec(n1);
                    for (int i = 0; i < n1; ++i) theta[i] = std::polar(1.0, draw.random_phases[i]);
                } else {
                    SeedStream unused(0);
                    theta = baseline_reflection(coeffs, mode, unused);
                }
                const double snr = echo_objective(coeffs, theta);
                point.snr_samples[m].push_back(snr);
                pd_samples[m].push_back(
                    detection_probability(snr * norm_const, cfg.radar.false_alarm));
            }
        }
        for (std::size_t m = 0; m < kSweepMethods.size(); ++m)
            point.stats[m] = aggregate_samples(point.snr_samples[m], pd_samples[m]);
        result.points.push_back(std::move(point));
    }
    return result;
}

const LookupEntry& LookupTable::lookup(double azimuth_rad) const {
    if (entries.empty()) throw std::invalid_argument("lookup table is empty");
    const double deg = rad_to_deg(azimuth_rad);
    const auto idx = static_cast<std::size_t>(std::clamp<long>(
        std::lround((deg + 90.0) / angle_step_deg), 0, static_cast<long>(entries.size()) - 1));
    return entries[idx];
}

std::string LookupTable::to_json() const {
    nlohmann::json doc;
    doc["layout"] = {{"n_x", layout.n_x},         {"n_z", layout.n_z},
                     {"n_irs", layout.n_irs},     {"n_ewam", layout.n_ewam},
                     {"spacing", layout.spacing}, {"wavelength", layout.wavelength}};
    doc["absorb"] = absorb;
    doc["psi_seed"] = psi_seed;
    doc["angle_step_deg"] = angle_step_deg;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& entry : entries) {
        nlohmann::json theta = nlohmann::json::array();
        for (Eigen::Index i = 0; i < entry.theta.size(); ++i)
            theta.push_back({entry.theta[i].real(), entry.theta[i].imag()});
        list.push_back({{"azimuth_deg", entry.azimuth_deg},
                        {"objective", entry.objective},
                        {"theta", std::move(theta)}});
    }
    doc["entries"] = std::move(list);
    return doc.dump();
}

LookupTable LookupTable::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("lookup table: ") + e.what());
    }
    LookupTable table;
    const auto& l = doc.at("layout");
    table.layout = SurfaceLayout{l.at("n_x").get<int>(),    l.at("n_z").get<int>(),
                                 l.at("n_irs").get<int>(),  l.at("n_ewam").get<int>(),
                                 l.at("spacing").get<double>(), l.at("wavelength").get<double>()};
    table.absorb = doc.at("absorb").get<double>();
    table.psi_seed = doc.at("psi_seed").get<std::uint64_t>();
    table.angle_step_deg = doc.at("angle_step_deg").get<double>();
    for (const auto& item : doc.at("entries")) {
        LookupEntry entry;
        entry.azimuth_deg = item.at("azimuth_deg").get<double>();
        entry.objective = item.at("objective").get<double>();
        const auto& theta = item.at("theta");
        entry.theta = CVec(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i)
            entry.theta[static_cast<Eigen::Index>(i)] =
                Complex(theta[i][0].get<double>(), theta[i][1].get<double>());
        table.entries.push_back(std::move(entry));
    }
    return table;
}

LookupTable build_lookup_table(const SurfaceLayout& layout, double absorb, std::uint64_t psi_seed,
                               double angle_step_deg) {
    layout.validate();
    if (layout.n_irs < 1)
        throw ConfigError("lookup table: layout needs at least one IRS element");
    if (!(angle_step_deg > 0.0)) throw ConfigError("lookup table: angle step must be positive");
    SeedStream rng(psi_seed);
    const EwamProfile profile = EwamProfile::uniform(layout.n_ewam, absorb, rng);
    LookupTable table;
    table.layout = layout;
    table.absorb = absorb;
    table.psi_seed = psi_seed;
    table.angle_step_deg = angle_step_deg;
    const int n = static_cast<int>(std::lround(180.0 / angle_step_deg)) + 1;
    table.entries.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double az_deg = -90.0 + i * angle_step_deg;
        const AnglePair angles{deg_to_rad(az_deg), 0.0};
        const CVec a_es = upa_response(angles, layout);
        const EchoCoefficients coeffs =
            build_echo_coefficients(irs_response(a_es, layout), ewam_response(a_es, layout), profile);
        try {
            const SolveReport report = solve_kkt(coeffs);
            table.entries.push_back({az_deg, report.theta, report.primal_value});
        } catch (const SolverError& e) {
            throw SolverError("lookup table at azimuth " + std::to_string(az_deg) +
                                  " deg: " + e.what(),
                              e.stationarity, e.complementarity, e.feasibility, e.iterations);
        }
    }
    return table;
}

}  // namespace stealth
