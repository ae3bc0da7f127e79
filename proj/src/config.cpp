// SPDX-License-Identifier: Apache-2.0

#include "stealth/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stealth/errors.hpp"

namespace stealth {

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string("config: field '") + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string("config: field '") + key + "' must be an integer");
    return j[key].get<int>();
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    if (name == "n_irs") return SweepVariable::irs_elements;
    if (name == "absorb_p") return SweepVariable::absorb_efficiency;
    // control-mode comparisons sweep N1 against a fixed absorber block
    if (name == "n_irs_fixed_ewam" || name == "control_mode")
        return SweepVariable::irs_elements_fixed_ewam;
    throw ConfigError("config: unknown sweep variable '" + name + "'");
}

}  // namespace

EwamProfile EwamSettings::realize(int n, SeedStream& rng) const {
    if (fixed) {
        if (fixed->size() != n)
            throw ConfigError("config: fixed ewam records do not match the layout size");
        return *fixed;
    }
    return EwamProfile::uniform(n, absorb, rng);
}

AppConfig parse_app_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");

    AppConfig cfg;

    if (doc.contains("layout")) {
        const json& l = doc["layout"];
        cfg.layout.wavelength = get_num(l, "wavelength", cfg.layout.wavelength);
        cfg.layout.spacing = get_num(l, "spacing", cfg.layout.wavelength / 2.0);
        cfg.layout.n_x = get_int(l, "n_x", cfg.layout.n_x);
        cfg.layout.n_z = get_int(l, "n_z", cfg.layout.n_z);
        cfg.layout.n_irs = get_int(l, "n_irs", cfg.layout.n_irs);
        cfg.layout.n_ewam = get_int(l, "n_ewam", cfg.layout.total() - cfg.layout.n_irs);
        cfg.layout.validate();
    }

    if (doc.contains("ewam")) {
        const json& e = doc["ewam"];
        cfg.ewam.absorb = get_num(e, "absorb", cfg.ewam.absorb);
        if (!(cfg.ewam.absorb >= 0.0 && cfg.ewam.absorb <= 1.0))
            throw ConfigError("config: ewam absorb must lie in [0,1]");
        if (e.contains("records")) cfg.ewam.fixed = EwamProfile::from_json(e["records"].dump());
    }

    if (doc.contains("radar")) {
        const json& r = doc["radar"];
        cfg.radar.shape.wavelength = get_num(r, "wavelength", cfg.layout.wavelength);
        cfg.radar.shape.spacing = get_num(r, "spacing", cfg.radar.shape.wavelength / 2.0);
        cfg.radar.shape.m_x = get_int(r, "m_x", cfg.radar.shape.m_x);
        cfg.radar.shape.m_z = get_int(r, "m_z", cfg.radar.shape.m_z);
        cfg.radar.noise_variance = get_num(r, "noise_variance", cfg.radar.noise_variance);
        cfg.radar.false_alarm = get_num(r, "false_alarm", cfg.radar.false_alarm);
        cfg.radar.samples_per_block = get_int(r, "samples_per_block", cfg.radar.samples_per_block);
        cfg.radar.validate();
    }

    cfg.scenario.wavelength = cfg.layout.wavelength;
    if (doc.contains("scenario")) {
        const json& s = doc["scenario"];
        cfg.scenario.reference_gain = get_num(s, "reference_gain", cfg.scenario.reference_gain);
        cfg.scenario.distance = get_num(s, "distance", cfg.scenario.distance);
        cfg.scenario.speed = get_num(s, "speed", cfg.scenario.speed);
        cfg.scenario.coherence_interval =
            get_num(s, "coherence_interval", cfg.scenario.coherence_interval);
        cfg.scenario.radar_angles.azimuth = deg_to_rad(get_num(s, "radar_azimuth_deg", 0.0));
        cfg.scenario.radar_angles.elevation = deg_to_rad(get_num(s, "radar_elevation_deg", 0.0));
        cfg.scenario.surface_angles.azimuth = deg_to_rad(get_num(s, "surface_azimuth_deg", 0.0));
        cfg.scenario.surface_angles.elevation = deg_to_rad(get_num(s, "surface_elevation_deg", 0.0));
        if (!(cfg.scenario.distance > 0.0))
            throw ConfigError("config: scenario distance must be positive");
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer()) throw ConfigError("config: seed must be an integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        if (s.contains("figure")) {
            cfg.sweep = ExperimentConfig::figure_preset(get_int(s, "figure", 2));
        }
        if (s.contains("variable"))
            cfg.sweep.variable = sweep_variable_from_string(s["variable"].get<std::string>());
        if (s.contains("grid")) {
            if (!s["grid"].is_array()) throw ConfigError("config: sweep grid must be an array");
            cfg.sweep.grid.clear();
            for (const auto& v : s["grid"]) cfg.sweep.grid.push_back(v.get<double>());
        }
        cfg.sweep.total_elements = get_int(s, "total_elements", cfg.sweep.total_elements);
        cfg.sweep.ewam_elements = get_int(s, "ewam_elements", cfg.sweep.ewam_elements);
        cfg.sweep.irs_elements = get_int(s, "irs_elements", cfg.sweep.irs_elements);
        cfg.sweep.absorb = get_num(s, "absorb", cfg.sweep.absorb);
        cfg.sweep.trials = get_int(s, "trials", cfg.sweep.trials);
        cfg.sweep.angle_step_deg = get_num(s, "angle_step_deg", cfg.sweep.angle_step_deg);
    }
    cfg.sweep.seed = cfg.seed;
    cfg.sweep.wavelength = cfg.layout.wavelength;
    cfg.sweep.spacing = cfg.layout.spacing;
    cfg.sweep.radar = cfg.radar;
    cfg.sweep.scenario = cfg.scenario;
    cfg.sweep.validate();
    return cfg;
}

AppConfig load_app_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_app_config(buffer.str());
}

std::string solve_report_to_json(const SolveReport& report) {
    nlohmann::json doc;
    nlohmann::json theta = nlohmann::json::array();
    for (Eigen::Index i = 0; i < report.theta.size(); ++i)
        theta.push_back({report.theta[i].real(), report.theta[i].imag()});
    nlohmann::json lambda = nlohmann::json::array();
    for (Eigen::Index i = 0; i < report.lambda.size(); ++i) lambda.push_back(report.lambda[i]);
    doc["theta"] = std::move(theta);
    doc["lambda"] = std::move(lambda);
    doc["primal"] = report.primal_value;
    doc["dual"] = report.dual_value;
    doc["residuals"] = {{"stationarity", report.residuals.stationarity},
                        {"complementarity", report.residuals.complementarity},
                        {"feasibility", report.residuals.feasibility}};
    doc["method"] = report.method;
    doc["iterations"] = report.iterations;
    return doc.dump(2);
}

}  // namespace stealth
