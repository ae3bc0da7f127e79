// SPDX-License-Identifier: Apache-2.0
//
// Deterministic CSV and SVG emission of sweep results.

#pragma once

#include <string>

#include "stealth/sweep.hpp"

namespace stealth {

// Mean normalized SNR in dB with a -200 dB floor for exact zeros.
double snr_to_db(double snr);

// Header: grid_value,method,trials,snr_mean,snr_median,snr_min,snr_max,pd_mean
// One row per (grid point, method); floats round-trip exactly.
std::string render_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

// One series per method, grid value on x, mean normalized SNR (dB) on y.
std::string render_svg(const SweepResult& result);
void emit_plot(const SweepResult& result, const std::string& path);

}  // namespace stealth
