// SPDX-License-Identifier: Apache-2.0

#include "stealth/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "stealth/errors.hpp"

namespace stealth {

namespace {

constexpr double kDbFloor = -200.0;

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int precision) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

constexpr const char* kSeriesColor[5] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};

const char* variable_label(SweepVariable v) {
    switch (v) {
        case SweepVariable::irs_elements: return "IRS elements N1";
        case SweepVariable::absorb_efficiency: return "absorbing efficiency p";
        case SweepVariable::irs_elements_fixed_ewam: return "IRS elements N1 (fixed absorber)";
    }
    return "grid value";
}

}  // namespace

double snr_to_db(double snr) {
    if (!(snr > 0.0)) return kDbFloor;
    return std::max(10.0 * std::log10(snr), kDbFloor);
}

std::string render_csv(const SweepResult& result) {
    std::string out = "grid_value,method,trials,snr_mean,snr_median,snr_min,snr_max,pd_mean\n";
    for (const auto& point : result.points) {
        if (!point.error.empty()) continue;
        for (std::size_t m = 0; m < kSweepMethods.size(); ++m) {
            const MethodStats& s = point.stats[m];
            out += fmt(point.grid_value);
            out += ',';
            out += method_label(kSweepMethods[m]);
            out += ',';
            out += std::to_string(point.trials);
            out += ',';
            out += fmt(s.snr_mean);
            out += ',';
            out += fmt(s.snr_median);
            out += ',';
            out += fmt(s.snr_min);
            out += ',';
            out += fmt(s.snr_max);
            out += ',';
            out += fmt(s.pd_mean);
            out += '\n';
        }
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    write_file(path, render_csv(result));
}

std::string render_svg(const SweepResult& result) {
    std::vector<const GridPointResult*> points;
    for (const auto& point : result.points)
        if (point.error.empty()) points.push_back(&point);
    if (points.empty()) throw std::invalid_argument("render_svg: empty sweep result");

    const double width = 860, height = 520;
    const double ml = 80, mr = 180, mt = 46, mb = 64;

    double x_lo = points.front()->grid_value, x_hi = x_lo;
    double y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const auto* point : points) {
        x_lo = std::min(x_lo, point->grid_value);
        x_hi = std::max(x_hi, point->grid_value);
        for (const auto& stats : point->stats) {
            const double db = snr_to_db(stats.snr_mean);
            if (first) {
                y_lo = y_hi = db;
                first = false;
            }
            y_lo = std::min(y_lo, db);
            y_hi = std::max(y_hi, db);
        }
    }
    if (x_hi - x_lo < 1e-12) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (y_hi - y_lo < 1e-12) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const auto sx = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    const auto sy = [&](double v) {
        return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_fixed(width, 0) +
           "\" height=\"" + fmt_fixed(height, 0) + "\" viewBox=\"0 0 " + fmt_fixed(width, 0) + " " +
           fmt_fixed(height, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_fixed(width / 2, 1) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
           "Normalized echo SNR vs " +
           std::string(variable_label(result.config.variable)) + "</text>\n";

    // axes
    svg += "<line x1=\"" + fmt_fixed(ml, 1) + "\" y1=\"" + fmt_fixed(height - mb, 1) + "\" x2=\"" +
           fmt_fixed(width - mr, 1) + "\" y2=\"" + fmt_fixed(height - mb, 1) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_fixed(ml, 1) + "\" y1=\"" + fmt_fixed(mt, 1) + "\" x2=\"" +
           fmt_fixed(ml, 1) + "\" y2=\"" + fmt_fixed(height - mb, 1) + "\" stroke=\"black\"/>\n";

    for (const auto* point : points) {
        const double x = sx(point->grid_value);
        svg += "<line x1=\"" + fmt_fixed(x, 2) + "\" y1=\"" + fmt_fixed(height - mb, 1) +
               "\" x2=\"" + fmt_fixed(x, 2) + "\" y2=\"" + fmt_fixed(height - mb + 5, 1) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_fixed(x, 2) + "\" y=\"" + fmt_fixed(height - mb + 20, 1) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(point->grid_value) + "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / 5.0;
        const double y = sy(v);
        svg += "<line x1=\"" + fmt_fixed(ml - 5, 1) + "\" y1=\"" + fmt_fixed(y, 2) + "\" x2=\"" +
               fmt_fixed(ml, 1) + "\" y2=\"" + fmt_fixed(y, 2) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_fixed(ml - 9, 1) + "\" y=\"" + fmt_fixed(y + 4, 2) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt_fixed(v, 1) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_fixed((ml + width - mr) / 2, 1) + "\" y=\"" +
           fmt_fixed(height - 16, 1) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           std::string(variable_label(result.config.variable)) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt_fixed((mt + height - mb) / 2, 1) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " +
           fmt_fixed((mt + height - mb) / 2, 1) + ")\">mean normalized SNR (dB)</text>\n";

    for (std::size_t m = 0; m < kSweepMethods.size(); ++m) {
        std::string poly;
        for (const auto* point : points) {
            poly += fmt_fixed(sx(point->grid_value), 2) + "," +
                    fmt_fixed(sy(snr_to_db(point->stats[m].snr_mean)), 2) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(kSeriesColor[m]) +
               "\" stroke-width=\"1.8\" points=\"" + poly + "\"/>\n";
        for (const auto* point : points) {
            svg += "<circle cx=\"" + fmt_fixed(sx(point->grid_value), 2) + "\" cy=\"" +
                   fmt_fixed(sy(snr_to_db(point->stats[m].snr_mean)), 2) + "\" r=\"3\" fill=\"" +
                   std::string(kSeriesColor[m]) + "\"/>\n";
        }
    }

    const double lx = width - mr + 16;
    for (std::size_t m = 0; m < kSweepMethods.size(); ++m) {
        const double ly = mt + 18 + 22 * static_cast<double>(m);
        svg += "<line x1=\"" + fmt_fixed(lx, 1) + "\" y1=\"" + fmt_fixed(ly - 4, 1) + "\" x2=\"" +
               fmt_fixed(lx + 26, 1) + "\" y2=\"" + fmt_fixed(ly - 4, 1) + "\" stroke=\"" +
               std::string(kSeriesColor[m]) + "\" stroke-width=\"1.8\"/>\n";
        svg += "<text x=\"" + fmt_fixed(lx + 32, 1) + "\" y=\"" + fmt_fixed(ly, 1) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               std::string(method_label(kSweepMethods[m])) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const SweepResult& result, const std::string& path) {
    write_file(path, render_svg(result));
}

}  // namespace stealth
