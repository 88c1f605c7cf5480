// Copyright 2026 The qclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serialization: CSV tables, JSON state dumps and verification reports, and
// small SVG renderings of interferograms and heatmaps.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qclock/engine.hpp"
#include "qclock/fock.hpp"

namespace qclock {

/// 17 significant digits: round-trips every double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_interferogram_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "tau_s,model,value,phi_hom\n";
    for (const auto& r : records) {
        os << format_double(r.tau) << ',' << model_name(r.model) << ',' << format_double(r.value) << ','
           << format_double(r.phi_hom) << '\n';
    }
}

inline void write_heatmap_csv(std::ostream& os, const std::vector<HeatmapCell>& cells) {
    os << "delta_f_hz,height_m,tau_ent_s,marker\n";
    for (const auto& c : cells) {
        os << format_double(c.delta_f_hz) << ',' << format_double(c.height_m) << ',' << format_double(c.tau_ent_s)
           << ',' << c.marker << '\n';
    }
}

/// {"modes": [...], "terms": [{"occ": [...], "re": x, "im": y}]}, terms in
/// lexicographic occupation order.
inline nlohmann::json state_to_json(const StateVector& state) {
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& m : state.registry()) {
        modes.push_back(m.name());
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [occ, amp] : state.terms()) {
        terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return {{"modes", modes}, {"terms", terms}};
}

inline nlohmann::json report_to_json(const VerifyReport& report) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : report.cases) {
        nlohmann::json j{{"N", c.photons},
                         {"phi_hom", c.phi_hom},
                         {"tau", c.tau},
                         {"eta", c.eta},
                         {"quantity", c.quantity},
                         {"analytic", c.analytic},
                         {"oracle", c.oracle},
                         {"abs_delta", c.abs_delta},
                         {"status", c.expected_inconsistent ? "expected-inconsistent" : "checked"}};
        if (c.ratio) {
            j["ratio_oracle_over_analytic"] = *c.ratio;
        }
        cases.push_back(std::move(j));
    }
    return {{"suite", std::string(suite_name(report.suite))},
            {"max_delta", report.max_delta},
            {"threshold", VerifyReport::kThreshold},
            {"verdict", report.pass ? "pass" : "fail"},
            {"cases", cases}};
}

/// One polyline per model over storage time.
inline void write_interferogram_svg(std::ostream& os, const std::vector<SweepRecord>& records) {
    constexpr double kW = 800, kH = 400, kPad = 40;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::map<Model, std::vector<std::pair<double, double>>> series;
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double vmin = -1.0, vmax = 1.0;
    for (const auto& r : records) {
        series[r.model].emplace_back(r.tau, r.value);
        tmin = std::min(tmin, r.tau);
        tmax = std::max(tmax, r.tau);
        vmin = std::min(vmin, r.value);
        vmax = std::max(vmax, r.value);
    }
    if (!(tmax > tmin)) {
        tmax = tmin + 1.0;
    }
    auto px = [&](double t) { return kPad + (t - tmin) / (tmax - tmin) * (kW - 2 * kPad); };
    auto py = [&](double v) { return kH - kPad - (v - vmin) / (vmax - vmin) * (kH - 2 * kPad); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::size_t idx = 0;
    for (const auto& [model, pts] : series) {
        const char* color = kColors[idx % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
        for (const auto& [t, v] : pts) {
            os << px(t) << ',' << py(v) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << kW - 200 << "\" y=\"" << 20 + 16 * idx << "\" fill=\"" << color
           << "\" font-size=\"12\">" << model_name(model) << "</text>\n";
        ++idx;
    }
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 8 << "\" font-size=\"12\">storage time (s)</text>\n";
    os << "</svg>\n";
}

/// Log-log grid of collapse times, colour by log10(tau_ent).
inline void write_heatmap_svg(std::ostream& os, const std::vector<HeatmapCell>& cells) {
    std::vector<double> fs, hs;
    double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin;
    for (const auto& c : cells) {
        if (!c.marker.empty()) {
            continue;
        }
        fs.push_back(c.delta_f_hz);
        hs.push_back(c.height_m);
        lmin = std::min(lmin, std::log10(c.tau_ent_s));
        lmax = std::max(lmax, std::log10(c.tau_ent_s));
    }
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    constexpr double kSize = 600, kPad = 40;
    const double cw = fs.empty() ? 0 : (kSize - 2 * kPad) / fs.size();
    const double ch = hs.empty() ? 0 : (kSize - 2 * kPad) / hs.size();
    auto index_of = [](const std::vector<double>& v, double x) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\">\n";
    for (const auto& c : cells) {
        if (!c.marker.empty()) {
            continue;
        }
        const double u = lmax > lmin ? (std::log10(c.tau_ent_s) - lmin) / (lmax - lmin) : 0.0;
        const int red = static_cast<int>(255 * u);
        const int blue = 255 - red;
        os << "<rect x=\"" << kPad + cw * index_of(fs, c.delta_f_hz) << "\" y=\""
           << kSize - kPad - ch * (index_of(hs, c.height_m) + 1) << "\" width=\"" << cw << "\" height=\"" << ch
           << "\" fill=\"rgb(" << red << ",64," << blue << ")\"/>\n";
    }
    if (fs.size() > 1 && hs.size() > 1) {
        const double lf0 = std::log10(fs.front()), lf1 = std::log10(fs.back());
        const double lh0 = std::log10(hs.front()), lh1 = std::log10(hs.back());
        for (const auto& c : cells) {
            if (c.marker.empty()) {
                continue;
            }
            const double x = kPad + (std::log10(c.delta_f_hz) - lf0) / (lf1 - lf0) * (kSize - 2 * kPad);
            const double y = kSize - kPad - (std::log10(c.height_m) - lh0) / (lh1 - lh0) * (kSize - 2 * kPad);
            os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
            os << "<text x=\"" << x + 6 << "\" y=\"" << y - 6 << "\" font-size=\"12\">(" << c.marker << ")</text>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace qclock
