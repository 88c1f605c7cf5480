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

// Command-line front end: JSON config file + flag overrides, subcommand
// dispatch, and CSV / JSON / SVG emission.
//
// Exit codes: 0 success, 1 computation error (e.g. no collapse in flat
// spacetime), 2 config or usage error, 3 verification failure, 4 capability
// error (oracle asked for N > 8).
#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qclock/engine.hpp"
#include "qclock/io.hpp"

namespace qclock::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitCapability = 4;

/// All validation problems found in a configuration, each prefixed with its
/// field path.
struct ConfigError : Error {
    std::vector<std::string> issues;

    explicit ConfigError(std::vector<std::string> list) : Error(join(list)), issues(std::move(list)) {}

    static std::string join(const std::vector<std::string>& list) {
        std::string s;
        for (const auto& i : list) {
            s += (s.empty() ? "" : "\n") + i;
        }
        return s;
    }
};

/// A frequency given in exactly one of the accepted units.
struct FrequencyInput {
    enum class Unit { Angular, Hertz, Wavelength } unit = Unit::Wavelength;
    double value = 0.0;

    double angular() const {
        switch (unit) {
            case Unit::Angular: return value;
            case Unit::Hertz: return frequency_to_angular(value);
            case Unit::Wavelength: return wavelength_to_angular(value);
        }
        return 0.0;
    }
};

struct TauGridInput {
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<int> count;
    std::vector<double> values;  // explicit grid wins when non-empty
};

struct RunConfig {
    GravityConfig gravity{kStandardGravity, kSpeedOfLight, 20.0, 0.0};
    FrequencyInput bin1{FrequencyInput::Unit::Wavelength, 780e-9};
    FrequencyInput bin2{FrequencyInput::Unit::Wavelength, 894e-9};
    int photons = 2;
    double phi = 0.0;
    double tau_upper = 0.0;
    double tau_lower = 0.0;
    double eta_upper = 1.0;
    double eta_lower = 1.0;

    TauGridInput tau_grid;
    std::vector<Model> models{Model::AnalyticParity, Model::AnalyticAllSamePort, Model::AnalyticMz};
    bool loss = false;

    LogRange delta_f{1e9, 1e15, 200};
    LogRange height{1.0, 1e4, 200};
    std::optional<int> heatmap_photons;
    std::vector<Marker> markers = default_markers();

    Suite suite = Suite::Quick;
    Model zero_model = Model::AnalyticParity;
    std::string state_kind = "hom";
    std::string state_stage = "output";

    ClockConfig clock() const {
        ClockConfig c;
        c.omega1 = bin1.angular();
        c.omega2 = bin2.angular();
        c.photons = photons;
        c.phi = phi;
        c.tau_upper = tau_upper;
        c.tau_lower = tau_lower;
        c.eta_upper = eta_upper;
        c.eta_lower = eta_lower;
        return c;
    }
};

namespace detail {

using nlohmann::json;

class Reader {
  public:
    std::vector<std::string> issues;

    template <typename T>
    void read(const json& obj, const std::string& path, const char* key, T& out) {
        if (!obj.contains(key)) {
            return;
        }
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception&) {
            issues.push_back(path + "." + key + ": wrong type");
        }
    }

    template <typename T>
    void read(const json& obj, const std::string& path, const char* key, std::optional<T>& out) {
        if (obj.contains(key)) {
            T v{};
            read(obj, path, key, v);
            out = v;
        }
    }

    void read_frequency(const json& obj, const std::string& path, FrequencyInput& out) {
        static const std::pair<const char*, FrequencyInput::Unit> kForms[] = {
            {"angular_rad_s", FrequencyInput::Unit::Angular},
            {"frequency_hz", FrequencyInput::Unit::Hertz},
            {"wavelength_m", FrequencyInput::Unit::Wavelength},
        };
        if (!obj.is_object()) {
            issues.push_back(path + ": expected a table");
            return;
        }
        int found = 0;
        for (const auto& [key, unit] : kForms) {
            if (obj.contains(key)) {
                ++found;
                out.unit = unit;
                read(obj, path, key, out.value);
            }
        }
        if (found != 1) {
            issues.push_back(path + ": give exactly one of angular_rad_s, frequency_hz, wavelength_m");
        }
    }

    void read_log_range(const json& obj, const std::string& path, LogRange& out) {
        if (!obj.is_object()) {
            issues.push_back(path + ": expected a table");
            return;
        }
        read(obj, path, "min", out.min);
        read(obj, path, "max", out.max);
        read(obj, path, "count", out.count);
    }

    bool expect_table(const json& root, const char* key) {
        if (!root.contains(key)) {
            return false;
        }
        if (!root.at(key).is_object()) {
            issues.push_back(std::string(key) + ": expected a table");
            return false;
        }
        return true;
    }
};

inline void parse_models(const std::vector<std::string>& names, const std::string& path, std::vector<Model>& out,
                         std::vector<std::string>& issues) {
    std::vector<Model> models;
    for (const auto& n : names) {
        if (auto m = parse_model(n)) {
            models.push_back(*m);
        } else {
            issues.push_back(path + ": unknown model '" + n + "'");
        }
    }
    if (names.empty()) {
        issues.push_back(path + ": at least one model required");
    }
    out = std::move(models);
}

}  // namespace detail

/// Applies a JSON config document on top of `cfg`. Throws ConfigError listing
/// every problem found.
inline void apply_config_json(const nlohmann::json& root, RunConfig& cfg) {
    using nlohmann::json;
    detail::Reader r;
    if (!root.is_object()) {
        throw ConfigError({"<root>: expected a table"});
    }
    if (r.expect_table(root, "gravity")) {
        const json& g = root.at("gravity");
        r.read(g, "gravity", "g", cfg.gravity.g);
        r.read(g, "gravity", "h_upper", cfg.gravity.h_upper);
        r.read(g, "gravity", "h_lower", cfg.gravity.h_lower);
    }
    if (r.expect_table(root, "clock")) {
        const json& c = root.at("clock");
        r.read(c, "clock", "photons", cfg.photons);
        r.read(c, "clock", "phi", cfg.phi);
        r.read(c, "clock", "tau_upper", cfg.tau_upper);
        r.read(c, "clock", "tau_lower", cfg.tau_lower);
        r.read(c, "clock", "eta_upper", cfg.eta_upper);
        r.read(c, "clock", "eta_lower", cfg.eta_lower);
        if (c.contains("bin1")) {
            r.read_frequency(c.at("bin1"), "clock.bin1", cfg.bin1);
        }
        if (c.contains("bin2")) {
            r.read_frequency(c.at("bin2"), "clock.bin2", cfg.bin2);
        }
    }
    if (r.expect_table(root, "sweep")) {
        const json& s = root.at("sweep");
        if (s.contains("tau")) {
            const json& t = s.at("tau");
            if (t.is_array()) {
                r.read(s, "sweep", "tau", cfg.tau_grid.values);
            } else if (t.is_object()) {
                r.read(t, "sweep.tau", "start", cfg.tau_grid.start);
                r.read(t, "sweep.tau", "stop", cfg.tau_grid.stop);
                r.read(t, "sweep.tau", "count", cfg.tau_grid.count);
            } else {
                r.issues.push_back("sweep.tau: expected a list or a {start, stop, count} table");
            }
        }
        if (s.contains("models")) {
            std::vector<std::string> names;
            r.read(s, "sweep", "models", names);
            detail::parse_models(names, "sweep.models", cfg.models, r.issues);
        }
        r.read(s, "sweep", "loss", cfg.loss);
    }
    if (r.expect_table(root, "heatmap")) {
        const json& h = root.at("heatmap");
        if (h.contains("delta_f_hz")) {
            r.read_log_range(h.at("delta_f_hz"), "heatmap.delta_f_hz", cfg.delta_f);
        }
        if (h.contains("height_m")) {
            r.read_log_range(h.at("height_m"), "heatmap.height_m", cfg.height);
        }
        r.read(h, "heatmap", "photons", cfg.heatmap_photons);
        if (h.contains("markers")) {
            const json& ms = h.at("markers");
            if (!ms.is_array()) {
                r.issues.push_back("heatmap.markers: expected a list");
            } else {
                cfg.markers.clear();
                for (std::size_t i = 0; i < ms.size(); ++i) {
                    const std::string path = "heatmap.markers[" + std::to_string(i) + "]";
                    Marker m;
                    if (!ms[i].is_object()) {
                        r.issues.push_back(path + ": expected a table");
                        continue;
                    }
                    r.read(ms[i], path, "name", m.name);
                    r.read(ms[i], path, "delta_f_hz", m.delta_f_hz);
                    r.read(ms[i], path, "height_m", m.height_m);
                    cfg.markers.push_back(m);
                }
            }
        }
    }
    if (r.expect_table(root, "verify")) {
        std::string suite = std::string(suite_name(cfg.suite));
        r.read(root.at("verify"), "verify", "suite", suite);
        if (suite == "quick") {
            cfg.suite = Suite::Quick;
        } else if (suite == "full") {
            cfg.suite = Suite::Full;
        } else {
            r.issues.push_back("verify.suite: expected 'quick' or 'full'");
        }
    }
    if (r.expect_table(root, "state")) {
        r.read(root.at("state"), "state", "kind", cfg.state_kind);
        r.read(root.at("state"), "state", "stage", cfg.state_stage);
    }
    if (!r.issues.empty()) {
        throw ConfigError(std::move(r.issues));
    }
}

/// Semantic checks on the merged configuration, reported together.
inline void validate_run_config(const RunConfig& cfg) {
    std::vector<std::string> issues;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) {
            issues.push_back(msg);
        }
    };
    check(cfg.gravity.g >= 0.0 && std::isfinite(cfg.gravity.g), "gravity.g: must be finite and >= 0");
    check(std::isfinite(cfg.gravity.h_upper), "gravity.h_upper: must be finite");
    check(std::isfinite(cfg.gravity.h_lower), "gravity.h_lower: must be finite");
    if (issues.empty()) {
        try {
            validate(cfg.gravity);
        } catch (const Error& e) {
            issues.push_back(std::string("gravity: ") + e.what());
        }
    }
    for (const auto& [path, f] : {std::pair{"clock.bin1", cfg.bin1}, std::pair{"clock.bin2", cfg.bin2}}) {
        check(std::isfinite(f.value) && (f.unit == FrequencyInput::Unit::Angular || f.value > 0.0) &&
                  (f.unit != FrequencyInput::Unit::Angular || f.value >= 0.0),
              std::string(path) + ": must be positive and finite");
    }
    if (issues.empty()) {
        check(cfg.bin1.angular() != cfg.bin2.angular(), "clock: bin1 and bin2 must differ");
    }
    check(cfg.photons >= 1, "clock.photons: must be >= 1");
    check(cfg.tau_upper >= 0.0, "clock.tau_upper: must be >= 0");
    check(cfg.tau_lower >= 0.0, "clock.tau_lower: must be >= 0");
    check(cfg.eta_upper >= 0.0 && cfg.eta_upper <= 1.0, "clock.eta_upper: must lie in [0, 1]");
    check(cfg.eta_lower >= 0.0 && cfg.eta_lower <= 1.0, "clock.eta_lower: must lie in [0, 1]");
    if (cfg.tau_grid.count) {
        check(*cfg.tau_grid.count >= 2, "sweep.tau.count: must be >= 2");
    }
    if (cfg.tau_grid.start) {
        check(*cfg.tau_grid.start >= 0.0, "sweep.tau.start: must be >= 0");
    }
    if (cfg.tau_grid.start && cfg.tau_grid.stop) {
        check(*cfg.tau_grid.stop > *cfg.tau_grid.start, "sweep.tau.stop: must exceed start");
    }
    for (std::size_t i = 1; i < cfg.tau_grid.values.size(); ++i) {
        if (!(cfg.tau_grid.values[i] > cfg.tau_grid.values[i - 1])) {
            issues.push_back("sweep.tau: grid must be strictly increasing");
            break;
        }
    }
    check(cfg.tau_grid.values.empty() || cfg.tau_grid.values.size() >= 2, "sweep.tau: need at least two points");
    check(!cfg.models.empty(), "sweep.models: at least one model required");
    for (const auto& [path, range] :
         {std::pair{"heatmap.delta_f_hz", cfg.delta_f}, std::pair{"heatmap.height_m", cfg.height}}) {
        check(range.min > 0.0 && range.max > range.min, std::string(path) + ": need 0 < min < max");
        check(range.count >= 2, std::string(path) + ".count: must be >= 2");
    }
    if (cfg.heatmap_photons) {
        check(*cfg.heatmap_photons >= 1, "heatmap.photons: must be >= 1");
    }
    for (std::size_t i = 0; i < cfg.markers.size(); ++i) {
        const auto& m = cfg.markers[i];
        const std::string path = "heatmap.markers[" + std::to_string(i) + "]";
        check(m.delta_f_hz > 0.0, path + ".delta_f_hz: must be > 0");
        check(m.height_m > 0.0, path + ".height_m: must be > 0");
    }
    check(cfg.state_kind == "hom" || cfg.state_kind == "noon", "state.kind: expected 'hom' or 'noon'");
    check(cfg.state_stage == "input" || cfg.state_stage == "memory" || cfg.state_stage == "output",
          "state.stage: expected 'input', 'memory' or 'output'");
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

/// Storage-time grid: explicit list, else linspace with defaults
/// [0, 4 tau_ent(N = 1)] and 2048 points (10 s span in flat spacetime).
inline std::vector<double> resolve_tau_grid(const RunConfig& cfg) {
    if (!cfg.tau_grid.values.empty()) {
        return cfg.tau_grid.values;
    }
    double stop = 10.0;
    if (cfg.tau_grid.stop) {
        stop = *cfg.tau_grid.stop;
    } else {
        ClockConfig one = cfg.clock();
        one.photons = 1;
        try {
            stop = 4.0 * collapse_time(cfg.gravity, one);
        } catch (const NoCollapse&) {
        }
    }
    return linspace(cfg.tau_grid.start.value_or(0.0), stop, cfg.tau_grid.count.value_or(2048));
}

namespace detail {

struct Overrides {
    std::string config_path;
    std::optional<double> gravity, height, height_upper, height_lower;
    std::optional<double> wavelength1, wavelength2, frequency1, frequency2, omega1, omega2;
    std::optional<int> photons;
    std::optional<double> phi, tau, tau_upper, tau_lower, eta, eta_upper, eta_lower;
    std::optional<double> tau_start, tau_stop;
    std::optional<int> tau_count;
    std::optional<std::string> models;
    bool loss = false;
    std::optional<double> df_min, df_max, h_min, h_max;
    std::optional<int> df_count, h_count;
    std::optional<std::string> suite, zero_model, state_kind, state_stage;
    std::string output;
    std::string svg;
};

inline void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--gravity", o.gravity, "gravitational acceleration (m/s^2)");
    sub->add_option("--height", o.height, "upper-arm height above the lower arm (m)");
    sub->add_option("--height-upper", o.height_upper, "upper-arm height (m)");
    sub->add_option("--height-lower", o.height_lower, "lower-arm height (m)");
    sub->add_option("--wavelength1", o.wavelength1, "bin 1 wavelength (m)");
    sub->add_option("--wavelength2", o.wavelength2, "bin 2 wavelength (m)");
    sub->add_option("--frequency1", o.frequency1, "bin 1 frequency (Hz)");
    sub->add_option("--frequency2", o.frequency2, "bin 2 frequency (Hz)");
    sub->add_option("--omega1", o.omega1, "bin 1 angular frequency (rad/s)");
    sub->add_option("--omega2", o.omega2, "bin 2 angular frequency (rad/s)");
    sub->add_option("--photons", o.photons, "photons per bin N");
    sub->add_option("--phi", o.phi, "source phase (rad)");
    sub->add_option("--eta", o.eta, "memory transmissivity, both arms");
    sub->add_option("--eta-upper", o.eta_upper, "upper memory transmissivity");
    sub->add_option("--eta-lower", o.eta_lower, "lower memory transmissivity");
    sub->add_option("-o,--output", o.output, "output file (default: standard output)");
}

inline void merge_frequency(const std::optional<double>& wl, const std::optional<double>& hz,
                            const std::optional<double>& rad, const std::string& path, FrequencyInput& out,
                            std::vector<std::string>& issues) {
    const int given = int(wl.has_value()) + int(hz.has_value()) + int(rad.has_value());
    if (given > 1) {
        issues.push_back(path + ": give exactly one of --wavelength, --frequency, --omega");
        return;
    }
    if (wl) {
        out = {FrequencyInput::Unit::Wavelength, *wl};
    } else if (hz) {
        out = {FrequencyInput::Unit::Hertz, *hz};
    } else if (rad) {
        out = {FrequencyInput::Unit::Angular, *rad};
    }
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

inline RunConfig build_config(const Overrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) {
            throw ConfigError({"--config: cannot open " + o.config_path});
        }
        nlohmann::json root;
        try {
            root = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError({"--config: " + std::string(e.what())});
        }
        apply_config_json(root, cfg);
    }
    std::vector<std::string> issues;
    if (o.gravity) cfg.gravity.g = *o.gravity;
    if (o.height) {
        cfg.gravity.h_upper = *o.height;
        cfg.gravity.h_lower = 0.0;
    }
    if (o.height_upper) cfg.gravity.h_upper = *o.height_upper;
    if (o.height_lower) cfg.gravity.h_lower = *o.height_lower;
    merge_frequency(o.wavelength1, o.frequency1, o.omega1, "clock.bin1", cfg.bin1, issues);
    merge_frequency(o.wavelength2, o.frequency2, o.omega2, "clock.bin2", cfg.bin2, issues);
    if (o.photons) cfg.photons = *o.photons;
    if (o.phi) cfg.phi = *o.phi;
    if (o.tau) cfg.tau_upper = cfg.tau_lower = *o.tau;
    if (o.tau_upper) cfg.tau_upper = *o.tau_upper;
    if (o.tau_lower) cfg.tau_lower = *o.tau_lower;
    if (o.eta) cfg.eta_upper = cfg.eta_lower = *o.eta;
    if (o.eta_upper) cfg.eta_upper = *o.eta_upper;
    if (o.eta_lower) cfg.eta_lower = *o.eta_lower;
    if (o.tau_start || o.tau_stop || o.tau_count) cfg.tau_grid.values.clear();
    if (o.tau_start) cfg.tau_grid.start = *o.tau_start;
    if (o.tau_stop) cfg.tau_grid.stop = *o.tau_stop;
    if (o.tau_count) cfg.tau_grid.count = *o.tau_count;
    if (o.models) parse_models(split_csv(*o.models), "--models", cfg.models, issues);
    if (o.loss) cfg.loss = true;
    if (o.df_min) cfg.delta_f.min = *o.df_min;
    if (o.df_max) cfg.delta_f.max = *o.df_max;
    if (o.df_count) cfg.delta_f.count = *o.df_count;
    if (o.h_min) cfg.height.min = *o.h_min;
    if (o.h_max) cfg.height.max = *o.h_max;
    if (o.h_count) cfg.height.count = *o.h_count;
    if (o.suite) {
        if (*o.suite == "quick") {
            cfg.suite = Suite::Quick;
        } else if (*o.suite == "full") {
            cfg.suite = Suite::Full;
        } else {
            issues.push_back("--suite: expected 'quick' or 'full'");
        }
    }
    if (o.zero_model) {
        auto m = parse_model(*o.zero_model);
        if (m && (*m == Model::AnalyticParity || *m == Model::OracleParity)) {
            cfg.zero_model = *m;
        } else {
            issues.push_back("--model: expected analytic_parity or oracle_parity");
        }
    }
    if (o.state_kind) cfg.state_kind = *o.state_kind;
    if (o.state_stage) cfg.state_stage = *o.state_stage;
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    validate_run_config(cfg);
    return cfg;
}

/// Writes through `emit` to the file at `path`, or to `out` when empty.
inline void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& emit) {
    if (path.empty() || path == "-") {
        emit(out);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError({"--output: cannot open " + path});
    }
    emit(f);
}

inline StateVector dump_state(const RunConfig& cfg) {
    const ClockConfig clock = cfg.clock();
    const bool hom = cfg.state_kind == "hom";
    if (cfg.state_stage == "input") {
        return hom ? build_hom_input(clock.photons, clock.phi) : build_noon_input(clock.photons, clock.phi);
    }
    if (hom) {
        if (cfg.state_stage == "memory") {
            return apply_memories(build_hom_input(clock.photons, clock.phi), cfg.gravity, clock);
        }
        return run_hom_pipeline(cfg.gravity, clock, cfg.loss).state;
    }
    if (cfg.state_stage == "memory") {
        throw ConfigError({"state.stage: 'memory' is only defined for the hom state"});
    }
    return run_mz_pipeline(cfg.gravity, clock, cfg.loss).state;
}

}  // namespace detail

/// Entry point shared by the qclock binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gravitational quantum-clock HOM interferometry simulator", "qclock"};
    app.require_subcommand(1);
    detail::Overrides o;

    auto* inter = app.add_subcommand("interferogram", "signal versus storage time (CSV)");
    detail::add_common(inter, o);
    inter->add_option("--tau-start", o.tau_start, "first storage time (s)");
    inter->add_option("--tau-stop", o.tau_stop, "last storage time (s)");
    inter->add_option("--tau-count", o.tau_count, "number of storage times");
    inter->add_option("--models", o.models, "comma-separated model list");
    inter->add_flag("--loss", o.loss, "apply memory loss and post-select on 2N photons");
    inter->add_option("--svg", o.svg, "also render an SVG plot");

    auto* heat = app.add_subcommand("heatmap", "collapse time over (delta f, height) (CSV)");
    detail::add_common(heat, o);
    heat->add_option("--df-min", o.df_min, "smallest frequency difference (Hz)");
    heat->add_option("--df-max", o.df_max, "largest frequency difference (Hz)");
    heat->add_option("--df-count", o.df_count, "frequency grid points");
    heat->add_option("--h-min", o.h_min, "smallest height (m)");
    heat->add_option("--h-max", o.h_max, "largest height (m)");
    heat->add_option("--h-count", o.h_count, "height grid points");
    heat->add_option("--svg", o.svg, "also render an SVG map");

    auto* ct = app.add_subcommand("collapse-time", "print the first-collapse storage time (s)");
    detail::add_common(ct, o);

    auto* fz = app.add_subcommand("first-zero", "bisect the interferogram for its first zero (s)");
    detail::add_common(fz, o);
    fz->add_option("--model", o.zero_model, "analytic_parity or oracle_parity");

    auto* ver = app.add_subcommand("verify", "oracle versus closed-form report (JSON)");
    detail::add_common(ver, o);
    ver->add_option("--suite", o.suite, "quick or full");

    auto* dump = app.add_subcommand("state-dump", "serialize a pipeline state (JSON)");
    detail::add_common(dump, o);
    dump->add_option("--state", o.state_kind, "hom or noon");
    dump->add_option("--stage", o.state_stage, "input, memory or output");
    dump->add_option("--tau", o.tau, "storage time in both arms (s)");
    dump->add_flag("--loss", o.loss, "apply memory loss and post-select");

    for (auto* sub : {ct, fz}) {
        sub->add_option("--tau", o.tau, "storage time in both arms (s)");
    }

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    }

    try {
        const RunConfig cfg = detail::build_config(o);
        const GravityConfig& gravity = cfg.gravity;
        const ClockConfig clock = cfg.clock();

        if (inter->parsed()) {
            SweepSpec spec{gravity, clock, resolve_tau_grid(cfg), cfg.models, cfg.loss};
            const auto records = interferogram(spec);
            detail::with_output(o.output, out, [&](std::ostream& os) { write_interferogram_csv(os, records); });
            if (!o.svg.empty()) {
                detail::with_output(o.svg, out, [&](std::ostream& os) { write_interferogram_svg(os, records); });
            }
        } else if (heat->parsed()) {
            HeatmapSpec spec{gravity, cfg.delta_f, cfg.height, cfg.heatmap_photons.value_or(cfg.photons), cfg.markers};
            const auto cells = collapse_heatmap(spec);
            detail::with_output(o.output, out, [&](std::ostream& os) { write_heatmap_csv(os, cells); });
            if (!o.svg.empty()) {
                detail::with_output(o.svg, out, [&](std::ostream& os) { write_heatmap_svg(os, cells); });
            }
        } else if (ct->parsed()) {
            const double t = collapse_time(gravity, clock);
            detail::with_output(o.output, out, [&](std::ostream& os) { os << format_double(t) << '\n'; });
        } else if (fz->parsed()) {
            const double t = first_zero(gravity, clock, cfg.zero_model);
            detail::with_output(o.output, out, [&](std::ostream& os) { os << format_double(t) << '\n'; });
        } else if (ver->parsed()) {
            const VerifyReport report = verify(cfg.suite);
            detail::with_output(o.output, out, [&](std::ostream& os) { os << report_to_json(report).dump(2) << '\n'; });
            err << "verify " << suite_name(report.suite) << ": " << (report.pass ? "pass" : "FAIL")
                << " (max_delta=" << format_double(report.max_delta) << ")\n";
            return report.pass ? kExitOk : kExitVerifyFailed;
        } else if (dump->parsed()) {
            const StateVector s = detail::dump_state(cfg);
            detail::with_output(o.output, out, [&](std::ostream& os) { os << state_to_json(s).dump(2) << '\n'; });
        }
    } catch (const ConfigError& e) {
        err << "config error:\n" << e.what() << '\n';
        return kExitConfig;
    } catch (const CapabilityError& e) {
        err << "capability error: " << e.what() << '\n';
        return kExitCapability;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kExitConfig;
    } catch (const OutOfRegime& e) {
        err << "out of regime: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace qclock::cli
