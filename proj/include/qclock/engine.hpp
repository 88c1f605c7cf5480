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

// Parameter studies: storage-time interferograms, collapse-time maps,
// first-zero search, spectra, and the oracle-vs-closed-form harness.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qclock/analytic.hpp"
#include "qclock/errors.hpp"
#include "qclock/fock.hpp"
#include "qclock/gravity.hpp"
#include "qclock/parallel.hpp"
#include "qclock/pipeline.hpp"
#include "qclock/spectrum.hpp"

namespace qclock {

enum class Model {
    AnalyticParity,
    AnalyticAllSamePort,
    AnalyticMz,
    OracleParity,
    OracleAllSamePort,
    OracleMz,
};

inline constexpr std::string_view model_name(Model m) {
    switch (m) {
        case Model::AnalyticParity: return "analytic_parity";
        case Model::AnalyticAllSamePort: return "analytic_all_same_port";
        case Model::AnalyticMz: return "analytic_mz";
        case Model::OracleParity: return "oracle_parity";
        case Model::OracleAllSamePort: return "oracle_all_same_port";
        case Model::OracleMz: return "oracle_mz";
    }
    return "?";
}

inline std::optional<Model> parse_model(std::string_view s) {
    for (Model m : {Model::AnalyticParity, Model::AnalyticAllSamePort, Model::AnalyticMz, Model::OracleParity,
                    Model::OracleAllSamePort, Model::OracleMz}) {
        if (model_name(m) == s) {
            return m;
        }
    }
    return std::nullopt;
}

inline bool is_oracle(Model m) {
    return m == Model::OracleParity || m == Model::OracleAllSamePort || m == Model::OracleMz;
}

/// count points from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2) {
        throw InvalidGrid("linspace needs at least two points");
    }
    std::vector<double> v(static_cast<std::size_t>(count));
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] = start + step * i;
    }
    v.back() = stop;
    return v;
}

struct SweepSpec {
    GravityConfig gravity;
    ClockConfig clock;  // storage times are overridden by the grid
    std::vector<double> tau_grid;
    std::vector<Model> models{Model::AnalyticParity};
    bool loss_enabled = false;
};

struct SweepRecord {
    double tau = 0.0;
    Model model = Model::AnalyticParity;
    double value = 0.0;
    double phi_hom = 0.0;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

inline void validate(const SweepSpec& spec) {
    validate(spec.gravity);
    validate(spec.clock);
    if (spec.tau_grid.size() < 2) {
        throw InvalidGrid("storage-time grid needs at least two points");
    }
    for (std::size_t i = 1; i < spec.tau_grid.size(); ++i) {
        if (!(spec.tau_grid[i] > spec.tau_grid[i - 1])) {
            throw InvalidGrid("storage-time grid must be strictly increasing");
        }
    }
    if (!(spec.tau_grid.front() >= 0.0)) {
        throw InvalidGrid("storage times must be >= 0");
    }
    if (spec.models.empty()) {
        throw InvalidParameter("no models requested");
    }
}

inline ClockConfig at_storage_time(ClockConfig clock, double tau) {
    clock.tau_upper = tau;
    clock.tau_lower = tau;
    return clock;
}

/// Evaluates every model in `models` at one configuration; each oracle
/// pipeline runs at most once.
inline std::vector<double> evaluate_models(const GravityConfig& gravity, const ClockConfig& clock,
                                           const std::vector<Model>& models, bool loss) {
    std::optional<PipelineResult> hom;
    std::optional<PipelineResult> mz;
    const double phi_hom = hom_phase(gravity, clock);
    std::vector<double> out;
    out.reserve(models.size());
    for (Model m : models) {
        switch (m) {
            case Model::AnalyticParity: out.push_back(parity_signal(phi_hom)); break;
            case Model::AnalyticAllSamePort:
                out.push_back(p_all_same_port(clock.photons, phi_hom, AllSamePortVariant::Consistent));
                break;
            case Model::AnalyticMz:
                out.push_back(SignalModel{SignalKind::MzCoherence, gravity, clock}.evaluate());
                break;
            case Model::OracleParity:
            case Model::OracleAllSamePort:
                if (!hom) {
                    hom = run_hom_pipeline(gravity, clock, loss);
                }
                out.push_back(m == Model::OracleParity ? parity_expectation(hom->state, Port::Plus)
                                                       : all_plus_probability(hom->state));
                break;
            case Model::OracleMz:
                if (!mz) {
                    mz = run_mz_pipeline(gravity, clock, loss);
                }
                out.push_back(mz_signal(mz->state, clock.photons));
                break;
        }
    }
    return out;
}

inline double evaluate_model(const GravityConfig& gravity, const ClockConfig& clock, Model model, bool loss) {
    return evaluate_models(gravity, clock, {model}, loss).front();
}

inline void require_oracle_capacity(const std::vector<Model>& models, int photons) {
    for (Model m : models) {
        if (is_oracle(m) && photons > kMaxPhotons) {
            throw CapabilityError("oracle models support at most N = " + std::to_string(kMaxPhotons) +
                                  " photons per bin");
        }
    }
}

/// One record per (tau, model), tau-major.
inline std::vector<SweepRecord> interferogram(const SweepSpec& spec, unsigned workers = default_worker_count()) {
    validate(spec);
    require_oracle_capacity(spec.models, spec.clock.photons);
    const std::size_t n_models = spec.models.size();
    std::vector<SweepRecord> records(spec.tau_grid.size() * n_models);
    parallel_for(spec.tau_grid.size(), workers, [&](std::size_t i) {
        const double tau = spec.tau_grid[i];
        const ClockConfig clock = at_storage_time(spec.clock, tau);
        const double phi_hom = hom_phase(spec.gravity, clock);
        const auto values = evaluate_models(spec.gravity, clock, spec.models, spec.loss_enabled);
        for (std::size_t j = 0; j < n_models; ++j) {
            records[i * n_models + j] = {tau, spec.models[j], values[j], phi_hom};
        }
    });
    return records;
}

struct LogRange {
    double min = 1.0;
    double max = 10.0;
    int count = 2;

    std::vector<double> values() const {
        if (!(min > 0.0) || !(max > min) || count < 2) {
            throw InvalidGrid("log range needs 0 < min < max and count >= 2");
        }
        std::vector<double> v(static_cast<std::size_t>(count));
        const double lmin = std::log(min);
        const double step = (std::log(max) - lmin) / (count - 1);
        for (int i = 0; i < count; ++i) {
            v[static_cast<std::size_t>(i)] = std::exp(lmin + step * i);
        }
        v.front() = min;
        v.back() = max;
        return v;
    }
};

struct Marker {
    std::string name;
    double delta_f_hz = 0.0;
    double height_m = 0.0;
};

/// Pr:YSO (606 nm) against Rb D2 (780 nm).
inline double pr_rb_delta_f() { return kSpeedOfLight / 606e-9 - kSpeedOfLight / 780e-9; }

inline std::vector<Marker> default_markers() {
    return {
        {"i", 10e9, 500.0},
        {"ii", 49e12, 75.0},
        {"iii", 49e12, 20.0},
        {"iv", pr_rb_delta_f(), 3.0},
    };
}

struct HeatmapSpec {
    GravityConfig gravity;  // heights are overridden per cell
    LogRange delta_f{1e9, 1e15, 200};
    LogRange height{1.0, 1e4, 200};
    int photons = 2;
    std::vector<Marker> markers = default_markers();
};

struct HeatmapCell {
    double delta_f_hz = 0.0;
    double height_m = 0.0;
    double tau_ent_s = 0.0;
    std::string marker;  // empty for grid cells

    friend bool operator==(const HeatmapCell&, const HeatmapCell&) = default;
};

/// Collapse time with the upper arm at `height` above the lower arm.
inline double collapse_time_at(const GravityConfig& base, double delta_f_hz, double height, int photons) {
    GravityConfig g = base;
    g.h_upper = height;
    g.h_lower = 0.0;
    ClockConfig clock;
    clock.omega1 = 0.0;
    clock.omega2 = frequency_to_angular(delta_f_hz);
    clock.photons = photons;
    return collapse_time(g, clock);
}

/// Grid cells delta_f-major, then the named markers.
inline std::vector<HeatmapCell> collapse_heatmap(const HeatmapSpec& spec, unsigned workers = default_worker_count()) {
    if (spec.photons < 1) {
        throw InvalidParameter("photon number must be >= 1");
    }
    const auto fs = spec.delta_f.values();
    const auto hs = spec.height.values();
    std::vector<HeatmapCell> cells(fs.size() * hs.size());
    parallel_for(fs.size(), workers, [&](std::size_t i) {
        for (std::size_t j = 0; j < hs.size(); ++j) {
            cells[i * hs.size() + j] = {fs[i], hs[j], collapse_time_at(spec.gravity, fs[i], hs[j], spec.photons), ""};
        }
    });
    for (const auto& m : spec.markers) {
        cells.push_back({m.delta_f_hz, m.height_m, collapse_time_at(spec.gravity, m.delta_f_hz, m.height_m, spec.photons),
                         m.name});
    }
    return cells;
}

inline constexpr double kFirstZeroRelTol = 1e-12;

/// First zero of the parity interferogram by bisection on [0, 2 tau_ent].
inline double first_zero(const GravityConfig& gravity, const ClockConfig& clock, Model model) {
    if (model != Model::AnalyticParity && model != Model::OracleParity) {
        throw InvalidParameter("first_zero supports analytic_parity and oracle_parity");
    }
    if (clock.phi != 0.0) {
        throw InvalidParameter("first_zero assumes source phase 0");
    }
    require_oracle_capacity({model}, clock.photons);
    double estimate = 0.0;
    try {
        estimate = collapse_time(gravity, clock);
    } catch (const NoCollapse& e) {
        throw NoZero(std::string("no zero crossing: ") + e.what());
    }
    auto signal = [&](double tau) { return evaluate_model(gravity, at_storage_time(clock, tau), model, false); };
    double lo = 0.0;
    double hi = 2.0 * estimate;
    double f_lo = signal(lo);
    const double f_hi = signal(hi);
    if (f_lo * f_hi > 0.0) {
        throw NoZero("no sign change of the interferogram in the search bracket");
    }
    for (int it = 0; it < 200 && (hi - lo) > kFirstZeroRelTol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = signal(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Spectrum of one model's records.
inline Spectrum records_spectrum(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        throw InvalidGrid("no records");
    }
    std::vector<double> t;
    std::vector<double> v;
    for (const auto& r : records) {
        if (r.model != records.front().model) {
            throw InvalidParameter("spectral analysis needs records of a single model");
        }
        t.push_back(r.tau);
        v.push_back(r.value);
    }
    return compute_spectrum(t, v);
}

/// Spectral peaks of one model's records, largest first.
inline std::vector<SpectralComponent> spectral_components(const std::vector<SweepRecord>& records) {
    return records_spectrum(records).peaks();
}

inline std::vector<SweepRecord> select_model(const std::vector<SweepRecord>& records, Model m) {
    std::vector<SweepRecord> out;
    for (const auto& r : records) {
        if (r.model == m) {
            out.push_back(r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification harness

/// Reproducible phases: std::minstd_rand (x <- 48271 x mod 2^31 - 1) seeded
/// with kPhaseSeed, phase = 2 pi x / (2^31 - 1).
inline constexpr std::uint_fast32_t kPhaseSeed = 20260415;

inline std::vector<double> verification_phases(int count) {
    std::minstd_rand gen(kPhaseSeed);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(2.0 * std::numbers::pi * static_cast<double>(gen()) / 2147483647.0);
    }
    return out;
}

enum class Suite { Quick, Full };

inline constexpr std::string_view suite_name(Suite s) { return s == Suite::Quick ? "quick" : "full"; }

struct VerifyCase {
    int photons = 0;
    double phi_hom = 0.0;
    double tau = 0.0;
    double eta = 1.0;
    std::string quantity;
    double analytic = 0.0;
    double oracle = 0.0;
    double abs_delta = 0.0;
    bool expected_inconsistent = false;
    std::optional<double> ratio;  // oracle / analytic, audit rows only
};

struct VerifyReport {
    static constexpr double kThreshold = 1e-9;

    Suite suite = Suite::Quick;
    std::vector<VerifyCase> cases;
    double max_delta = 0.0;
    bool pass = false;
};

/// Rb (780 nm) / Cs (894 nm) memories, 20 m apart.
inline GravityConfig rb_cs_gravity() { return {kStandardGravity, kSpeedOfLight, 20.0, 0.0}; }

inline ClockConfig rb_cs_clock(int photons) {
    ClockConfig c;
    c.omega1 = wavelength_to_angular(780e-9);
    c.omega2 = wavelength_to_angular(894e-9);
    c.photons = photons;
    return c;
}

namespace detail {

struct CaseKey {
    int photons;
    double phi_hom;
    double tau;
    double eta;
};

inline VerifyCase make_case(const CaseKey& key, std::string quantity, double analytic, double oracle) {
    VerifyCase c;
    c.photons = key.photons;
    c.phi_hom = key.phi_hom;
    c.tau = key.tau;
    c.eta = key.eta;
    c.quantity = std::move(quantity);
    c.analytic = analytic;
    c.oracle = oracle;
    c.abs_delta = std::abs(analytic - oracle);
    return c;
}

inline void add_case(VerifyReport& r, const CaseKey& key, std::string quantity, double analytic, double oracle) {
    r.cases.push_back(make_case(key, std::move(quantity), analytic, oracle));
}

inline void verify_distribution(VerifyReport& r, int n, double phi_hom) {
    // Source phase carries phi_HOM directly; storage times are zero.
    const GravityConfig flat;
    ClockConfig clock = rb_cs_clock(n);
    clock.phi = phi_hom;
    const StateVector out = run_hom_pipeline(flat, clock, false).state;
    const CountDistribution dist = outcome_distribution(out);
    const CaseKey key{n, phi_hom, 0.0, 1.0};
    for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= n; ++l) {
            auto it = dist.find({k, l});
            const double oracle = it == dist.end() ? 0.0 : it->second;
            add_case(r, key, "P[" + std::to_string(k) + "," + std::to_string(l) + "]", p_kl(n, k, l, phi_hom),
                     oracle);
        }
    }
    add_case(r, key, "parity_plus", parity_signal(phi_hom), parity_expectation(out, Port::Plus));
    add_case(r, key, "parity_minus", parity_signal(phi_hom), parity_expectation(out, Port::Minus));
    const double p00 = all_plus_probability(out);
    add_case(r, key, "P00_consistent", p_all_same_port(n, phi_hom, AllSamePortVariant::Consistent), p00);
    VerifyCase audit =
        make_case(key, "P00_printed_prefactor", p_all_same_port(n, phi_hom, AllSamePortVariant::PrintedPrefactor), p00);
    audit.expected_inconsistent = true;
    if (audit.analytic > 1e-12) {
        audit.ratio = p00 / audit.analytic;
    }
    r.cases.push_back(std::move(audit));
}

}  // namespace detail

inline VerifyReport verify(Suite suite) {
    VerifyReport report;
    report.suite = suite;
    const int max_n = suite == Suite::Quick ? 3 : 5;
    const auto phases = verification_phases(suite == Suite::Quick ? 5 : 20);

    for (int n = 1; n <= max_n; ++n) {
        for (double phi : phases) {
            detail::verify_distribution(report, n, phi);
        }
    }

    if (suite == Suite::Full) {
        const GravityConfig gravity = rb_cs_gravity();
        // Gravity-driven phases through the memory channel.
        for (int n = 1; n <= max_n; ++n) {
            const ClockConfig base = rb_cs_clock(n);
            const double t_ent = collapse_time(gravity, base);
            for (double tau : linspace(0.0, 4.0 * t_ent, 9)) {
                const ClockConfig clock = at_storage_time(base, tau);
                const double phi_hom = hom_phase(gravity, clock);
                detail::add_case(report, {n, phi_hom, tau, 1.0}, "parity_memory", parity_signal(phi_hom),
                                 evaluate_model(gravity, clock, Model::OracleParity, false));
            }
        }
        // Loss and post-selection.
        for (double eta : {1.0, 0.9, 0.5}) {
            for (int n = 1; n <= max_n; ++n) {
                ClockConfig clock = at_storage_time(rb_cs_clock(n), 0.3);
                clock.eta_upper = eta;
                clock.eta_lower = eta;
                const double phi_hom = hom_phase(gravity, clock);
                const PipelineResult res = run_hom_pipeline(gravity, clock, true);
                const detail::CaseKey key{n, phi_hom, clock.tau_upper, eta};
                detail::add_case(report, key, "postselection_weight", loss_survival(eta, eta, n),
                                 res.postselection_weight);
                detail::add_case(report, key, "parity_postselected", parity_signal(phi_hom),
                                 parity_expectation(res.state, Port::Plus));
            }
        }
        // Mach-Zehnder: single photon minus-port probability, and the N = 2
        // normalized minus-port count.
        const double t1 = collapse_time(gravity, rb_cs_clock(1));
        const double d = delta_inverse_redshift(gravity);
        for (int n : {1, 2}) {
            const ClockConfig base = rb_cs_clock(n);
            for (double tau : linspace(0.0, 4.0 * t1, 64)) {
                const ClockConfig clock = at_storage_time(base, tau);
                const PipelineResult res = run_mz_pipeline(gravity, clock, false);
                const double pc = mz_coherence(clock.omega1, clock.omega2, d, tau);
                const detail::CaseKey key{n, hom_phase(gravity, clock), tau, 1.0};
                if (n == 1) {
                    detail::add_case(report, key, "mz_minus_probability", (1.0 + pc) / 2.0,
                                     mz_all_minus_probability(res.state, n));
                } else {
                    detail::add_case(report, key, "mz_signal", pc, mz_signal(res.state, n));
                }
            }
        }
    }

    report.max_delta = 0.0;
    for (const auto& c : report.cases) {
        if (!c.expected_inconsistent) {
            report.max_delta = std::max(report.max_delta, c.abs_delta);
        }
    }
    const bool any_nan = std::any_of(report.cases.begin(), report.cases.end(), [](const VerifyCase& c) {
        return !c.expected_inconsistent && std::isnan(c.abs_delta);
    });
    report.pass = !any_nan && report.max_delta < VerifyReport::kThreshold;
    return report;
}

}  // namespace qclock
