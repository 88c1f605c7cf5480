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


#include "qclock/engine.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace qclock;
using std::numbers::pi;

namespace {

SweepSpec rb_cs_sweep(int n, std::vector<Model> models, int points, double span_collapses = 4.0) {
    SweepSpec s;
    s.gravity = rb_cs_gravity();
    s.clock = rb_cs_clock(n);
    s.tau_grid = linspace(0.0, span_collapses * collapse_time(s.gravity, rb_cs_clock(1)), points);
    s.models = std::move(models);
    return s;
}

}  // namespace

TEST(models, names_round_trip) {
    for (Model m : {Model::AnalyticParity, Model::AnalyticAllSamePort, Model::AnalyticMz, Model::OracleParity,
                    Model::OracleAllSamePort, Model::OracleMz}) {
        EXPECT_EQ(parse_model(model_name(m)), m);
    }
    EXPECT_FALSE(parse_model("parity").has_value());
    EXPECT_TRUE(is_oracle(Model::OracleMz));
    EXPECT_FALSE(is_oracle(Model::AnalyticMz));
}

TEST(linspace, endpoints) {
    const auto v = linspace(0.0, 1.0, 5);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v[2], 0.5);
    EXPECT_EQ(v.back(), 1.0);
    EXPECT_THROW(linspace(0.0, 1.0, 1), InvalidGrid);
}

TEST(interferogram, flat_is_constant) {
    SweepSpec s = rb_cs_sweep(2, {Model::AnalyticParity, Model::OracleParity}, 64);
    s.gravity.h_upper = s.gravity.h_lower = 7.0;
    s.clock.phi = 0.9;
    for (const auto& r : interferogram(s, 1)) {
        EXPECT_EQ(r.phi_hom, 0.9);
        // The oracle carries amplitude rounding from the beam-splitter expansion.
        EXPECT_NEAR(r.value, std::cos(0.9), r.model == Model::AnalyticParity ? 1e-15 : 1e-14);
    }
}

TEST(interferogram, layout_and_zero_bracket) {
    const SweepSpec s = rb_cs_sweep(2, {Model::AnalyticParity, Model::AnalyticMz}, 101);
    const auto recs = interferogram(s, 1);
    ASSERT_EQ(recs.size(), 202u);
    EXPECT_EQ(recs[0].model, Model::AnalyticParity);
    EXPECT_EQ(recs[1].model, Model::AnalyticMz);
    EXPECT_EQ(recs[2].tau, s.tau_grid[1]);
    const auto parity = select_model(recs, Model::AnalyticParity);
    std::size_t k = 1;
    while (k < parity.size() && parity[k].value > 0.0) {
        ++k;
    }
    ASSERT_LT(k, parity.size());
    EXPECT_LT(parity[k - 1].tau, 1.169);
    EXPECT_GT(parity[k].tau, 1.168);
}

TEST(interferogram, oracle_matches_analytic) {
    for (bool loss : {false, true}) {
        for (int n = 1; n <= 3; ++n) {
            SweepSpec s = rb_cs_sweep(n,
                                      {Model::AnalyticParity, Model::OracleParity, Model::AnalyticAllSamePort,
                                       Model::OracleAllSamePort, Model::AnalyticMz, Model::OracleMz},
                                      48);
            s.loss_enabled = loss;
            // Equal arm losses leave the MZ visibility untouched.
            s.clock.eta_upper = 0.7;
            s.clock.eta_lower = 0.7;
            const auto recs = interferogram(s, 1);
            for (std::size_t i = 0; i < recs.size(); i += 2) {
                EXPECT_NEAR(recs[i].value, recs[i + 1].value, 1e-10)
                    << model_name(recs[i].model) << " N=" << n << " tau=" << recs[i].tau << " loss=" << loss;
            }
        }
    }
}

TEST(interferogram, hom_insensitive_to_unequal_loss) {
    SweepSpec s = rb_cs_sweep(2, {Model::AnalyticParity, Model::OracleParity}, 32);
    s.loss_enabled = true;
    s.clock.eta_upper = 0.8;
    s.clock.eta_lower = 0.6;
    const auto recs = interferogram(s, 1);
    for (std::size_t i = 0; i < recs.size(); i += 2) {
        EXPECT_NEAR(recs[i].value, recs[i + 1].value, 1e-10);
    }
}

TEST(interferogram, mz_visibility_with_unequal_loss) {
    // Post-selection rebalances the arms: visibility 2 sqrt(eta_U eta_L) / (eta_U + eta_L).
    SweepSpec s = rb_cs_sweep(1, {Model::AnalyticMz, Model::OracleMz}, 32);
    s.loss_enabled = true;
    s.clock.eta_upper = 0.8;
    s.clock.eta_lower = 0.2;
    const auto recs = interferogram(s, 1);
    for (std::size_t i = 0; i < recs.size(); i += 2) {
        EXPECT_NEAR(recs[i + 1].value, 0.8 * recs[i].value, 1e-10);
    }
}

TEST(interferogram, rejects_bad_input) {
    SweepSpec s = rb_cs_sweep(9, {Model::OracleParity}, 8);
    EXPECT_THROW(interferogram(s, 1), CapabilityError);
    s.models = {Model::AnalyticParity};
    EXPECT_NO_THROW(interferogram(s, 1));
    s.tau_grid = {0.0, 2.0, 1.0};
    EXPECT_THROW(interferogram(s, 1), InvalidGrid);
    s.tau_grid = {-1.0, 1.0};
    EXPECT_THROW(interferogram(s, 1), InvalidGrid);
    s.tau_grid = {1.0};
    EXPECT_THROW(interferogram(s, 1), InvalidGrid);
    s.tau_grid = {0.0, 1.0};
    s.models.clear();
    EXPECT_THROW(interferogram(s, 1), InvalidParameter);
}

TEST(interferogram, parallel_matches_serial) {
    const SweepSpec s = rb_cs_sweep(2, {Model::OracleParity, Model::OracleMz, Model::AnalyticParity}, 97);
    const auto serial = interferogram(s, 1);
    for (unsigned w : {2u, 3u, 8u}) {
        EXPECT_EQ(interferogram(s, w), serial) << "workers=" << w;
    }
}

TEST(interferogram, n_fold_speedup) {
    const auto tau = linspace(0.0, 2.0 * collapse_time(rb_cs_gravity(), rb_cs_clock(1)), 512);
    for (int n = 2; n <= 4; ++n) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            const double fast = evaluate_model(rb_cs_gravity(), at_storage_time(rb_cs_clock(n), tau[i]),
                                               Model::OracleParity, false);
            const double slow = evaluate_model(rb_cs_gravity(), at_storage_time(rb_cs_clock(1), n * tau[i]),
                                               Model::OracleParity, false);
            ASSERT_NEAR(fast, slow, 1e-10) << "N=" << n << " i=" << i;
        }
    }
}

TEST(interferogram, periodic_in_hom_phase) {
    const GravityConfig g = rb_cs_gravity();
    const ClockConfig c = rb_cs_clock(2);
    const double period = 4.0 * collapse_time(g, c);  // phi_HOM advances by 2 pi
    for (double tau : {0.1, 0.77, 1.9}) {
        EXPECT_NEAR(evaluate_model(g, at_storage_time(c, tau), Model::AnalyticParity, false),
                    evaluate_model(g, at_storage_time(c, tau + period), Model::AnalyticParity, false), 1e-9);
    }
}

TEST(heatmap, markers) {
    const auto cells = collapse_heatmap(HeatmapSpec{}, 1);
    ASSERT_EQ(cells.size(), 200u * 200u + 4u);
    const auto marker = [&](const std::string& name) {
        for (const auto& c : cells) {
            if (c.marker == name) {
                return c.tau_ent_s;
            }
        }
        return -1.0;
    };
    EXPECT_NEAR(marker("i") / 229.1, 1.0, 0.005);
    EXPECT_NEAR(marker("i") / 229.118806813965, 1.0, 1e-12);
    EXPECT_NEAR(marker("ii") / 0.311726267774087, 1.0, 1e-12);
    EXPECT_NEAR(marker("iii") / 1.169, 1.0, 0.005);
    EXPECT_NEAR(marker("iv") / 3.46024431832587, 1.0, 1e-12);
}

TEST(heatmap, monotone_and_scaling) {
    HeatmapSpec spec;
    spec.delta_f = {1e9, 1e15, 40};
    spec.height = {1.0, 1e4, 30};
    spec.markers.clear();
    const auto cells = collapse_heatmap(spec, 1);
    ASSERT_EQ(cells.size(), 1200u);
    for (std::size_t i = 0; i < 40; ++i) {
        for (std::size_t j = 0; j < 30; ++j) {
            const double t = cells[i * 30 + j].tau_ent_s;
            if (j + 1 < 30) {
                EXPECT_LT(cells[i * 30 + j + 1].tau_ent_s, t);
            }
            if (i + 1 < 40) {
                EXPECT_LT(cells[(i + 1) * 30 + j].tau_ent_s, t);
            }
        }
    }
    for (double df : {1e9, 3.3e12, 1e15}) {
        for (double h : {1.0, 17.0, 4999.0}) {
            const double t1 = collapse_time_at(GravityConfig{}, df, h, 2);
            const double t2 = collapse_time_at(GravityConfig{}, df, 2.0 * h, 2);
            EXPECT_NEAR(t2 / t1, 0.5, 1e-9);
        }
    }
}

TEST(heatmap, parallel_matches_serial) {
    HeatmapSpec spec;
    spec.delta_f = {1e9, 1e15, 23};
    spec.height = {1.0, 1e4, 11};
    EXPECT_EQ(collapse_heatmap(spec, 4), collapse_heatmap(spec, 1));
}

TEST(heatmap, invalid_ranges) {
    HeatmapSpec spec;
    spec.delta_f = {0.0, 1e15, 10};
    EXPECT_THROW(collapse_heatmap(spec, 1), InvalidGrid);
    spec.delta_f = {1e9, 1e15, 10};
    spec.height = {1.0, 1e4, 1};
    EXPECT_THROW(collapse_heatmap(spec, 1), InvalidGrid);
}

TEST(first_zero, analytic_and_oracle) {
    const GravityConfig g = rb_cs_gravity();
    for (int n = 1; n <= 4; ++n) {
        const ClockConfig c = rb_cs_clock(n);
        const double expected = collapse_time(g, c);
        EXPECT_NEAR(first_zero(g, c, Model::AnalyticParity) / expected, 1.0, 1e-9);
        EXPECT_NEAR(first_zero(g, c, Model::OracleParity) / expected, 1.0, 1e-6);
    }
}

TEST(first_zero, errors) {
    GravityConfig flat;
    EXPECT_THROW(first_zero(flat, rb_cs_clock(2), Model::AnalyticParity), NoZero);
    ClockConfig c = rb_cs_clock(2);
    c.phi = 0.1;
    EXPECT_THROW(first_zero(rb_cs_gravity(), c, Model::AnalyticParity), InvalidParameter);
    EXPECT_THROW(first_zero(rb_cs_gravity(), rb_cs_clock(2), Model::AnalyticMz), InvalidParameter);
    EXPECT_THROW(first_zero(rb_cs_gravity(), rb_cs_clock(9), Model::OracleParity), CapabilityError);
}

TEST(verify, phases_reproducible) {
    const auto a = verification_phases(20);
    const auto b = verification_phases(20);
    EXPECT_EQ(a, b);
    std::minstd_rand gen(20260415);
    EXPECT_EQ(a[0], 2.0 * pi * static_cast<double>(gen()) / 2147483647.0);
    for (double p : a) {
        EXPECT_GE(p, 0.0);
        EXPECT_LT(p, 2.0 * pi);
    }
}

TEST(verify, quick_passes) {
    const VerifyReport r = verify(Suite::Quick);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.max_delta, 1e-10);
    EXPECT_EQ(r.suite, Suite::Quick);
    EXPECT_FALSE(r.cases.empty());
}

TEST(verify, full_audit_rows) {
    const VerifyReport r = verify(Suite::Full);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.max_delta, 1e-10);
    int audits = 0;
    bool saw_weight = false;
    for (const auto& c : r.cases) {
        if (c.quantity == "P00_printed_prefactor") {
            EXPECT_TRUE(c.expected_inconsistent);
            if (c.ratio) {
                const double nf = static_cast<double>(factorial(c.photons));
                EXPECT_NEAR(*c.ratio / (nf * nf / 2.0), 1.0, 1e-9);
                ++audits;
            }
        } else {
            EXPECT_FALSE(c.expected_inconsistent);
        }
        if (c.quantity == "postselection_weight" && c.photons == 2 && c.eta == 0.9) {
            EXPECT_NEAR(c.oracle, 0.6561, 1e-12);
            saw_weight = true;
        }
    }
    EXPECT_GT(audits, 0);
    EXPECT_TRUE(saw_weight);
}
