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


#include "qclock/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qclock/engine.hpp"

using namespace qclock;
using std::numbers::pi;

namespace {

// Window of 130 periods of the Cs line; the Rb line then completes 149.
std::vector<double> coherent_rb_cs_grid(std::size_t n) {
    const double f2 = rb_cs_clock(1).omega2 / (2.0 * pi);
    const double span = 130.0 / (f2 * std::abs(delta_inverse_redshift(rb_cs_gravity())));
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = span * static_cast<double>(k) / static_cast<double>(n);
    }
    return t;
}

}  // namespace

TEST(spectrum, pure_tone) {
    const std::size_t n = 1024;
    std::vector<double> t(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = 0.01 * static_cast<double>(i);
        v[i] = 3.0 + 0.5 * std::cos(2.0 * pi * 10.0 * t[i] + 0.3);
    }
    const Spectrum s = compute_spectrum(t, v);
    EXPECT_NEAR(s.bin_width, 1.0 / 10.24, 1e-12);
    ASSERT_EQ(s.bins.size(), n / 2);
    const auto peaks = s.peaks();
    ASSERT_FALSE(peaks.empty());
    EXPECT_NEAR(peaks[0].frequency, 10.0, s.bin_width);
    EXPECT_NEAR(s.dominant().frequency, peaks[0].frequency, 0.0);
    EXPECT_GT(peaks[0].magnitude, 0.3);
    EXPECT_LE(peaks[0].magnitude, 0.5 + 1e-12);
}

TEST(spectrum, on_bin_tone_exact) {
    const std::size_t n = 512;
    std::vector<double> t(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(n);
        v[i] = 0.25 * std::sin(2.0 * pi * 17.0 * t[i]);
    }
    const Spectrum s = compute_spectrum(t, v);
    EXPECT_NEAR(s.magnitude_near(17.0), 0.25, 1e-13);
    EXPECT_LT(s.magnitude_near(34.0), 1e-14);
    EXPECT_EQ(s.magnitude_near(1e6), 0.0);
}

TEST(spectrum, invalid_grids) {
    std::vector<double> t(100, 0.0);
    std::vector<double> v(100, 0.0);
    EXPECT_THROW(compute_spectrum(t, v), InvalidGrid);
    t = linspace(0.0, 1.0, 300);
    v.assign(299, 0.0);
    EXPECT_THROW(compute_spectrum(t, v), InvalidGrid);
    v.assign(300, 0.0);
    t[150] += 1e-4;
    EXPECT_THROW(compute_spectrum(t, v), InvalidGrid);
    t.assign(300, 1.0);
    EXPECT_THROW(compute_spectrum(t, v), InvalidGrid);
}

TEST(spectral_components, parity_line) {
    SweepSpec s;
    s.gravity = rb_cs_gravity();
    s.clock = rb_cs_clock(1);
    s.tau_grid = linspace(0.0, 40.0 * collapse_time(s.gravity, s.clock), 2048);
    s.models = {Model::AnalyticParity};
    const auto peaks = spectral_components(interferogram(s, 1));
    ASSERT_FALSE(peaks.empty());
    const double expected = std::abs(s.clock.omega_minus() * delta_inverse_redshift(s.gravity)) / (2.0 * pi);
    const double bin = 1.0 / (s.tau_grid.back() * 2048.0 / 2047.0);
    EXPECT_NEAR(peaks[0].frequency, expected, bin);
}

TEST(spectral_components, mixed_models_rejected) {
    SweepSpec s;
    s.gravity = rb_cs_gravity();
    s.clock = rb_cs_clock(1);
    s.tau_grid = linspace(0.0, 10.0, 300);
    s.models = {Model::AnalyticParity, Model::AnalyticMz};
    EXPECT_THROW(spectral_components(interferogram(s, 1)), InvalidParameter);
    EXPECT_NO_THROW(spectral_components(select_model(interferogram(s, 1), Model::AnalyticMz)));
}

TEST(spectral_components, mz_lines_on_coherent_grid) {
    SweepSpec s;
    s.gravity = rb_cs_gravity();
    s.clock = rb_cs_clock(1);
    s.tau_grid = coherent_rb_cs_grid(2048);
    s.models = {Model::OracleMz};
    const Spectrum spec = records_spectrum(interferogram(s, 1));
    // cos(a) cos(b) = (cos(a + b) + cos(a - b)) / 2: lines at the two bin frequencies.
    EXPECT_NEAR(spec.bins[129].magnitude, 0.5, 1e-9);
    EXPECT_NEAR(spec.bins[148].magnitude, 0.5, 1e-9);
    for (std::size_t k = 0; k < spec.bins.size(); ++k) {
        if (k != 129 && k != 148) {
            EXPECT_LT(spec.bins[k].magnitude, 1e-9) << "bin " << k + 1;
        }
    }
}

TEST(spectral_components, mz_n2_observables) {
    SweepSpec s;
    s.gravity = rb_cs_gravity();
    s.clock = rb_cs_clock(2);
    s.tau_grid = coherent_rb_cs_grid(2048);
    s.models = {Model::OracleMz};
    const Spectrum mean_count = records_spectrum(interferogram(s, 1));
    const double ref = std::max(mean_count.bins[129].magnitude, mean_count.bins[148].magnitude);
    EXPECT_LT(mean_count.bins[259].magnitude / ref, 1e-6);
    EXPECT_LT(mean_count.bins[297].magnitude / ref, 1e-6);

    // All photons in the minus port: ((1 + cos)/2)^2 carries a doubled line.
    std::vector<double> all_minus;
    for (double tau : s.tau_grid) {
        const auto r = run_mz_pipeline(s.gravity, at_storage_time(s.clock, tau), false);
        all_minus.push_back(mz_all_minus_probability(r.state, 2));
    }
    const Spectrum harmonic = compute_spectrum(s.tau_grid, all_minus);
    EXPECT_NEAR(harmonic.bins[259].magnitude / harmonic.bins[129].magnitude, 0.25, 1e-6);
}
