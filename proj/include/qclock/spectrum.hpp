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

// Magnitude spectra of uniformly sampled storage-time signals (FFTW backed).
#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "qclock/errors.hpp"

namespace qclock {

inline constexpr std::size_t kMinSpectrumPoints = 256;

struct SpectralComponent {
    double frequency = 0.0;  // cycles per second of storage time
    double magnitude = 0.0;  // single-sided amplitude
};

struct Spectrum {
    double bin_width = 0.0;
    std::vector<SpectralComponent> bins;  // bins 1 .. n/2, ascending frequency

    /// Local maxima, largest first.
    std::vector<SpectralComponent> peaks() const {
        std::vector<SpectralComponent> out;
        for (std::size_t i = 0; i < bins.size(); ++i) {
            const double left = i > 0 ? bins[i - 1].magnitude : 0.0;
            const double right = i + 1 < bins.size() ? bins[i + 1].magnitude : 0.0;
            if (bins[i].magnitude > left && bins[i].magnitude >= right) {
                out.push_back(bins[i]);
            }
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.magnitude > b.magnitude; });
        return out;
    }

    SpectralComponent dominant() const {
        if (bins.empty()) {
            return {};
        }
        return *std::max_element(bins.begin(), bins.end(),
                                 [](const auto& a, const auto& b) { return a.magnitude < b.magnitude; });
    }

    /// Magnitude of the bin closest to `frequency`.
    double magnitude_near(double frequency) const {
        if (bins.empty() || bin_width <= 0.0) {
            return 0.0;
        }
        const auto k = static_cast<long>(std::lround(frequency / bin_width));
        if (k < 1 || static_cast<std::size_t>(k) > bins.size()) {
            return 0.0;
        }
        return bins[static_cast<std::size_t>(k - 1)].magnitude;
    }
};

namespace detail {

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
struct FftwPlanDestroy {
    void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

}  // namespace detail

/// Spectrum of the mean-subtracted samples. Requires a uniform grid with at
/// least kMinSpectrumPoints samples.
inline Spectrum compute_spectrum(std::span<const double> times, std::span<const double> values) {
    const std::size_t n = times.size();
    if (n != values.size()) {
        throw InvalidGrid("time and value arrays differ in length");
    }
    if (n < kMinSpectrumPoints) {
        throw InvalidGrid("spectrum needs at least 256 samples");
    }
    const double dt = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) {
        throw InvalidGrid("sample times must increase");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * dt) {
            throw InvalidGrid("sample grid is not uniform");
        }
    }

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    const std::size_t n_out = n / 2 + 1;
    std::unique_ptr<double, detail::FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, detail::FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_out)));
    std::unique_ptr<fftw_plan_s, detail::FftwPlanDestroy> plan(
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    for (std::size_t i = 0; i < n; ++i) {
        in.get()[i] = values[i] - mean;
    }
    fftw_execute(plan.get());

    Spectrum s;
    s.bin_width = 1.0 / (static_cast<double>(n) * dt);
    for (std::size_t k = 1; k < n_out; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        // Nyquist bin (even n) has no mirror image.
        const double scale = (2 * k == n) ? 1.0 : 2.0;
        s.bins.push_back({static_cast<double>(k) * s.bin_width, scale * std::hypot(re, im) / static_cast<double>(n)});
    }
    return s;
}

}  // namespace qclock
