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

#pragma once

#include <array>
#include <cstdint>

#include "qclock/errors.hpp"

namespace qclock {

/// Largest photon number per mode the exact tables cover. 2 * N_max photons
/// may pile into one mode after a beam splitter.
inline constexpr int kMaxModeOccupation = 16;

namespace detail {

inline constexpr int kTableSize = kMaxModeOccupation + 1;

// Pascal's triangle, exact integers.
inline constexpr auto kBinomials = [] {
    std::array<std::array<std::uint64_t, kTableSize>, kTableSize> t{};
    for (int n = 0; n < kTableSize; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
    }
    return t;
}();

inline constexpr auto kFactorials = [] {
    std::array<std::uint64_t, kTableSize> f{};
    f[0] = 1;
    for (int n = 1; n < kTableSize; ++n) {
        f[n] = f[n - 1] * static_cast<std::uint64_t>(n);
    }
    return f;
}();

}  // namespace detail

inline std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > kMaxModeOccupation) {
        throw InvalidParameter("binomial: n out of table range");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    return detail::kBinomials[n][k];
}

inline std::uint64_t factorial(int n) {
    if (n < 0 || n > kMaxModeOccupation) {
        throw InvalidParameter("factorial: n out of table range");
    }
    return detail::kFactorials[n];
}

// 16! < 2^53, so every table entry converts to double without rounding.
static_assert(detail::kFactorials[kMaxModeOccupation] < (std::uint64_t{1} << 53));

}  // namespace qclock
