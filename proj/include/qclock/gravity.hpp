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

// Gravitational redshift and clock-phase bookkeeping.
//
// Redshift excesses g h / c^2 are ~1e-15, far below the spacing of doubles
// near 1, so nothing here forms Theta = 1 + x and then subtracts 1 again.
// Differences of inverse redshifts are assembled from the excesses directly.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qclock/errors.hpp"
#include "qclock/fock.hpp"

namespace qclock {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kStandardGravity = 9.80665;   // m/s^2

/// Upper bound on g h / c^2 for the first-order redshift expansion.
inline constexpr double kMaxRedshiftExcess = 1e-6;

struct GravityConfig {
    double g = kStandardGravity;
    double c = kSpeedOfLight;
    double h_upper = 0.0;  // m
    double h_lower = 0.0;  // m
};

inline void validate(const GravityConfig& cfg) {
    if (!(cfg.g >= 0.0) || !std::isfinite(cfg.g)) {
        throw InvalidParameter("gravitational acceleration must be finite and >= 0");
    }
    if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
        throw InvalidParameter("speed of light must be finite and > 0");
    }
    if (!std::isfinite(cfg.h_upper) || !std::isfinite(cfg.h_lower)) {
        throw InvalidParameter("arm heights must be finite");
    }
    const double h = std::max(std::abs(cfg.h_upper), std::abs(cfg.h_lower));
    if (cfg.g * h / (cfg.c * cfg.c) >= kMaxRedshiftExcess) {
        throw OutOfRegime("g h / c^2 exceeds the first-order redshift regime");
    }
}

enum class Arm { Upper, Lower };

struct ClockConfig {
    double omega1 = 0.0;  // rad/s
    double omega2 = 0.0;  // rad/s
    int photons = 1;
    double phi = 0.0;         // source phase, rad
    double tau_upper = 0.0;   // local storage time, s
    double tau_lower = 0.0;
    double eta_upper = 1.0;   // memory transmissivity
    double eta_lower = 1.0;

    double omega_minus() const { return omega2 - omega1; }
    double omega_plus() const { return omega1 + omega2; }
    double omega(Bin b) const { return b == Bin::One ? omega1 : omega2; }
    double tau(Arm a) const { return a == Arm::Upper ? tau_upper : tau_lower; }
    double eta(Arm a) const { return a == Arm::Upper ? eta_upper : eta_lower; }
};

inline void validate(const ClockConfig& clock) {
    if (!std::isfinite(clock.omega1) || !std::isfinite(clock.omega2)) {
        throw InvalidParameter("bin frequencies must be finite");
    }
    if (clock.omega1 == clock.omega2) {
        throw InvalidParameter("bin frequencies must differ");
    }
    if (clock.photons < 1) {
        throw InvalidParameter("photon number must be >= 1");
    }
    if (!(clock.tau_upper >= 0.0) || !(clock.tau_lower >= 0.0)) {
        throw InvalidParameter("storage times must be >= 0");
    }
    for (double eta : {clock.eta_upper, clock.eta_lower}) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw InvalidParameter("memory transmissivity must lie in [0, 1]");
        }
    }
}

/// g h / c^2, i.e. Theta - 1 without the rounding of forming Theta.
inline double redshift_excess(const GravityConfig& cfg, double h) {
    GravityConfig probe = cfg;
    probe.h_upper = h;
    probe.h_lower = 0.0;
    validate(probe);
    return cfg.g * h / (cfg.c * cfg.c);
}

/// Theta = 1 + g h / c^2.
inline double redshift_factor(const GravityConfig& cfg, double h) { return 1.0 + redshift_excess(cfg, h); }

/// 1/Theta - 1 = -x / (1 + x).
inline double inverse_redshift_offset(const GravityConfig& cfg, double h) {
    const double x = redshift_excess(cfg, h);
    return -x / (1.0 + x);
}

inline double arm_height(const GravityConfig& cfg, Arm a) { return a == Arm::Upper ? cfg.h_upper : cfg.h_lower; }

/// 1/Theta_U - 1/Theta_L, negative when the upper arm is higher.
inline double delta_inverse_redshift(const GravityConfig& cfg) {
    validate(cfg);
    const double xu = redshift_excess(cfg, cfg.h_upper);
    const double xl = redshift_excess(cfg, cfg.h_lower);
    return (xl - xu) / ((1.0 + xu) * (1.0 + xl));
}

/// tau_U / Theta_U - tau_L / Theta_L.
inline double proper_storage_difference(const GravityConfig& cfg, const ClockConfig& clock) {
    validate(cfg);
    if (clock.tau_upper == clock.tau_lower) {
        return clock.tau_upper * delta_inverse_redshift(cfg);
    }
    return (clock.tau_upper - clock.tau_lower) + clock.tau_upper * inverse_redshift_offset(cfg, cfg.h_upper) -
           clock.tau_lower * inverse_redshift_offset(cfg, cfg.h_lower);
}

/// Per-photon phase picked up in the memory of `arm` for frequency bin `bin`:
///   Omega_i * (tau_sigma / Theta_sigma - tau_ref),   tau_ref = (tau_U + tau_L) / 2.
/// The reference term is common to both arms of a bin and cancels from every
/// observable; it keeps the argument small (~rad instead of ~1e14 rad).
inline double memory_phase(const GravityConfig& cfg, const ClockConfig& clock, Arm arm, Bin bin) {
    const double tau = clock.tau(arm);
    const double tau_ref = 0.5 * (clock.tau_upper + clock.tau_lower);
    const double offset = inverse_redshift_offset(cfg, arm_height(cfg, arm));
    return clock.omega(bin) * ((tau - tau_ref) + tau * offset);
}

/// phi_HOM = N Omega_- (tau_U/Theta_U - tau_L/Theta_L) + phi.
inline double hom_phase(const GravityConfig& cfg, const ClockConfig& clock) {
    return clock.photons * clock.omega_minus() * proper_storage_difference(cfg, clock) + clock.phi;
}

/// Storage time of the first zero of the interferogram (phi = 0):
///   pi / (2 N |Delta_{1/Theta}| |Omega_-|).
inline double collapse_time(const GravityConfig& cfg, const ClockConfig& clock) {
    const double denom =
        2.0 * clock.photons * std::abs(delta_inverse_redshift(cfg)) * std::abs(clock.omega_minus());
    if (!(denom > 0.0)) {
        throw NoCollapse("no collapse: arms at equal height or degenerate frequency bins");
    }
    return std::numbers::pi / denom;
}

inline double wavelength_to_angular(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParameter("wavelength must be positive");
    }
    return 2.0 * std::numbers::pi * kSpeedOfLight / lambda;
}

inline double frequency_to_angular(double hz) { return 2.0 * std::numbers::pi * hz; }

}  // namespace qclock
