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

// Closed-form detection statistics for the HOM clock interferometer and the
// frequency-N00N Mach-Zehnder comparison.
#pragma once

#include <cmath>
#include <utility>

#include "qclock/combinatorics.hpp"
#include "qclock/errors.hpp"
#include "qclock/gravity.hpp"

namespace qclock {

/// P_{k,l} = C(N,k) C(N,l) / 2^{2N} [1 + (-1)^{k+l} cos phi_HOM].
inline double p_kl(int n_photons, int k, int l, double phi_hom) {
    if (n_photons < 1 || 2 * n_photons > kMaxModeOccupation) {
        throw InvalidParameter("p_kl: photon number out of range");
    }
    if (k < 0 || k > n_photons || l < 0 || l > n_photons) {
        throw InvalidParameter("p_kl: k and l must lie in [0, N]");
    }
    const double sign = (k + l) % 2 == 0 ? 1.0 : -1.0;
    const double weight = static_cast<double>(binomial(n_photons, k) * binomial(n_photons, l));
    return std::ldexp(weight, -2 * n_photons) * (1.0 + sign * std::cos(phi_hom));
}

inline double parity_signal(double phi_hom) { return std::cos(phi_hom); }

struct EvenOdd {
    double even;
    double odd;
};

inline EvenOdd even_odd_probabilities(double phi_hom) {
    const double c = std::cos(phi_hom);
    return {(1.0 + c) / 2.0, (1.0 - c) / 2.0};
}

enum class AllSamePortVariant {
    Consistent,  // P_{0,0} from the k,l distribution
    PrintedPrefactor,  // (N_HOM / 2^{N-1})^2 (1 + cos), kept for auditing; disagrees with brute force
};

/// Probability that all 2N photons leave through the plus port.
inline double p_all_same_port(int n_photons, double phi_hom, AllSamePortVariant variant) {
    if (n_photons < 1 || 2 * n_photons > kMaxModeOccupation) {
        throw InvalidParameter("p_all_same_port: photon number out of range");
    }
    const double c = 1.0 + std::cos(phi_hom);
    if (variant == AllSamePortVariant::Consistent) {
        return std::ldexp(c, -2 * n_photons);
    }
    const double nf = static_cast<double>(factorial(n_photons));
    const double n_hom = 1.0 / (std::sqrt(2.0) * nf);
    const double pref = std::ldexp(n_hom, -(n_photons - 1));
    return pref * pref * c;
}

/// cos(Omega_- D tau / 2) cos(Omega_+ D tau / 2), D = 1/Theta_U - 1/Theta_L.
/// A single photon in the balanced frequency superposition leaves the
/// Mach-Zehnder minus port with probability (1 + value) / 2.
inline double mz_coherence(double omega1, double omega2, double delta_inv_redshift, double tau) {
    const double x = delta_inv_redshift * tau;
    return std::cos((omega2 - omega1) * x / 2.0) * std::cos((omega1 + omega2) * x / 2.0);
}

/// Post-selection probability of keeping all 2N photons, (eta_U eta_L)^N.
inline double loss_survival(double eta_upper, double eta_lower, int n_photons) {
    if (!(eta_upper >= 0.0 && eta_upper <= 1.0) || !(eta_lower >= 0.0 && eta_lower <= 1.0)) {
        throw InvalidParameter("transmissivities must lie in [0, 1]");
    }
    return std::pow(eta_upper * eta_lower, n_photons);
}

enum class SignalKind { HomParity, HomAllSamePort, HomAllSamePortPrinted, MzCoherence };

/// One closed-form observable bound to a configuration.
struct SignalModel {
    SignalKind kind = SignalKind::HomParity;
    GravityConfig gravity;
    ClockConfig clock;

    double evaluate() const {
        switch (kind) {
            case SignalKind::HomParity: return parity_signal(hom_phase(gravity, clock));
            case SignalKind::HomAllSamePort:
                return p_all_same_port(clock.photons, hom_phase(gravity, clock), AllSamePortVariant::Consistent);
            case SignalKind::HomAllSamePortPrinted:
                return p_all_same_port(clock.photons, hom_phase(gravity, clock), AllSamePortVariant::PrintedPrefactor);
            case SignalKind::MzCoherence: {
                // Per-bin arm phase difference Omega_i (tau_U/Theta_U - tau_L/Theta_L).
                const double d = proper_storage_difference(gravity, clock);
                return std::cos(clock.omega_minus() * d / 2.0) * std::cos(clock.omega_plus() * d / 2.0);
            }
        }
        return 0.0;
    }
};

}  // namespace qclock
