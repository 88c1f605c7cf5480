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

// Brute-force propagation of the two interferometers through the Fock engine.
// These are the oracles the closed forms in analytic.hpp are checked against.
#pragma once

#include <map>

#include "qclock/fock.hpp"
#include "qclock/gravity.hpp"

namespace qclock {

struct PipelineResult {
    StateVector state;
    double postselection_weight = 1.0;
};

inline StateVector apply_memories(StateVector state, const GravityConfig& gravity, const ClockConfig& clock) {
    for (Bin b : kBins) {
        state = apply_phase(state, ModeId::arm_u(b), memory_phase(gravity, clock, Arm::Upper, b));
        state = apply_phase(state, ModeId::arm_l(b), memory_phase(gravity, clock, Arm::Lower, b));
    }
    return state;
}

/// One loss channel per (arm, bin) mode, then post-selection on `photons`
/// surviving signal photons. Empty environment modes are dropped afterwards.
inline PipelineResult lose_and_postselect(const StateVector& state, const ClockConfig& clock, int photons) {
    StateVector lossy = state;
    for (Bin b : kBins) {
        lossy = apply_loss(lossy, ModeId::arm_u(b), clock.eta_upper);
        lossy = apply_loss(lossy, ModeId::arm_l(b), clock.eta_lower);
    }
    Projection p = project_total_photon_number(lossy, photons, Sector::Signal);
    return {discard_vacuum_env(p.state), p.weight};
}

/// HOM input -> memories -> optional loss and post-selection -> beam splitter.
/// The result lives on (plus1, minus1, plus2, minus2).
inline PipelineResult run_hom_pipeline(const GravityConfig& gravity, const ClockConfig& clock, bool with_loss) {
    StateVector s = apply_memories(build_hom_input(clock.photons, clock.phi), gravity, clock);
    double weight = 1.0;
    if (with_loss) {
        PipelineResult r = lose_and_postselect(s, clock, 2 * clock.photons);
        s = std::move(r.state);
        weight = r.postselection_weight;
    }
    for (Bin b : kBins) {
        s = apply_beam_splitter(s, ModeId::arm_u(b), ModeId::arm_l(b));
    }
    return {std::move(s), weight};
}

/// Frequency-N00N input on port A, vacuum on B -> splitter -> memories ->
/// optional loss -> splitter.
inline PipelineResult run_mz_pipeline(const GravityConfig& gravity, const ClockConfig& clock, bool with_loss) {
    StateVector s = build_noon_input(clock.photons, clock.phi);
    for (Bin b : kBins) {
        s = add_vacuum_mode(s, ModeId::input_b(b));
    }
    for (Bin b : kBins) {
        s = apply_beam_splitter(s, ModeId::input_a(b), ModeId::input_b(b));
    }
    s = apply_memories(std::move(s), gravity, clock);
    double weight = 1.0;
    if (with_loss) {
        PipelineResult r = lose_and_postselect(s, clock, clock.photons);
        s = std::move(r.state);
        weight = r.postselection_weight;
    }
    for (Bin b : kBins) {
        s = apply_beam_splitter(s, ModeId::arm_u(b), ModeId::arm_l(b));
    }
    return {std::move(s), weight};
}

/// 2 <n_minus> / N - 1 for an N-photon port state, frequency blind. For one
/// photon this is 2 P(minus) - 1.
inline double mz_signal(const StateVector& ports, int photons) {
    double mean = 0.0;
    for (const auto& [count, p] : port_count_distribution(ports, Port::Minus)) {
        mean += count * p;
    }
    return 2.0 * mean / photons - 1.0;
}

/// Probability that every photon leaves the minus port (frequency blind).
inline double mz_all_minus_probability(const StateVector& ports, int photons) {
    const auto dist = port_count_distribution(ports, Port::Minus);
    auto it = dist.find(photons);
    return it == dist.end() ? 0.0 : it->second;
}

inline double all_plus_probability(const StateVector& ports) {
    const auto dist = outcome_distribution(ports);
    auto it = dist.find({0, 0});
    return it == dist.end() ? 0.0 : it->second;
}

}  // namespace qclock
