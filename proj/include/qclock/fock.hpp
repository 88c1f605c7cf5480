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

// Exact bosonic Fock-space engine for a handful of optical modes.
//
// A StateVector is a sparse superposition of occupation-number basis states
// over an ordered registry of modes. Every channel is a pure function that
// returns a new state; passive channels act on creation operators, so a
// basis term with n photons in a mode is expanded binomially with the bosonic
// sqrt(n!) factors. All channels conserve the total photon number summed over
// signal and environment modes.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qclock/combinatorics.hpp"
#include "qclock/errors.hpp"

namespace qclock {

using Amplitude = std::complex<double>;

/// Photons per bin in each half of the HOM input; total photon number is 2 N.
inline constexpr int kMaxPhotons = 8;

/// Amplitudes smaller than this are dropped after each channel.
inline constexpr double kPruneThreshold = 1e-14;

enum class Location : std::uint8_t {
    InputA,  // Mach-Zehnder input ports
    InputB,
    ArmU,
    ArmL,
    PortPlus,
    PortMinus,
    Env,
};

enum class Bin : std::uint8_t { One = 1, Two = 2 };

inline constexpr std::array<Bin, 2> kBins{Bin::One, Bin::Two};

inline int bin_index(Bin b) { return b == Bin::One ? 1 : 2; }

struct ModeId {
    Location location = Location::ArmU;
    Bin bin = Bin::One;
    int env_index = -1;  // only meaningful for Location::Env

    static constexpr ModeId arm_u(Bin b) { return {Location::ArmU, b, -1}; }
    static constexpr ModeId arm_l(Bin b) { return {Location::ArmL, b, -1}; }
    static constexpr ModeId port_plus(Bin b) { return {Location::PortPlus, b, -1}; }
    static constexpr ModeId port_minus(Bin b) { return {Location::PortMinus, b, -1}; }
    static constexpr ModeId input_a(Bin b) { return {Location::InputA, b, -1}; }
    static constexpr ModeId input_b(Bin b) { return {Location::InputB, b, -1}; }
    static constexpr ModeId env(int index, Bin b) { return {Location::Env, b, index}; }

    bool is_env() const { return location == Location::Env; }

    friend bool operator==(const ModeId&, const ModeId&) = default;

    std::string name() const {
        std::string digit = std::to_string(bin_index(bin));
        switch (location) {
            case Location::InputA: return "A" + digit;
            case Location::InputB: return "B" + digit;
            case Location::ArmU: return "U" + digit;
            case Location::ArmL: return "L" + digit;
            case Location::PortPlus: return "plus" + digit;
            case Location::PortMinus: return "minus" + digit;
            case Location::Env: return "env" + std::to_string(env_index) + "." + digit;
        }
        return "?";
    }
};

namespace detail {

// Canonical registry order: input ports and arms location-major
// (A1 A2 B1 B2, U1 U2 L1 L2), output ports bin-major (plus1 minus1 plus2
// minus2), environment modes last in creation order.
inline std::array<int, 3> mode_sort_key(const ModeId& m) {
    const int loc = static_cast<int>(m.location);
    const int bin = bin_index(m.bin);
    switch (m.location) {
        case Location::InputA:
        case Location::InputB: return {0, loc, bin};
        case Location::ArmU:
        case Location::ArmL: return {1, loc, bin};
        case Location::PortPlus:
        case Location::PortMinus: return {2, bin, loc};
        case Location::Env: return {3, m.env_index, bin};
    }
    return {9, 0, 0};
}

inline Amplitude ipow(Amplitude x, int n) {
    Amplitude r{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        r *= x;
    }
    return r;
}

}  // namespace detail

using Occupation = std::vector<int>;
using TermMap = std::map<Occupation, Amplitude>;

class StateVector {
  public:
    StateVector() = default;

    StateVector(std::vector<ModeId> registry, TermMap terms) : registry_(std::move(registry)) {
        for (std::size_t i = 0; i < registry_.size(); ++i) {
            for (std::size_t j = i + 1; j < registry_.size(); ++j) {
                if (registry_[i] == registry_[j]) {
                    throw RegistryError("duplicate mode in registry: " + registry_[i].name());
                }
            }
        }
        for (auto& [occ, amp] : terms) {
            if (occ.size() != registry_.size()) {
                throw RegistryError("occupation length does not match registry");
            }
            if (std::any_of(occ.begin(), occ.end(), [](int n) { return n < 0; })) {
                throw InvalidParameter("negative occupation number");
            }
            if (std::abs(amp) >= kPruneThreshold) {
                terms_.emplace(occ, amp);
            }
        }
    }

    const std::vector<ModeId>& registry() const { return registry_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    bool has_mode(const ModeId& m) const {
        return std::find(registry_.begin(), registry_.end(), m) != registry_.end();
    }

    std::size_t index_of(const ModeId& m) const {
        auto it = std::find(registry_.begin(), registry_.end(), m);
        if (it == registry_.end()) {
            throw RegistryError("mode not in registry: " + m.name());
        }
        return static_cast<std::size_t>(it - registry_.begin());
    }

    Amplitude amplitude(const Occupation& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? Amplitude{} : it->second;
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& [occ, amp] : terms_) {
            s += std::norm(amp);
        }
        return s;
    }

    int env_mode_count() const {
        return static_cast<int>(
            std::count_if(registry_.begin(), registry_.end(), [](const ModeId& m) { return m.is_env(); }));
    }

  private:
    std::vector<ModeId> registry_;
    TermMap terms_;
};

/// <a|b>; both states must share the same registry.
inline Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.registry() != b.registry()) {
        throw RegistryError("inner_product: registries differ");
    }
    Amplitude s{};
    for (const auto& [occ, amp] : a.terms()) {
        s += std::conj(amp) * b.amplitude(occ);
    }
    return s;
}

inline void check_photon_number(int n) {
    if (n < 1 || n > kMaxPhotons) {
        throw InvalidParameter("photon number must lie in [1, " + std::to_string(kMaxPhotons) +
                               "], got " + std::to_string(n));
    }
}

/// N_HOM [ a_U1^N a_L2^N + e^{i phi} a_U2^N a_L1^N ] |0>, N_HOM = 1/(sqrt2 N!).
/// Registry (U1, U2, L1, L2).
inline StateVector build_hom_input(int n_photons, double phi) {
    check_photon_number(n_photons);
    const int n = n_photons;
    // (a^dag)^N |0> = sqrt(N!) |N>, so each branch carries N_HOM * N! = 1/sqrt2.
    const double a = 1.0 / std::numbers::sqrt2;
    std::vector<ModeId> reg{ModeId::arm_u(Bin::One), ModeId::arm_u(Bin::Two), ModeId::arm_l(Bin::One),
                            ModeId::arm_l(Bin::Two)};
    TermMap terms;
    terms[{n, 0, 0, n}] = a;
    terms[{0, n, n, 0}] = std::polar(a, phi);
    return {std::move(reg), std::move(terms)};
}

/// (|N,0> + e^{i phi}|0,N>)/sqrt2 over the two bins of Mach-Zehnder input A.
inline StateVector build_noon_input(int n_photons, double phi) {
    check_photon_number(n_photons);
    const int n = n_photons;
    const double a = 1.0 / std::numbers::sqrt2;
    std::vector<ModeId> reg{ModeId::input_a(Bin::One), ModeId::input_a(Bin::Two)};
    TermMap terms;
    terms[{n, 0}] = a;
    terms[{0, n}] = std::polar(a, phi);
    return {std::move(reg), std::move(terms)};
}

/// Registers `mode` in vacuum; the registry is re-sorted canonically.
inline StateVector add_vacuum_mode(const StateVector& state, const ModeId& mode) {
    if (state.has_mode(mode)) {
        throw RegistryError("mode already registered: " + mode.name());
    }
    std::vector<ModeId> reg = state.registry();
    reg.push_back(mode);
    std::vector<std::size_t> order(reg.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return detail::mode_sort_key(reg[x]) < detail::mode_sort_key(reg[y]);
    });
    std::vector<ModeId> sorted;
    for (auto i : order) {
        sorted.push_back(reg[i]);
    }
    TermMap terms;
    for (const auto& [occ, amp] : state.terms()) {
        Occupation ext = occ;
        ext.push_back(0);
        Occupation out(ext.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            out[i] = ext[order[i]];
        }
        terms.emplace(std::move(out), amp);
    }
    return {std::move(sorted), std::move(terms)};
}

inline void require_signal_mode(const StateVector& state, const ModeId& mode, const char* what) {
    state.index_of(mode);
    if (mode.is_env()) {
        throw RegistryError(std::string(what) + ": environment modes never re-enter a channel");
    }
}

/// Multiplies each term by e^{i n theta}, n = photons in `mode`.
inline StateVector apply_phase(const StateVector& state, const ModeId& mode, double theta) {
    require_signal_mode(state, mode, "apply_phase");
    const std::size_t idx = state.index_of(mode);
    TermMap terms;
    for (const auto& [occ, amp] : state.terms()) {
        terms.emplace(occ, amp * std::polar(1.0, static_cast<double>(occ[idx]) * theta));
    }
    return {state.registry(), std::move(terms)};
}

/// 2x2 action on creation operators: row r gives the image of input r as
/// coefficients on (output 0, output 1).
using ModeMatrix = std::array<std::array<Amplitude, 2>, 2>;

namespace detail {

// Rewrites modes at positions (ia, ib) through `m`, leaving all other
// occupations untouched. Output photons land in the same two positions.
inline TermMap transform_pair(const TermMap& in, std::size_t ia, std::size_t ib, const ModeMatrix& m) {
    TermMap out;
    for (const auto& [occ, amp] : in) {
        const int n = occ[ia];
        const int k = occ[ib];
        const double in_norm = std::sqrt(static_cast<double>(factorial(n)) * static_cast<double>(factorial(k)));
        // j photons of input a and l photons of input b go to output 1.
        for (int j = 0; j <= n; ++j) {
            const Amplitude ca = static_cast<double>(binomial(n, j)) * ipow(m[0][0], n - j) * ipow(m[0][1], j);
            if (ca == Amplitude{}) {
                continue;
            }
            for (int l = 0; l <= k; ++l) {
                const Amplitude cb =
                    static_cast<double>(binomial(k, l)) * ipow(m[1][0], k - l) * ipow(m[1][1], l);
                if (cb == Amplitude{}) {
                    continue;
                }
                const int p = (n - j) + (k - l);
                const int q = j + l;
                const double out_norm =
                    std::sqrt(static_cast<double>(factorial(p)) * static_cast<double>(factorial(q)));
                Occupation o = occ;
                o[ia] = p;
                o[ib] = q;
                out[o] += amp * ca * cb * (out_norm / in_norm);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Balanced beam splitter with the fixed convention
///   upper -> (out+ - out-)/sqrt2,  lower -> (out+ + out-)/sqrt2.
/// Arms (U, L) exit on ports (plus, minus); Mach-Zehnder inputs (A, B) exit on
/// arms (U, L). Frequency bins never mix.
inline StateVector apply_beam_splitter(const StateVector& state, const ModeId& upper, const ModeId& lower) {
    require_signal_mode(state, upper, "apply_beam_splitter");
    require_signal_mode(state, lower, "apply_beam_splitter");
    if (upper == lower) {
        throw InvalidPairing("beam splitter inputs must be distinct modes");
    }
    if (upper.bin != lower.bin) {
        throw InvalidPairing("beam splitter cannot mix frequency bins: " + upper.name() + ", " + lower.name());
    }
    ModeId out_plus;
    ModeId out_minus;
    if (upper.location == Location::ArmU && lower.location == Location::ArmL) {
        out_plus = ModeId::port_plus(upper.bin);
        out_minus = ModeId::port_minus(upper.bin);
    } else if (upper.location == Location::InputA && lower.location == Location::InputB) {
        out_plus = ModeId::arm_u(upper.bin);
        out_minus = ModeId::arm_l(upper.bin);
    } else {
        throw InvalidPairing("unsupported beam splitter pairing: " + upper.name() + ", " + lower.name());
    }
    if (state.has_mode(out_plus) || state.has_mode(out_minus)) {
        throw RegistryError("beam splitter output modes already registered");
    }

    const double s = 1.0 / std::numbers::sqrt2;
    const ModeMatrix m{{{s, -s}, {s, s}}};
    const std::size_t iu = state.index_of(upper);
    const std::size_t il = state.index_of(lower);
    TermMap mixed = detail::transform_pair(state.terms(), iu, il, m);

    std::vector<ModeId> reg = state.registry();
    reg[iu] = out_plus;
    reg[il] = out_minus;
    std::vector<std::size_t> order(reg.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return detail::mode_sort_key(reg[x]) < detail::mode_sort_key(reg[y]);
    });
    std::vector<ModeId> sorted;
    for (auto i : order) {
        sorted.push_back(reg[i]);
    }
    TermMap terms;
    for (const auto& [occ, amp] : mixed) {
        Occupation o(occ.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            o[i] = occ[order[i]];
        }
        terms.emplace(std::move(o), amp);
    }
    return {std::move(sorted), std::move(terms)};
}

/// Loss as a beam splitter onto a fresh vacuum environment mode:
///   a -> sqrt(eta) a + sqrt(1 - eta) v.
inline StateVector apply_loss(const StateVector& state, const ModeId& mode, double eta) {
    require_signal_mode(state, mode, "apply_loss");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidParameter("transmissivity must lie in [0, 1]");
    }
    const ModeId env = ModeId::env(state.env_mode_count(), mode.bin);
    StateVector widened = add_vacuum_mode(state, env);
    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    // Row 1 (the vacuum input) is never populated.
    const ModeMatrix m{{{t, r}, {-r, t}}};
    TermMap terms =
        detail::transform_pair(widened.terms(), widened.index_of(mode), widened.index_of(env), m);
    return {widened.registry(), std::move(terms)};
}

enum class Sector { Signal, Env };

struct Projection {
    StateVector state;
    double weight = 0.0;  // probability of the post-selected event
};

inline int sector_count(const StateVector& state, const Occupation& occ, Sector sector) {
    int total = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (state.registry()[i].is_env() == (sector == Sector::Env)) {
            total += occ[i];
        }
    }
    return total;
}

/// Keeps terms whose sector photon number equals `n` and renormalizes.
inline Projection project_total_photon_number(const StateVector& state, int n, Sector sector) {
    TermMap kept;
    double weight = 0.0;
    for (const auto& [occ, amp] : state.terms()) {
        if (sector_count(state, occ, sector) == n) {
            kept.emplace(occ, amp);
            weight += std::norm(amp);
        }
    }
    if (weight < 1e-300) {
        throw EmptyProjection("projection onto " + std::to_string(n) + " photons has zero weight");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (auto& [occ, amp] : kept) {
        amp *= scale;
    }
    return {StateVector(state.registry(), std::move(kept)), weight};
}

/// Drops environment modes that are empty in every term.
inline StateVector discard_vacuum_env(const StateVector& state) {
    const auto& reg = state.registry();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        bool occupied = false;
        for (const auto& [occ, amp] : state.terms()) {
            occupied = occupied || occ[i] != 0;
        }
        if (!reg[i].is_env() || occupied) {
            keep.push_back(i);
        }
    }
    std::vector<ModeId> out_reg;
    for (auto i : keep) {
        out_reg.push_back(reg[i]);
    }
    TermMap terms;
    for (const auto& [occ, amp] : state.terms()) {
        Occupation o;
        for (auto i : keep) {
            o.push_back(occ[i]);
        }
        terms.emplace(std::move(o), amp);
    }
    return {std::move(out_reg), std::move(terms)};
}

/// P_{k,l}: k photons of bin 1 and l photons of bin 2 at the minus port.
using CountDistribution = std::map<std::pair<int, int>, double>;

inline void require_port_modes(const StateVector& state) {
    for (Bin b : kBins) {
        state.index_of(ModeId::port_plus(b));
        state.index_of(ModeId::port_minus(b));
    }
}

inline CountDistribution outcome_distribution(const StateVector& state) {
    require_port_modes(state);
    const std::size_t m1 = state.index_of(ModeId::port_minus(Bin::One));
    const std::size_t m2 = state.index_of(ModeId::port_minus(Bin::Two));
    CountDistribution dist;
    for (const auto& [occ, amp] : state.terms()) {
        dist[{occ[m1], occ[m2]}] += std::norm(amp);
    }
    return dist;
}

enum class Port { Plus, Minus };

/// <(-1)^(n_port,1 + n_port,2)>.
inline double parity_expectation(const StateVector& state, Port port) {
    require_port_modes(state);
    auto mode = [&](Bin b) { return port == Port::Plus ? ModeId::port_plus(b) : ModeId::port_minus(b); };
    const std::size_t i1 = state.index_of(mode(Bin::One));
    const std::size_t i2 = state.index_of(mode(Bin::Two));
    double s = 0.0;
    for (const auto& [occ, amp] : state.terms()) {
        s += ((occ[i1] + occ[i2]) % 2 == 0 ? 1.0 : -1.0) * std::norm(amp);
    }
    return s;
}

/// Frequency-blind photon-number distribution at one port: total count -> probability.
inline std::map<int, double> port_count_distribution(const StateVector& state, Port port) {
    require_port_modes(state);
    auto mode = [&](Bin b) { return port == Port::Plus ? ModeId::port_plus(b) : ModeId::port_minus(b); };
    const std::size_t i1 = state.index_of(mode(Bin::One));
    const std::size_t i2 = state.index_of(mode(Bin::Two));
    std::map<int, double> dist;
    for (const auto& [occ, amp] : state.terms()) {
        dist[occ[i1] + occ[i2]] += std::norm(amp);
    }
    return dist;
}

}  // namespace qclock
