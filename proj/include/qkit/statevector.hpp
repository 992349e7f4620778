// Copyright 2026 The qkit Authors
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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qkit/errors.hpp"
#include "qkit/rng.hpp"

namespace qkit {

// Bit ordering, used everywhere in the toolkit: qubit k is bit k of an
// amplitude index (qubit 0 is the least significant bit), and bitstrings are
// printed most significant qubit first, so qubit 0 is the rightmost character.

inline constexpr std::size_t kDefaultQubitCap = 24;

using Amplitude = std::complex<double>;

enum class GateKind { H, X, CNOT };

inline const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::CNOT:
            return "CNOT";
    }
    return "?";
}

/// One gate. `control` is only meaningful for CNOT.
struct Gate {
    GateKind kind;
    std::size_t target;
    std::size_t control = 0;

    static Gate h(std::size_t q) { return {GateKind::H, q, 0}; }
    static Gate x(std::size_t q) { return {GateKind::X, q, 0}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, target, control}; }

    bool is_two_qubit() const { return kind == GateKind::CNOT; }

    /// Throws QubitIndexError unless every referenced qubit is < num_qubits
    /// and the referenced qubits are distinct.
    void check(std::size_t num_qubits) const {
        if (target >= num_qubits) {
            throw QubitIndexError(std::string(gate_name(kind)) + " target qubit " + std::to_string(target) +
                                  " out of range for " + std::to_string(num_qubits) + " qubits");
        }
        if (is_two_qubit()) {
            if (control >= num_qubits) {
                throw QubitIndexError("CNOT control qubit " + std::to_string(control) + " out of range for " +
                                      std::to_string(num_qubits) + " qubits");
            }
            if (control == target) {
                throw QubitIndexError("CNOT control and target are both qubit " + std::to_string(target));
            }
        }
    }

    bool operator==(const Gate &other) const {
        return kind == other.kind && target == other.target && (!is_two_qubit() || control == other.control);
    }
};

/// `width` characters, most significant first.
inline std::string to_bitstring(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        if ((value >> k) & 1U) {
            out[width - 1 - k] = '1';
        }
    }
    return out;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        value = (value << 1) | (c == '1' ? 1U : 0U);
    }
    return value;
}

/// Dense amplitude vector over n qubits.
class Statevector {
   public:
    /// |0...0> on n qubits; n must lie in [1, cap].
    static Statevector zero(std::size_t num_qubits, std::size_t cap = kDefaultQubitCap) {
        check_capacity(num_qubits, cap);
        std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
        amps[0] = 1.0;
        return Statevector(num_qubits, std::move(amps));
    }

    /// Takes amplitudes verbatim; the length must be 2^num_qubits.
    Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits_ >= 63 || amps_.size() != (std::size_t{1} << num_qubits_)) {
            throw CapacityError("amplitude count " + std::to_string(amps_.size()) + " does not match " +
                                std::to_string(num_qubits_) + " qubits");
        }
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    const Amplitude &operator[](std::size_t index) const { return amps_[index]; }

    double probability(std::size_t index) const { return std::norm(amps_[index]); }

    double norm_squared() const {
        double total = 0;
        for (const auto &a : amps_) {
            total += std::norm(a);
        }
        return total;
    }

    void apply(const Gate &gate) {
        gate.check(num_qubits_);
        const std::size_t t = std::size_t{1} << gate.target;
        switch (gate.kind) {
            case GateKind::H: {
                constexpr double r = std::numbers::sqrt2 / 2;
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if (i & t) {
                        continue;
                    }
                    const Amplitude a = amps_[i];
                    const Amplitude b = amps_[i | t];
                    amps_[i] = (a + b) * r;
                    amps_[i | t] = (a - b) * r;
                }
                break;
            }
            case GateKind::X:
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if (!(i & t)) {
                        std::swap(amps_[i], amps_[i | t]);
                    }
                }
                break;
            case GateKind::CNOT: {
                const std::size_t c = std::size_t{1} << gate.control;
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if ((i & c) && !(i & t)) {
                        std::swap(amps_[i], amps_[i | t]);
                    }
                }
                break;
            }
        }
    }

    /// Draws one basis index with probability |amplitude|^2. Indices with
    /// zero amplitude are never returned.
    std::uint64_t sample_index(Rng &rng) const {
        const double u = rng.uniform();
        double acc = 0;
        std::size_t last_nonzero = 0;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const double p = std::norm(amps_[i]);
            if (p == 0) {
                continue;
            }
            last_nonzero = i;
            acc += p;
            if (u < acc) {
                return i;
            }
        }
        return last_nonzero;
    }

    static void check_capacity(std::size_t num_qubits, std::size_t cap) {
        if (num_qubits < 1 || num_qubits > cap) {
            throw CapacityError(std::to_string(num_qubits) + " qubits outside supported range [1, " +
                                std::to_string(cap) + "]");
        }
    }

   private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

inline Statevector new_zero_state(std::size_t num_qubits, std::size_t cap = kDefaultQubitCap) {
    return Statevector::zero(num_qubits, cap);
}

inline Statevector apply_gate(Statevector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

/// Measures every qubit; the result has num_qubits characters.
inline std::string sample_measurement(const Statevector &state, Rng &rng) {
    return to_bitstring(state.sample_index(rng), state.num_qubits());
}

}  // namespace qkit
