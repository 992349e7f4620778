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

#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "qkit/algorithm.hpp"

namespace qkit {

/// Hidden key s of the Bernstein-Vazirani problem, as the user wrote it.
///
/// Character j (0 = leftmost) lives on qubit n-1-j and the ancilla is qubit n.
/// Measured bitstrings print qubit n-1 first, so the recovered string is
/// byte-identical to the input.
class BvKey {
   public:
    static BvKey parse(std::string_view bits) {
        if (bits.empty()) {
            throw ValidationError("key", "must contain at least one bit");
        }
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw ValidationError("key", "expected a bitstring of 0/1, got '" + std::string(bits) + "'");
            }
        }
        return BvKey(std::string(bits));
    }

    std::size_t size() const { return bits_.size(); }
    const std::string &str() const { return bits_; }
    bool bit(std::size_t position) const { return bits_[position] == '1'; }

    /// Qubit carrying character `position`.
    std::size_t qubit_of(std::size_t position) const { return bits_.size() - 1 - position; }
    std::size_t ancilla() const { return bits_.size(); }

    bool operator==(const BvKey &) const = default;

   private:
    explicit BvKey(std::string bits) : bits_(std::move(bits)) {}
    std::string bits_;
};

/// f_s(x) = s . x mod 2.
inline int classical_oracle(const BvKey &key, std::string_view x) {
    if (x.size() != key.size()) {
        throw ValidationError("x", "length " + std::to_string(x.size()) + " differs from key length " +
                                       std::to_string(key.size()));
    }
    int parity = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != '0' && x[i] != '1') {
            throw ValidationError("x", "expected a bitstring of 0/1");
        }
        parity ^= (key.bit(i) && x[i] == '1') ? 1 : 0;
    }
    return parity;
}

struct ClassicalSolution {
    BvKey key;
    std::size_t queries = 0;
};

/// Recovers the key by querying the black box once per unit vector.
inline ClassicalSolution classical_solve(const std::function<int(std::string_view)> &oracle, std::size_t n) {
    if (n < 1) {
        throw ValidationError("n", "key length must be at least 1");
    }
    std::string bits(n, '0');
    std::size_t queries = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::string probe(n, '0');
        probe[i] = '1';
        bits[i] = oracle(probe) ? '1' : '0';
        ++queries;
    }
    return {BvKey::parse(bits), queries};
}

/// One CNOT per set key bit, controlled by that bit's qubit, targeting the ancilla.
inline void append_bv_oracle(Circuit &circuit, const BvKey &key) {
    for (std::size_t j = 0; j < key.size(); ++j) {
        if (key.bit(j)) {
            circuit.cnot(key.qubit_of(j), key.ancilla());
        }
    }
}

/// X on the ancilla, H on all n+1 qubits, the oracle, then H on the n input
/// qubits only. The ancilla is left unmeasured.
inline Circuit bv_circuit(const BvKey &key) {
    const std::size_t n = key.size();
    Circuit c(n + 1);
    c.x(key.ancilla());
    for (std::size_t q = 0; q <= n; ++q) {
        c.h(q);
    }
    append_bv_oracle(c, key);
    std::vector<std::size_t> inputs(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.h(q);
        inputs[q] = q;
    }
    c.measure(std::move(inputs));
    return c;
}

/// Single oracle query on the chosen backend; returns the measured key.
inline std::string bv_run(const BvKey &key, const BackendRegistry &backends, const std::string &backend,
                          std::optional<std::uint64_t> seed = std::nullopt) {
    auto result = backends.execute(backend, bv_circuit(key), 1, seed);
    return result.counts.begin()->first;
}

inline AlgorithmDescriptor bernstein_vazirani_descriptor(std::size_t cap = kDefaultQubitCap) {
    AlgorithmDescriptor d;
    d.name = "bernstein-vazirani";
    d.description = "Bernstein-Vazirani: recover a hidden bitstring with a single oracle query";
    d.explanation =
        "The oracle hides key s and computes s.x mod 2. After one query the input register collapses to "
        "|s>, so the measured bitstring is the key itself (a classical solver needs n queries).";
    d.params = {ParamSpec::bitstring("key", 1, cap > 1 ? cap - 1 : 1, "hidden key as a string of 0/1")};
    d.build = [](const Params &p) { return bv_circuit(BvKey::parse(p.text("key"))); };
    d.interpret = [](const Params &p, const Counts &counts) {
        std::ostringstream out;
        const std::string recovered = counts.mode();
        out << "hidden key: " << recovered;
        if (counts.shots() > 1) {
            out << " (" << counts.at(recovered) << "/" << counts.shots() << " shots)";
        }
        out << (recovered == p.text("key") ? " [matches]" : " [MISMATCH]");
        return out.str();
    };
    return d;
}

}  // namespace qkit
