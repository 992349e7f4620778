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

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "qkit/algorithm.hpp"

namespace qkit {

/// Quantum random number generator: a Hadamard on each of n qubits, then a
/// full measurement read as an integer in [0, 2^n - 1].
inline Circuit qrand_circuit(std::uint64_t n, std::size_t cap = kDefaultQubitCap) {
    if (n < 1 || n > cap) {
        throw ValidationError("n", "qubit count must be in [1, " + std::to_string(cap) + "], got " +
                                       std::to_string(n));
    }
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        c.h(q);
    }
    return c;
}

inline std::uint64_t qrand_value(std::uint64_t n, const BackendRegistry &backends, const std::string &backend,
                                 std::optional<std::uint64_t> seed = std::nullopt) {
    auto result = backends.execute(backend, qrand_circuit(n), 1, seed);
    return from_bitstring(result.counts.begin()->first);
}

inline AlgorithmDescriptor qrand_descriptor(std::size_t cap = kDefaultQubitCap) {
    AlgorithmDescriptor d;
    d.name = "qrand";
    d.description = "Quantum random number generator (Hadamard superposition, then measure)";
    d.explanation =
        "Each qubit is put in an equal superposition and measured. A single run yields one integer "
        "in [0, 2^n - 1]; repeated runs give a histogram that should be flat.";
    d.params = {ParamSpec::natural("n", 1, cap, "number of random bits (qubits)")};
    d.build = [cap](const Params &p) { return qrand_circuit(p.natural("n"), cap); };
    d.interpret = [](const Params &p, const Counts &counts) {
        std::ostringstream out;
        const auto n = p.natural("n");
        if (counts.shots() == 1) {
            const auto &bits = counts.begin()->first;
            out << "random number: " << from_bitstring(bits) << " (binary " << bits << ")";
            return out.str();
        }
        out << "distribution of " << counts.shots() << " random numbers in [0, " << ((std::uint64_t{1} << n) - 1)
            << "] over " << counts.size() << " distinct values";
        return out.str();
    };
    return d;
}

}  // namespace qkit
