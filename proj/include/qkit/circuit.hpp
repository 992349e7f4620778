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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qkit/statevector.hpp"

namespace qkit {

/// Ordered gate list plus a terminal measurement of a set of qubits.
///
/// A fresh circuit measures all of its qubits. `measure` narrows the set;
/// outcome bitstrings then have one character per measured qubit, with
/// measured()[0] as the least significant (rightmost) character.
class Circuit {
   public:
    Circuit() = default;

    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits), measured_(num_qubits) {
        std::iota(measured_.begin(), measured_.end(), std::size_t{0});
    }

    Circuit &add(const Gate &gate) {
        gate.check(num_qubits_);
        gates_.push_back(gate);
        return *this;
    }
    Circuit &h(std::size_t q) { return add(Gate::h(q)); }
    Circuit &x(std::size_t q) { return add(Gate::x(q)); }
    Circuit &cnot(std::size_t control, std::size_t target) { return add(Gate::cnot(control, target)); }

    Circuit &measure(std::vector<std::size_t> qubits) {
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if (qubits[i] >= num_qubits_) {
                throw QubitIndexError("measured qubit " + std::to_string(qubits[i]) + " out of range for " +
                                      std::to_string(num_qubits_) + " qubits");
            }
            if (std::find(qubits.begin(), qubits.begin() + i, qubits[i]) != qubits.begin() + i) {
                throw QubitIndexError("qubit " + std::to_string(qubits[i]) + " measured twice");
            }
        }
        measured_ = std::move(qubits);
        return *this;
    }

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<std::size_t> &measured() const { return measured_; }
    bool measures_all() const { return measured_.size() == num_qubits_; }

    /// Zero-qubit placeholder for algorithms that drive execution themselves.
    bool is_null() const { return num_qubits_ == 0; }

    std::size_t count(GateKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; }));
    }

    /// Statevector after all gates, before measurement.
    Statevector final_state(std::size_t cap = kDefaultQubitCap) const {
        auto state = Statevector::zero(num_qubits_, cap);
        for (const auto &g : gates_) {
            state.apply(g);
        }
        return state;
    }

    bool operator==(const Circuit &) const = default;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::size_t> measured_;
};

/// Outcome histogram. Keys are bitstrings of equal length.
class Counts {
   public:
    using Map = std::map<std::string, std::uint64_t>;

    void add(const std::string &outcome, std::uint64_t n = 1) {
        table_[outcome] += n;
        shots_ += n;
    }

    std::uint64_t shots() const { return shots_; }
    std::size_t size() const { return table_.size(); }
    bool empty() const { return table_.empty(); }
    bool contains(const std::string &outcome) const { return table_.count(outcome) != 0; }

    std::uint64_t at(const std::string &outcome) const {
        auto it = table_.find(outcome);
        return it == table_.end() ? 0 : it->second;
    }

    /// Most frequent outcome; ties resolve to the smallest bitstring.
    std::string mode() const {
        std::string best;
        std::uint64_t best_n = 0;
        for (const auto &[k, n] : table_) {
            if (n > best_n) {
                best = k;
                best_n = n;
            }
        }
        return best;
    }

    const Map &table() const { return table_; }
    Map::const_iterator begin() const { return table_.begin(); }
    Map::const_iterator end() const { return table_.end(); }

    bool operator==(const Counts &) const = default;

   private:
    Map table_;
    std::uint64_t shots_ = 0;
};

/// Runs `circuit` from |0...0> and samples `shots` terminal measurements.
/// Identical (circuit, shots, seed) gives identical Counts.
inline Counts run(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                  std::size_t cap = kDefaultQubitCap) {
    if (shots < 1) {
        throw ValidationError("shots", "must be at least 1");
    }
    const Statevector state = circuit.final_state(cap);

    std::vector<double> cdf(state.dimension());
    double acc = 0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += state.probability(i);
        cdf[i] = acc;
    }
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        if (state.probability(i) > 0) {
            last_nonzero = i;
        }
    }

    const auto &measured = circuit.measured();
    std::map<std::uint64_t, std::uint64_t> by_index;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t index = it == cdf.end() ? last_nonzero : static_cast<std::size_t>(it - cdf.begin());
        by_index[index]++;
    }

    Counts counts;
    for (const auto &[index, n] : by_index) {
        std::string key(measured.size(), '0');
        for (std::size_t k = 0; k < measured.size(); ++k) {
            if ((index >> measured[k]) & 1U) {
                key[measured.size() - 1 - k] = '1';
            }
        }
        counts.add(key, n);
    }
    return counts;
}

/// Text diagram: one row per qubit (q0 on top), one three-character column
/// per gate, and an M column for measured qubits. CNOT puts '*' on the
/// control row, '+' on the target row and '|' on rows in between.
inline std::string draw(const Circuit &circuit) {
    const std::size_t n = circuit.num_qubits();
    if (n == 0) {
        return "(no qubits)\n";
    }
    const std::size_t label_width = std::string("q" + std::to_string(n - 1)).size();
    std::vector<std::string> rows(n);
    for (std::size_t q = 0; q < n; ++q) {
        std::string label = "q" + std::to_string(q);
        rows[q] = label + std::string(label_width - label.size(), ' ') + ": -";
    }
    for (const auto &g : circuit.gates()) {
        for (std::size_t q = 0; q < n; ++q) {
            char c = '-';
            if (g.kind == GateKind::CNOT) {
                const std::size_t lo = std::min(g.control, g.target);
                const std::size_t hi = std::max(g.control, g.target);
                if (q == g.control) {
                    c = '*';
                } else if (q == g.target) {
                    c = '+';
                } else if (q > lo && q < hi) {
                    c = '|';
                }
            } else if (q == g.target) {
                c = gate_name(g.kind)[0];
            }
            rows[q] += '-';
            rows[q] += c;
            rows[q] += '-';
        }
    }
    const auto &measured = circuit.measured();
    if (!measured.empty()) {
        for (std::size_t q = 0; q < n; ++q) {
            const bool m = std::find(measured.begin(), measured.end(), q) != measured.end();
            rows[q] += m ? "-M-" : "---";
        }
    }
    std::ostringstream out;
    for (const auto &r : rows) {
        out << r << "-\n";
    }
    return out.str();
}

}  // namespace qkit
