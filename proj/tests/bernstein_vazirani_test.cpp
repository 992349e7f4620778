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

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "qkit/bernstein_vazirani.hpp"

using namespace qkit;

namespace {

std::string random_key(std::mt19937_64 &gen, std::size_t n) {
    std::string s(n, '0');
    for (auto &c : s) {
        c = (gen() & 1U) ? '1' : '0';
    }
    return s;
}

/// Parity of popcount(s & x) with s and x as integers in the key's qubit
/// layout (character j is bit n-1-j).
int phase_parity(std::uint64_t s, std::uint64_t x) { return std::popcount(s & x) & 1; }

}  // namespace

TEST(BvKey, parsing) {
    EXPECT_EQ(BvKey::parse("0110").str(), "0110");
    EXPECT_THROW(BvKey::parse(""), ValidationError);
    EXPECT_THROW(BvKey::parse("01a"), ValidationError);
    const auto k = BvKey::parse("100");
    EXPECT_EQ(k.qubit_of(0), 2u);
    EXPECT_EQ(k.qubit_of(2), 0u);
    EXPECT_EQ(k.ancilla(), 3u);
}

TEST(ClassicalOracle, examples) {
    EXPECT_EQ(classical_oracle(BvKey::parse("101"), "100"), 1);
    EXPECT_EQ(classical_oracle(BvKey::parse("101"), "111"), 0);
    for (const char *x : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
        EXPECT_EQ(classical_oracle(BvKey::parse("000"), x), 0);
    }
    EXPECT_THROW(classical_oracle(BvKey::parse("101"), "10"), ValidationError);
}

TEST(ClassicalSolve, recovers_key_with_n_queries) {
    const auto key = BvKey::parse("110");
    std::size_t calls = 0;
    auto oracle = [&](std::string_view x) {
        ++calls;
        return classical_oracle(key, x);
    };
    const auto sol = classical_solve(oracle, 3);
    EXPECT_EQ(sol.key.str(), "110");
    EXPECT_EQ(sol.queries, 3u);
    EXPECT_EQ(calls, 3u);

    const auto zero = BvKey::parse("0");
    const auto one_bit = classical_solve([&](std::string_view x) { return classical_oracle(zero, x); }, 1);
    EXPECT_EQ(one_bit.key.str(), "0");
    EXPECT_EQ(one_bit.queries, 1u);

    std::mt19937_64 gen(10);
    for (int i = 0; i < 50; ++i) {
        const auto k = BvKey::parse(random_key(gen, 10));
        EXPECT_EQ(classical_solve([&](std::string_view x) { return classical_oracle(k, x); }, 10).key, k);
    }
}

TEST(BvCircuit, structure) {
    const auto zeros = bv_circuit(BvKey::parse("0000"));
    EXPECT_EQ(zeros.count(GateKind::CNOT), 0u);
    EXPECT_EQ(zeros.num_qubits(), 5u);

    const auto c = bv_circuit(BvKey::parse("011"));
    EXPECT_EQ(c.count(GateKind::CNOT), 2u);
    EXPECT_EQ(c.num_qubits(), 4u);
    // X on ancilla, H on n+1 qubits before and H on n inputs after the oracle.
    EXPECT_EQ(c.count(GateKind::X), 1u);
    EXPECT_EQ(c.count(GateKind::H), 4u + 3u);
    EXPECT_EQ(c.gates().front(), Gate::x(3));
    // Ancilla is never measured and gets no trailing H.
    EXPECT_EQ(c.measured(), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_NE(c.gates().back(), Gate::h(3));

    const auto minimal = bv_circuit(BvKey::parse("1"));
    EXPECT_EQ(minimal.num_qubits(), 2u);
    EXPECT_EQ(minimal.count(GateKind::CNOT), 1u);
}

TEST(BvCircuit, single_oracle_block_with_popcount_cnots) {
    std::mt19937_64 gen(12);
    for (int i = 0; i < 100; ++i) {
        const auto key = random_key(gen, 1 + gen() % 12);
        const auto c = bv_circuit(BvKey::parse(key));
        const auto popcount = static_cast<std::size_t>(std::count(key.begin(), key.end(), '1'));
        EXPECT_EQ(c.count(GateKind::CNOT), popcount);
        // CNOTs are contiguous: exactly one oracle block.
        const auto &g = c.gates();
        auto first = std::find_if(g.begin(), g.end(), [](const Gate &x) { return x.kind == GateKind::CNOT; });
        auto last = std::find_if(g.rbegin(), g.rend(), [](const Gate &x) { return x.kind == GateKind::CNOT; });
        if (popcount > 0) {
            EXPECT_EQ(static_cast<std::size_t>(std::distance(first, last.base())), popcount);
        }
    }
}

TEST(BvRun, examples) {
    const auto backends = BackendRegistry::with_defaults();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_EQ(bv_run(BvKey::parse("011"), backends, "local_statevector", seed), "011");
    }
    EXPECT_EQ(bv_run(BvKey::parse("0000000000"), backends, "local_statevector", 1), "0000000000");
    const auto hist = backends.execute("local_statevector", bv_circuit(BvKey::parse("011")), 1000, 5);
    EXPECT_EQ(hist.counts.at("011"), 1000u);
}

TEST(BvRun, random_keys_recovered_exactly) {
    const auto backends = BackendRegistry::with_defaults();
    std::mt19937_64 gen(13);
    for (int i = 0; i < 200; ++i) {
        const auto key = BvKey::parse(random_key(gen, 1 + gen() % 10));
        const auto truth = classical_solve([&](std::string_view x) { return classical_oracle(key, x); }, key.size());
        ASSERT_EQ(bv_run(key, backends, "local_statevector", gen()), truth.key.str());
    }
}

TEST(BvRun, quantum_uses_one_query_classical_uses_n) {
    const auto key = BvKey::parse("1011001");
    std::size_t classical_calls = 0;
    classical_solve(
        [&](std::string_view x) {
            ++classical_calls;
            return classical_oracle(key, x);
        },
        key.size());
    EXPECT_EQ(classical_calls, key.size());
    // One oracle block in the circuit is the single quantum query.
    const auto c = bv_circuit(key);
    EXPECT_EQ(c.count(GateKind::CNOT), 4u);
}

TEST(BvRun, capacity_errors_propagate) {
    const auto backends = BackendRegistry::with_defaults(4);
    EXPECT_THROW(bv_run(BvKey::parse("1111"), backends, "local_statevector", 1), CapacityError);
    EXPECT_EQ(bv_run(BvKey::parse("111"), backends, "local_statevector", 1), "111");
}

TEST(BvOracle, phase_kickback_matches_parity_formula) {
    // (H^n |0..0>) (x) |->, then the oracle: amplitude of |x>|-> must be
    // (-1)^(s.x) / sqrt(2^n), with the ancilla components +-1/sqrt(2).
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (std::uint64_t s_int = 0; s_int < dim; ++s_int) {
            const auto key = BvKey::parse(to_bitstring(s_int, n));
            Circuit c(n + 1);
            c.x(n);
            for (std::size_t q = 0; q <= n; ++q) {
                c.h(q);
            }
            append_bv_oracle(c, key);
            const auto state = c.final_state();
            const double base = 1.0 / std::sqrt(double(dim)) / std::sqrt(2.0);
            for (std::uint64_t x = 0; x < dim; ++x) {
                const double sign = phase_parity(s_int, x) ? -1.0 : 1.0;
                ASSERT_NEAR(state[x].real(), sign * base, 1e-12) << "n=" << n << " s=" << key.str() << " x=" << x;
                ASSERT_NEAR(state[x | dim].real(), -sign * base, 1e-12);
                ASSERT_NEAR(state[x].imag(), 0.0, 1e-12);
            }
        }
    }
}

TEST(BvOracle, pre_measurement_state_is_key_times_minus) {
    std::mt19937_64 gen(14);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + gen() % 8;
        const auto key = BvKey::parse(random_key(gen, n));
        const auto state = bv_circuit(key).final_state();
        const auto s = from_bitstring(key.str());
        const std::size_t dim = std::size_t{1} << n;
        for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
            double expected = 0;
            if ((idx & (dim - 1)) == s) {
                expected = (idx & dim) ? -1.0 / std::sqrt(2.0) : 1.0 / std::sqrt(2.0);
            }
            ASSERT_NEAR(state[idx].real(), expected, 1e-12);
            ASSERT_NEAR(state[idx].imag(), 0.0, 1e-12);
        }
    }
}
