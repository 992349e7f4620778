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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "qkit/qrand.hpp"
#include "support/stats.hpp"

using namespace qkit;

TEST(Qrand, circuit_structure) {
    const auto one = qrand_circuit(1);
    EXPECT_EQ(one.num_qubits(), 1u);
    EXPECT_EQ(one.gates().size(), 1u);
    EXPECT_EQ(one.gates()[0], Gate::h(0));
    EXPECT_TRUE(one.measures_all());

    const auto three = qrand_circuit(3);
    EXPECT_EQ(three.count(GateKind::H), 3u);
    EXPECT_EQ(three.gates().size(), 3u);
    const auto s = three.final_state();
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(s[i].real(), 1.0 / std::sqrt(8.0), 1e-12);
        EXPECT_NEAR(s[i].imag(), 0.0, 1e-12);
    }

    EXPECT_THROW(qrand_circuit(0), ValidationError);
    EXPECT_THROW(qrand_circuit(25), ValidationError);
}

TEST(Qrand, uniform_superposition_up_to_ten_qubits) {
    for (std::uint64_t n = 1; n <= 10; ++n) {
        const auto s = qrand_circuit(n).final_state();
        const double amp = std::pow(2.0, -double(n) / 2.0);
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            ASSERT_NEAR(s[i].real(), amp, 1e-12) << "n=" << n << " i=" << i;
            ASSERT_NEAR(s[i].imag(), 0.0, 1e-12);
        }
    }
}

TEST(Qrand, value_range_and_determinism) {
    const auto backends = BackendRegistry::with_defaults();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        ASSERT_LE(qrand_value(4, backends, "local_statevector", seed), 15u);
    }
    EXPECT_EQ(qrand_value(16, backends, "local_statevector", 77), qrand_value(16, backends, "local_statevector", 77));
}

TEST(Qrand, single_bit_mean) {
    const auto backends = BackendRegistry::with_defaults();
    std::uint64_t ones = 0;
    const std::uint64_t runs = 10000;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        ones += qrand_value(1, backends, "local_statevector", seed);
    }
    EXPECT_NEAR(double(ones) / runs, 0.5, 0.02);
}

TEST(Qrand, chi_square_uniformity) {
    const auto backends = BackendRegistry::with_defaults();
    for (std::uint64_t n = 1; n <= 4; ++n) {
        const std::size_t bins = std::size_t{1} << n;
        const std::uint64_t samples = 100 * bins;
        std::vector<std::uint64_t> observed(bins, 0);
        for (std::uint64_t i = 0; i < samples; ++i) {
            observed[qrand_value(n, backends, "local_statevector", derive_seed(n, {i}))]++;
        }
        const std::vector<double> expected(bins, 100.0);
        const auto chi = oracle::chi_square(observed, expected);
        EXPECT_GT(chi.p_value, 0.001) << "n=" << n << " statistic " << chi.statistic;
    }
}

TEST(Qrand, interpretation_modes) {
    const auto d = qrand_descriptor();
    Params p;
    p.set("n", std::uint64_t{3});
    Counts single;
    single.add("101");
    EXPECT_EQ(d.interpret(p, single), "random number: 5 (binary 101)");
    Counts many;
    many.add("000", 3);
    many.add("111", 5);
    EXPECT_NE(d.interpret(p, many).find("distribution of 8"), std::string::npos);
}
