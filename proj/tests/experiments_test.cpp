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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gtest/gtest.h"
#include "qkit/algorithms.hpp"
#include "qkit/experiments.hpp"
#include "support/stats.hpp"

using namespace qkit;

namespace {

/// Probability that one BB84 run at density 1 ends secure, by enumerating the
/// sifted length. Per attempt: L ~ Binomial(m, 1/2) sifted bits; L < 2 cannot
/// be verified; ceil(L/2) published bits each mismatch with probability 1/4;
/// a clean verification with fewer than `message_bits` leftover key bits is a
/// shortfall, which is retried up to `retries` times.
double exact_secure_probability_full_density(std::size_t message_bits, std::size_t m, std::size_t retries) {
    double secure = 0, shortfall = 0;
    for (std::size_t L = 0; L <= m; ++L) {
        const double w = oracle::binomial_pmf(m, L, 0.5);
        if (L < 2) {
            shortfall += w;
            continue;
        }
        const std::size_t published = (L + 1) / 2;
        const double clean = std::pow(0.75, double(published));
        if (L - published >= message_bits) {
            secure += w * clean;
        } else {
            shortfall += w * clean;
        }
    }
    double total = 0, carry = 1;
    for (std::size_t k = 0; k <= retries; ++k) {
        total += carry * secure;
        carry *= shortfall;
    }
    return total;
}

HeatmapGrid tiny_grid(double value) {
    HeatmapGrid g;
    g.lengths = {1};
    g.densities = {0.0};
    g.cells = {value};
    g.key_too_short = {0};
    return g;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("qkit_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Histogram, qrand_rows_sum_to_shots) {
    const auto backends = BackendRegistry::with_defaults();
    const auto algos = shipped_algorithms();
    const auto &d = algos.get("qrand");
    const auto h = run_histogram(d, parse_params(d, {"2"}), 400, backends, "local_statevector", 21);
    std::istringstream in(h.csv);
    std::uint64_t total = 0;
    int rows = 0;
    std::string prev;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        const auto comma = line.find(',');
        const auto outcome = line.substr(0, comma);
        EXPECT_LT(prev, outcome);
        prev = outcome;
        total += std::stoull(line.substr(comma + 1));
    }
    EXPECT_EQ(rows, 4);
    EXPECT_EQ(total, 400u);
    EXPECT_EQ(h.csv, run_histogram(d, parse_params(d, {"2"}), 400, backends, "local_statevector", 21).csv);
}

TEST(Histogram, bernstein_vazirani_is_a_single_row) {
    const auto backends = BackendRegistry::with_defaults();
    const auto algos = shipped_algorithms();
    const auto &d = algos.get("bernstein-vazirani");
    EXPECT_EQ(run_histogram(d, parse_params(d, {"10"}), 100, backends, "local_statevector", 1).csv, "10,100\n");
}

TEST(DensityAxis, endpoints) {
    const auto tenth = density_axis(0.1);
    ASSERT_EQ(tenth.size(), 11u);
    EXPECT_EQ(tenth.front(), 0.0);
    EXPECT_DOUBLE_EQ(tenth.back(), 1.0);
    EXPECT_EQ(density_axis(0.05).size(), 21u);
    const auto odd = density_axis(0.3);
    ASSERT_EQ(odd.size(), 4u);
    EXPECT_NEAR(odd.back(), 0.9, 1e-12);
    EXPECT_EQ(density_axis(1.0), (std::vector<double>{0.0, 1.0}));
    EXPECT_THROW(density_axis(0.0), ValidationError);
    EXPECT_THROW(density_axis(1.5), ValidationError);
}

TEST(Heatmap, shape_and_zero_density_row) {
    const auto g = run_heatmap(20, 0.1, 20, 1, 2);
    EXPECT_EQ(g.lengths.size(), 20u);
    EXPECT_EQ(g.densities.size(), 11u);
    EXPECT_EQ(g.cells.size(), 220u);
    for (std::size_t li = 0; li < g.lengths.size(); ++li) {
        EXPECT_EQ(g.cell(li, 0), 1.0) << "length " << g.lengths[li];
    }
    for (double c : g.cells) {
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
    }
}

TEST(Heatmap, validation) {
    EXPECT_THROW(run_heatmap(0, 0.1, 1, 1), ValidationError);
    EXPECT_THROW(run_heatmap(1, 0.0, 1, 1), ValidationError);
    EXPECT_THROW(run_heatmap(1, 0.1, 0, 1), ValidationError);
}

TEST(Heatmap, full_density_cells_match_exact_oracle) {
    const std::uint64_t iterations = 400;
    const auto g = run_heatmap(3, 1.0, iterations, 2024, 4);
    ASSERT_EQ(g.densities.size(), 2u);
    for (std::size_t li = 0; li < g.lengths.size(); ++li) {
        const std::size_t L = g.lengths[li];
        const double p = exact_secure_probability_full_density(L, 6 * L, 10);
        EXPECT_TRUE(oracle::within_sigmas(g.cell(li, 1), p, iterations, 3))
            << "L=" << L << " observed " << g.cell(li, 1) << " expected " << p;
    }
}

TEST(Heatmap, independent_of_parallelism) {
    const auto serial = run_heatmap(6, 0.25, 15, 77, 1);
    const auto parallel = run_heatmap(6, 0.25, 15, 77, 5);
    EXPECT_EQ(serial.cells, parallel.cells);
    EXPECT_EQ(serial.key_too_short, parallel.key_too_short);
    EXPECT_NE(serial.cells, run_heatmap(6, 0.25, 15, 78, 1).cells);
}

TEST(HeatmapCsv, single_cell) {
    EXPECT_EQ(heatmap_csv(tiny_grid(1.0)), "length\\density,0.000000,key_too_short\n1,1.000000,0\n");
}

TEST(HeatmapCsv, round_trip) {
    const auto g = run_heatmap(5, 0.2, 7, 3, 1);
    const auto text = heatmap_csv(g);
    const auto back = parse_heatmap_csv(text);
    EXPECT_EQ(back.lengths, g.lengths);
    EXPECT_EQ(back.key_too_short, g.key_too_short);
    ASSERT_EQ(back.densities.size(), g.densities.size());
    for (std::size_t i = 0; i < g.densities.size(); ++i) {
        EXPECT_NEAR(back.densities[i], g.densities[i], 5e-7);
    }
    ASSERT_EQ(back.cells.size(), g.cells.size());
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        EXPECT_NEAR(back.cells[i], g.cells[i], 5e-7);
    }
    EXPECT_EQ(heatmap_csv(back), text);
    EXPECT_THROW(parse_heatmap_csv("nonsense\n"), IoError);
    EXPECT_THROW(parse_heatmap_csv("length\\density,0.000000,key_too_short\n1,abc,0\n"), IoError);
}

TEST(HeatmapCsv, file_output) {
    const auto path = temp_path("grid.csv");
    write_heatmap_csv(tiny_grid(0.5), path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), heatmap_csv(tiny_grid(0.5)));
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".partial"));
    std::filesystem::remove(path);
}

TEST(HeatmapCsv, unwritable_destination_leaves_nothing) {
    const auto missing_dir = temp_path("no_such_dir") / "grid.csv";
    EXPECT_THROW(write_heatmap_csv(tiny_grid(1.0), missing_dir), IoError);
    EXPECT_FALSE(std::filesystem::exists(missing_dir));

    const auto dir = temp_path("a_directory");
    std::filesystem::create_directories(dir / "child");
    EXPECT_THROW(write_heatmap_csv(tiny_grid(1.0), dir), IoError);
    EXPECT_FALSE(std::filesystem::exists(dir.string() + ".partial"));
    std::filesystem::remove_all(dir);
}

namespace {

std::string glyph_rows(const std::string &ascii) {
    // Keep only the cell characters (after "|") of density rows.
    std::istringstream in(ascii);
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("d=", 0) == 0) {
            out += line.substr(line.find('|') + 1);
        }
    }
    return out;
}

}  // namespace

TEST(RenderAscii, uniform_grids) {
    HeatmapGrid g;
    g.lengths = {1, 2, 3, 4};
    g.densities = {0.0, 0.5, 1.0};
    g.key_too_short = {0, 0, 0, 0};
    g.cells.assign(12, 1.0);
    const auto light = glyph_rows(render_ascii(g));
    EXPECT_EQ(light, std::string(12, kHeatRamp.back()));
    g.cells.assign(12, 0.0);
    const auto dark = glyph_rows(render_ascii(g));
    EXPECT_EQ(dark, std::string(12, kHeatRamp.front()));
    EXPECT_GE(kHeatRamp.size(), 5u);
    EXPECT_NE(render_ascii(g).find("legend"), std::string::npos);
}

TEST(RenderAscii, monotone_column_gives_monotone_glyphs) {
    HeatmapGrid g;
    g.lengths = {1};
    for (int i = 0; i <= 20; ++i) {
        g.densities.push_back(i / 20.0);
        g.cells.push_back(1.0 - i / 20.0);
    }
    g.key_too_short = {0};
    const auto glyphs = glyph_rows(render_ascii(g));  // top row is density 1 (darkest)
    ASSERT_EQ(glyphs.size(), 21u);
    for (std::size_t i = 1; i < glyphs.size(); ++i) {
        EXPECT_LE(kHeatRamp.find(glyphs[i - 1]), kHeatRamp.find(glyphs[i]));
    }
    EXPECT_EQ(glyphs.front(), kHeatRamp.front());
    EXPECT_EQ(glyphs.back(), kHeatRamp.back());
}
