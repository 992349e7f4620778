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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qkit/bb84.hpp"

namespace qkit {

/// "outcome,count" per line, sorted by outcome.
inline std::string counts_csv(const Counts &counts) {
    std::ostringstream out;
    for (const auto &[k, n] : counts) {
        out << k << "," << n << "\n";
    }
    return out.str();
}

/// Horizontal bar chart of a histogram, for terminals.
inline std::string render_histogram(const Counts &counts, std::size_t width = 40) {
    std::ostringstream out;
    std::uint64_t peak = 0;
    std::size_t key_width = 0;
    for (const auto &[k, n] : counts) {
        peak = std::max(peak, n);
        key_width = std::max(key_width, k.size());
    }
    for (const auto &[k, n] : counts) {
        const auto bar = peak == 0 ? 0 : static_cast<std::size_t>(std::llround(double(n) * double(width) / double(peak)));
        out << std::left << std::setw(static_cast<int>(key_width)) << k << std::right << " | " << std::setw(8) << n
            << " " << std::string(bar, '#') << "\n";
    }
    return out.str();
}

struct HistogramResult {
    Counts counts;
    std::string csv;
    std::string text;
    std::uint64_t seed = 0;
};

/// Experimental mode for any algorithm: one execution with `shots` samples.
inline HistogramResult run_histogram(const AlgorithmDescriptor &algorithm, const Params &params, std::uint64_t shots,
                                     const BackendRegistry &backends, const std::string &backend,
                                     std::optional<std::uint64_t> seed = std::nullopt) {
    auto r = run_algorithm(algorithm, params, backends, backend, shots, seed);
    HistogramResult h;
    h.csv = counts_csv(r.counts);
    h.text = std::move(r.text);
    h.counts = std::move(r.counts);
    h.seed = r.seed;
    return h;
}

/// Secure-run fractions over (message length x interception density).
struct HeatmapGrid {
    std::vector<std::size_t> lengths;  // 1..max_bits
    std::vector<double> densities;     // 0, step, 2 step, ... <= 1
    std::vector<double> cells;         // row-major: cells[li * densities.size() + di]
    std::vector<std::uint64_t> key_too_short;  // per length, summed over densities
    std::uint64_t iterations = 0;
    std::uint64_t master_seed = 0;

    double cell(std::size_t length_index, std::size_t density_index) const {
        return cells[length_index * densities.size() + density_index];
    }
};

/// 0, step, 2 step, ... up to the largest multiple of step not above 1.
inline std::vector<double> density_axis(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
        throw ValidationError("density-step", "must be in (0, 1]");
    }
    const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = std::min(1.0, static_cast<double>(k) * step);
    }
    return out;
}

/// Seed of one protocol run in a heatmap cell. Depends only on its indices,
/// so any worker schedule reproduces the same grid.
inline std::uint64_t heatmap_run_seed(std::uint64_t master, std::size_t length, std::size_t density_index,
                                      std::uint64_t iteration) {
    return derive_seed(master, {length, density_index, iteration});
}

/// Runs `iterations` BB84 protocols with random messages per cell on up to
/// `jobs` threads.
inline HeatmapGrid run_heatmap(std::size_t max_bits, double density_step, std::uint64_t iterations,
                               std::uint64_t master_seed, unsigned jobs = 1, const bb84::ProtocolConfig &config = {}) {
    if (max_bits < 1) {
        throw ValidationError("max-bits", "must be at least 1");
    }
    if (iterations < 1) {
        throw ValidationError("iterations", "must be at least 1");
    }
    HeatmapGrid g;
    g.densities = density_axis(density_step);
    for (std::size_t L = 1; L <= max_bits; ++L) {
        g.lengths.push_back(L);
    }
    g.iterations = iterations;
    g.master_seed = master_seed;
    const std::size_t nd = g.densities.size();
    const std::size_t total = g.lengths.size() * nd;
    g.cells.assign(total, 0.0);
    std::vector<std::uint64_t> shorts(total, 0);

    auto work = [&](std::size_t idx) {
        const std::size_t L = g.lengths[idx / nd];
        const std::size_t di = idx % nd;
        std::uint64_t secure = 0;
        for (std::uint64_t it = 0; it < iterations; ++it) {
            const std::uint64_t s = heatmap_run_seed(master_seed, L, di, it);
            Rng msg_rng(s);
            bb84::Bits message(L);
            for (auto &b : message) {
                b = msg_rng.bit() ? 1 : 0;
            }
            auto t = bb84::run_protocol(message, g.densities[di], derive_seed(s, {1}), config);
            if (t.verdict == bb84::Verdict::Secure) {
                ++secure;
            } else if (t.verdict == bb84::Verdict::KeyTooShort) {
                ++shorts[idx];
            }
        }
        g.cells[idx] = static_cast<double>(secure) / static_cast<double>(iterations);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    if (workers == 1) {
        for (std::size_t i = 0; i < total; ++i) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) {
                    work(i);
                }
            });
        }
    }

    g.key_too_short.assign(g.lengths.size(), 0);
    for (std::size_t i = 0; i < total; ++i) {
        g.key_too_short[i / nd] += shorts[i];
    }
    return g;
}

inline std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Header "length\density,d0,d1,...,key_too_short", then one row per length
/// with cells as 6-decimal fractions.
inline std::string heatmap_csv(const HeatmapGrid &g) {
    std::ostringstream out;
    out << "length\\density";
    for (double d : g.densities) {
        out << "," << format_fixed6(d);
    }
    out << ",key_too_short\n";
    for (std::size_t li = 0; li < g.lengths.size(); ++li) {
        out << g.lengths[li];
        for (std::size_t di = 0; di < g.densities.size(); ++di) {
            out << "," << format_fixed6(g.cell(li, di));
        }
        out << "," << g.key_too_short[li] << "\n";
    }
    return out.str();
}

/// Reads what heatmap_csv writes. Values carry the CSV's 6-decimal
/// resolution; iterations and seed are not stored and come back as 0.
inline HeatmapGrid parse_heatmap_csv(std::string_view text) {
    auto split = [](std::string_view line) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            out.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        return out;
    };
    auto to_double = [](const std::string &s) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw IoError("malformed number '" + s + "' in heatmap CSV");
        }
        return v;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    HeatmapGrid g;
    if (!std::getline(in, line)) {
        throw IoError("empty heatmap CSV");
    }
    auto header = split(line);
    if (header.size() < 3 || header.front() != "length\\density" || header.back() != "key_too_short") {
        throw IoError("unexpected heatmap CSV header");
    }
    for (std::size_t i = 1; i + 1 < header.size(); ++i) {
        g.densities.push_back(to_double(header[i]));
    }
    try {
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            auto fields = split(line);
            if (fields.size() != header.size()) {
                throw IoError("heatmap CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(header.size()));
            }
            g.lengths.push_back(std::stoul(fields.front()));
            for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
                g.cells.push_back(to_double(fields[i]));
            }
            g.key_too_short.push_back(std::stoull(fields.back()));
        }
    } catch (const std::logic_error &e) {
        throw IoError(std::string("malformed heatmap CSV: ") + e.what());
    }
    return g;
}

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write leaves nothing at `destination`.
inline void write_heatmap_csv(const HeatmapGrid &g, const std::filesystem::path &destination) {
    namespace fs = std::filesystem;
    fs::path tmp = destination;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << heatmap_csv(g);
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, destination, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move heatmap CSV into '" + destination.string() + "'");
    }
}

/// Dark-to-light glyphs: index 0 is a fully intercepted cell, the last a
/// fully secure one.
inline constexpr std::string_view kHeatRamp = "@%#*+=~-:.";

inline char heat_glyph(double fraction) {
    const double f = std::clamp(fraction, 0.0, 1.0);
    const auto level = static_cast<std::size_t>(std::lround(f * double(kHeatRamp.size() - 1)));
    return kHeatRamp[level];
}

/// Density rows from 1 (top) down to 0, one column per message length.
inline std::string render_ascii(const HeatmapGrid &g) {
    std::ostringstream out;
    out << "secure fraction by interception density (rows) and message length in bits (columns)\n";
    for (std::size_t r = g.densities.size(); r-- > 0;) {
        out << "d=" << std::fixed << std::setprecision(2) << g.densities[r] << " |";
        for (std::size_t li = 0; li < g.lengths.size(); ++li) {
            out << heat_glyph(g.cell(li, r));
        }
        out << "\n";
    }
    out << "       +" << std::string(g.lengths.size(), '-') << "\n";
    std::string ticks(g.lengths.size(), ' ');
    for (std::size_t li = 0; li < g.lengths.size(); ++li) {
        if (g.lengths[li] == 1 || g.lengths[li] % 5 == 0) {
            const std::string label = std::to_string(g.lengths[li]);
            if (li + label.size() <= ticks.size()) {
                ticks.replace(li, label.size(), label);
            }
        }
    }
    out << "        " << ticks << "\n";
    out << "legend: '" << kHeatRamp.front() << "' = 0 (intercepted) ... '" << kHeatRamp.back()
        << "' = 1 (secure)\n";
    return out.str();
}

}  // namespace qkit
