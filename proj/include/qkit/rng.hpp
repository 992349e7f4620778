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
#include <initializer_list>
#include <random>

namespace qkit {

/// SplitMix64 finalizer. Used to spread user seeds and to derive child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a path of indices. The result
/// depends only on the values, never on call order elsewhere.
inline std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix64(parent);
    for (auto v : path) {
        s = mix64(s ^ mix64(v + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// Fresh seed from the operating system, for runs the user did not seed.
inline std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

/// Reproducible random source.
///
/// Algorithm identity: std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard) seeded with mix64(seed). Conversions to doubles and bits are
/// done here rather than through <random> distributions, whose outputs are
/// implementation-defined, so streams match across standard libraries.
class Rng {
   public:
    static constexpr const char *kAlgorithm = "mt19937_64/splitmix64-seeded";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fair coin.
    bool bit() { return (engine_() >> 63) != 0; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform() < p; }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qkit
