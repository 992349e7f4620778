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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qkit/backend.hpp"

namespace qkit {

enum class ParamKind { NaturalNumber, Bitstring, Probability, Text };

inline const char *param_kind_name(ParamKind kind) {
    switch (kind) {
        case ParamKind::NaturalNumber:
            return "natural number";
        case ParamKind::Bitstring:
            return "bitstring";
        case ParamKind::Probability:
            return "probability";
        case ParamKind::Text:
            return "text";
    }
    return "?";
}

/// Declares one user-supplied parameter. For natural numbers `min`/`max`
/// bound the value; for bitstrings and text they bound the length in
/// characters (bytes for text). Probabilities are always within [0, 1].
struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Text;
    std::uint64_t min = 0;
    std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    std::string description;

    static ParamSpec natural(std::string name, std::uint64_t min, std::uint64_t max, std::string description) {
        return {std::move(name), ParamKind::NaturalNumber, min, max, std::move(description)};
    }
    static ParamSpec bitstring(std::string name, std::uint64_t min_len, std::uint64_t max_len,
                               std::string description) {
        return {std::move(name), ParamKind::Bitstring, min_len, max_len, std::move(description)};
    }
    static ParamSpec probability(std::string name, std::string description) {
        return {std::move(name), ParamKind::Probability, 0, 1, std::move(description)};
    }
    static ParamSpec text(std::string name, std::uint64_t min_len, std::uint64_t max_len, std::string description) {
        return {std::move(name), ParamKind::Text, min_len, max_len, std::move(description)};
    }

    bool consistent() const { return min <= max && !name.empty(); }
};

/// Natural numbers are held as uint64, probabilities as double, bitstrings
/// and text as strings.
using ParamValue = std::variant<std::uint64_t, double, std::string>;

/// Validated parameter values in declaration order.
class Params {
   public:
    void set(std::string name, ParamValue value) {
        for (auto &[k, v] : values_) {
            if (k == name) {
                v = std::move(value);
                return;
            }
        }
        values_.emplace_back(std::move(name), std::move(value));
    }

    bool has(std::string_view name) const { return lookup(name) != nullptr; }

    const ParamValue &get(std::string_view name) const {
        const ParamValue *v = lookup(name);
        if (v == nullptr) {
            throw ValidationError(std::string(name), "missing");
        }
        return *v;
    }

    std::uint64_t natural(std::string_view name) const { return as<std::uint64_t>(name); }
    double probability(std::string_view name) const { return as<double>(name); }
    const std::string &text(std::string_view name) const { return as<std::string>(name); }

    std::size_t size() const { return values_.size(); }
    const std::vector<std::pair<std::string, ParamValue>> &entries() const { return values_; }

    bool operator==(const Params &) const = default;

   private:
    const ParamValue *lookup(std::string_view name) const {
        for (const auto &[k, v] : values_) {
            if (k == name) {
                return &v;
            }
        }
        return nullptr;
    }

    template <typename T>
    const T &as(std::string_view name) const {
        const auto *p = std::get_if<T>(&get(name));
        if (p == nullptr) {
            throw ValidationError(std::string(name), "has the wrong type");
        }
        return *p;
    }

    std::vector<std::pair<std::string, ParamValue>> values_;
};

/// Parses one raw string against its spec.
inline ParamValue parse_value(const ParamSpec &spec, std::string_view raw) {
    const std::string range = "[" + std::to_string(spec.min) + ", " + std::to_string(spec.max) + "]";
    switch (spec.kind) {
        case ParamKind::NaturalNumber: {
            std::uint64_t v = 0;
            if (raw.empty() || raw.front() == '+' || raw.front() == '-') {
                throw ValidationError(spec.name, "expected a natural number, got '" + std::string(raw) + "'");
            }
            auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (ec == std::errc::result_out_of_range) {
                throw ValidationError(spec.name, "value out of range " + range);
            }
            if (ec != std::errc() || ptr != raw.data() + raw.size()) {
                throw ValidationError(spec.name, "expected a natural number, got '" + std::string(raw) + "'");
            }
            if (v < spec.min || v > spec.max) {
                throw ValidationError(spec.name, "value " + std::to_string(v) + " outside " + range);
            }
            return v;
        }
        case ParamKind::Bitstring: {
            for (char c : raw) {
                if (c != '0' && c != '1') {
                    throw ValidationError(spec.name, "expected a bitstring of 0/1, got '" + std::string(raw) + "'");
                }
            }
            if (raw.size() < spec.min || raw.size() > spec.max) {
                throw ValidationError(spec.name, "length " + std::to_string(raw.size()) + " outside " + range);
            }
            return std::string(raw);
        }
        case ParamKind::Probability: {
            double v = 0;
            auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(v)) {
                throw ValidationError(spec.name, "expected a number, got '" + std::string(raw) + "'");
            }
            if (v < 0.0 || v > 1.0) {
                throw ValidationError(spec.name, "probability must be in [0, 1], got " + std::string(raw));
            }
            return v;
        }
        case ParamKind::Text:
            if (raw.size() < spec.min || raw.size() > spec.max) {
                throw ValidationError(spec.name, "length " + std::to_string(raw.size()) + " outside " + range);
            }
            return std::string(raw);
    }
    throw ValidationError(spec.name, "unsupported parameter kind");
}

/// Inverse of parse_value; doubles use the shortest round-tripping form.
inline std::string format_value(const ParamValue &value) {
    if (const auto *n = std::get_if<std::uint64_t>(&value)) {
        return std::to_string(*n);
    }
    if (const auto *d = std::get_if<double>(&value)) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *d);
        return std::string(buf, ptr);
    }
    return std::get<std::string>(value);
}

struct RunRequest;
struct AlgorithmResult;

/// One algorithm as the framework sees it.
///
/// Ordinary algorithms supply `build` and `interpret`: the framework builds a
/// circuit, runs it on the chosen backend and hands the raw counts (even for
/// one shot) to `interpret`. Protocols that cannot be expressed as a single
/// circuit supply `drive` instead and leave `build` empty.
struct AlgorithmDescriptor {
    std::string name;
    std::string description;
    std::string explanation;  // how to read the result
    std::vector<ParamSpec> params;
    std::function<Circuit(const Params &)> build;
    std::function<std::string(const Params &, const Counts &)> interpret;
    std::function<AlgorithmResult(const Params &, const RunRequest &)> drive;
};

struct RunRequest {
    const BackendRegistry &backends;
    std::string backend;
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;
};

struct AlgorithmResult {
    std::string text;  // interpreted, human readable
    Counts counts;
    Circuit circuit;  // null for driven algorithms
    std::string backend;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Parses one raw string per ParamSpec, in declaration order.
inline Params parse_params(const AlgorithmDescriptor &descriptor, const std::vector<std::string> &raw) {
    if (raw.size() != descriptor.params.size()) {
        throw ValidationError(descriptor.name, "expected " + std::to_string(descriptor.params.size()) +
                                                   " parameter value(s), got " + std::to_string(raw.size()));
    }
    Params params;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        params.set(descriptor.params[i].name, parse_value(descriptor.params[i], raw[i]));
    }
    return params;
}

inline std::vector<std::string> format_params(const AlgorithmDescriptor &descriptor, const Params &params) {
    std::vector<std::string> out;
    out.reserve(descriptor.params.size());
    for (const auto &spec : descriptor.params) {
        out.push_back(format_value(params.get(spec.name)));
    }
    return out;
}

/// Builds, executes and interprets. shots == 1 is the run-once mode.
inline AlgorithmResult run_algorithm(const AlgorithmDescriptor &descriptor, const Params &params,
                                     const BackendRegistry &backends, const std::string &backend_name,
                                     std::uint64_t shots, std::optional<std::uint64_t> seed = std::nullopt) {
    if (shots < 1) {
        throw ValidationError("shots", "must be at least 1");
    }
    const std::uint64_t effective = seed ? *seed : entropy_seed();
    if (descriptor.drive) {
        backends.get(backend_name);
        AlgorithmResult result = descriptor.drive(params, RunRequest{backends, backend_name, shots, effective});
        result.backend = backend_name;
        result.shots = shots;
        result.seed = effective;
        return result;
    }
    AlgorithmResult result;
    result.circuit = descriptor.build(params);
    auto exec = backends.execute(backend_name, result.circuit, shots, effective);
    result.text = descriptor.interpret(params, exec.counts);
    result.counts = std::move(exec.counts);
    result.backend = backend_name;
    result.shots = shots;
    result.seed = effective;
    return result;
}

/// Named algorithms in registration order. Populated at startup, then read-only.
class AlgorithmRegistry {
   public:
    void add(AlgorithmDescriptor descriptor) {
        if (descriptor.name.empty()) {
            throw ValidationError("name", "algorithm name must not be empty");
        }
        if (contains(descriptor.name)) {
            throw DuplicateName("algorithm '" + descriptor.name + "' already registered");
        }
        for (const auto &spec : descriptor.params) {
            if (!spec.consistent()) {
                throw ValidationError(spec.name, "inconsistent constraints (min > max)");
            }
        }
        if (!descriptor.drive && !(descriptor.build && descriptor.interpret)) {
            throw ValidationError(descriptor.name, "needs either drive or build and interpret");
        }
        descriptors_.push_back(std::move(descriptor));
    }

    std::vector<std::pair<std::string, std::string>> list() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto &d : descriptors_) {
            out.emplace_back(d.name, d.description);
        }
        return out;
    }

    bool contains(std::string_view name) const { return find(name) != nullptr; }

    const AlgorithmDescriptor &get(std::string_view name) const {
        const auto *d = find(name);
        if (d == nullptr) {
            throw UnknownAlgorithm(std::string(name));
        }
        return *d;
    }

    const std::vector<AlgorithmDescriptor> &descriptors() const { return descriptors_; }
    std::size_t size() const { return descriptors_.size(); }

   private:
    const AlgorithmDescriptor *find(std::string_view name) const {
        for (const auto &d : descriptors_) {
            if (d.name == name) {
                return &d;
            }
        }
        return nullptr;
    }

    std::vector<AlgorithmDescriptor> descriptors_;
};

}  // namespace qkit
