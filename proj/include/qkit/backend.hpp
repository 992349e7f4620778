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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qkit/circuit.hpp"

namespace qkit {

struct BackendInfo {
    std::string name;
    std::string description;
    std::size_t max_qubits = 0;
    bool deterministic = true;  // accepts a seed and honours it
};

/// An execution target. Implementations must be safe to call concurrently.
class Backend {
   public:
    virtual ~Backend() = default;
    virtual const BackendInfo &info() const = 0;
    virtual Counts execute(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed) const = 0;
};

/// The embedded statevector simulator.
class LocalStatevectorBackend final : public Backend {
   public:
    static constexpr const char *kName = "local_statevector";

    explicit LocalStatevectorBackend(std::size_t max_qubits = kDefaultQubitCap)
        : info_{kName, "Embedded dense statevector simulator (noiseless, seeded sampling)", max_qubits, true} {}

    const BackendInfo &info() const override { return info_; }

    Counts execute(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed) const override {
        return run(circuit, shots, seed, info_.max_qubits);
    }

   private:
    BackendInfo info_;
};

struct ExecutionResult {
    Counts counts;
    std::string backend;
    std::uint64_t seed = 0;  // effective seed; replaying with it reproduces counts
};

/// Named backends in registration order. Read-only once populated.
class BackendRegistry {
   public:
    /// Registry holding only the local statevector backend.
    static BackendRegistry with_defaults(std::size_t qubit_cap = kDefaultQubitCap) {
        BackendRegistry r;
        r.add(std::make_shared<LocalStatevectorBackend>(qubit_cap));
        return r;
    }

    void add(std::shared_ptr<const Backend> backend) {
        if (find(backend->info().name) != nullptr) {
            throw DuplicateName("backend '" + backend->info().name + "' already registered");
        }
        backends_.push_back(std::move(backend));
    }

    std::vector<BackendInfo> list() const {
        std::vector<BackendInfo> out;
        out.reserve(backends_.size());
        for (const auto &b : backends_) {
            out.push_back(b->info());
        }
        return out;
    }

    bool contains(const std::string &name) const { return find(name) != nullptr; }

    const Backend &get(const std::string &name) const {
        const Backend *b = find(name);
        if (b == nullptr) {
            throw UnknownBackend(name);
        }
        return *b;
    }

    /// Runs on the named backend. Without a seed one is drawn from entropy
    /// and returned in the result.
    ExecutionResult execute(const std::string &name, const Circuit &circuit, std::uint64_t shots,
                            std::optional<std::uint64_t> seed = std::nullopt) const {
        const Backend &b = get(name);
        if (circuit.num_qubits() > b.info().max_qubits) {
            throw CapacityError("circuit needs " + std::to_string(circuit.num_qubits()) + " qubits but backend '" +
                                name + "' supports at most " + std::to_string(b.info().max_qubits));
        }
        const std::uint64_t effective = seed ? *seed : entropy_seed();
        return {b.execute(circuit, shots, effective), name, effective};
    }

   private:
    const Backend *find(const std::string &name) const {
        auto it = std::find_if(backends_.begin(), backends_.end(),
                               [&](const auto &b) { return b->info().name == name; });
        return it == backends_.end() ? nullptr : it->get();
    }

    std::vector<std::shared_ptr<const Backend>> backends_;
};

inline std::vector<BackendInfo> list_backends(const BackendRegistry &registry) { return registry.list(); }

}  // namespace qkit
