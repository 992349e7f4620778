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

#include <stdexcept>
#include <string>

namespace qkit {

/// Base of every error the toolkit raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Qubit count outside what a state, circuit or backend can hold.
struct CapacityError : Error {
    using Error::Error;
};

/// Gate or measurement referencing a qubit that does not exist.
struct QubitIndexError : Error {
    using Error::Error;
};

struct UnknownBackend : Error {
    explicit UnknownBackend(const std::string &name) : Error("unknown backend '" + name + "'"), name(name) {}
    std::string name;
};

struct UnknownAlgorithm : Error {
    explicit UnknownAlgorithm(const std::string &name) : Error("unknown algorithm '" + name + "'"), name(name) {}
    std::string name;
};

/// Registration of a name that is already taken.
struct DuplicateName : Error {
    using Error::Error;
};

/// User input rejected by a parameter constraint. `parameter` names the
/// offending input and `constraint` states what it violated.
struct ValidationError : Error {
    ValidationError(std::string parameter, std::string constraint)
        : Error("invalid value for '" + parameter + "': " + constraint),
          parameter(std::move(parameter)),
          constraint(std::move(constraint)) {}
    std::string parameter;
    std::string constraint;
};

/// Fewer sifted bits than a verification round needs.
struct KeyTooShort : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace qkit
