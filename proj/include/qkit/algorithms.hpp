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

#include "qkit/bb84.hpp"
#include "qkit/bernstein_vazirani.hpp"
#include "qkit/qrand.hpp"

namespace qkit {

/// qrand, bernstein-vazirani and bb84, in that order.
inline AlgorithmRegistry shipped_algorithms(std::size_t qubit_cap = kDefaultQubitCap) {
    AlgorithmRegistry r;
    r.add(qrand_descriptor(qubit_cap));
    r.add(bernstein_vazirani_descriptor(qubit_cap));
    r.add(bb84::descriptor());
    return r;
}

}  // namespace qkit
