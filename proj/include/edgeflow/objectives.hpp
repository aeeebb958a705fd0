/*
Copyright 2026 The EdgeFlow Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cmath>
#include <optional>

#include "edgeflow/error.hpp"

namespace edgeflow {

/// Weights of the normalized time/energy/cost fitness, plus an optional deadline
/// that is reported against but never optimized.
struct Objectives {
    double w_time = 1.0;
    double w_energy = 0.0;
    double w_cost = 0.0;
    std::optional<double> deadline;

    bool time_only() const { return w_energy == 0.0 && w_cost == 0.0 && w_time > 0.0; }

    friend bool operator==(const Objectives &, const Objectives &) = default;
};

inline void validate_objectives(const Objectives &objectives) {
    const auto &o = objectives;
    if (o.w_time < 0 || o.w_energy < 0 || o.w_cost < 0)
        throw Error(ErrorCode::InvalidObjectives, "objective weights must be non-negative");
    if (o.w_time == 0 && o.w_energy == 0 && o.w_cost == 0)
        throw Error(ErrorCode::InvalidObjectives, "at least one objective weight must be positive");
    if (std::abs(o.w_time + o.w_energy + o.w_cost - 1.0) > 1e-9)
        throw Error(ErrorCode::InvalidObjectives, "objective weights must sum to 1");
    if (o.deadline && !(*o.deadline > 0.0)) throw Error(ErrorCode::InvalidObjectives, "deadline must be positive");
}

} // namespace edgeflow
