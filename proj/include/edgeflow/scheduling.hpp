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

#include <string>
#include <string_view>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/objectives.hpp"
#include "edgeflow/scheduling/brute_force.hpp"
#include "edgeflow/scheduling/fitness.hpp"
#include "edgeflow/scheduling/ga.hpp"
#include "edgeflow/scheduling/heuristics.hpp"
#include "edgeflow/scheduling/pso.hpp"
#include "edgeflow/scheduling/search_space.hpp"

namespace edgeflow {

enum class SchedulerKind { FCFS, RoundRobin, MinMin, MaxMin, PSO, GA };

inline constexpr SchedulerKind kAllSchedulers[] = {SchedulerKind::FCFS,   SchedulerKind::RoundRobin,
                                                   SchedulerKind::MinMin, SchedulerKind::MaxMin,
                                                   SchedulerKind::PSO,    SchedulerKind::GA};

inline std::string_view to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::FCFS: return "fcfs";
        case SchedulerKind::RoundRobin: return "round-robin";
        case SchedulerKind::MinMin: return "min-min";
        case SchedulerKind::MaxMin: return "max-min";
        case SchedulerKind::PSO: return "pso";
        case SchedulerKind::GA: return "ga";
    }
    return "unknown";
}

inline SchedulerKind scheduler_kind_from_string(std::string_view name) {
    for (SchedulerKind kind : kAllSchedulers)
        if (to_string(kind) == name) return kind;
    throw Error(ErrorCode::InvalidRequest, "unknown scheduler '" + std::string(name) + "'");
}

inline bool is_heuristic(SchedulerKind kind) { return kind != SchedulerKind::PSO && kind != SchedulerKind::GA; }

struct SchedulerConfig {
    SchedulerKind kind = SchedulerKind::GA;
    PsoParams pso;
    GaParams ga;

    friend bool operator==(const SchedulerConfig &, const SchedulerConfig &) = default;
};

/// Heuristics only optimize time; any energy or cost weight rules them out.
inline void check_scheduler_objectives(SchedulerKind kind, const Objectives &objectives) {
    validate_objectives(objectives);
    if (is_heuristic(kind) && !objectives.time_only())
        throw Error(ErrorCode::IncompatibleObjective,
                    std::string(to_string(kind)) + " only supports the time objective (w_time = 1)");
}

inline std::vector<std::size_t> schedule_nodes(const SearchSpace &space, const SchedulerConfig &config,
                                               const Objectives &objectives) {
    check_scheduler_objectives(config.kind, objectives);
    switch (config.kind) {
        case SchedulerKind::FCFS: return fcfs_nodes(space);
        case SchedulerKind::RoundRobin: return round_robin_nodes(space);
        case SchedulerKind::MinMin: return min_min_nodes(space);
        case SchedulerKind::MaxMin: return max_min_nodes(space);
        case SchedulerKind::PSO: return pso_nodes(space, objectives, config.pso);
        case SchedulerKind::GA: return ga_nodes(space, objectives, config.ga);
    }
    throw Error(ErrorCode::InvalidRequest, "unknown scheduler");
}

inline Assignment schedule(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan,
                           const SchedulerConfig &config, const Objectives &objectives) {
    check_scheduler_objectives(config.kind, objectives);
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    return model.to_assignment(schedule_nodes(space, config, objectives));
}

} // namespace edgeflow
