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

#include <algorithm>
#include <map>
#include <string>
#include <string_view>

#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

enum class OffloadingStrategy { EnergyOptimal, AllInEdge, AllInCloud };

inline std::string_view to_string(OffloadingStrategy strategy) {
    switch (strategy) {
        case OffloadingStrategy::EnergyOptimal: return "energy-optimal";
        case OffloadingStrategy::AllInEdge: return "all-in-edge";
        case OffloadingStrategy::AllInCloud: return "all-in-cloud";
    }
    return "unknown";
}

inline OffloadingStrategy offloading_strategy_from_string(std::string_view name) {
    if (name == "energy-optimal") return OffloadingStrategy::EnergyOptimal;
    if (name == "all-in-edge") return OffloadingStrategy::AllInEdge;
    if (name == "all-in-cloud") return OffloadingStrategy::AllInCloud;
    throw Error(ErrorCode::InvalidRequest, "unknown offloading strategy '" + std::string(name) + "'");
}

/// Tier chosen for every task.
struct OffloadingPlan {
    std::map<std::string, Tier> tier_of;

    friend bool operator==(const OffloadingPlan &, const OffloadingPlan &) = default;
};

/// Estimated end-device energy (J) of running one task on `tier`, ignoring contention.
/// Device: run power for the local execution. Edge/Cloud: upload, idle wait, download,
/// all drawn by the origin device against the fastest node of the tier.
inline double device_energy_estimate(const TaskSpec &task, const TaskTraffic &traffic, Tier tier,
                                     const Environment &env) {
    if (tier == Tier::Device) {
        const NodeSpec &local = fastest_node(env, Tier::Device);
        return local.p_run * exec_time(task, local) / 1000.0;
    }
    const NodeSpec &origin = env.node(env.origin_device);
    const NodeSpec &remote = fastest_node(env, tier);
    const double upload = transfer_time(traffic.upload_bytes(), origin, remote, env.network);
    const double download = transfer_time(traffic.result_bytes(), remote, origin, env.network);
    return (origin.p_tx * upload + origin.p_idle * exec_time(task, remote) + origin.p_rx * download) / 1000.0;
}

inline double device_energy_estimate(const WorkflowDag &dag, const std::string &task_id, Tier tier,
                                     const Environment &env) {
    const auto traffic = task_traffic(dag);
    for (std::size_t i = 0; i < dag.tasks.size(); ++i)
        if (dag.tasks[i].id == task_id) return device_energy_estimate(dag.tasks[i], traffic[i], tier, env);
    throw Error(ErrorCode::InvalidRequest, "unknown task '" + task_id + "'");
}

inline bool has_tier(const Environment &env, Tier tier) {
    return std::any_of(env.nodes.begin(), env.nodes.end(), [&](const NodeSpec &node) { return node.tier == tier; });
}

/// Tier per task. Energy-optimal skips tiers without nodes; ties prefer Device, then Edge.
inline OffloadingPlan offload(const WorkflowDag &dag, const Environment &env, OffloadingStrategy strategy) {
    OffloadingPlan plan;
    switch (strategy) {
        case OffloadingStrategy::AllInEdge:
            for (const auto &task : dag.tasks) plan.tier_of[task.id] = Tier::Edge;
            break;
        case OffloadingStrategy::AllInCloud:
            for (const auto &task : dag.tasks) plan.tier_of[task.id] = Tier::Cloud;
            break;
        case OffloadingStrategy::EnergyOptimal: {
            const auto traffic = task_traffic(dag);
            for (std::size_t i = 0; i < dag.tasks.size(); ++i) {
                Tier best = Tier::Device;
                double best_energy = device_energy_estimate(dag.tasks[i], traffic[i], Tier::Device, env);
                for (Tier tier : {Tier::Edge, Tier::Cloud}) {
                    if (!has_tier(env, tier)) continue;
                    const double energy = device_energy_estimate(dag.tasks[i], traffic[i], tier, env);
                    if (energy < best_energy) {
                        best = tier;
                        best_energy = energy;
                    }
                }
                plan.tier_of[dag.tasks[i].id] = best;
            }
            break;
        }
    }
    return plan;
}

} // namespace edgeflow
