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

#include <array>
#include <limits>
#include <vector>

#include "edgeflow/scheduling/search_space.hpp"
#include "edgeflow/simulation.hpp"

namespace edgeflow {

// List heuristics. All of them return node positions per task (dag order) and
// resolve ties by the lowest task id, then the lowest node id.

/// Topological traversal, each task placed on the node where it can start earliest.
inline std::vector<std::size_t> fcfs_nodes(const SearchSpace &space) {
    const auto &model = space.model();
    std::vector<std::size_t> nodes(model.task_count(), 0);
    std::vector<double> finish(model.task_count(), 0.0);
    std::vector<double> available(model.node_count(), 0.0);
    for (std::size_t t : model.order()) {
        double best_start = std::numeric_limits<double>::infinity();
        std::size_t best = space.candidates(t).front();
        for (std::size_t node : space.candidates(t)) {
            const double start = std::max(available[node], model.data_ready(t, node, finish, nodes).first);
            if (start < best_start) {
                best_start = start;
                best = node;
            }
        }
        nodes[t] = best;
        finish[t] = best_start + model.exec(t, best);
        available[best] = finish[t];
    }
    return nodes;
}

/// Topological traversal cycling through each tier's nodes with an independent counter.
inline std::vector<std::size_t> round_robin_nodes(const SearchSpace &space) {
    const auto &model = space.model();
    std::vector<std::size_t> nodes(model.task_count(), 0);
    std::array<std::size_t, 3> counter{};
    for (std::size_t t : model.order()) {
        const auto &candidates = space.candidates(t);
        const auto tier = static_cast<int>(model.env().nodes[candidates.front()].tier);
        nodes[t] = candidates[counter[tier]++ % candidates.size()];
    }
    return nodes;
}

namespace detail {

/// Shared MinMin/MaxMin loop; `prefer_largest` switches the task selection rule.
inline std::vector<std::size_t> min_max_nodes(const SearchSpace &space, bool prefer_largest) {
    const auto &model = space.model();
    const auto &tasks = model.dag().tasks;
    const std::size_t n = model.task_count();
    std::vector<std::size_t> nodes(n, 0);
    std::vector<double> finish(n, 0.0);
    std::vector<double> available(model.node_count(), 0.0);
    std::vector<std::size_t> pending_parents(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t t = 0; t < n; ++t) {
        pending_parents[t] = model.parents(t).size();
        for (const auto &[parent, bytes] : model.parents(t)) children[parent].push_back(t);
    }
    std::vector<std::size_t> ready;
    for (std::size_t t = 0; t < n; ++t)
        if (pending_parents[t] == 0) ready.push_back(t);

    while (!ready.empty()) {
        std::size_t chosen_slot = 0;
        std::size_t chosen_node = 0;
        double chosen_ect = 0.0;
        bool have_choice = false;
        for (std::size_t slot = 0; slot < ready.size(); ++slot) {
            const std::size_t t = ready[slot];
            double best_ect = std::numeric_limits<double>::infinity();
            std::size_t best_node = space.candidates(t).front();
            for (std::size_t node : space.candidates(t)) {
                const double ect =
                    std::max(available[node], model.data_ready(t, node, finish, nodes).first) + model.exec(t, node);
                if (ect < best_ect) {
                    best_ect = ect;
                    best_node = node;
                }
            }
            bool better = !have_choice;
            if (have_choice) {
                if (best_ect != chosen_ect)
                    better = prefer_largest ? best_ect > chosen_ect : best_ect < chosen_ect;
                else
                    better = tasks[t].id < tasks[ready[chosen_slot]].id;
            }
            if (better) {
                have_choice = true;
                chosen_slot = slot;
                chosen_node = best_node;
                chosen_ect = best_ect;
            }
        }
        const std::size_t t = ready[chosen_slot];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(chosen_slot));
        nodes[t] = chosen_node;
        finish[t] = chosen_ect;
        available[chosen_node] = chosen_ect;
        for (std::size_t child : children[t])
            if (--pending_parents[child] == 0) ready.push_back(child);
    }
    return nodes;
}

} // namespace detail

inline std::vector<std::size_t> min_min_nodes(const SearchSpace &space) { return detail::min_max_nodes(space, false); }

inline std::vector<std::size_t> max_min_nodes(const SearchSpace &space) { return detail::min_max_nodes(space, true); }

inline Assignment schedule_fcfs(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan) {
    SimulationModel model(dag, env);
    return model.to_assignment(fcfs_nodes(SearchSpace(model, plan)));
}

inline Assignment schedule_round_robin(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan) {
    SimulationModel model(dag, env);
    return model.to_assignment(round_robin_nodes(SearchSpace(model, plan)));
}

inline Assignment schedule_min_min(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan) {
    SimulationModel model(dag, env);
    return model.to_assignment(min_min_nodes(SearchSpace(model, plan)));
}

inline Assignment schedule_max_min(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan) {
    SimulationModel model(dag, env);
    return model.to_assignment(max_min_nodes(SearchSpace(model, plan)));
}

} // namespace edgeflow
