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

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/offloading.hpp"
#include "edgeflow/simulation.hpp"

namespace edgeflow {

/// Nodes of the task's offloaded tier, ascending by id.
inline std::vector<std::string> allowed_nodes(const std::string &task, const OffloadingPlan &plan,
                                              const Environment &env) {
    auto tier = plan.tier_of.find(task);
    if (tier == plan.tier_of.end()) throw Error(ErrorCode::InvalidRequest, "task '" + task + "' has no offloading tier");
    std::vector<std::string> nodes;
    for (const auto &node : env.nodes)
        if (node.tier == tier->second) nodes.push_back(node.id);
    if (nodes.empty())
        throw Error(ErrorCode::EmptyTier, "task '" + task + "' offloaded to empty tier " +
                                              std::string(to_string(tier->second)));
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

/// Per-task candidate node positions. A schedule in "gene" form stores, per task,
/// an index into its candidate list.
class SearchSpace {
  public:
    SearchSpace(const SimulationModel &model, const OffloadingPlan &plan) : model_(&model) {
        candidates_.reserve(model.task_count());
        for (const auto &task : model.dag().tasks) {
            auto tier = plan.tier_of.find(task.id);
            if (tier == plan.tier_of.end())
                throw Error(ErrorCode::InvalidRequest, "task '" + task.id + "' has no offloading tier");
            const auto &nodes = model.tier_nodes(tier->second);
            if (nodes.empty())
                throw Error(ErrorCode::EmptyTier, "task '" + task.id + "' offloaded to empty tier " +
                                                      std::string(to_string(tier->second)));
            candidates_.push_back(nodes);
        }
    }

    const SimulationModel &model() const { return *model_; }
    std::size_t dimensions() const { return candidates_.size(); }
    const std::vector<std::size_t> &candidates(std::size_t task) const { return candidates_[task]; }
    std::size_t width(std::size_t task) const { return candidates_[task].size(); }

    std::vector<std::size_t> decode(std::span<const std::size_t> genes) const {
        std::vector<std::size_t> nodes(genes.size());
        for (std::size_t t = 0; t < genes.size(); ++t) nodes[t] = candidates_[t][genes[t]];
        return nodes;
    }

    std::vector<std::size_t> encode(std::span<const std::size_t> nodes) const {
        std::vector<std::size_t> genes(nodes.size());
        for (std::size_t t = 0; t < nodes.size(); ++t) {
            const auto &c = candidates_[t];
            const auto it = std::find(c.begin(), c.end(), nodes[t]);
            if (it == c.end()) throw Error(ErrorCode::InconsistentAssignment, "node outside the task's tier");
            genes[t] = static_cast<std::size_t>(it - c.begin());
        }
        return genes;
    }

    /// Number of tier-respecting assignments, saturating at SIZE_MAX.
    std::size_t size() const {
        std::size_t total = 1;
        for (const auto &c : candidates_) {
            if (total > std::numeric_limits<std::size_t>::max() / c.size()) return std::numeric_limits<std::size_t>::max();
            total *= c.size();
        }
        return total;
    }

  private:
    const SimulationModel *model_;
    std::vector<std::vector<std::size_t>> candidates_;
};

} // namespace edgeflow
