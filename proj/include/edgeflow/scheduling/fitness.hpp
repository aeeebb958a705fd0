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

#include <span>
#include <vector>

#include "edgeflow/objectives.hpp"
#include "edgeflow/scheduling/heuristics.hpp"
#include "edgeflow/scheduling/search_space.hpp"
#include "edgeflow/simulation.hpp"

namespace edgeflow {

/// Weighted sum of makespan, device energy and cost, each divided by the baseline's
/// value. Zero baseline components are replaced by 1. Lower is better.
inline double weighted_fitness(const Metrics &metrics, const Objectives &objectives, const Metrics &baseline) {
    auto norm = [](double value) { return value > 0.0 ? value : 1.0; };
    return objectives.w_time * metrics.makespan / norm(baseline.makespan) +
           objectives.w_energy * metrics.energy / norm(baseline.energy) +
           objectives.w_cost * metrics.cost / norm(baseline.cost);
}

class FitnessEvaluator {
  public:
    /// Baseline defaults to the FCFS schedule under the same offloading plan.
    FitnessEvaluator(const SearchSpace &space, Objectives objectives)
        : space_(&space), objectives_(objectives), baseline_(space.model().evaluate(fcfs_nodes(space))) {}

    FitnessEvaluator(const SearchSpace &space, Objectives objectives, Metrics baseline)
        : space_(&space), objectives_(objectives), baseline_(baseline) {}

    const Metrics &baseline() const { return baseline_; }
    const Objectives &objectives() const { return objectives_; }

    double of_nodes(std::span<const std::size_t> nodes) const {
        return weighted_fitness(space_->model().evaluate(nodes), objectives_, baseline_);
    }

    double of_genes(std::span<const std::size_t> genes) const { return of_nodes(space_->decode(genes)); }

  private:
    const SearchSpace *space_;
    Objectives objectives_;
    Metrics baseline_;
};

inline double fitness(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan,
                      const Assignment &assignment, const Objectives &objectives, const Metrics &baseline) {
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    return FitnessEvaluator(space, objectives, baseline).of_nodes(model.node_indices(assignment, &plan));
}

/// Heuristic schedules used to seed the metaheuristic populations: all four for a
/// pure time objective, FCFS alone otherwise. Returned in gene form.
inline std::vector<std::vector<std::size_t>> heuristic_seeds(const SearchSpace &space, const Objectives &objectives) {
    std::vector<std::vector<std::size_t>> seeds;
    seeds.push_back(space.encode(fcfs_nodes(space)));
    if (objectives.time_only()) {
        seeds.push_back(space.encode(round_robin_nodes(space)));
        seeds.push_back(space.encode(min_min_nodes(space)));
        seeds.push_back(space.encode(max_min_nodes(space)));
    }
    return seeds;
}

} // namespace edgeflow
