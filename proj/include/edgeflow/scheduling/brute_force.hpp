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

#include <limits>
#include <utility>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/scheduling/fitness.hpp"
#include "edgeflow/scheduling/search_space.hpp"

namespace edgeflow {

inline constexpr std::size_t kBruteForceLimit = 100'000;

struct OptimalSchedule {
    std::vector<std::size_t> nodes;
    Metrics metrics;
    double fitness = 0.0;
};

/// Exhaustive search over every tier-respecting assignment. Enumeration is
/// lexicographic in gene order, so the first minimizer found is the smallest.
inline OptimalSchedule brute_force_nodes(const SearchSpace &space, const FitnessEvaluator &evaluator) {
    if (space.size() > kBruteForceLimit)
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    "search space exceeds " + std::to_string(kBruteForceLimit) + " assignments");
    const std::size_t n = space.dimensions();
    std::vector<std::size_t> genes(n, 0);
    OptimalSchedule best;
    best.fitness = std::numeric_limits<double>::infinity();
    while (true) {
        const auto nodes = space.decode(genes);
        const Metrics metrics = space.model().evaluate(nodes);
        const double score = weighted_fitness(metrics, evaluator.objectives(), evaluator.baseline());
        if (score < best.fitness) {
            best = OptimalSchedule{nodes, metrics, score};
        }
        std::size_t digit = n;
        while (digit > 0) {
            --digit;
            if (++genes[digit] < space.width(digit)) break;
            genes[digit] = 0;
            if (digit == 0) return best;
        }
        if (n == 0) return best;
    }
}

inline std::pair<Assignment, Metrics> brute_force_optimal(const WorkflowDag &dag, const Environment &env,
                                                          const OffloadingPlan &plan, const Objectives &objectives) {
    validate_objectives(objectives);
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    FitnessEvaluator evaluator(space, objectives);
    auto best = brute_force_nodes(space, evaluator);
    return {model.to_assignment(best.nodes), best.metrics};
}

} // namespace edgeflow
