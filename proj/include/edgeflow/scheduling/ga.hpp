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
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/scheduling/fitness.hpp"
#include "edgeflow/scheduling/pso.hpp"
#include "edgeflow/scheduling/search_space.hpp"

namespace edgeflow {

struct GaParams {
    int population = 50;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    int iterations = 100;
    int elitism = 1;
    std::uint64_t seed = 1;

    friend bool operator==(const GaParams &, const GaParams &) = default;
};

using Chromosome = std::vector<std::size_t>;

/// Single-point crossover at `point` (genes before it come from the first parent).
inline std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome &a, const Chromosome &b,
                                                                std::size_t point) {
    Chromosome first(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(point));
    first.insert(first.end(), b.begin() + static_cast<std::ptrdiff_t>(point), b.end());
    Chromosome second(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(point));
    second.insert(second.end(), a.begin() + static_cast<std::ptrdiff_t>(point), a.end());
    return {std::move(first), std::move(second)};
}

class GeneticSearch {
  public:
    GeneticSearch(const SearchSpace &space, const FitnessEvaluator &evaluator, const GaParams &params,
                  const std::vector<Chromosome> &seeds)
        : space_(&space), evaluator_(&evaluator), params_(params), rng_(params.seed) {
        if (params.population < 2 || params.iterations < 1 || params.elitism < 1 ||
            params.elitism > params.population)
            throw Error(ErrorCode::InvalidParams, "GA needs population >= 2, iterations >= 1, 1 <= elitism <= population");
        if (params.crossover_rate < 0 || params.crossover_rate > 1 || params.mutation_rate < 0 ||
            params.mutation_rate > 1)
            throw Error(ErrorCode::InvalidParams, "GA rates must lie in [0, 1]");

        population_.reserve(static_cast<std::size_t>(params.population));
        for (std::size_t k = 0; k < static_cast<std::size_t>(params.population); ++k) {
            if (k < seeds.size()) {
                population_.push_back(seeds[k]);
            } else {
                Chromosome random(space.dimensions());
                for (std::size_t i = 0; i < random.size(); ++i) random[i] = draw(space.width(i));
                population_.push_back(std::move(random));
            }
        }
        evaluate();
    }

    void step() {
        const std::size_t size = population_.size();
        std::vector<std::size_t> ranking(size);
        std::iota(ranking.begin(), ranking.end(), 0);
        std::stable_sort(ranking.begin(), ranking.end(),
                         [&](std::size_t a, std::size_t b) { return scores_[a] < scores_[b]; });

        std::vector<Chromosome> next;
        next.reserve(size);
        for (int e = 0; e < params_.elitism; ++e) next.push_back(population_[ranking[static_cast<std::size_t>(e)]]);

        while (next.size() < size) {
            const Chromosome &a = population_[tournament()];
            const Chromosome &b = population_[tournament()];
            Chromosome first = a;
            Chromosome second = b;
            if (detail::unit_uniform(rng_) < params_.crossover_rate && a.size() >= 2) {
                const std::size_t point = 1 + draw(a.size() - 1);
                std::tie(first, second) = single_point_crossover(a, b, point);
            }
            mutate(first);
            mutate(second);
            next.push_back(std::move(first));
            if (next.size() < size) next.push_back(std::move(second));
        }
        population_ = std::move(next);
        evaluate();
    }

    void run() {
        for (int k = 0; k < params_.iterations; ++k) step();
    }

    const std::vector<Chromosome> &population() const { return population_; }
    const std::vector<double> &scores() const { return scores_; }
    const Chromosome &best() const { return best_; }
    double best_fitness() const { return best_fitness_; }

  private:
    std::size_t draw(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }

    /// Binary tournament; the lower index wins ties.
    std::size_t tournament() {
        const std::size_t a = draw(population_.size());
        const std::size_t b = draw(population_.size());
        if (scores_[a] != scores_[b]) return scores_[a] < scores_[b] ? a : b;
        return std::min(a, b);
    }

    void mutate(Chromosome &chromosome) {
        for (std::size_t i = 0; i < chromosome.size(); ++i)
            if (detail::unit_uniform(rng_) < params_.mutation_rate) chromosome[i] = draw(space_->width(i));
    }

    void evaluate() {
        scores_.resize(population_.size());
        for (std::size_t k = 0; k < population_.size(); ++k) scores_[k] = evaluator_->of_genes(population_[k]);
        for (std::size_t k = 0; k < population_.size(); ++k) {
            if (scores_[k] < best_fitness_) {
                best_fitness_ = scores_[k];
                best_ = population_[k];
            }
        }
    }

    const SearchSpace *space_;
    const FitnessEvaluator *evaluator_;
    GaParams params_;
    std::mt19937_64 rng_;
    std::vector<Chromosome> population_;
    std::vector<double> scores_;
    Chromosome best_;
    double best_fitness_ = std::numeric_limits<double>::infinity();
};

inline std::vector<std::size_t> ga_nodes(const SearchSpace &space, const Objectives &objectives,
                                         const GaParams &params) {
    FitnessEvaluator evaluator(space, objectives);
    GeneticSearch search(space, evaluator, params, heuristic_seeds(space, objectives));
    search.run();
    return space.decode(search.best());
}

inline Assignment schedule_ga(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan,
                              const Objectives &objectives, const GaParams &params = {}) {
    validate_objectives(objectives);
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    return model.to_assignment(ga_nodes(space, objectives, params));
}

} // namespace edgeflow
