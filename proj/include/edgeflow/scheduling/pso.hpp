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
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/scheduling/fitness.hpp"
#include "edgeflow/scheduling/search_space.hpp"

namespace edgeflow {

struct PsoParams {
    int particles = 30;
    double c1 = 2.0;
    double c2 = 2.0;
    double inertia = 1.0;
    int iterations = 100;
    std::uint64_t seed = 1;

    friend bool operator==(const PsoParams &, const PsoParams &) = default;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; identical across standard libraries.
inline double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace detail

/// Particle swarm over continuous positions; dimension i lives in [0, m_i) and
/// decodes by flooring to a candidate index.
class ParticleSwarm {
  public:
    struct Particle {
        std::vector<double> position;
        std::vector<double> velocity;
        std::vector<double> best_position;
        double best_fitness = std::numeric_limits<double>::infinity();
    };

    ParticleSwarm(const SearchSpace &space, const FitnessEvaluator &evaluator, const PsoParams &params,
                  const std::vector<std::vector<std::size_t>> &seeds)
        : space_(&space), evaluator_(&evaluator), params_(params), rng_(params.seed) {
        if (params.particles < 1 || params.iterations < 1)
            throw Error(ErrorCode::InvalidParams, "PSO needs particles >= 1 and iterations >= 1");
        const std::size_t n = space.dimensions();
        swarm_.resize(static_cast<std::size_t>(params.particles));
        for (std::size_t p = 0; p < swarm_.size(); ++p) {
            auto &particle = swarm_[p];
            particle.position.resize(n);
            particle.velocity.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double m = static_cast<double>(space.width(i));
                if (p < seeds.size()) {
                    particle.position[i] = static_cast<double>(seeds[p][i]) + 0.5;
                } else {
                    particle.position[i] = clamp_position(detail::unit_uniform(rng_) * m, m);
                    particle.velocity[i] = (detail::unit_uniform(rng_) - 0.5) * m;
                }
            }
            particle.best_position = particle.position;
            particle.best_fitness = evaluator.of_genes(decode(particle.position));
        }
        refresh_global_best();
    }

    /// Velocity rule: inertia * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x),
    /// clamped to half the dimension width.
    static double next_velocity(double velocity, double position, double personal, double global, double r1,
                                double r2, double width, const PsoParams &params) {
        const double v = params.inertia * velocity + params.c1 * r1 * (personal - position) +
                         params.c2 * r2 * (global - position);
        const double limit = width / 2.0;
        return std::clamp(v, -limit, limit);
    }

    static double clamp_position(double x, double width) {
        return std::clamp(x, 0.0, width - width * 1e-9);
    }

    std::vector<std::size_t> decode(const std::vector<double> &position) const {
        std::vector<std::size_t> genes(position.size());
        for (std::size_t i = 0; i < position.size(); ++i) {
            const auto m = space_->width(i);
            const auto index = static_cast<std::size_t>(std::max(0.0, std::floor(position[i])));
            genes[i] = std::min(index, m - 1);
        }
        return genes;
    }

    void step() {
        const std::size_t n = space_->dimensions();
        for (auto &particle : swarm_) {
            for (std::size_t i = 0; i < n; ++i) {
                const double r1 = detail::unit_uniform(rng_);
                const double r2 = detail::unit_uniform(rng_);
                const double m = static_cast<double>(space_->width(i));
                particle.velocity[i] = next_velocity(particle.velocity[i], particle.position[i],
                                                     particle.best_position[i], global_best_[i], r1, r2, m, params_);
                particle.position[i] = clamp_position(particle.position[i] + particle.velocity[i], m);
            }
        }
        // Evaluations are independent; the reduction below runs in particle order.
        std::vector<double> scores(swarm_.size());
        for (std::size_t p = 0; p < swarm_.size(); ++p) scores[p] = evaluator_->of_genes(decode(swarm_[p].position));
        for (std::size_t p = 0; p < swarm_.size(); ++p) {
            if (scores[p] < swarm_[p].best_fitness) {
                swarm_[p].best_fitness = scores[p];
                swarm_[p].best_position = swarm_[p].position;
            }
        }
        refresh_global_best();
    }

    void run() {
        for (int k = 0; k < params_.iterations; ++k) step();
    }

    const std::vector<Particle> &particles() const { return swarm_; }
    double best_fitness() const { return global_best_fitness_; }
    std::vector<std::size_t> best_genes() const { return decode(global_best_); }

  private:
    void refresh_global_best() {
        for (const auto &particle : swarm_) {
            if (particle.best_fitness < global_best_fitness_) {
                global_best_fitness_ = particle.best_fitness;
                global_best_ = particle.best_position;
            }
        }
    }

    const SearchSpace *space_;
    const FitnessEvaluator *evaluator_;
    PsoParams params_;
    std::mt19937_64 rng_;
    std::vector<Particle> swarm_;
    std::vector<double> global_best_;
    double global_best_fitness_ = std::numeric_limits<double>::infinity();
};

inline std::vector<std::size_t> pso_nodes(const SearchSpace &space, const Objectives &objectives,
                                          const PsoParams &params) {
    FitnessEvaluator evaluator(space, objectives);
    ParticleSwarm swarm(space, evaluator, params, heuristic_seeds(space, objectives));
    swarm.run();
    return space.decode(swarm.best_genes());
}

inline Assignment schedule_pso(const WorkflowDag &dag, const Environment &env, const OffloadingPlan &plan,
                               const Objectives &objectives, const PsoParams &params = {}) {
    validate_objectives(objectives);
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    return model.to_assignment(pso_nodes(space, objectives, params));
}

} // namespace edgeflow
