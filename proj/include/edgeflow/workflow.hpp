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
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgeflow/binding.hpp"
#include "edgeflow/error.hpp"

namespace edgeflow {

struct TaskSpec {
    std::string id;
    std::string label;
    double length = 0.0; // MI
    std::optional<TaskBinding> binding;

    friend bool operator==(const TaskSpec &, const TaskSpec &) = default;
};

struct DataEdge {
    std::string parent;
    std::string child;
    std::uint64_t bytes = 0;

    friend bool operator==(const DataEdge &, const DataEdge &) = default;
};

struct WorkflowDag {
    std::string name;
    std::vector<TaskSpec> tasks;
    std::vector<DataEdge> edges;

    friend bool operator==(const WorkflowDag &, const WorkflowDag &) = default;
};

using TopologicalOrder = std::vector<std::string>;

/// Checks every structural invariant and returns the topological order in which
/// ready tasks are released by ascending id.
inline TopologicalOrder validate(const WorkflowDag &dag) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(dag.tasks.size());
    for (std::size_t i = 0; i < dag.tasks.size(); ++i) {
        const auto &task = dag.tasks[i];
        if (task.id.empty()) throw Error(ErrorCode::InvalidRequest, "task with empty id");
        if (!(task.length > 0.0)) throw Error(ErrorCode::InvalidLength, "task '" + task.id + "' has non-positive length");
        if (!index.emplace(task.id, i).second) throw Error(ErrorCode::DuplicateTaskId, "duplicate task id '" + task.id + "'");
    }

    std::vector<std::vector<std::size_t>> children(dag.tasks.size());
    std::vector<std::size_t> in_degree(dag.tasks.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &edge : dag.edges) {
        auto p = index.find(edge.parent);
        auto c = index.find(edge.child);
        if (p == index.end() || c == index.end())
            throw Error(ErrorCode::InvalidEdge, "edge " + edge.parent + "->" + edge.child + " names a missing task");
        if (p->second == c->second) throw Error(ErrorCode::InvalidEdge, "self edge on '" + edge.parent + "'");
        if (!seen.emplace(p->second, c->second).second)
            throw Error(ErrorCode::InvalidEdge, "duplicate edge " + edge.parent + "->" + edge.child);
        children[p->second].push_back(c->second);
        ++in_degree[c->second];
    }

    auto later_id = [&](std::size_t a, std::size_t b) { return dag.tasks[a].id > dag.tasks[b].id; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later_id)> ready(later_id);
    for (std::size_t i = 0; i < dag.tasks.size(); ++i)
        if (in_degree[i] == 0) ready.push(i);

    TopologicalOrder order;
    order.reserve(dag.tasks.size());
    while (!ready.empty()) {
        const std::size_t next = ready.top();
        ready.pop();
        order.push_back(dag.tasks[next].id);
        for (std::size_t child : children[next])
            if (--in_degree[child] == 0) ready.push(child);
    }
    if (order.size() != dag.tasks.size())
        throw Error(ErrorCode::CyclicWorkflow, "workflow '" + dag.name + "' contains a cycle");
    return order;
}

/// Bytes a task exchanges with the rest of the workflow. Entry tasks upload their
/// out-edge total from the origin device; exit tasks return their in-edge total to it.
struct TaskTraffic {
    std::uint64_t in_bytes = 0;
    std::uint64_t out_bytes = 0;
    bool entry = true;
    bool exit = true;

    std::uint64_t upload_bytes() const { return entry ? out_bytes : in_bytes; }
    std::uint64_t result_bytes() const { return exit ? in_bytes : out_bytes; }
};

/// Traffic per task, indexed like `dag.tasks`.
inline std::vector<TaskTraffic> task_traffic(const WorkflowDag &dag) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < dag.tasks.size(); ++i) index.emplace(dag.tasks[i].id, i);
    std::vector<TaskTraffic> traffic(dag.tasks.size());
    for (const auto &edge : dag.edges) {
        auto &parent = traffic.at(index.at(edge.parent));
        auto &child = traffic.at(index.at(edge.child));
        parent.out_bytes += edge.bytes;
        parent.exit = false;
        child.in_bytes += edge.bytes;
        child.entry = false;
    }
    return traffic;
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline std::string padded(std::size_t value, std::size_t digits) {
    std::string text = std::to_string(value);
    if (text.size() < digits) text.insert(0, digits - text.size(), '0');
    return text;
}

inline std::size_t digit_count(std::size_t value) {
    std::size_t digits = 1;
    while (value >= 10) {
        value /= 10;
        ++digits;
    }
    return digits;
}

// Modulo reduction keeps generated workflows identical across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound) { return rng() % bound; }

inline std::uint64_t draw_between(std::mt19937_64 &rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + draw_below(rng, hi - lo + 1);
}

} // namespace detail

/// Per-layer length factors of the Montage family, relative to 1000 MI.
struct MontageProfile {
    double projection = 1.0;
    double diff = 0.5;
    double concat_fit = 0.8;
    double background_model = 1.2;
    double correction = 0.6;
    double image_table = 0.4;
    double add = 2.0;
    double shrink = 0.7;
    double jpeg = 0.5;
};

inline constexpr double kMontageBaseLength = 1000.0;
inline constexpr std::uint64_t kMontageEdgeBytes = 1'000'000;

/// Layered Montage mosaic workflow with 3 * width + 5 tasks.
inline WorkflowDag generate_montage(int width, double length_profile = 1.0, double data_profile = 1.0,
                                    const MontageProfile &factors = {}) {
    if (width < 2) throw Error(ErrorCode::InvalidWidth, "montage width must be >= 2, got " + std::to_string(width));
    if (!(length_profile > 0.0) || !(data_profile >= 0.0))
        throw Error(ErrorCode::InvalidParams, "montage profiles must be positive");

    const auto w = static_cast<std::size_t>(width);
    const std::size_t digits = detail::digit_count(w - 1);
    const auto bytes = static_cast<std::uint64_t>(std::llround(static_cast<double>(kMontageEdgeBytes) * data_profile));

    WorkflowDag dag;
    dag.name = "montage-" + std::to_string(width);
    auto add_task = [&](std::string id, double factor) {
        dag.tasks.push_back(TaskSpec{id, id, kMontageBaseLength * factor * length_profile, std::nullopt});
        return dag.tasks.back().id;
    };
    auto link = [&](const std::string &parent, const std::string &child) {
        dag.edges.push_back(DataEdge{parent, child, bytes});
    };

    std::vector<std::string> projections, diffs, corrections;
    for (std::size_t i = 0; i < w; ++i)
        projections.push_back(add_task("mProject_" + detail::padded(i, digits), factors.projection));
    for (std::size_t i = 0; i + 1 < w; ++i)
        diffs.push_back(add_task("mDiffFit_" + detail::padded(i, digits), factors.diff));
    const auto concat = add_task("mConcatFit", factors.concat_fit);
    const auto model = add_task("mBgModel", factors.background_model);
    for (std::size_t i = 0; i < w; ++i)
        corrections.push_back(add_task("mBackground_" + detail::padded(i, digits), factors.correction));
    const auto table = add_task("mImgtbl", factors.image_table);
    const auto mosaic = add_task("mAdd", factors.add);
    const auto shrink = add_task("mShrink", factors.shrink);
    const auto jpeg = add_task("mJPEG", factors.jpeg);

    for (std::size_t i = 0; i + 1 < w; ++i) {
        link(projections[i], diffs[i]);
        link(projections[i + 1], diffs[i]);
    }
    for (const auto &diff : diffs) link(diff, concat);
    link(concat, model);
    for (std::size_t i = 0; i < w; ++i) {
        link(model, corrections[i]);
        link(projections[i], corrections[i]);
    }
    for (const auto &correction : corrections) link(correction, table);
    link(table, mosaic);
    link(mosaic, shrink);
    link(shrink, jpeg);
    return dag;
}

enum class PatternKind { Sequential, Parallel, Hybrid };

inline PatternKind pattern_kind_from_string(std::string_view name) {
    if (name == "sequential") return PatternKind::Sequential;
    if (name == "parallel") return PatternKind::Parallel;
    if (name == "hybrid") return PatternKind::Hybrid;
    throw Error(ErrorCode::InvalidRequest, "unknown workflow pattern '" + std::string(name) + "'");
}

inline constexpr double kPatternTaskLength = 1000.0;
inline constexpr std::uint64_t kPatternEdgeBytes = 1'000'000;

/// Template workflows: a chain, a fork-join, or a seeded random layered DAG.
inline WorkflowDag generate_pattern(PatternKind kind, int n, std::uint64_t seed = 0) {
    const int minimum = kind == PatternKind::Parallel ? 3 : 1;
    if (n < minimum)
        throw Error(ErrorCode::InvalidCount,
                    "pattern needs at least " + std::to_string(minimum) + " tasks, got " + std::to_string(n));

    const auto count = static_cast<std::size_t>(n);
    const std::size_t digits = detail::digit_count(count);
    auto id_of = [&](std::size_t one_based) { return "t" + detail::padded(one_based, digits); };

    WorkflowDag dag;
    switch (kind) {
        case PatternKind::Sequential:
            dag.name = "sequential-" + std::to_string(n);
            for (std::size_t i = 1; i <= count; ++i) dag.tasks.push_back({id_of(i), id_of(i), kPatternTaskLength, {}});
            for (std::size_t i = 1; i < count; ++i) dag.edges.push_back({id_of(i), id_of(i + 1), kPatternEdgeBytes});
            break;
        case PatternKind::Parallel:
            dag.name = "parallel-" + std::to_string(n);
            for (std::size_t i = 1; i <= count; ++i) dag.tasks.push_back({id_of(i), id_of(i), kPatternTaskLength, {}});
            for (std::size_t i = 2; i < count; ++i) {
                dag.edges.push_back({id_of(1), id_of(i), kPatternEdgeBytes});
                dag.edges.push_back({id_of(i), id_of(count), kPatternEdgeBytes});
            }
            break;
        case PatternKind::Hybrid: {
            dag.name = "hybrid-" + std::to_string(n) + "-s" + std::to_string(seed);
            std::mt19937_64 rng(seed);
            std::vector<std::vector<std::size_t>> layers{{1}};
            for (std::size_t i = 2; i <= count; ++i) {
                if (detail::draw_below(rng, 2) == 0) layers.emplace_back();
                layers.back().push_back(i);
            }
            for (std::size_t i = 1; i <= count; ++i) {
                const double length = static_cast<double>(detail::draw_between(rng, 500, 3000));
                dag.tasks.push_back({id_of(i), id_of(i), length, {}});
            }
            auto edge_bytes = [&] { return detail::draw_between(rng, 100'000, 2'000'000); };
            for (std::size_t layer = 1; layer < layers.size(); ++layer) {
                const auto &previous = layers[layer - 1];
                for (std::size_t child : layers[layer]) {
                    std::set<std::size_t> parents;
                    const std::size_t wanted = std::min<std::size_t>(1 + detail::draw_below(rng, 2), previous.size());
                    while (parents.size() < wanted) parents.insert(previous[detail::draw_below(rng, previous.size())]);
                    if (layer >= 2 && detail::draw_below(rng, 5) == 0) {
                        const auto &earlier = layers[detail::draw_below(rng, layer - 1)];
                        parents.insert(earlier[detail::draw_below(rng, earlier.size())]);
                    }
                    for (std::size_t parent : parents) dag.edges.push_back({id_of(parent), id_of(child), edge_bytes()});
                }
            }
            break;
        }
    }
    return dag;
}

/// Binds every unbound task to `default_kind`, sizing the workload from the task length.
inline WorkflowDag bind_tasks(WorkflowDag dag, BuiltinKind default_kind, const CalibrationConfig &calibration = {}) {
    for (auto &task : dag.tasks) {
        if (task.binding) continue;
        TaskBinding binding{default_kind, calibrate(task.length, default_kind, calibration)};
        binding.params.seed = fnv1a(task.id);
        task.binding = binding;
    }
    return dag;
}

} // namespace edgeflow
