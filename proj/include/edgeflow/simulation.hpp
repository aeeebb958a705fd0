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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/objectives.hpp"
#include "edgeflow/offloading.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

/// Node chosen for every task.
struct Assignment {
    std::map<std::string, std::string> node_of;

    friend bool operator==(const Assignment &, const Assignment &) = default;
};

struct GanttEntry {
    std::string task;
    std::string node;
    double start = 0.0;
    double finish = 0.0;
    double transfer_in = 0.0; // longest incoming transfer before start

    friend bool operator==(const GanttEntry &, const GanttEntry &) = default;
};

struct Schedule {
    Assignment assignment;
    std::vector<GanttEntry> entries; // topological order

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

struct Metrics {
    double makespan = 0.0; // s
    double energy = 0.0;   // J, end devices only
    double cost = 0.0;     // $

    friend bool operator==(const Metrics &, const Metrics &) = default;
};

/// Partition of the makespan for one Device node. Overlapping activities are
/// attributed with priority busy > tx > rx.
struct DeviceUsage {
    std::string node;
    double busy = 0.0;
    double tx = 0.0;
    double rx = 0.0;
    double idle = 0.0;

    friend bool operator==(const DeviceUsage &, const DeviceUsage &) = default;
};

struct SimulationResult {
    Schedule schedule;
    Metrics metrics;
    std::vector<DeviceUsage> devices;
};

/// A workflow and environment compiled into index form, shared by the simulator and
/// every scheduler. Node positions follow `env.nodes`, task positions follow `dag.tasks`.
class SimulationModel {
  public:
    SimulationModel(WorkflowDag dag, Environment env) : dag_(std::move(dag)), env_(std::move(env)) {
        validate_environment(env_);
        const auto order = validate(dag_);
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < dag_.tasks.size(); ++i) index.emplace(dag_.tasks[i].id, i);
        order_.reserve(order.size());
        for (const auto &id : order) order_.push_back(index.at(id));

        parents_.resize(dag_.tasks.size());
        for (const auto &edge : dag_.edges) parents_[index.at(edge.child)].emplace_back(index.at(edge.parent), edge.bytes);
        traffic_ = task_traffic(dag_);

        const std::size_t m = env_.nodes.size();
        exec_.resize(dag_.tasks.size() * m);
        for (std::size_t t = 0; t < dag_.tasks.size(); ++t)
            for (std::size_t n = 0; n < m; ++n) exec_[t * m + n] = exec_time(dag_.tasks[t], env_.nodes[n]);

        latency_.assign(m * m, 0.0);
        bandwidth_.assign(m * m, 0.0);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                const TierPair pair(env_.nodes[a].tier, env_.nodes[b].tier);
                if (auto bw = env_.network.bandwidth.find(pair); bw != env_.network.bandwidth.end())
                    bandwidth_[a * m + b] = bw->second;
                if (auto lat = env_.network.latency.find(pair); lat != env_.network.latency.end())
                    latency_[a * m + b] = lat->second;
            }
            if (env_.nodes[a].tier == Tier::Device) devices_.push_back(a);
        }
        origin_ = *env_.find(env_.origin_device);

        for (std::size_t n = 0; n < m; ++n) by_tier_[static_cast<int>(env_.nodes[n].tier)].push_back(n);
        for (auto &nodes : by_tier_)
            std::sort(nodes.begin(), nodes.end(),
                      [&](std::size_t a, std::size_t b) { return env_.nodes[a].id < env_.nodes[b].id; });
    }

    const WorkflowDag &dag() const { return dag_; }
    const Environment &env() const { return env_; }
    std::size_t task_count() const { return dag_.tasks.size(); }
    std::size_t node_count() const { return env_.nodes.size(); }
    std::size_t origin() const { return origin_; }

    /// Topological order (task positions), ties released by ascending id.
    const std::vector<std::size_t> &order() const { return order_; }
    const std::vector<std::pair<std::size_t, std::uint64_t>> &parents(std::size_t task) const { return parents_[task]; }
    const TaskTraffic &traffic(std::size_t task) const { return traffic_[task]; }

    /// Node positions of a tier in ascending id order.
    const std::vector<std::size_t> &tier_nodes(Tier tier) const { return by_tier_[static_cast<int>(tier)]; }

    double exec(std::size_t task, std::size_t node) const { return exec_[task * env_.nodes.size() + node]; }

    double transfer(std::uint64_t bytes, std::size_t from, std::size_t to) const {
        if (from == to) return 0.0;
        const std::size_t k = from * env_.nodes.size() + to;
        if (bandwidth_[k] <= 0.0)
            throw Error(ErrorCode::MissingLink,
                        "no link between " + env_.nodes[from].id + " and " + env_.nodes[to].id);
        return latency_[k] + 8.0 * static_cast<double>(bytes) / bandwidth_[k];
    }

    /// Earliest time all inputs of `task` are present on `node`, given the finish
    /// times and nodes of its (already placed) parents. Also reports the longest
    /// incoming transfer.
    std::pair<double, double> data_ready(std::size_t task, std::size_t node, std::span<const double> finish,
                                         std::span<const std::size_t> node_of) const {
        double ready = 0.0;
        double longest = 0.0;
        if (traffic_[task].entry) {
            const double upload = transfer(traffic_[task].upload_bytes(), origin_, node);
            ready = upload;
            longest = upload;
        }
        for (const auto &[parent, bytes] : parents_[task]) {
            const double moved = transfer(bytes, node_of[parent], node);
            ready = std::max(ready, finish[parent] + moved);
            longest = std::max(longest, moved);
        }
        return {ready, longest};
    }

    /// Node positions for an assignment; checks coverage, node existence and,
    /// when given, the offloading tiers.
    std::vector<std::size_t> node_indices(const Assignment &assignment, const OffloadingPlan *plan = nullptr) const {
        std::unordered_map<std::string, std::size_t> by_id;
        for (std::size_t n = 0; n < env_.nodes.size(); ++n) by_id.emplace(env_.nodes[n].id, n);
        std::vector<std::size_t> nodes(dag_.tasks.size());
        for (std::size_t t = 0; t < dag_.tasks.size(); ++t) {
            const auto &id = dag_.tasks[t].id;
            auto it = assignment.node_of.find(id);
            if (it == assignment.node_of.end())
                throw Error(ErrorCode::InconsistentAssignment, "task '" + id + "' is not assigned");
            auto node = by_id.find(it->second);
            if (node == by_id.end())
                throw Error(ErrorCode::InconsistentAssignment, "task '" + id + "' assigned to unknown node '" + it->second + "'");
            if (plan) {
                auto tier = plan->tier_of.find(id);
                if (tier == plan->tier_of.end() || tier->second != env_.nodes[node->second].tier)
                    throw Error(ErrorCode::InconsistentAssignment,
                                "task '" + id + "' placed outside its offloaded tier on '" + it->second + "'");
            }
            nodes[t] = node->second;
        }
        return nodes;
    }

    Assignment to_assignment(std::span<const std::size_t> nodes) const {
        Assignment assignment;
        for (std::size_t t = 0; t < dag_.tasks.size(); ++t) assignment.node_of[dag_.tasks[t].id] = env_.nodes[nodes[t]].id;
        return assignment;
    }

    Metrics evaluate(std::span<const std::size_t> nodes) const {
        Trace trace = trace_of(nodes);
        return trace.metrics;
    }

    SimulationResult run(std::span<const std::size_t> nodes) const {
        Trace trace = trace_of(nodes);
        SimulationResult result;
        result.metrics = trace.metrics;
        result.schedule.assignment = to_assignment(nodes);
        result.schedule.entries.reserve(order_.size());
        for (std::size_t t : order_)
            result.schedule.entries.push_back(GanttEntry{dag_.tasks[t].id, env_.nodes[nodes[t]].id, trace.start[t],
                                                         trace.finish[t], trace.transfer_in[t]});
        result.devices = std::move(trace.devices);
        return result;
    }

  private:
    enum class Activity { Busy = 0, Tx = 1, Rx = 2 };

    struct Interval {
        double begin;
        double end;
        Activity activity;
    };

    struct Trace {
        std::vector<double> start, finish, transfer_in;
        std::vector<DeviceUsage> devices;
        Metrics metrics;
    };

    Trace trace_of(std::span<const std::size_t> nodes) const {
        const std::size_t n = dag_.tasks.size();
        const std::size_t m = env_.nodes.size();
        if (nodes.size() != n) throw Error(ErrorCode::InconsistentAssignment, "assignment size mismatch");
        for (std::size_t node : nodes)
            if (node >= m) throw Error(ErrorCode::InconsistentAssignment, "node position out of range");

        Trace trace;
        trace.start.assign(n, 0.0);
        trace.finish.assign(n, 0.0);
        trace.transfer_in.assign(n, 0.0);
        std::vector<double> available(m, 0.0);
        std::vector<double> busy(m, 0.0);
        std::vector<std::vector<Interval>> activity(m);
        const bool track = !devices_.empty();
        auto record = [&](std::size_t node, double begin, double end, Activity kind) {
            if (track && end > begin && env_.nodes[node].tier == Tier::Device) activity[node].push_back({begin, end, kind});
        };
        auto record_transfer = [&](std::size_t from, std::size_t to, double begin, double end) {
            if (from == to) return;
            record(from, begin, end, Activity::Tx);
            record(to, begin, end, Activity::Rx);
        };

        double makespan = 0.0;
        for (std::size_t t : order_) {
            const std::size_t node = nodes[t];
            double ready = 0.0;
            double longest = 0.0;
            if (traffic_[t].entry) {
                const double upload = transfer(traffic_[t].upload_bytes(), origin_, node);
                record_transfer(origin_, node, 0.0, upload);
                ready = upload;
                longest = upload;
            }
            for (const auto &[parent, bytes] : parents_[t]) {
                const double moved = transfer(bytes, nodes[parent], node);
                record_transfer(nodes[parent], node, trace.finish[parent], trace.finish[parent] + moved);
                ready = std::max(ready, trace.finish[parent] + moved);
                longest = std::max(longest, moved);
            }
            const double start = std::max(available[node], ready);
            const double finish = start + exec(t, node);
            trace.start[t] = start;
            trace.finish[t] = finish;
            trace.transfer_in[t] = longest;
            available[node] = finish;
            busy[node] += finish - start;
            record(node, start, finish, Activity::Busy);
            makespan = std::max(makespan, finish);
            if (traffic_[t].exit) {
                const double back = transfer(traffic_[t].result_bytes(), node, origin_);
                record_transfer(node, origin_, finish, finish + back);
                makespan = std::max(makespan, finish + back);
            }
        }

        trace.metrics.makespan = makespan;
        for (std::size_t d : devices_) {
            DeviceUsage usage = partition(activity[d], makespan);
            usage.node = env_.nodes[d].id;
            const NodeSpec &spec = env_.nodes[d];
            trace.metrics.energy +=
                (spec.p_run * usage.busy + spec.p_tx * usage.tx + spec.p_rx * usage.rx + spec.p_idle * usage.idle) /
                1000.0;
            trace.devices.push_back(std::move(usage));
        }
        for (std::size_t k = 0; k < m; ++k)
            if (env_.nodes[k].tier != Tier::Device) trace.metrics.cost += busy_cost(env_.nodes[k], busy[k]);
        return trace;
    }

    static DeviceUsage partition(std::vector<Interval> &intervals, double makespan) {
        DeviceUsage usage;
        if (!intervals.empty()) {
            struct Boundary {
                double time;
                int activity;
                int delta;
            };
            std::vector<Boundary> boundaries;
            boundaries.reserve(intervals.size() * 2);
            for (const auto &interval : intervals) {
                boundaries.push_back({interval.begin, static_cast<int>(interval.activity), +1});
                boundaries.push_back({interval.end, static_cast<int>(interval.activity), -1});
            }
            std::sort(boundaries.begin(), boundaries.end(),
                      [](const Boundary &a, const Boundary &b) { return a.time < b.time; });
            std::array<int, 3> open{};
            double previous = boundaries.front().time;
            std::array<double, 3> measured{};
            for (const auto &boundary : boundaries) {
                if (boundary.time > previous) {
                    const double span = boundary.time - previous;
                    if (open[0] > 0)
                        measured[0] += span;
                    else if (open[1] > 0)
                        measured[1] += span;
                    else if (open[2] > 0)
                        measured[2] += span;
                    previous = boundary.time;
                }
                open[boundary.activity] += boundary.delta;
            }
            usage.busy = measured[0];
            usage.tx = measured[1];
            usage.rx = measured[2];
        }
        usage.idle = makespan - usage.busy - usage.tx - usage.rx;
        if (usage.idle < 0.0) usage.idle = 0.0; // rounding only
        return usage;
    }

    WorkflowDag dag_;
    Environment env_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> parents_;
    std::vector<TaskTraffic> traffic_;
    std::vector<double> exec_;
    std::vector<double> latency_;
    std::vector<double> bandwidth_;
    std::vector<std::size_t> devices_;
    std::array<std::vector<std::size_t>, 3> by_tier_;
    std::size_t origin_ = 0;
};

/// Evaluates an assignment by list scheduling in topological order.
inline SimulationResult simulate(const WorkflowDag &dag, const Environment &env, const Assignment &assignment,
                                 const OffloadingPlan *plan = nullptr) {
    SimulationModel model(dag, env);
    return model.run(model.node_indices(assignment, plan));
}

// ---------------------------------------------------------------------------

enum class DeadlineVerdict { Feasible, Infeasible, NoDeadline };

inline std::string_view to_string(DeadlineVerdict verdict) {
    switch (verdict) {
        case DeadlineVerdict::Feasible: return "Feasible";
        case DeadlineVerdict::Infeasible: return "Infeasible";
        case DeadlineVerdict::NoDeadline: return "NoDeadline";
    }
    return "Unknown";
}

inline DeadlineVerdict check_deadline(const Metrics &metrics, std::optional<double> deadline) {
    if (!deadline) return DeadlineVerdict::NoDeadline;
    return metrics.makespan > *deadline ? DeadlineVerdict::Infeasible : DeadlineVerdict::Feasible;
}

inline DeadlineVerdict check_deadline(const Metrics &metrics, const Objectives &objectives) {
    return check_deadline(metrics, objectives.deadline);
}

inline std::map<std::string, std::size_t> assignment_breakdown(const Schedule &schedule) {
    std::map<std::string, std::size_t> counts;
    for (const auto &entry : schedule.entries) ++counts[entry.node];
    return counts;
}

} // namespace edgeflow
