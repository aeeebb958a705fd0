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

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "edgeflow/binding.hpp"
#include "edgeflow/environment.hpp"
#include "edgeflow/executor.hpp"
#include "edgeflow/objectives.hpp"
#include "edgeflow/offloading.hpp"
#include "edgeflow/scheduling.hpp"
#include "edgeflow/simulation.hpp"
#include "edgeflow/workflow.hpp"

// JSON mappings for the domain types. Field names mirror the C++ members.

namespace edgeflow {

using json = nlohmann::json;

namespace detail {

template <typename T>
T required(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::InvalidRequest, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::InvalidRequest, std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T optional_field(const json &j, const char *key, T fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::InvalidRequest, std::string("field '") + key + "': " + e.what());
    }
}

} // namespace detail

// --- workflow ---------------------------------------------------------------

inline void to_json(json &j, const BindingParams &p) {
    j = json{{"terms", p.terms},
             {"text_length", p.text_length},
             {"pattern_length", p.pattern_length},
             {"string_length", p.string_length},
             {"array_length", p.array_length},
             {"seed", p.seed}};
}

inline void from_json(const json &j, BindingParams &p) {
    p.terms = detail::optional_field<std::uint64_t>(j, "terms", 0);
    p.text_length = detail::optional_field<std::uint64_t>(j, "text_length", 0);
    p.pattern_length = detail::optional_field<std::uint64_t>(j, "pattern_length", 0);
    p.string_length = detail::optional_field<std::uint64_t>(j, "string_length", 0);
    p.array_length = detail::optional_field<std::uint64_t>(j, "array_length", 0);
    p.seed = detail::optional_field<std::uint64_t>(j, "seed", 0);
}

inline void to_json(json &j, const TaskBinding &b) { j = json{{"kind", to_string(b.kind)}, {"params", b.params}}; }

inline void from_json(const json &j, TaskBinding &b) {
    b.kind = builtin_kind_from_string(detail::required<std::string>(j, "kind"));
    b.params = detail::optional_field<BindingParams>(j, "params", {});
}

inline void to_json(json &j, const TaskSpec &t) {
    j = json{{"id", t.id}, {"label", t.label}, {"length", t.length}};
    j["binding"] = t.binding ? json(*t.binding) : json(nullptr);
}

inline void from_json(const json &j, TaskSpec &t) {
    t.id = detail::required<std::string>(j, "id");
    t.label = detail::optional_field<std::string>(j, "label", t.id);
    t.length = detail::required<double>(j, "length");
    t.binding = std::nullopt;
    if (j.contains("binding") && !j.at("binding").is_null()) t.binding = j.at("binding").get<TaskBinding>();
}

inline void to_json(json &j, const DataEdge &e) { j = json{{"parent", e.parent}, {"child", e.child}, {"bytes", e.bytes}}; }

inline void from_json(const json &j, DataEdge &e) {
    e.parent = detail::required<std::string>(j, "parent");
    e.child = detail::required<std::string>(j, "child");
    if (j.contains("bytes") && j.at("bytes").is_number_integer() && j.at("bytes").get<std::int64_t>() < 0)
        throw Error(ErrorCode::NegativeSize, "edge " + e.parent + "->" + e.child + " has negative bytes");
    e.bytes = detail::optional_field<std::uint64_t>(j, "bytes", 0);
}

inline void to_json(json &j, const WorkflowDag &d) { j = json{{"name", d.name}, {"tasks", d.tasks}, {"edges", d.edges}}; }

inline void from_json(const json &j, WorkflowDag &d) {
    d.name = detail::optional_field<std::string>(j, "name", "workflow");
    d.tasks = detail::required<std::vector<TaskSpec>>(j, "tasks");
    d.edges = detail::optional_field<std::vector<DataEdge>>(j, "edges", {});
}

// --- environment ------------------------------------------------------------

inline std::string to_key(TierPair pair) {
    return std::string(to_string(pair.first)) + "-" + std::string(to_string(pair.second));
}

inline TierPair tier_pair_from_key(const std::string &key) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw Error(ErrorCode::InvalidRequest, "tier pair key '" + key + "' needs a dash");
    return TierPair(tier_from_string(key.substr(0, dash)), tier_from_string(key.substr(dash + 1)));
}

inline void to_json(json &j, const NodeSpec &n) {
    j = json{{"id", n.id},       {"tier", to_string(n.tier)}, {"mips", n.mips}, {"p_run", n.p_run},
             {"p_idle", n.p_idle}, {"p_tx", n.p_tx},            {"p_rx", n.p_rx}, {"cost_rate", n.cost_rate}};
}

inline void from_json(const json &j, NodeSpec &n) {
    n.id = detail::required<std::string>(j, "id");
    n.tier = tier_from_string(detail::required<std::string>(j, "tier"));
    n.mips = detail::required<double>(j, "mips");
    n.p_run = detail::optional_field<double>(j, "p_run", 0.0);
    n.p_idle = detail::optional_field<double>(j, "p_idle", 0.0);
    n.p_tx = detail::optional_field<double>(j, "p_tx", 0.0);
    n.p_rx = detail::optional_field<double>(j, "p_rx", 0.0);
    n.cost_rate = detail::optional_field<double>(j, "cost_rate", 0.0);
}

inline void to_json(json &j, const NetworkModel &net) {
    json bandwidth = json::object(), latency = json::object();
    for (const auto &[pair, bps] : net.bandwidth) bandwidth[to_key(pair)] = bps;
    for (const auto &[pair, seconds] : net.latency) latency[to_key(pair)] = seconds;
    j = json{{"bandwidth", bandwidth}, {"latency", latency}};
}

inline void from_json(const json &j, NetworkModel &net) {
    net.bandwidth.clear();
    net.latency.clear();
    if (j.contains("bandwidth"))
        for (const auto &[key, value] : j.at("bandwidth").items()) net.bandwidth[tier_pair_from_key(key)] = value.get<double>();
    if (j.contains("latency"))
        for (const auto &[key, value] : j.at("latency").items()) net.latency[tier_pair_from_key(key)] = value.get<double>();
}

inline void to_json(json &j, const Environment &e) {
    j = json{{"nodes", e.nodes}, {"network", e.network}, {"origin_device", e.origin_device}};
}

inline void from_json(const json &j, Environment &e) {
    e.nodes = detail::required<std::vector<NodeSpec>>(j, "nodes");
    e.network = j.contains("network") ? j.at("network").get<NetworkModel>() : default_network();
    e.origin_device = detail::required<std::string>(j, "origin_device");
}

/// Environment config document: `sizes` and `counts` per tier feed the reference
/// table; `network` replaces individual bandwidth/latency entries; `overrides`
/// patches fields of named nodes. A full `nodes` list is accepted verbatim instead.
inline Environment environment_from_config(const json &config) {
    if (config.is_null()) return table1_environment();
    if (config.contains("nodes")) {
        Environment env = config.get<Environment>();
        validate_environment(env);
        return env;
    }
    TierSizes sizes;
    TierCounts counts;
    if (config.contains("sizes"))
        for (const auto &[tier, size] : config.at("sizes").items())
            sizes[tier_from_string(tier)] = size_class_from_string(size.get<std::string>());
    if (config.contains("counts"))
        for (const auto &[tier, count] : config.at("counts").items()) counts[tier_from_string(tier)] = count.get<int>();
    Environment env = table1_environment(sizes, counts);
    if (config.contains("network")) {
        const auto patch = config.at("network").get<NetworkModel>();
        for (const auto &[pair, bps] : patch.bandwidth) env.network.bandwidth[pair] = bps;
        for (const auto &[pair, seconds] : patch.latency) env.network.latency[pair] = seconds;
    }
    if (config.contains("overrides")) {
        for (const auto &[id, fields] : config.at("overrides").items()) {
            auto index = env.find(id);
            if (!index) throw Error(ErrorCode::InvalidEnvironment, "override for unknown node '" + id + "'");
            json merged = env.nodes[*index];
            merged.update(fields);
            merged["id"] = id;
            env.nodes[*index] = merged.get<NodeSpec>();
        }
    }
    if (config.contains("origin_device")) env.origin_device = config.at("origin_device").get<std::string>();
    validate_environment(env);
    return env;
}

// --- planning ---------------------------------------------------------------

inline void to_json(json &j, const OffloadingPlan &p) {
    j = json::object();
    for (const auto &[task, tier] : p.tier_of) j[task] = to_string(tier);
}

inline void from_json(const json &j, OffloadingPlan &p) {
    p.tier_of.clear();
    for (const auto &[task, tier] : j.items()) p.tier_of[task] = tier_from_string(tier.get<std::string>());
}

inline void to_json(json &j, const Objectives &o) {
    j = json{{"w_time", o.w_time}, {"w_energy", o.w_energy}, {"w_cost", o.w_cost}};
    j["deadline"] = o.deadline ? json(*o.deadline) : json(nullptr);
}

inline void from_json(const json &j, Objectives &o) {
    o.w_time = detail::optional_field<double>(j, "w_time", 0.0);
    o.w_energy = detail::optional_field<double>(j, "w_energy", 0.0);
    o.w_cost = detail::optional_field<double>(j, "w_cost", 0.0);
    o.deadline = std::nullopt;
    if (j.contains("deadline") && !j.at("deadline").is_null()) o.deadline = j.at("deadline").get<double>();
}

inline void to_json(json &j, const PsoParams &p) {
    j = json{{"particles", p.particles}, {"c1", p.c1},       {"c2", p.c2}, {"inertia", p.inertia},
             {"iterations", p.iterations}, {"seed", p.seed}};
}

inline void from_json(const json &j, PsoParams &p) {
    const PsoParams d;
    p.particles = detail::optional_field<int>(j, "particles", d.particles);
    p.c1 = detail::optional_field<double>(j, "c1", d.c1);
    p.c2 = detail::optional_field<double>(j, "c2", d.c2);
    p.inertia = detail::optional_field<double>(j, "inertia", d.inertia);
    p.iterations = detail::optional_field<int>(j, "iterations", d.iterations);
    p.seed = detail::optional_field<std::uint64_t>(j, "seed", d.seed);
}

inline void to_json(json &j, const GaParams &p) {
    j = json{{"population", p.population}, {"crossover_rate", p.crossover_rate}, {"mutation_rate", p.mutation_rate},
             {"iterations", p.iterations}, {"elitism", p.elitism},               {"seed", p.seed}};
}

inline void from_json(const json &j, GaParams &p) {
    const GaParams d;
    p.population = detail::optional_field<int>(j, "population", d.population);
    p.crossover_rate = detail::optional_field<double>(j, "crossover_rate", d.crossover_rate);
    p.mutation_rate = detail::optional_field<double>(j, "mutation_rate", d.mutation_rate);
    p.iterations = detail::optional_field<int>(j, "iterations", d.iterations);
    p.elitism = detail::optional_field<int>(j, "elitism", d.elitism);
    p.seed = detail::optional_field<std::uint64_t>(j, "seed", d.seed);
}

inline void to_json(json &j, const SchedulerConfig &c) {
    j = json{{"name", to_string(c.kind)}, {"pso", c.pso}, {"ga", c.ga}};
}

inline void from_json(const json &j, SchedulerConfig &c) {
    if (j.is_string()) {
        c = SchedulerConfig{scheduler_kind_from_string(j.get<std::string>()), {}, {}};
        return;
    }
    c.kind = scheduler_kind_from_string(detail::required<std::string>(j, "name"));
    c.pso = detail::optional_field<PsoParams>(j, "pso", {});
    c.ga = detail::optional_field<GaParams>(j, "ga", {});
}

// --- simulation -------------------------------------------------------------

inline void to_json(json &j, const Assignment &a) { j = a.node_of; }
inline void from_json(const json &j, Assignment &a) { a.node_of = j.get<std::map<std::string, std::string>>(); }

inline void to_json(json &j, const GanttEntry &e) {
    j = json{{"task", e.task}, {"node", e.node}, {"start", e.start}, {"finish", e.finish}, {"transfer_in", e.transfer_in}};
}

inline void from_json(const json &j, GanttEntry &e) {
    e.task = j.at("task").get<std::string>();
    e.node = j.at("node").get<std::string>();
    e.start = j.at("start").get<double>();
    e.finish = j.at("finish").get<double>();
    e.transfer_in = j.at("transfer_in").get<double>();
}

inline void to_json(json &j, const Schedule &s) { j = json{{"assignment", s.assignment}, {"entries", s.entries}}; }

inline void from_json(const json &j, Schedule &s) {
    s.assignment = j.at("assignment").get<Assignment>();
    s.entries = j.at("entries").get<std::vector<GanttEntry>>();
}

inline void to_json(json &j, const Metrics &m) { j = json{{"makespan", m.makespan}, {"energy", m.energy}, {"cost", m.cost}}; }

inline void from_json(const json &j, Metrics &m) {
    m.makespan = j.at("makespan").get<double>();
    m.energy = j.at("energy").get<double>();
    m.cost = j.at("cost").get<double>();
}

inline void to_json(json &j, const DeviceUsage &u) {
    j = json{{"node", u.node}, {"busy", u.busy}, {"tx", u.tx}, {"rx", u.rx}, {"idle", u.idle}};
}

inline void from_json(const json &j, DeviceUsage &u) {
    u.node = j.at("node").get<std::string>();
    u.busy = j.at("busy").get<double>();
    u.tx = j.at("tx").get<double>();
    u.rx = j.at("rx").get<double>();
    u.idle = j.at("idle").get<double>();
}

// --- execution --------------------------------------------------------------

inline void to_json(json &j, const RunEvent &e) {
    j = json{{"run", e.run_id}, {"task", e.task}, {"status", to_string(e.status)}, {"timestamp", e.timestamp}};
    j["detail"] = e.detail ? json(*e.detail) : json(nullptr);
}

inline void from_json(const json &j, RunEvent &e) {
    e.run_id = j.at("run").get<std::string>();
    e.task = j.at("task").get<std::string>();
    e.status = task_status_from_string(j.at("status").get<std::string>());
    e.timestamp = j.at("timestamp").get<double>();
    e.detail = std::nullopt;
    if (j.contains("detail") && !j.at("detail").is_null()) e.detail = j.at("detail").get<std::string>();
}

inline void to_json(json &j, const RunRecord &r) {
    j = json{{"run", r.run_id},
             {"plan", r.plan_id},
             {"events", r.events},
             {"real_durations", r.real_durations},
             {"digests", r.digests},
             {"outcome", to_string(r.outcome)}};
}

inline void from_json(const json &j, RunRecord &r) {
    r.run_id = j.at("run").get<std::string>();
    r.plan_id = j.at("plan").get<std::string>();
    r.events = j.at("events").get<std::vector<RunEvent>>();
    r.real_durations = j.at("real_durations").get<std::map<std::string, double>>();
    r.digests = j.at("digests").get<std::map<std::string, std::uint64_t>>();
    r.outcome = run_outcome_from_string(j.at("outcome").get<std::string>());
}

} // namespace edgeflow
