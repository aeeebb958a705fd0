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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgeflow/error.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

enum class Tier { Device = 0, Edge = 1, Cloud = 2 };

inline constexpr std::array<Tier, 3> kAllTiers{Tier::Device, Tier::Edge, Tier::Cloud};

inline std::string_view to_string(Tier tier) {
    switch (tier) {
        case Tier::Device: return "device";
        case Tier::Edge: return "edge";
        case Tier::Cloud: return "cloud";
    }
    return "unknown";
}

inline Tier tier_from_string(std::string_view name) {
    if (name == "device") return Tier::Device;
    if (name == "edge") return Tier::Edge;
    if (name == "cloud") return Tier::Cloud;
    throw Error(ErrorCode::InvalidRequest, "unknown tier '" + std::string(name) + "'");
}

struct NodeSpec {
    std::string id;
    Tier tier = Tier::Device;
    double mips = 0.0;
    double p_run = 0.0;  // mW
    double p_idle = 0.0; // mW
    double p_tx = 0.0;   // mW
    double p_rx = 0.0;   // mW
    double cost_rate = 0.0; // $ per busy hour

    friend bool operator==(const NodeSpec &, const NodeSpec &) = default;
};

/// Unordered pair of tiers; always stored with first <= second.
struct TierPair {
    Tier first;
    Tier second;

    TierPair(Tier a, Tier b) : first(std::min(a, b)), second(std::max(a, b)) {}

    friend auto operator<=>(const TierPair &, const TierPair &) = default;
};

struct NetworkModel {
    std::map<TierPair, double> bandwidth; // bits per second
    std::map<TierPair, double> latency;   // seconds

    friend bool operator==(const NetworkModel &, const NetworkModel &) = default;
};

inline NetworkModel default_network() {
    NetworkModel net;
    net.bandwidth = {
        {{Tier::Device, Tier::Edge}, 10e6},   {{Tier::Device, Tier::Cloud}, 5e6},
        {{Tier::Edge, Tier::Cloud}, 100e6},   {{Tier::Device, Tier::Device}, 10e6},
        {{Tier::Edge, Tier::Edge}, 100e6},    {{Tier::Cloud, Tier::Cloud}, 1000e6},
    };
    for (const auto &[pair, bps] : net.bandwidth) net.latency[pair] = 0.0;
    return net;
}

enum class SizeClass { Small, Medium, Large };

inline std::string_view to_string(SizeClass size) {
    switch (size) {
        case SizeClass::Small: return "small";
        case SizeClass::Medium: return "medium";
        case SizeClass::Large: return "large";
    }
    return "unknown";
}

inline SizeClass size_class_from_string(std::string_view name) {
    if (name == "small") return SizeClass::Small;
    if (name == "medium") return SizeClass::Medium;
    if (name == "large") return SizeClass::Large;
    throw Error(ErrorCode::InvalidRequest, "unknown size class '" + std::string(name) + "'");
}

/// Multiplier applied to mips and (for Edge/Cloud) cost_rate.
inline double size_multiplier(SizeClass size) {
    switch (size) {
        case SizeClass::Small: return 0.75;
        case SizeClass::Medium: return 1.0;
        case SizeClass::Large: return 1.5;
    }
    return 1.0;
}

struct Environment {
    std::vector<NodeSpec> nodes;
    NetworkModel network;
    std::string origin_device;

    std::optional<std::size_t> find(std::string_view id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].id == id) return i;
        return std::nullopt;
    }

    const NodeSpec &node(std::string_view id) const {
        if (auto i = find(id)) return nodes[*i];
        throw Error(ErrorCode::InconsistentAssignment, "unknown node '" + std::string(id) + "'");
    }

    friend bool operator==(const Environment &, const Environment &) = default;
};

inline void validate_environment(const Environment &env) {
    std::set<std::string> ids;
    for (const auto &node : env.nodes) {
        if (!ids.insert(node.id).second) throw Error(ErrorCode::InvalidEnvironment, "duplicate node id '" + node.id + "'");
        if (!(node.mips > 0.0)) throw Error(ErrorCode::InvalidEnvironment, "node '" + node.id + "' needs mips > 0");
        if (node.p_run < 0 || node.p_idle < 0 || node.p_tx < 0 || node.p_rx < 0 || node.cost_rate < 0)
            throw Error(ErrorCode::InvalidEnvironment, "node '" + node.id + "' has a negative power or cost");
    }
    const auto origin = env.find(env.origin_device);
    if (!origin || env.nodes[*origin].tier != Tier::Device)
        throw Error(ErrorCode::InvalidEnvironment, "origin device '" + env.origin_device + "' is not a device node");
    for (const auto &[pair, bps] : env.network.bandwidth)
        if (!(bps > 0.0)) throw Error(ErrorCode::InvalidEnvironment, "bandwidth must be positive");
    for (const auto &[pair, seconds] : env.network.latency)
        if (seconds < 0.0) throw Error(ErrorCode::InvalidEnvironment, "latency must be non-negative");
}

using TierSizes = std::map<Tier, SizeClass>;
using TierCounts = std::map<Tier, int>;

/// Medium-size node of each tier with the reference parameter table.
inline NodeSpec reference_node(Tier tier) {
    switch (tier) {
        case Tier::Device: return NodeSpec{"", Tier::Device, 1000.0, 700.0, 30.0, 100.0, 25.0, 0.0};
        case Tier::Edge: return NodeSpec{"", Tier::Edge, 1300.0, 0.0, 0.0, 0.0, 0.0, 0.48};
        case Tier::Cloud: return NodeSpec{"", Tier::Cloud, 1600.0, 0.0, 0.0, 0.0, 0.0, 0.96};
    }
    return {};
}

inline std::string_view node_prefix(Tier tier) {
    switch (tier) {
        case Tier::Device: return "d";
        case Tier::Edge: return "e";
        case Tier::Cloud: return "c";
    }
    return "n";
}

/// Three-tier environment with the reference parameters, scaled by size class.
/// Missing tiers default to Medium size and 2 nodes.
inline Environment table1_environment(const TierSizes &sizes = {}, const TierCounts &counts = {}) {
    Environment env;
    env.network = default_network();
    for (Tier tier : kAllTiers) {
        const auto size_it = sizes.find(tier);
        const auto count_it = counts.find(tier);
        const SizeClass size = size_it == sizes.end() ? SizeClass::Medium : size_it->second;
        const int count = count_it == counts.end() ? 2 : count_it->second;
        if (count < 1)
            throw Error(ErrorCode::InvalidCount, std::string(to_string(tier)) + " count must be >= 1");
        const double factor = size_multiplier(size);
        for (int i = 1; i <= count; ++i) {
            NodeSpec node = reference_node(tier);
            node.id = std::string(node_prefix(tier)) + std::to_string(i);
            node.mips *= factor;
            if (tier != Tier::Device) node.cost_rate *= factor;
            env.nodes.push_back(node);
        }
    }
    env.origin_device = "d1";
    return env;
}

inline double exec_time(const TaskSpec &task, const NodeSpec &node) { return task.length / node.mips; }

inline double exec_time(double length_mi, const NodeSpec &node) { return length_mi / node.mips; }

inline double transfer_time(std::uint64_t bytes, const NodeSpec &from, const NodeSpec &to, const NetworkModel &net) {
    if (from.id == to.id) return 0.0;
    const TierPair pair(from.tier, to.tier);
    const auto bw = net.bandwidth.find(pair);
    if (bw == net.bandwidth.end())
        throw Error(ErrorCode::MissingLink, "no link between " + std::string(to_string(from.tier)) + " and " +
                                                std::string(to_string(to.tier)));
    const auto lat = net.latency.find(pair);
    const double latency = lat == net.latency.end() ? 0.0 : lat->second;
    return latency + 8.0 * static_cast<double>(bytes) / bw->second;
}

inline double busy_cost(const NodeSpec &node, double busy_seconds) { return node.cost_rate * busy_seconds / 3600.0; }

/// Fastest node of a tier; ties resolved by the lowest id.
inline const NodeSpec &fastest_node(const Environment &env, Tier tier) {
    const NodeSpec *best = nullptr;
    for (const auto &node : env.nodes) {
        if (node.tier != tier) continue;
        if (!best || node.mips > best->mips || (node.mips == best->mips && node.id < best->id)) best = &node;
    }
    if (!best) throw Error(ErrorCode::EmptyTier, "no " + std::string(to_string(tier)) + " nodes");
    return *best;
}

} // namespace edgeflow
