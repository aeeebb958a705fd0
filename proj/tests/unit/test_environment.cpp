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

#include <gtest/gtest.h>

#include "edgeflow/offloading.hpp"
#include "edgeflow/serialize.hpp"
#include "oracles/instances.hpp"

using namespace edgeflow;

namespace {

std::vector<const NodeSpec *> of_tier(const Environment &env, Tier tier) {
    std::vector<const NodeSpec *> out;
    for (const auto &n : env.nodes)
        if (n.tier == tier) out.push_back(&n);
    return out;
}

// One 1000 MI task with 1.25 MB in and 1.25 MB out.
WorkflowDag middle_task_dag() {
    WorkflowDag dag{"mid", {{"a", "", 1000, {}}, {"b", "", 1000, {}}, {"c", "", 1000, {}}}, {}};
    dag.edges = {{"a", "b", 1'250'000}, {"b", "c", 1'250'000}};
    return dag;
}

} // namespace

TEST(Environment, ReferenceTableValues) {
    const auto env = table1_environment();
    ASSERT_EQ(env.nodes.size(), 6u);
    for (const auto *n : of_tier(env, Tier::Device)) {
        EXPECT_EQ(n->mips, 1000.0);
        EXPECT_EQ(n->p_run, 700.0);
        EXPECT_EQ(n->p_idle, 30.0);
        EXPECT_EQ(n->p_tx, 100.0);
        EXPECT_EQ(n->p_rx, 25.0);
        EXPECT_EQ(n->cost_rate, 0.0);
    }
    for (const auto *n : of_tier(env, Tier::Edge)) {
        EXPECT_EQ(n->mips, 1300.0);
        EXPECT_EQ(n->cost_rate, 0.48);
        EXPECT_EQ(n->p_run + n->p_idle + n->p_tx + n->p_rx, 0.0);
    }
    for (const auto *n : of_tier(env, Tier::Cloud)) {
        EXPECT_EQ(n->mips, 1600.0);
        EXPECT_EQ(n->cost_rate, 0.96);
    }
    EXPECT_EQ(env.origin_device, "d1");
}

TEST(Environment, LargeCloud) {
    const auto env = table1_environment({{Tier::Cloud, SizeClass::Large}});
    for (const auto *n : of_tier(env, Tier::Cloud)) {
        EXPECT_DOUBLE_EQ(n->mips, 2400.0);
        EXPECT_DOUBLE_EQ(n->cost_rate, 1.44);
    }
    const auto small = table1_environment({{Tier::Device, SizeClass::Small}});
    EXPECT_DOUBLE_EQ(small.node("d1").mips, 750.0);
    EXPECT_DOUBLE_EQ(small.node("d1").p_run, 700.0);
}

TEST(Environment, Counts) {
    EXPECT_EQ(table1_environment({}, {{Tier::Device, 1}, {Tier::Edge, 1}, {Tier::Cloud, 1}}).nodes.size(), 3u);
    EXPECT_THROW(table1_environment({}, {{Tier::Edge, 0}}), Error);
}

TEST(Environment, ExecTime) {
    EXPECT_DOUBLE_EQ(exec_time(2000.0, reference_node(Tier::Device)), 2.0);
    EXPECT_NEAR(exec_time(1000.0, reference_node(Tier::Edge)), 0.76923, 1e-5);
    for (double len : {100.0, 1000.0, 5000.0}) {
        EXPECT_GT(exec_time(len, NodeSpec{"a", Tier::Edge, 1000}), exec_time(len, NodeSpec{"b", Tier::Edge, 1001}));
        EXPECT_LT(exec_time(len, NodeSpec{"a", Tier::Edge, 1000}), exec_time(len + 1, NodeSpec{"a", Tier::Edge, 1000}));
    }
}

TEST(Environment, TransferTime) {
    const auto env = table1_environment();
    const auto net = default_network();
    EXPECT_DOUBLE_EQ(transfer_time(1'250'000, env.node("d1"), env.node("e1"), net), 1.0);
    EXPECT_DOUBLE_EQ(transfer_time(1'250'000, env.node("d1"), env.node("d1"), net), 0.0);
    EXPECT_DOUBLE_EQ(transfer_time(1'250'000, env.node("d1"), env.node("c2"), net), 2.0);
    auto lat = net;
    lat.latency[TierPair(Tier::Edge, Tier::Cloud)] = 0.25;
    EXPECT_DOUBLE_EQ(transfer_time(0, env.node("e1"), env.node("c1"), lat), 0.25);
    for (const auto &a : env.nodes)
        for (const auto &b : env.nodes)
            EXPECT_EQ(transfer_time(777'777, a, b, lat), transfer_time(777'777, b, a, lat));
    NetworkModel empty;
    EXPECT_THROW(transfer_time(1, env.node("d1"), env.node("e1"), empty), Error);
}

TEST(Environment, BusyCost) {
    const auto env = table1_environment();
    EXPECT_DOUBLE_EQ(busy_cost(env.node("e1"), 3600), 0.48);
    EXPECT_DOUBLE_EQ(busy_cost(env.node("d1"), 12345), 0.0);
    EXPECT_DOUBLE_EQ(busy_cost(env.node("c1"), 1800), 0.48);
    for (double s1 : {0.1, 7.0, 1234.5})
        for (double s2 : {0.3, 99.0})
            EXPECT_NEAR(busy_cost(env.node("c1"), s1 + s2), busy_cost(env.node("c1"), s1) + busy_cost(env.node("c1"), s2),
                        1e-12 * busy_cost(env.node("c1"), s1 + s2));
}

TEST(Environment, ConfigDocument) {
    const json config = {{"sizes", {{"cloud", "large"}}}, {"counts", {{"device", 1}, {"edge", 3}, {"cloud", 1}}}};
    const auto env = environment_from_config(config);
    EXPECT_EQ(env.nodes.size(), 5u);
    EXPECT_DOUBLE_EQ(env.node("c1").mips, 2400.0);
    EXPECT_EQ(json(env).get<Environment>(), env);
}

TEST(Offloading, WholeTierStrategies) {
    const auto dag = generate_montage(3);
    const auto env = table1_environment();
    for (const auto &[task, tier] : offload(dag, env, OffloadingStrategy::AllInCloud).tier_of) EXPECT_EQ(tier, Tier::Cloud);
    for (const auto &[task, tier] : offload(dag, env, OffloadingStrategy::AllInEdge).tier_of) EXPECT_EQ(tier, Tier::Edge);
    EXPECT_EQ(offload(dag, env, OffloadingStrategy::EnergyOptimal).tier_of.size(), dag.tasks.size());
}

TEST(Offloading, DeviceEstimates) {
    const auto env = table1_environment();
    const auto dag = middle_task_dag();
    EXPECT_NEAR(device_energy_estimate(dag, "b", Tier::Device, env), 0.700, 1e-12);
    // tx 0.1 W x 1 s, idle 0.03 W x 1/1.3 s, rx 0.025 W x 1 s
    EXPECT_NEAR(device_energy_estimate(dag, "b", Tier::Edge, env), 0.1 + 0.03 / 1.3 + 0.025, 1e-12);
    EXPECT_NEAR(device_energy_estimate(dag, "b", Tier::Edge, env), 0.1481, 1e-4);
    // 5 Mbps to the cloud doubles both transfers.
    EXPECT_NEAR(device_energy_estimate(dag, "b", Tier::Cloud, env), 0.2 + 0.03 / 1.6 + 0.05, 1e-12);
    EXPECT_EQ(offload(dag, env, OffloadingStrategy::EnergyOptimal).tier_of.at("b"), Tier::Edge);
}

TEST(Offloading, ZeroPayloadCloudIsIdleOnly) {
    const auto env = table1_environment();
    WorkflowDag dag{"one", {{"x", "", 3200, {}}}, {}};
    EXPECT_NEAR(device_energy_estimate(dag, "x", Tier::Cloud, env), 0.030 * 2.0, 1e-12);
}

TEST(Offloading, EnergyOptimalIsArgmin) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto inst = oracle::random_instance(seed, 8, 5);
        const auto plan = offload(inst.dag, inst.env, OffloadingStrategy::EnergyOptimal);
        for (const auto &task : inst.dag.tasks) {
            const double chosen = device_energy_estimate(inst.dag, task.id, plan.tier_of.at(task.id), inst.env);
            for (Tier tier : kAllTiers) {
                if (!has_tier(inst.env, tier)) continue;
                EXPECT_LE(chosen, device_energy_estimate(inst.dag, task.id, tier, inst.env));
            }
        }
    }
}

TEST(Offloading, UniformDevicePowerScalingKeepsChoice) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto dag = generate_pattern(PatternKind::Hybrid, 8, seed);
        auto env = table1_environment();
        const auto base = offload(dag, env, OffloadingStrategy::EnergyOptimal);
        for (auto &n : env.nodes)
            if (n.tier == Tier::Device) {
                n.p_run *= 4.0;
                n.p_idle *= 4.0;
                n.p_tx *= 4.0;
                n.p_rx *= 4.0;
            }
        EXPECT_EQ(offload(dag, env, OffloadingStrategy::EnergyOptimal), base);
    }
}

TEST(Offloading, MissingTierSkipped) {
    Environment env = table1_environment();
    std::erase_if(env.nodes, [](const NodeSpec &n) { return n.tier == Tier::Cloud; });
    const auto plan = offload(generate_montage(2), env, OffloadingStrategy::EnergyOptimal);
    for (const auto &[task, tier] : plan.tier_of) EXPECT_NE(tier, Tier::Cloud);
}
