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

#include <set>

#include "edgeflow/dax.hpp"
#include "edgeflow/serialize.hpp"
#include "edgeflow/workflow.hpp"
#include "oracles/reference.hpp"

using namespace edgeflow;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::StoreError;
}

WorkflowDag make(std::vector<std::string> ids, std::vector<std::pair<std::string, std::string>> edges) {
    WorkflowDag dag{"test", {}, {}};
    for (auto &id : ids) dag.tasks.push_back({id, id, 1000.0, {}});
    for (auto &[p, c] : edges) dag.edges.push_back({p, c, 0});
    return dag;
}

std::set<std::pair<std::string, std::string>> edge_set(const WorkflowDag &dag) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto &e : dag.edges) out.insert({e.parent, e.child});
    return out;
}

constexpr const char *kChainDax = R"(<?xml version="1.0" encoding="UTF-8"?>
<adag name="chain">
  <job id="A" name="first" runtime="2.0">
    <uses file="f" link="output" size="1000000"/>
  </job>
  <job id="B" name="second" runtime="1.0">
    <uses file="f" link="input" size="1000000"/>
  </job>
  <child ref="B"><parent ref="A"/></child>
</adag>)";

} // namespace

TEST(Validate, ChainOrder) {
    EXPECT_EQ(validate(make({"C", "B", "A"}, {{"A", "B"}, {"B", "C"}})), (TopologicalOrder{"A", "B", "C"}));
}

TEST(Validate, IndependentTasksSortedById) {
    EXPECT_EQ(validate(make({"B", "A"}, {})), (TopologicalOrder{"A", "B"}));
}

TEST(Validate, TwoCycleRejected) {
    EXPECT_EQ(code_of([] { validate(make({"A", "B"}, {{"A", "B"}, {"B", "A"}})); }), ErrorCode::CyclicWorkflow);
}

TEST(Validate, StructuralErrors) {
    EXPECT_EQ(code_of([] { validate(make({"A", "A"}, {})); }), ErrorCode::DuplicateTaskId);
    EXPECT_EQ(code_of([] { validate(make({"A"}, {{"A", "Z"}})); }), ErrorCode::InvalidEdge);
    EXPECT_EQ(code_of([] { validate(make({"A"}, {{"A", "A"}})); }), ErrorCode::InvalidEdge);
    EXPECT_EQ(code_of([] { validate(make({"A", "B"}, {{"A", "B"}, {"A", "B"}})); }), ErrorCode::InvalidEdge);
    auto dag = make({"A"}, {});
    dag.tasks[0].length = 0.0;
    EXPECT_EQ(code_of([&] { validate(dag); }), ErrorCode::InvalidLength);
}

TEST(Validate, OrderIsPermutationRespectingEdgesOnRandomDags) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto dag = generate_pattern(PatternKind::Hybrid, 5 + static_cast<int>(seed % 30), seed);
        const auto order = validate(dag);
        EXPECT_EQ(order, oracle::smallest_ready_order(dag));
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        ASSERT_EQ(pos.size(), dag.tasks.size());
        for (const auto &e : dag.edges) EXPECT_LT(pos[e.parent], pos[e.child]);
    }
}

TEST(Montage, WidthFiveHasTwentyTasks) {
    EXPECT_EQ(generate_montage(5).tasks.size(), 20u);
}

TEST(Montage, WidthTwoWiring) {
    const auto dag = generate_montage(2);
    EXPECT_EQ(dag.tasks.size(), 11u);
    EXPECT_EQ(edge_set(dag), oracle::montage_edges(2));
    EXPECT_EQ(dag.edges.size(), 13u);
}

TEST(Montage, WidthOneRejected) {
    EXPECT_EQ(code_of([] { generate_montage(1); }), ErrorCode::InvalidWidth);
}

TEST(Montage, CountsAndWiringForAllWidths) {
    for (int w = 2; w <= 64; ++w) {
        const auto dag = generate_montage(w);
        EXPECT_EQ(dag.tasks.size(), static_cast<std::size_t>(3 * w + 5));
        EXPECT_EQ(edge_set(dag), oracle::montage_edges(w)) << "width " << w;
        EXPECT_NO_THROW(validate(dag));
        for (const auto &e : dag.edges) EXPECT_EQ(e.bytes, 1'000'000u);
    }
}

TEST(Montage, LayerLengths) {
    const auto dag = generate_montage(3);
    std::map<std::string, double> len;
    for (const auto &t : dag.tasks) len[t.id] = t.length;
    EXPECT_DOUBLE_EQ(len["mProject_0"], 1000.0);
    EXPECT_DOUBLE_EQ(len["mDiffFit_1"], 500.0);
    EXPECT_DOUBLE_EQ(len["mConcatFit"], 800.0);
    EXPECT_DOUBLE_EQ(len["mBgModel"], 1200.0);
    EXPECT_DOUBLE_EQ(len["mBackground_2"], 600.0);
    EXPECT_DOUBLE_EQ(len["mImgtbl"], 400.0);
    EXPECT_DOUBLE_EQ(len["mAdd"], 2000.0);
    EXPECT_DOUBLE_EQ(len["mShrink"], 700.0);
    EXPECT_DOUBLE_EQ(len["mJPEG"], 500.0);
}

TEST(Pattern, SequentialChain) {
    const auto dag = generate_pattern(PatternKind::Sequential, 3);
    EXPECT_EQ(edge_set(dag), (std::set<std::pair<std::string, std::string>>{{"t1", "t2"}, {"t2", "t3"}}));
}

TEST(Pattern, ParallelForkJoin) {
    const auto dag = generate_pattern(PatternKind::Parallel, 4);
    EXPECT_EQ(edge_set(dag),
              (std::set<std::pair<std::string, std::string>>{{"t1", "t2"}, {"t1", "t3"}, {"t2", "t4"}, {"t3", "t4"}}));
    EXPECT_EQ(code_of([] { generate_pattern(PatternKind::Parallel, 2); }), ErrorCode::InvalidCount);
    EXPECT_EQ(code_of([] { generate_pattern(PatternKind::Sequential, 0); }), ErrorCode::InvalidCount);
}

TEST(Pattern, HybridIsDeterministicBySeed) {
    const auto a = generate_pattern(PatternKind::Hybrid, 10, 7);
    const auto b = generate_pattern(PatternKind::Hybrid, 10, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(json(a).dump(), json(b).dump());
    EXPECT_EQ(a.tasks.size(), 10u);
    EXPECT_NO_THROW(validate(a));
    EXPECT_NE(json(a).dump(), json(generate_pattern(PatternKind::Hybrid, 10, 8)).dump());
}

TEST(Bind, UniformFill) {
    const auto dag = bind_tasks(generate_pattern(PatternKind::Sequential, 3), BuiltinKind::PiCalculation);
    for (const auto &t : dag.tasks) {
        ASSERT_TRUE(t.binding);
        EXPECT_EQ(t.binding->kind, BuiltinKind::PiCalculation);
        EXPECT_EQ(t.binding->params.terms, 10'000'000u);
    }
}

TEST(Bind, BoundTasksUnchanged) {
    const auto bound = bind_tasks(generate_pattern(PatternKind::Sequential, 3), BuiltinKind::KmpMatch);
    EXPECT_EQ(bind_tasks(bound, BuiltinKind::PiCalculation), bound);
}

TEST(Bind, MixedOnlyUnboundChange) {
    auto dag = generate_pattern(PatternKind::Sequential, 3);
    dag.tasks[1].binding = TaskBinding{BuiltinKind::SelectionSort, {}};
    const auto out = bind_tasks(dag, BuiltinKind::PiCalculation);
    EXPECT_EQ(out.tasks[0].binding->kind, BuiltinKind::PiCalculation);
    EXPECT_EQ(out.tasks[1].binding, dag.tasks[1].binding);
    EXPECT_EQ(out.tasks[2].binding->kind, BuiltinKind::PiCalculation);
}

TEST(Dax, TwoJobChain) {
    const auto dag = parse_dax(kChainDax);
    ASSERT_EQ(dag.tasks.size(), 2u);
    std::map<std::string, double> len;
    for (const auto &t : dag.tasks) len[t.id] = t.length;
    EXPECT_DOUBLE_EQ(len["A"], 2000.0);
    EXPECT_DOUBLE_EQ(len["B"], 1000.0);
    ASSERT_EQ(dag.edges.size(), 1u);
    EXPECT_EQ(dag.edges[0], (DataEdge{"A", "B", 1'000'000}));
}

TEST(Dax, MutualParentsAreCyclic) {
    const char *xml = R"(<adag><job id="A" runtime="1"/><job id="B" runtime="1"/>
        <child ref="A"><parent ref="B"/></child><child ref="B"><parent ref="A"/></child></adag>)";
    EXPECT_EQ(code_of([&] { parse_dax(xml); }), ErrorCode::CyclicWorkflow);
}

TEST(Dax, SingleJob) {
    const auto dag = parse_dax(R"(<adag><job id="only" runtime="0.5"/></adag>)");
    ASSERT_EQ(dag.tasks.size(), 1u);
    EXPECT_DOUBLE_EQ(dag.tasks[0].length, 500.0);
    EXPECT_TRUE(dag.edges.empty());
}

TEST(Dax, Errors) {
    EXPECT_EQ(code_of([] { parse_dax("<adag><job id=\"A\" runtime=\"1\">"); }), ErrorCode::MalformedXml);
    EXPECT_EQ(code_of([] { parse_dax(R"(<adag><job id="A" runtime="1"/><child ref="A"><parent ref="Z"/></child></adag>)"); }),
              ErrorCode::UnknownJobReference);
    EXPECT_EQ(code_of([] { parse_dax(R"(<adag><job id="A" runtime="1"><uses file="f" link="input" size="-5"/></job></adag>)"); }),
              ErrorCode::NegativeSize);
    try {
        parse_dax("<adag>\n<job id=\"A\" runtime=\"1\">\n</adag>");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedXml);
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
    }
}

TEST(Dax, RoundTripOfGeneratedWorkflows) {
    std::vector<WorkflowDag> dags{generate_montage(4), generate_pattern(PatternKind::Parallel, 6)};
    for (std::uint64_t seed = 0; seed < 20; ++seed) dags.push_back(generate_pattern(PatternKind::Hybrid, 12, seed));
    for (const auto &dag : dags) {
        const auto back = parse_dax(to_dax(dag));
        ASSERT_EQ(back.tasks.size(), dag.tasks.size());
        std::map<std::string, double> len;
        for (const auto &t : back.tasks) len[t.id] = t.length;
        for (const auto &t : dag.tasks) EXPECT_NEAR(len.at(t.id), t.length, 1.0);
        std::map<std::pair<std::string, std::string>, std::uint64_t> a, b;
        for (const auto &e : dag.edges) a[{e.parent, e.child}] = e.bytes;
        for (const auto &e : back.edges) b[{e.parent, e.child}] = e.bytes;
        EXPECT_EQ(a, b);
    }
}

TEST(Serialize, WorkflowJsonRoundTrip) {
    auto dag = bind_tasks(generate_pattern(PatternKind::Hybrid, 9, 3), BuiltinKind::LevenshteinDistance);
    const json doc = dag;
    EXPECT_EQ(doc.get<WorkflowDag>(), dag);
    EXPECT_EQ(json(doc.get<WorkflowDag>()).dump(), doc.dump());
}
