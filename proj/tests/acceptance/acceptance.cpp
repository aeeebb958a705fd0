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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "edgeflow/edgeflow.hpp"
#include "oracles/instances.hpp"
#include "oracles/reference.hpp"

using namespace edgeflow;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string &name, bool ok, const std::string &detail, double seconds) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(2) << seconds << " s): "
              << detail << std::endl;
    if (!ok) ++failures;
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin_).count();
    }

  private:
    std::chrono::steady_clock::time_point begin_ = std::chrono::steady_clock::now();
};

bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

// No overlap per node, precedence with transfers, per-device partition, and agreement
// with the step-by-step reference replay.
bool schedule_invariants_hold(const WorkflowDag &dag, const Environment &env, const SimulationResult &r, std::string &why) {
    std::map<std::string, GanttEntry> by_task;
    std::map<std::string, std::vector<GanttEntry>> by_node;
    for (const auto &e : r.schedule.entries) {
        by_task[e.task] = e;
        by_node[e.node].push_back(e);
    }
    if (by_task.size() != dag.tasks.size()) return why = "entries do not cover the tasks", false;
    for (auto &[node, list] : by_node) {
        std::sort(list.begin(), list.end(), [](auto &a, auto &b) { return a.start < b.start; });
        for (std::size_t k = 0; k + 1 < list.size(); ++k)
            if (list[k].finish > list[k + 1].start) return why = "overlap on " + node, false;
    }
    for (const auto &edge : dag.edges) {
        const auto &p = by_task[edge.parent];
        const auto &c = by_task[edge.child];
        const double moved = transfer_time(edge.bytes, env.node(p.node), env.node(c.node), env.network);
        if (p.finish + moved > c.start * (1 + 1e-12)) return why = "precedence " + edge.parent + "->" + edge.child, false;
    }
    for (const auto &d : r.devices)
        if (!near(d.busy + d.tx + d.rx + d.idle, r.metrics.makespan, 1e-12)) return why = "partition on " + d.node, false;
    const auto ref = oracle::replay(dag, env, r.schedule.assignment.node_of);
    if (!near(ref.makespan, r.metrics.makespan, 1e-12) || !near(ref.energy, r.metrics.energy, 1e-9) ||
        !near(ref.cost, r.metrics.cost, 1e-9))
        return why = "metrics differ from the reference replay", false;
    return true;
}

// ---------------------------------------------------------------------------

void reference_table() {
    Stopwatch clock;
    const auto env = table1_environment({}, {{Tier::Device, 2}, {Tier::Edge, 2}, {Tier::Cloud, 2}});
    bool ok = env.nodes.size() == 6;
    for (const auto &n : env.nodes) {
        switch (n.tier) {
            case Tier::Device:
                ok &= n.mips == 1000 && n.p_run == 700 && n.p_idle == 30 && n.p_tx == 100 && n.p_rx == 25 && n.cost_rate == 0;
                break;
            case Tier::Edge:
                ok &= n.mips == 1300 && n.cost_rate == 0.48 && n.p_run == 0 && n.p_idle == 0 && n.p_tx == 0 && n.p_rx == 0;
                break;
            case Tier::Cloud:
                ok &= n.mips == 1600 && n.cost_rate == 0.96 && n.p_run == 0 && n.p_idle == 0 && n.p_tx == 0 && n.p_rx == 0;
                break;
        }
    }
    report("reference-table", ok, "MIPS 1000/1300/1600, device 700/30/100/25 mW, cost 0/0.48/0.96", clock.seconds());
}

void oracle_suite() {
    Stopwatch clock;
    constexpr int kInstances = 200;
    int invariant_failures = 0, heuristic_below_optimum = 0, worse_than_seed = 0;
    int pso_optimal = 0, ga_optimal = 0;
    std::string first_problem;
    for (int k = 0; k < kInstances; ++k) {
        const auto inst = oracle::random_instance(static_cast<std::uint64_t>(k) * 7919 + 17, 6, 3);
        SimulationModel model(inst.dag, inst.env);
        SearchSpace space(model, inst.plan);
        const Objectives obj{};
        FitnessEvaluator eval(space, obj);

        // Independent optimum: enumerate every tier-respecting assignment through the reference replay.
        std::vector<std::vector<std::string>> options;
        for (const auto &task : inst.dag.tasks) options.push_back(allowed_nodes(task.id, inst.plan, inst.env));
        double best_makespan = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
            std::map<std::string, std::string> node_of;
            for (std::size_t t = 0; t < pick.size(); ++t) node_of[inst.dag.tasks[t].id] = options[t][pick[t]];
            best_makespan = std::min(best_makespan, oracle::replay(inst.dag, inst.env, node_of).makespan);
            std::size_t d = pick.size();
            bool more = false;
            while (d > 0) {
                --d;
                if (++pick[d] < options[d].size()) {
                    more = true;
                    break;
                }
                pick[d] = 0;
            }
            if (!more) break;
        }
        const double optimum_fitness = best_makespan / eval.baseline().makespan;

        double best_seed = std::numeric_limits<double>::infinity();
        for (auto kind : kAllSchedulers) {
            SchedulerConfig config{kind, {}, {}};
            const auto nodes = schedule_nodes(space, config, obj);
            const auto result = model.run(nodes);
            std::string why;
            if (!schedule_invariants_hold(inst.dag, inst.env, result, why)) {
                ++invariant_failures;
                if (first_problem.empty()) first_problem = "instance " + std::to_string(k) + ": " + why;
            }
            const double fit = eval.of_nodes(nodes);
            if (is_heuristic(kind)) {
                best_seed = std::min(best_seed, fit);
                if (result.metrics.makespan < best_makespan * (1 - 1e-12)) ++heuristic_below_optimum;
            } else {
                if (fit > best_seed) ++worse_than_seed;
                const bool optimal = near(fit, optimum_fitness, 1e-9);
                (kind == SchedulerKind::PSO ? pso_optimal : ga_optimal) += optimal ? 1 : 0;
            }
        }
    }
    const double seconds = clock.seconds();
    std::ostringstream detail;
    detail << "invariant violations " << invariant_failures << ", heuristics below optimum " << heuristic_below_optimum
           << ", PSO optimal " << pso_optimal << "/" << kInstances << ", GA optimal " << ga_optimal << "/" << kInstances
           << ", worse than best seed " << worse_than_seed;
    if (!first_problem.empty()) detail << " [" << first_problem << "]";
    const bool ok = invariant_failures == 0 && heuristic_below_optimum == 0 && worse_than_seed == 0 &&
                    pso_optimal >= 180 && ga_optimal >= 180 && seconds < 120.0;
    report("oracle-suite", ok, detail.str(), seconds);
}

void montage_trend() {
    Stopwatch clock;
    const auto env = table1_environment();
    const Objectives obj{};
    bool ok = true;
    std::ostringstream detail;
    detail << std::fixed << std::setprecision(3);
    detail << "reference GA-vs-PSO gap narrows 27% -> 18%; measured:";
    for (int width : {5, 10, 15, 20, 25, 32}) {
        const auto dag = generate_montage(width);
        const auto plan = offload(dag, env, OffloadingStrategy::EnergyOptimal);
        SimulationModel model(dag, env);
        SearchSpace space(model, plan);
        double best_heuristic = std::numeric_limits<double>::infinity();
        for (auto f : {fcfs_nodes, round_robin_nodes, min_min_nodes, max_min_nodes})
            best_heuristic = std::min(best_heuristic, model.evaluate(f(space)).makespan);
        std::vector<double> ga, pso;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            PsoParams p;
            p.seed = seed;
            GaParams g;
            g.seed = seed;
            pso.push_back(model.evaluate(pso_nodes(space, obj, p)).makespan);
            ga.push_back(model.evaluate(ga_nodes(space, obj, g)).makespan);
        }
        const double ga_median = median(ga), pso_median = median(pso);
        ok &= ga_median <= best_heuristic && pso_median <= best_heuristic;
        const double gap = 100.0 * (pso_median - ga_median) / pso_median;
        detail << " [" << dag.tasks.size() << " tasks: heuristic " << best_heuristic << " s, PSO " << pso_median
               << " s, GA " << ga_median << " s, gap " << std::setprecision(1) << gap << "%" << std::setprecision(3)
               << "]";
    }
    const double seconds = clock.seconds();
    report("montage-trend", ok && seconds < 600.0, detail.str(), seconds);
}

void energy_accounting() {
    Stopwatch clock;
    std::mt19937_64 rng(77);
    int mismatches = 0, partition_errors = 0;
    for (int k = 0; k < 50; ++k) {
        const auto inst = oracle::random_instance(5000 + static_cast<std::uint64_t>(k), 10, 6);
        Assignment a;
        for (const auto &task : inst.dag.tasks) {
            const auto nodes = allowed_nodes(task.id, inst.plan, inst.env);
            a.node_of[task.id] = nodes[rng() % nodes.size()];
        }
        const auto r = simulate(inst.dag, inst.env, a, &inst.plan);
        // Energy rebuilt from the reported per-device components.
        double from_parts = 0;
        for (const auto &d : r.devices) {
            const auto &n = inst.env.node(d.node);
            from_parts += (n.p_run * d.busy + n.p_tx * d.tx + n.p_rx * d.rx + n.p_idle * d.idle) / 1000.0;
            if (d.busy + d.tx + d.rx + d.idle != r.metrics.makespan &&
                !near(d.busy + d.tx + d.rx + d.idle, r.metrics.makespan, 1e-12))
                ++partition_errors;
        }
        const auto ref = oracle::replay(inst.dag, inst.env, a.node_of);
        if (!near(from_parts, r.metrics.energy, 1e-9) || !near(ref.energy, r.metrics.energy, 1e-9)) ++mismatches;
    }
    bool cloud_zero = true;
    const auto env = table1_environment();
    for (int width : {3, 8}) {
        const auto dag = generate_montage(width);
        const auto plan = offload(dag, env, OffloadingStrategy::AllInCloud);
        for (auto kind : kAllSchedulers) {
            SchedulerConfig config{kind, {}, {}};
            config.pso.iterations = 10;
            config.ga.iterations = 10;
            const auto r = simulate(dag, env, schedule(dag, env, plan, config, Objectives{}), &plan);
            for (const auto &d : r.devices) cloud_zero &= d.busy == 0.0;
        }
    }
    std::ostringstream detail;
    detail << "energy mismatches " << mismatches << "/50, partition errors " << partition_errors
           << ", all-in-cloud device run time zero: " << (cloud_zero ? "yes" : "no");
    report("energy-accounting", mismatches == 0 && partition_errors == 0 && cloud_zero, detail.str(), clock.seconds());
}

void builtin_tasks() {
    Stopwatch clock;
    int lev = 0, kmp = 0, sort_ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto a = seeded_text(seed, 20 + seed % 80, kLevenshteinAlphabet);
        const auto b = seeded_text(seed + 500, 20 + (seed * 13) % 80, kLevenshteinAlphabet);
        lev += levenshtein(a, b) == oracle::dp_levenshtein(a, b);
        const auto text = seeded_text(seed + 1000, 500, kKmpAlphabet);
        const auto pattern = seeded_text(seed + 2000, 1 + seed % 8, kKmpAlphabet);
        kmp += kmp_search(text, pattern) == oracle::naive_search(text, pattern);
        auto values = seeded_array(seed, 1 + seed * 5);
        auto sorted = values;
        selection_sort(std::span<std::int64_t>(sorted));
        std::sort(values.begin(), values.end());
        sort_ok += std::is_sorted(sorted.begin(), sorted.end()) && sorted == values;
    }
    bool pi_ok = true;
    std::ostringstream detail;
    detail << "levenshtein " << lev << "/100, kmp " << kmp << "/100, selection sort " << sort_ok << "/100";
    for (std::uint64_t n : {1000ULL, 1'000'000ULL}) {
        const double error = std::abs(pi_series(n) - std::numbers::pi);
        pi_ok &= error <= 1.0 / (2.0 * n + 1.0);
        detail << ", pi n=" << n << " error " << std::scientific << std::setprecision(2) << error << " <= "
               << 1.0 / (2.0 * n + 1.0) << std::defaultfloat;
    }
    report("builtin-tasks", lev == 100 && kmp == 100 && sort_ok == 100 && pi_ok, detail.str(), clock.seconds());
}

struct Command {
    int status;
    std::string out;
};

Command run_cli(const std::string &args, const fs::path &scratch) {
    const auto out = scratch / "stdout.json";
    const std::string line = std::string("\"") + EDGEFLOW_CLI_PATH + "\" --store \"" + (scratch / "store").string() +
                             "\" " + args + " > \"" + out.string() + "\" 2> \"" + (scratch / "stderr.txt").string() + "\"";
    const int status = std::system(line.c_str());
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    return {status, text.str()};
}

void end_to_end_cli() {
    Stopwatch clock;
    const auto scratch = fs::temp_directory_path() / ("edgeflow-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    std::string problem;
    try {
        const auto plan = run_cli("plan --workflow hybrid --count 10 --workflow-seed 3 --scheduler ga", scratch);
        if (plan.status != 0) throw std::runtime_error("plan failed");
        const std::string plan_id = json::parse(plan.out).at("plan");
        if (run_cli("simulate --plan " + plan_id, scratch).status != 0) throw std::runtime_error("simulate failed");
        const auto run = run_cli("run --plan " + plan_id, scratch);
        if (run.status != 0) throw std::runtime_error("run failed");
        const auto record = json::parse(run.out).get<RunRecord>();
        const auto rep = run_cli("report --plan " + plan_id + " --run " + record.run_id, scratch);
        if (rep.status != 0) throw std::runtime_error("report failed");
        const auto doc = json::parse(rep.out);
        for (const char *chart : {"bar", "pie", "line", "gantt"})
            if (!doc.contains(chart) || doc.at(chart).empty()) problem += std::string("missing chart ") + chart + "; ";
        std::map<std::string, std::vector<TaskStatus>> seq;
        for (const auto &e : record.events) seq[e.task].push_back(e.status);
        if (seq.size() != 10) problem += "expected 10 tasks in the event log; ";
        for (const auto &[task, statuses] : seq) {
            if (statuses != std::vector<TaskStatus>{TaskStatus::Standby, TaskStatus::Running, TaskStatus::Completed})
                problem += "task " + task + " sequence is not Standby/Running/Completed; ";
        }
        for (const auto &point : doc.at("line"))
            if (!point.contains("real") || point.at("real").is_null()) problem += "line point without real duration; ";
        if (doc.at("outcome") != "Succeeded") problem += "outcome not Succeeded; ";
    } catch (const std::exception &e) {
        problem += e.what();
    }
    fs::remove_all(scratch);
    const double seconds = clock.seconds();
    report("end-to-end-cli", problem.empty() && seconds < 60.0,
           problem.empty() ? "hybrid-10 planned, simulated, executed and reported through the CLI; all tasks Completed"
                           : problem,
           seconds);
}

void gatekeeping() {
    Stopwatch clock;
    const auto env = table1_environment();
    const auto dag = generate_montage(3);
    const auto plan = offload(dag, env, OffloadingStrategy::EnergyOptimal);
    int rejected = 0, total = 0;
    const std::vector<Objectives> objectives{{0, 1, 0, {}}, {0, 0, 1, {}}, {0.5, 0.5, 0, {}}, {0.999, 0, 0.001, {}}};
    const auto scratch = fs::temp_directory_path() / ("edgeflow-gate-" + std::to_string(::getpid()));
    Controller controller(ControllerOptions{scratch, {}, {}});
    for (auto kind : kAllSchedulers) {
        if (!is_heuristic(kind)) continue;
        for (const auto &obj : objectives) {
            total += 2;
            try {
                schedule(dag, env, plan, SchedulerConfig{kind, {}, {}}, obj);
            } catch (const Error &e) {
                rejected += e.code() == ErrorCode::IncompatibleObjective;
            }
            try {
                controller.build_plan(json{{"workflow", {{"template", "montage"}, {"width", 3}}},
                                           {"scheduler", to_string(kind)},
                                           {"objectives", obj}});
            } catch (const Error &e) {
                rejected += e.code() == ErrorCode::IncompatibleObjective;
            }
        }
    }
    fs::remove_all(scratch);
    report("gatekeeping", rejected == total,
           std::to_string(rejected) + "/" + std::to_string(total) + " heuristic requests with non-time weights rejected",
           clock.seconds());
}

void determinism() {
    Stopwatch clock;
    const auto env = table1_environment();
    int identical = 0, total = 0;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto dag = generate_pattern(PatternKind::Hybrid, 20, seed);
        for (auto strategy : {OffloadingStrategy::EnergyOptimal, OffloadingStrategy::AllInEdge}) {
            const auto plan = offload(dag, env, strategy);
            for (auto kind : kAllSchedulers) {
                SchedulerConfig config{kind, {}, {}};
                config.pso.seed = seed;
                config.ga.seed = seed;
                config.pso.iterations = 40;
                config.ga.iterations = 40;
                auto once = [&] {
                    const auto a = schedule(dag, env, plan, config, Objectives{});
                    const auto r = simulate(dag, env, a, &plan);
                    return json{{"assignment", a}, {"schedule", r.schedule}, {"metrics", r.metrics}, {"devices", r.devices}}.dump();
                };
                ++total;
                identical += once() == once();
            }
        }
    }
    report("determinism", identical == total,
           std::to_string(identical) + "/" + std::to_string(total) + " repeated scheduler+simulation runs byte-identical",
           clock.seconds());
}

} // namespace

int main() {
    reference_table();
    oracle_suite();
    montage_trend();
    energy_accounting();
    builtin_tasks();
    end_to_end_cli();
    gatekeeping();
    determinism();
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
