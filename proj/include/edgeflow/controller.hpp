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
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "edgeflow/dax.hpp"
#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/executor.hpp"
#include "edgeflow/offloading.hpp"
#include "edgeflow/scheduling.hpp"
#include "edgeflow/serialize.hpp"
#include "edgeflow/simulation.hpp"
#include "edgeflow/store.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

inline constexpr std::uint64_t kDefaultPlanSeed = 1;

struct ExecutionPlan {
    std::string id;
    WorkflowDag workflow;
    Environment environment;
    OffloadingStrategy strategy = OffloadingStrategy::EnergyOptimal;
    SchedulerConfig scheduler;
    Objectives objectives;
    std::uint64_t seed = kDefaultPlanSeed;
    std::string created_at;
};

inline void to_json(json &j, const ExecutionPlan &p) {
    j = json{{"id", p.id},
             {"workflow", p.workflow},
             {"environment", p.environment},
             {"strategy", to_string(p.strategy)},
             {"scheduler", p.scheduler},
             {"objectives", p.objectives},
             {"seed", p.seed},
             {"created_at", p.created_at}};
}

inline void from_json(const json &j, ExecutionPlan &p) {
    p.id = j.at("id").get<std::string>();
    p.workflow = j.at("workflow").get<WorkflowDag>();
    p.environment = j.at("environment").get<Environment>();
    p.strategy = offloading_strategy_from_string(j.at("strategy").get<std::string>());
    p.scheduler = j.at("scheduler").get<SchedulerConfig>();
    p.objectives = j.at("objectives").get<Objectives>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.created_at = j.at("created_at").get<std::string>();
}

/// Persisted result of simulating a plan with one seed.
struct SimulationRecord {
    std::string plan_id;
    std::uint64_t seed = kDefaultPlanSeed;
    OffloadingPlan offloading;
    Schedule schedule;
    Metrics metrics;
    Metrics baseline; // FCFS under the same offloading plan
    std::vector<DeviceUsage> devices;
    DeadlineVerdict verdict = DeadlineVerdict::NoDeadline;
};

inline void to_json(json &j, const SimulationRecord &s) {
    j = json{{"plan", s.plan_id},       {"seed", s.seed},         {"offloading", s.offloading},
             {"schedule", s.schedule},  {"metrics", s.metrics},   {"baseline", s.baseline},
             {"devices", s.devices},    {"deadline_verdict", to_string(s.verdict)}};
}

inline DeadlineVerdict deadline_verdict_from_string(std::string_view name) {
    if (name == "Feasible") return DeadlineVerdict::Feasible;
    if (name == "Infeasible") return DeadlineVerdict::Infeasible;
    if (name == "NoDeadline") return DeadlineVerdict::NoDeadline;
    throw Error(ErrorCode::InvalidRequest, "unknown deadline verdict '" + std::string(name) + "'");
}

inline void from_json(const json &j, SimulationRecord &s) {
    s.plan_id = j.at("plan").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.offloading = j.at("offloading").get<OffloadingPlan>();
    s.schedule = j.at("schedule").get<Schedule>();
    s.metrics = j.at("metrics").get<Metrics>();
    s.baseline = j.at("baseline").get<Metrics>();
    s.devices = j.at("devices").get<std::vector<DeviceUsage>>();
    s.verdict = deadline_verdict_from_string(j.at("deadline_verdict").get<std::string>());
}

/// One row of the algorithm comparison (bar chart).
struct BarRow {
    std::string algorithm;
    double time = 0.0;
    double energy = 0.0;
    double cost = 0.0;
    double fitness = 0.0;
    std::vector<Metrics> runs; // one per seed for PSO/GA
};

inline void to_json(json &j, const BarRow &r) {
    j = json{{"algorithm", r.algorithm}, {"time", r.time},       {"energy", r.energy},
             {"cost", r.cost},           {"fitness", r.fitness}, {"runs", r.runs}};
}

inline void from_json(const json &j, BarRow &r) {
    r.algorithm = j.at("algorithm").get<std::string>();
    r.time = j.at("time").get<double>();
    r.energy = j.at("energy").get<double>();
    r.cost = j.at("cost").get<double>();
    r.fitness = j.at("fitness").get<double>();
    r.runs = detail::optional_field<std::vector<Metrics>>(j, "runs", {});
}

struct LinePoint {
    std::string task;
    double simulated = 0.0;
    std::optional<double> real;
};

inline void to_json(json &j, const LinePoint &p) {
    j = json{{"task", p.task}, {"simulated", p.simulated}};
    j["real"] = p.real ? json(*p.real) : json(nullptr);
}

/// Payload behind the four charts of a plan.
struct Report {
    std::string plan_id;
    std::optional<std::string> run_id;
    std::vector<BarRow> bar;
    std::map<std::string, std::size_t> pie;
    std::vector<LinePoint> line;
    std::vector<GanttEntry> gantt;
    Metrics metrics;
    DeadlineVerdict verdict = DeadlineVerdict::NoDeadline;
    std::optional<RunOutcome> outcome;
};

inline void to_json(json &j, const Report &r) {
    j = json{{"plan", r.plan_id}, {"bar", r.bar},         {"pie", r.pie},
             {"line", r.line},    {"gantt", r.gantt},     {"metrics", r.metrics},
             {"deadline_verdict", to_string(r.verdict)}};
    j["run"] = r.run_id ? json(*r.run_id) : json(nullptr);
    j["outcome"] = r.outcome ? json(to_string(*r.outcome)) : json(nullptr);
}

inline double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

/// Runs offload + schedule + simulate for every algorithm; PSO/GA rows hold the
/// per-metric median over `seeds`.
inline std::vector<BarRow> compare_algorithms(const WorkflowDag &dag, const Environment &env,
                                              OffloadingStrategy strategy, const Objectives &objectives,
                                              const std::vector<SchedulerConfig> &algorithms,
                                              const std::vector<std::uint64_t> &seeds) {
    validate_objectives(objectives);
    for (const auto &config : algorithms) check_scheduler_objectives(config.kind, objectives);
    const OffloadingPlan plan = offload(dag, env, strategy);
    SimulationModel model(dag, env);
    SearchSpace space(model, plan);
    const Metrics baseline = model.evaluate(fcfs_nodes(space));
    const std::vector<std::uint64_t> seed_list = seeds.empty() ? std::vector<std::uint64_t>{kDefaultPlanSeed} : seeds;

    std::vector<BarRow> rows;
    for (const auto &algorithm : algorithms) {
        BarRow row;
        row.algorithm = std::string(to_string(algorithm.kind));
        if (is_heuristic(algorithm.kind)) {
            const Metrics m = model.evaluate(schedule_nodes(space, algorithm, objectives));
            row.runs.push_back(m);
        } else {
            for (std::uint64_t seed : seed_list) {
                SchedulerConfig seeded = algorithm;
                seeded.pso.seed = seed;
                seeded.ga.seed = seed;
                row.runs.push_back(model.evaluate(schedule_nodes(space, seeded, objectives)));
            }
        }
        std::vector<double> time, energy, cost, fit;
        for (const auto &m : row.runs) {
            time.push_back(m.makespan);
            energy.push_back(m.energy);
            cost.push_back(m.cost);
            fit.push_back(weighted_fitness(m, objectives, baseline));
        }
        row.time = median(time);
        row.energy = median(energy);
        row.cost = median(cost);
        row.fitness = median(fit);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct ControllerOptions {
    std::filesystem::path store;
    CalibrationConfig calibration;
    TaskRunner runner; // empty: built-in tasks
};

/// Composes parsing, offloading, scheduling, simulation and real execution; owns
/// the persistent store and the live event logs of real runs.
class Controller {
  public:
    explicit Controller(ControllerOptions options) : options_(std::move(options)), store_(options_.store) {}

    Controller(const Controller &) = delete;
    Controller &operator=(const Controller &) = delete;

    ~Controller() {
        std::vector<std::shared_ptr<LiveRun>> runs;
        {
            std::lock_guard lock(mutex_);
            for (auto &[id, run] : runs_) runs.push_back(run);
        }
        for (auto &run : runs)
            if (run->thread.joinable()) run->thread.join();
    }

    RunStore &store() { return store_; }

    // --- plans ---------------------------------------------------------------

    /// Materializes a plan request document (workflow source, environment config,
    /// strategy, scheduler, objectives, seed) and persists it.
    ExecutionPlan build_plan(const json &request) {
        if (!request.is_object()) throw Error(ErrorCode::InvalidRequest, "plan request must be an object");
        ExecutionPlan plan;
        plan.workflow = materialize_workflow(request.contains("workflow") ? request.at("workflow") : json());
        validate(plan.workflow);
        const auto binding = detail::optional_field<std::string>(request, "binding", "pi");
        plan.workflow = bind_tasks(std::move(plan.workflow), builtin_kind_from_string(binding), options_.calibration);
        plan.environment = environment_from_config(request.contains("environment") ? request.at("environment") : json());
        plan.strategy = offloading_strategy_from_string(detail::optional_field<std::string>(request, "strategy", "energy-optimal"));
        plan.scheduler = request.contains("scheduler") ? request.at("scheduler").get<SchedulerConfig>() : SchedulerConfig{};
        plan.objectives = request.contains("objectives") ? request.at("objectives").get<Objectives>() : Objectives{};
        check_scheduler_objectives(plan.scheduler.kind, plan.objectives);
        plan.seed = detail::optional_field<std::uint64_t>(request, "seed", kDefaultPlanSeed);
        plan.created_at = utc_now();
        plan.id = store_.allocate_id("plan");
        store_.put("plans", plan.id, plan);
        return plan;
    }

    ExecutionPlan load_plan(const std::string &plan_id) const {
        auto document = store_.get("plans", plan_id);
        if (!document) throw Error(ErrorCode::PlanNotFound, "no plan '" + plan_id + "'");
        return document->get<ExecutionPlan>();
    }

    // --- simulation ----------------------------------------------------------

    /// offload -> schedule -> simulate -> deadline check, persisted per (plan, seed).
    /// A stored result is returned unchanged on repeat calls.
    SimulationRecord simulate_plan(const std::string &plan_id, std::optional<std::uint64_t> seed = std::nullopt) {
        const ExecutionPlan plan = load_plan(plan_id);
        const std::uint64_t used_seed = seed.value_or(plan.seed);
        const std::string key = simulation_key(plan_id, used_seed);
        if (auto stored = store_.get("simulations", key)) {
            store_.set_meta("latest_simulation", plan_id, key);
            return stored->get<SimulationRecord>();
        }

        SimulationRecord record;
        record.plan_id = plan_id;
        record.seed = used_seed;
        record.offloading = offload(plan.workflow, plan.environment, plan.strategy);
        SimulationModel model(plan.workflow, plan.environment);
        SearchSpace space(model, record.offloading);
        SchedulerConfig config = plan.scheduler;
        config.pso.seed = used_seed;
        config.ga.seed = used_seed;
        const auto nodes = schedule_nodes(space, config, plan.objectives);
        auto result = model.run(nodes);
        record.schedule = std::move(result.schedule);
        record.metrics = result.metrics;
        record.devices = std::move(result.devices);
        record.baseline = model.evaluate(fcfs_nodes(space));
        record.verdict = check_deadline(record.metrics, plan.objectives);

        store_.put("simulations", key, record);
        store_.set_meta("latest_simulation", plan_id, key);
        return store_.get("simulations", key)->get<SimulationRecord>();
    }

    std::optional<SimulationRecord> latest_simulation(const std::string &plan_id) const {
        auto key = store_.meta("latest_simulation", plan_id);
        if (!key) return std::nullopt;
        auto document = store_.get("simulations", key->get<std::string>());
        if (!document) return std::nullopt;
        return document->get<SimulationRecord>();
    }

    // --- real runs -----------------------------------------------------------

    /// Starts an asynchronous real run of the latest simulated schedule.
    std::string execute_plan_real(const std::string &plan_id) {
        const ExecutionPlan plan = load_plan(plan_id);
        auto simulation = latest_simulation(plan_id);
        if (!simulation) throw Error(ErrorCode::PlanNotSimulated, "plan '" + plan_id + "' has not been simulated");
        for (const auto &task : plan.workflow.tasks)
            if (!task.binding || task.binding->kind == BuiltinKind::SimulatedOnly)
                throw Error(ErrorCode::UnboundTask, "task '" + task.id + "' is not bound to a built-in task");

        std::lock_guard lock(mutex_);
        if (auto active = active_by_plan_.find(plan_id); active != active_by_plan_.end())
            throw Error(ErrorCode::RunAlreadyActive, "plan '" + plan_id + "' already runs as '" + active->second + "'");

        const std::string run_id = store_.allocate_id("run");
        auto run = std::make_shared<LiveRun>();
        run->plan_id = plan_id;
        runs_[run_id] = run;
        active_by_plan_[plan_id] = run_id;

        run->thread = std::thread([this, run, run_id, plan, schedule = simulation->schedule] {
            ExecutionOptions exec;
            exec.run_id = run_id;
            exec.plan_id = plan.id;
            exec.calibration = options_.calibration;
            exec.runner = options_.runner;
            RunRecord record;
            try {
                record = execute_plan(plan.workflow, plan.environment, schedule, exec,
                                      [&](const RunEvent &event) { run->append(event); });
            } catch (const std::exception &) {
                record.run_id = run_id;
                record.plan_id = plan.id;
                record.events = run->snapshot();
                record.outcome = RunOutcome::Failed;
            }
            store_.put("runs", run_id, record);
            {
                std::lock_guard guard(mutex_);
                active_by_plan_.erase(plan.id);
            }
            run->finish();
        });
        return run_id;
    }

    /// Blocks until the run is terminal and returns its persisted record.
    RunRecord wait_run(const std::string &run_id) {
        stream_events(run_id, [](const RunEvent &) { return true; });
        auto document = store_.get("runs", run_id);
        if (!document) throw Error(ErrorCode::RunNotFound, "no run '" + run_id + "'");
        return document->get<RunRecord>();
    }

    bool run_terminal(const std::string &run_id) const {
        if (auto run = live_run(run_id)) return run->terminal();
        if (store_.contains("runs", run_id)) return true;
        throw Error(ErrorCode::RunNotFound, "no run '" + run_id + "'");
    }

    /// Replays every event logged so far, then follows live events until the run
    /// is terminal. `on_event` returning false stops early.
    void stream_events(const std::string &run_id, const std::function<bool(const RunEvent &)> &on_event) const {
        if (auto run = live_run(run_id)) {
            run->follow(on_event);
            return;
        }
        auto document = store_.get("runs", run_id);
        if (!document) throw Error(ErrorCode::RunNotFound, "no run '" + run_id + "'");
        for (const auto &event : document->get<RunRecord>().events)
            if (!on_event(event)) return;
    }

    // --- reports -------------------------------------------------------------

    Report build_report(const std::string &plan_id, const std::optional<std::string> &run_id = std::nullopt) {
        const ExecutionPlan plan = load_plan(plan_id);
        auto simulation = latest_simulation(plan_id);
        if (!simulation) throw Error(ErrorCode::PlanNotSimulated, "plan '" + plan_id + "' has not been simulated");

        Report report;
        report.plan_id = plan_id;
        report.metrics = simulation->metrics;
        report.verdict = simulation->verdict;
        report.gantt = simulation->schedule.entries;
        report.pie = assignment_breakdown(simulation->schedule);

        std::optional<RunRecord> record;
        if (run_id) {
            if (!run_terminal(*run_id)) throw Error(ErrorCode::RunNotTerminal, "run '" + *run_id + "' is still active");
            auto document = store_.get("runs", *run_id);
            if (!document) throw Error(ErrorCode::RunNotFound, "no run '" + *run_id + "'");
            record = document->get<RunRecord>();
            if (record->plan_id != plan_id)
                throw Error(ErrorCode::InvalidRequest, "run '" + *run_id + "' belongs to plan '" + record->plan_id + "'");
            report.run_id = run_id;
            report.outcome = record->outcome;
        }
        for (const auto &entry : simulation->schedule.entries) {
            LinePoint point{entry.task, entry.finish - entry.start, std::nullopt};
            if (record)
                if (auto real = record->real_durations.find(entry.task); real != record->real_durations.end())
                    point.real = real->second;
            report.line.push_back(point);
        }

        std::optional<json> sweep;
        if (auto key = store_.meta("latest_comparison", plan_id)) sweep = store_.get("comparisons", key->get<std::string>());
        if (sweep) {
            report.bar = sweep->at("rows").get<std::vector<BarRow>>();
        } else {
            BarRow own;
            own.algorithm = std::string(to_string(plan.scheduler.kind));
            own.time = simulation->metrics.makespan;
            own.energy = simulation->metrics.energy;
            own.cost = simulation->metrics.cost;
            own.fitness = weighted_fitness(simulation->metrics, plan.objectives, simulation->baseline);
            own.runs.push_back(simulation->metrics);
            report.bar.push_back(own);
        }
        return report;
    }

    /// Comparison sweep over a stored plan's workflow and environment; the result
    /// feeds the plan's bar chart.
    std::vector<BarRow> compare_plan(const std::string &plan_id, const std::vector<SchedulerConfig> &algorithms,
                                     const std::vector<std::uint64_t> &seeds) {
        const ExecutionPlan plan = load_plan(plan_id);
        auto rows = compare_algorithms(plan.workflow, plan.environment, plan.strategy, plan.objectives, algorithms, seeds);
        const std::string key = store_.allocate_id("comparison");
        store_.put("comparisons", key, json{{"plan", plan_id}, {"seeds", seeds}, {"rows", rows}});
        store_.set_meta("latest_comparison", plan_id, key);
        return store_.get("comparisons", key)->at("rows").get<std::vector<BarRow>>();
    }

    /// Handles a compare request document: either {"plan": id, ...} or an inline
    /// plan request, plus optional "algorithms" and "seeds".
    std::vector<BarRow> compare(const json &request) {
        std::vector<SchedulerConfig> algorithms;
        if (request.contains("algorithms")) {
            for (const auto &entry : request.at("algorithms")) algorithms.push_back(entry.get<SchedulerConfig>());
        } else {
            for (SchedulerKind kind : kAllSchedulers) algorithms.push_back(SchedulerConfig{kind, {}, {}});
        }
        const auto seeds = detail::optional_field<std::vector<std::uint64_t>>(request, "seeds", {kDefaultPlanSeed});
        if (request.contains("plan")) return compare_plan(request.at("plan").get<std::string>(), algorithms, seeds);

        WorkflowDag dag = materialize_workflow(request.contains("workflow") ? request.at("workflow") : json());
        const Environment env = environment_from_config(request.contains("environment") ? request.at("environment") : json());
        const auto strategy =
            offloading_strategy_from_string(detail::optional_field<std::string>(request, "strategy", "energy-optimal"));
        const Objectives objectives = request.contains("objectives") ? request.at("objectives").get<Objectives>() : Objectives{};
        return compare_algorithms(dag, env, strategy, objectives, algorithms, seeds);
    }

    /// Workflow source: {"template": "montage", "width"} | {"template": "sequential"
    /// | "parallel" | "hybrid", "count", "seed"} | {"dax": xml} | {"dag": document}.
    static WorkflowDag materialize_workflow(const json &source) {
        if (!source.is_object()) throw Error(ErrorCode::InvalidRequest, "plan request needs a workflow source");
        if (source.contains("dax")) return parse_dax(source.at("dax").get<std::string>());
        if (source.contains("dag")) {
            WorkflowDag dag = source.at("dag").get<WorkflowDag>();
            validate(dag);
            return dag;
        }
        const auto name = detail::required<std::string>(source, "template");
        if (name == "montage")
            return generate_montage(detail::required<int>(source, "width"),
                                    detail::optional_field<double>(source, "length_profile", 1.0),
                                    detail::optional_field<double>(source, "data_profile", 1.0));
        return generate_pattern(pattern_kind_from_string(name), detail::required<int>(source, "count"),
                                detail::optional_field<std::uint64_t>(source, "seed", 0));
    }

  private:
    /// Single-writer, multi-reader event log of one real run.
    struct LiveRun {
        std::string plan_id;
        std::thread thread;
        mutable std::mutex mutex;
        mutable std::condition_variable changed;
        std::vector<RunEvent> events;
        bool done = false;

        void append(const RunEvent &event) {
            {
                std::lock_guard lock(mutex);
                events.push_back(event);
            }
            changed.notify_all();
        }

        void finish() {
            {
                std::lock_guard lock(mutex);
                done = true;
            }
            changed.notify_all();
        }

        bool terminal() const {
            std::lock_guard lock(mutex);
            return done;
        }

        std::vector<RunEvent> snapshot() const {
            std::lock_guard lock(mutex);
            return events;
        }

        void follow(const std::function<bool(const RunEvent &)> &on_event) const {
            std::size_t next = 0;
            while (true) {
                std::vector<RunEvent> batch;
                bool finished = false;
                {
                    std::unique_lock lock(mutex);
                    changed.wait(lock, [&] { return next < events.size() || done; });
                    batch.assign(events.begin() + static_cast<std::ptrdiff_t>(next), events.end());
                    next = events.size();
                    finished = done;
                }
                for (const auto &event : batch)
                    if (!on_event(event)) return;
                // finish() follows the last append, so the batch was complete.
                if (finished) return;
            }
        }
    };

    std::shared_ptr<LiveRun> live_run(const std::string &run_id) const {
        std::lock_guard lock(mutex_);
        auto it = runs_.find(run_id);
        return it == runs_.end() ? nullptr : it->second;
    }

    static std::string simulation_key(const std::string &plan_id, std::uint64_t seed) {
        return plan_id + "-s" + std::to_string(seed);
    }

    static std::string utc_now() {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buffer[32];
        std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
        return buffer;
    }

    ControllerOptions options_;
    RunStore store_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<LiveRun>> runs_;
    std::map<std::string, std::string> active_by_plan_;
};

} // namespace edgeflow
