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
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <unordered_map>
#include <vector>

#include "edgeflow/binding.hpp"
#include "edgeflow/builtins.hpp"
#include "edgeflow/environment.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/simulation.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

enum class TaskStatus { Standby, Running, Completed, Failed };

inline std::string_view to_string(TaskStatus status) {
    switch (status) {
        case TaskStatus::Standby: return "Standby";
        case TaskStatus::Running: return "Running";
        case TaskStatus::Completed: return "Completed";
        case TaskStatus::Failed: return "Failed";
    }
    return "Unknown";
}

inline TaskStatus task_status_from_string(std::string_view name) {
    if (name == "Standby") return TaskStatus::Standby;
    if (name == "Running") return TaskStatus::Running;
    if (name == "Completed") return TaskStatus::Completed;
    if (name == "Failed") return TaskStatus::Failed;
    throw Error(ErrorCode::InvalidRequest, "unknown task status '" + std::string(name) + "'");
}

/// Standby -> Running -> {Completed, Failed}; nothing else.
inline bool is_legal_transition(TaskStatus from, TaskStatus to) {
    return (from == TaskStatus::Standby && to == TaskStatus::Running) ||
           (from == TaskStatus::Running && (to == TaskStatus::Completed || to == TaskStatus::Failed));
}

struct RunEvent {
    std::string run_id;
    std::string task;
    TaskStatus status = TaskStatus::Standby;
    double timestamp = 0.0; // seconds since the run started, monotonic
    std::optional<std::string> detail;

    friend bool operator==(const RunEvent &, const RunEvent &) = default;
};

enum class RunOutcome { Succeeded, Failed, Aborted };

inline std::string_view to_string(RunOutcome outcome) {
    switch (outcome) {
        case RunOutcome::Succeeded: return "Succeeded";
        case RunOutcome::Failed: return "Failed";
        case RunOutcome::Aborted: return "Aborted";
    }
    return "Unknown";
}

inline RunOutcome run_outcome_from_string(std::string_view name) {
    if (name == "Succeeded") return RunOutcome::Succeeded;
    if (name == "Failed") return RunOutcome::Failed;
    if (name == "Aborted") return RunOutcome::Aborted;
    throw Error(ErrorCode::InvalidRequest, "unknown run outcome '" + std::string(name) + "'");
}

struct RunRecord {
    std::string run_id;
    std::string plan_id;
    std::vector<RunEvent> events;
    std::map<std::string, double> real_durations;
    std::map<std::string, std::uint64_t> digests;
    RunOutcome outcome = RunOutcome::Succeeded;

    friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

using EventSink = std::function<void(const RunEvent &)>;
using TaskRunner = std::function<BuiltinResult(const TaskSpec &, const TaskBinding &)>;

struct ExecutionOptions {
    std::string run_id = "run";
    std::string plan_id;
    CalibrationConfig calibration;
    TaskRunner runner; // defaults to the built-in tasks
    std::stop_token stop;
};

namespace detail {

/// One emulated node: runs whatever task the coordinator hands it, one at a time.
class WorkerSlot {
  public:
    struct Completion {
        std::size_t task;
        bool ok;
        double seconds;
        std::string detail;
        std::uint64_t digest;
    };

    using Report = std::function<void(Completion)>;
    using Job = std::function<Completion()>;

    explicit WorkerSlot(Report report)
        : report_(std::move(report)), thread_([this](std::stop_token stop) { loop(stop); }) {}

    WorkerSlot(const WorkerSlot &) = delete;
    WorkerSlot &operator=(const WorkerSlot &) = delete;

    ~WorkerSlot() {
        thread_.request_stop();
        wake_.notify_all();
    }

    void submit(Job job) {
        {
            std::lock_guard lock(mutex_);
            job_ = std::move(job);
        }
        wake_.notify_all();
    }

  private:
    void loop(std::stop_token stop) {
        while (true) {
            Job job;
            {
                std::unique_lock lock(mutex_);
                wake_.wait(lock, stop, [&] { return static_cast<bool>(job_); });
                if (!job_) return;
                job = std::move(job_);
                job_ = nullptr;
            }
            report_(job());
        }
    }

    Report report_;
    std::mutex mutex_;
    std::condition_variable_any wake_;
    Job job_;
    std::jthread thread_;
};

} // namespace detail

/// Runs every task of `dag` for real, one worker slot per environment node. Each slot
/// follows the schedule's per-node order; a task starts once its parents completed and
/// its slot is free. A failure strands every descendant in Standby.
inline RunRecord execute_plan(const WorkflowDag &dag, const Environment &env, const Schedule &schedule,
                              const ExecutionOptions &options, const EventSink &sink = {}) {
    const std::size_t n = dag.tasks.size();
    std::unordered_map<std::string, std::size_t> task_index;
    for (std::size_t t = 0; t < n; ++t) {
        const auto &task = dag.tasks[t];
        if (!task.binding || task.binding->kind == BuiltinKind::SimulatedOnly)
            throw Error(ErrorCode::UnboundTask, "task '" + task.id + "' is not bound to a built-in task");
        task_index.emplace(task.id, t);
    }
    const auto order = validate(dag);

    // Per-node queues in schedule order.
    std::vector<std::size_t> node_of(n, env.nodes.size());
    std::vector<std::deque<std::size_t>> queues(env.nodes.size());
    {
        std::vector<const GanttEntry *> entries;
        for (const auto &entry : schedule.entries) entries.push_back(&entry);
        std::stable_sort(entries.begin(), entries.end(),
                         [](const GanttEntry *a, const GanttEntry *b) { return a->start < b->start; });
        for (const auto *entry : entries) {
            auto t = task_index.find(entry->task);
            auto node = env.find(entry->node);
            if (t == task_index.end() || !node)
                throw Error(ErrorCode::InconsistentAssignment, "schedule entry for '" + entry->task + "' does not fit");
            if (node_of[t->second] != env.nodes.size())
                throw Error(ErrorCode::InconsistentAssignment, "task '" + entry->task + "' scheduled twice");
            node_of[t->second] = *node;
            queues[*node].push_back(t->second);
        }
        for (std::size_t t = 0; t < n; ++t)
            if (node_of[t] == env.nodes.size())
                throw Error(ErrorCode::InconsistentAssignment, "task '" + dag.tasks[t].id + "' missing from schedule");
    }

    std::vector<std::vector<std::size_t>> parents(n), children(n);
    for (const auto &edge : dag.edges) {
        parents[task_index.at(edge.child)].push_back(task_index.at(edge.parent));
        children[task_index.at(edge.parent)].push_back(task_index.at(edge.child));
    }

    RunRecord record;
    record.run_id = options.run_id;
    record.plan_id = options.plan_id;
    const auto started = std::chrono::steady_clock::now();
    auto emit = [&](std::size_t task, TaskStatus status, std::optional<std::string> detail = std::nullopt) {
        const double now = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        RunEvent event{options.run_id, dag.tasks[task].id, status, now, std::move(detail)};
        record.events.push_back(event);
        if (sink) sink(event);
    };

    TaskRunner runner = options.runner;
    if (!runner) {
        runner = [calibration = options.calibration](const TaskSpec &task, const TaskBinding &binding) {
            return run_builtin(complete_binding(binding, task.length, calibration));
        };
    }

    std::mutex inbox_mutex;
    std::condition_variable inbox_ready;
    std::deque<detail::WorkerSlot::Completion> inbox;
    std::vector<std::unique_ptr<detail::WorkerSlot>> slots;
    try {
        for (std::size_t k = 0; k < env.nodes.size(); ++k) {
            slots.push_back(std::make_unique<detail::WorkerSlot>([&](detail::WorkerSlot::Completion done) {
                {
                    std::lock_guard lock(inbox_mutex);
                    inbox.push_back(std::move(done));
                }
                inbox_ready.notify_one();
            }));
        }
    } catch (const std::system_error &e) {
        throw Error(ErrorCode::WorkerPoolUnavailable, e.what());
    }

    for (const auto &id : order) emit(task_index.at(id), TaskStatus::Standby);

    enum class State { Waiting, Running, Completed, Failed, Stranded };
    std::vector<State> state(n, State::Waiting);
    std::vector<bool> slot_busy(env.nodes.size(), false);
    std::size_t running = 0;
    bool failed = false;

    auto strand_descendants = [&](std::size_t root) {
        std::vector<std::size_t> stack(children[root].begin(), children[root].end());
        while (!stack.empty()) {
            const std::size_t t = stack.back();
            stack.pop_back();
            if (state[t] != State::Waiting) continue;
            state[t] = State::Stranded;
            stack.insert(stack.end(), children[t].begin(), children[t].end());
        }
    };

    auto dispatch = [&] {
        if (options.stop.stop_requested()) return;
        for (std::size_t node = 0; node < queues.size(); ++node) {
            if (slot_busy[node]) continue;
            auto &queue = queues[node];
            while (!queue.empty() && state[queue.front()] == State::Stranded) queue.pop_front();
            if (queue.empty()) continue;
            const std::size_t t = queue.front();
            const bool ready = std::all_of(parents[t].begin(), parents[t].end(),
                                           [&](std::size_t p) { return state[p] == State::Completed; });
            if (!ready) continue;
            queue.pop_front();
            state[t] = State::Running;
            slot_busy[node] = true;
            ++running;
            emit(t, TaskStatus::Running, env.nodes[node].id);
            const TaskSpec &task = dag.tasks[t];
            slots[node]->submit([&runner, &task, t] {
                const auto begin = std::chrono::steady_clock::now();
                detail::WorkerSlot::Completion done{t, true, 0.0, {}, 0};
                try {
                    const BuiltinResult result = runner(task, *task.binding);
                    done.detail = result.summary;
                    done.digest = result.digest;
                } catch (const std::exception &e) {
                    done.ok = false;
                    done.detail = e.what();
                }
                done.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
                return done;
            });
        }
    };

    dispatch();
    while (running > 0) {
        detail::WorkerSlot::Completion done;
        {
            std::unique_lock lock(inbox_mutex);
            inbox_ready.wait(lock, [&] { return !inbox.empty(); });
            done = std::move(inbox.front());
            inbox.pop_front();
        }
        --running;
        slot_busy[node_of[done.task]] = false;
        record.real_durations[dag.tasks[done.task].id] = done.seconds;
        if (done.ok) {
            state[done.task] = State::Completed;
            record.digests[dag.tasks[done.task].id] = done.digest;
            emit(done.task, TaskStatus::Completed, done.detail);
        } else {
            state[done.task] = State::Failed;
            failed = true;
            emit(done.task, TaskStatus::Failed, done.detail);
            strand_descendants(done.task);
        }
        dispatch();
    }
    slots.clear();

    const bool all_done = std::all_of(state.begin(), state.end(), [](State s) { return s == State::Completed; });
    if (all_done)
        record.outcome = RunOutcome::Succeeded;
    else if (failed)
        record.outcome = RunOutcome::Failed;
    else if (options.stop.stop_requested())
        record.outcome = RunOutcome::Aborted;
    else
        throw Error(ErrorCode::InconsistentAssignment, "schedule order deadlocks against workflow dependencies");
    return record;
}

} // namespace edgeflow
