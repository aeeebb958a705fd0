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

// Headless command line front end: plan, simulate, run, report, compare, serve.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgeflow/edgeflow.hpp"
#include "edgeflow/http_api.hpp"

namespace {

using edgeflow::json;

std::string env_or(const char *name, const std::string &fallback) {
    const char *value = std::getenv(name);
    return value && *value ? value : fallback;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw edgeflow::Error(edgeflow::ErrorCode::InvalidRequest, "cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

json read_json(const std::string &path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::exception &e) {
        throw edgeflow::Error(edgeflow::ErrorCode::InvalidRequest, path + ": " + e.what());
    }
}

void emit(const json &document, const std::string &out) {
    const std::string text = document.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw edgeflow::Error(edgeflow::ErrorCode::InvalidRequest, "cannot write '" + out + "'");
    file << text;
}

/// Flags shared by `plan` and `compare` that describe a plan request.
struct PlanFlags {
    std::string request_file;
    std::string workflow = "montage";
    int width = 5;
    int count = 10;
    std::uint64_t workflow_seed = 0;
    std::string dax_file;
    std::string binding = "pi";
    std::string environment_file;
    std::string device_size = "medium", edge_size = "medium", cloud_size = "medium";
    int device_count = 2, edge_count = 2, cloud_count = 2;
    std::string strategy = "energy-optimal";
    std::string scheduler = "ga";
    double w_time = 1.0, w_energy = 0.0, w_cost = 0.0;
    std::optional<double> deadline;
    std::uint64_t seed = edgeflow::kDefaultPlanSeed;

    void attach(CLI::App &app) {
        app.add_option("--request", request_file, "Plan request document (JSON); other plan flags are ignored");
        app.add_option("--workflow", workflow, "montage | sequential | parallel | hybrid | dax");
        app.add_option("--width", width, "Montage width (tasks = 3 * width + 5)");
        app.add_option("--count", count, "Task count for sequential/parallel/hybrid");
        app.add_option("--workflow-seed", workflow_seed, "Seed of the hybrid generator");
        app.add_option("--dax", dax_file, "DAX file (with --workflow dax)");
        app.add_option("--binding", binding, "Built-in task for unbound tasks: pi | kmp | levenshtein | selection-sort | simulated-only");
        app.add_option("--environment", environment_file, "Environment config document (JSON)");
        app.add_option("--device-size", device_size, "small | medium | large");
        app.add_option("--edge-size", edge_size, "small | medium | large");
        app.add_option("--cloud-size", cloud_size, "small | medium | large");
        app.add_option("--device-count", device_count);
        app.add_option("--edge-count", edge_count);
        app.add_option("--cloud-count", cloud_count);
        app.add_option("--strategy", strategy, "energy-optimal | all-in-edge | all-in-cloud");
        app.add_option("--scheduler", scheduler, "fcfs | round-robin | min-min | max-min | pso | ga");
        app.add_option("--w-time", w_time);
        app.add_option("--w-energy", w_energy);
        app.add_option("--w-cost", w_cost);
        app.add_option("--deadline", deadline, "Deadline in seconds");
        app.add_option("--seed", seed, "Plan seed for PSO/GA");
    }

    json request() const {
        if (!request_file.empty()) return read_json(request_file);
        json source;
        if (workflow == "montage")
            source = {{"template", "montage"}, {"width", width}};
        else if (workflow == "dax")
            source = {{"dax", read_text(dax_file)}};
        else
            source = {{"template", workflow}, {"count", count}, {"seed", workflow_seed}};
        json environment = environment_file.empty()
                               ? json{{"sizes", {{"device", device_size}, {"edge", edge_size}, {"cloud", cloud_size}}},
                                      {"counts", {{"device", device_count}, {"edge", edge_count}, {"cloud", cloud_count}}}}
                               : read_json(environment_file);
        json objectives{{"w_time", w_time}, {"w_energy", w_energy}, {"w_cost", w_cost}};
        objectives["deadline"] = deadline ? json(*deadline) : json(nullptr);
        return json{{"workflow", source},   {"binding", binding},       {"environment", environment},
                    {"strategy", strategy}, {"scheduler", scheduler},   {"objectives", objectives},
                    {"seed", seed}};
    }
};

int fail(edgeflow::ErrorCode code, const std::string &message) {
    std::cerr << edgeflow::error_document(code, message).dump() << "\n";
    return 10 + static_cast<int>(code);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"edgeflow: edge workflow planning, simulation and execution"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string store = env_or("EDGEFLOW_STORE", "edgeflow-store");
    std::string out;
    app.add_option("--store", store, "Run store directory (env EDGEFLOW_STORE)");
    app.add_option("--out", out, "Write the result document to this file instead of stdout");

    PlanFlags plan_flags;
    auto *plan_cmd = app.add_subcommand("plan", "Build and persist an execution plan");
    plan_flags.attach(*plan_cmd);

    std::string plan_id;
    std::optional<std::uint64_t> sim_seed;
    auto *simulate_cmd = app.add_subcommand("simulate", "Simulate a plan");
    simulate_cmd->add_option("--plan", plan_id)->required();
    simulate_cmd->add_option("--seed", sim_seed, "Override the plan seed");

    bool follow = false;
    auto *run_cmd = app.add_subcommand("run", "Execute a simulated plan for real and wait for it");
    run_cmd->add_option("--plan", plan_id)->required();
    run_cmd->add_flag("--follow", follow, "Print every event as a JSON line on stderr while running");

    std::string run_id;
    auto *report_cmd = app.add_subcommand("report", "Build the chart report of a plan");
    report_cmd->add_option("--plan", plan_id)->required();
    report_cmd->add_option("--run", run_id, "Include real durations from this run");

    PlanFlags compare_flags;
    std::vector<std::string> algorithms;
    std::vector<std::uint64_t> seeds;
    auto *compare_cmd = app.add_subcommand("compare", "Compare scheduling algorithms (bar chart data)");
    compare_flags.attach(*compare_cmd);
    compare_cmd->add_option("--plan", plan_id, "Compare on a stored plan and attach the result to it");
    compare_cmd->add_option("--algorithms", algorithms, "Subset of schedulers (default: all six)")->delimiter(',');
    compare_cmd->add_option("--seeds", seeds, "Seeds for PSO/GA (median reported)")->delimiter(',');

    std::string host = "0.0.0.0";
    int port = std::stoi(env_or("EDGEFLOW_PORT", "8080"));
    auto *serve_cmd = app.add_subcommand("serve", "Serve the HTTP API (port from EDGEFLOW_PORT)");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port);

    CLI11_PARSE(app, argc, argv);

    try {
        edgeflow::Controller controller(edgeflow::ControllerOptions{store, {}, {}});
        if (*plan_cmd) {
            const auto plan = controller.build_plan(plan_flags.request());
            json document = plan;
            document["plan"] = plan.id;
            emit(document, out);
        } else if (*simulate_cmd) {
            emit(controller.simulate_plan(plan_id, sim_seed), out);
        } else if (*run_cmd) {
            const auto id = controller.execute_plan_real(plan_id);
            if (follow)
                controller.stream_events(id, [](const edgeflow::RunEvent &event) {
                    std::cerr << json(event).dump() << "\n";
                    return true;
                });
            const auto record = controller.wait_run(id);
            emit(record, out);
            if (record.outcome != edgeflow::RunOutcome::Succeeded)
                return fail(edgeflow::ErrorCode::TaskPanic, "run " + id + " ended " + std::string(to_string(record.outcome)));
        } else if (*report_cmd) {
            std::optional<std::string> run;
            if (!run_id.empty()) run = run_id;
            emit(controller.build_report(plan_id, run), out);
        } else if (*compare_cmd) {
            json request = plan_id.empty() ? compare_flags.request() : json{{"plan", plan_id}};
            if (!algorithms.empty()) request["algorithms"] = algorithms;
            if (!seeds.empty()) request["seeds"] = seeds;
            emit(json{{"rows", controller.compare(request)}}, out);
        } else if (*serve_cmd) {
            edgeflow::HttpApi api(controller);
            std::cerr << "edgeflow listening on " << host << ":" << port << "\n";
            if (!api.listen(host, port)) return fail(edgeflow::ErrorCode::InvalidRequest, "cannot listen on port " + std::to_string(port));
        }
    } catch (const edgeflow::Error &e) {
        return fail(e.code(), e.detail());
    } catch (const std::exception &e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
