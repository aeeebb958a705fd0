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

#include <charconv>
#include <optional>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "edgeflow/controller.hpp"
#include "edgeflow/error.hpp"
#include "edgeflow/serialize.hpp"

namespace edgeflow {

inline int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::PlanNotFound:
        case ErrorCode::RunNotFound: return 404;
        case ErrorCode::RunAlreadyActive:
        case ErrorCode::PlanNotSimulated:
        case ErrorCode::RunNotTerminal: return 409;
        case ErrorCode::StoreError:
        case ErrorCode::WorkerPoolUnavailable: return 500;
        default: return 400;
    }
}

inline json error_document(ErrorCode code, const std::string &message) {
    return json{{"error", to_string(code)}, {"message", message}};
}

/// HTTP front end of a Controller:
///   POST /plans                    plan request  -> plan document
///   POST /plans/{id}/simulate      [?seed=]      -> simulation document
///   POST /plans/{id}/execute                     -> {"run": id}
///   GET  /runs/{id}/events                       -> text/event-stream, one event per message
///   GET  /plans/{id}/report        [?run=]       -> report document
///   POST /compare                  compare request -> {"rows": [...]}
class HttpApi {
  public:
    explicit HttpApi(Controller &controller) : controller_(controller) { routes(); }

    httplib::Server &server() { return server_; }

    bool listen(const std::string &host, int port) { return server_.listen(host, port); }

    /// Binds an ephemeral port; call serve_bound() afterwards to start serving.
    int bind_any(const std::string &host) { return server_.bind_to_any_port(host); }
    bool serve_bound() { return server_.listen_after_bind(); }

    void stop() { server_.stop(); }

  private:
    template <typename Handler>
    static void guarded(httplib::Response &res, Handler &&handler) {
        try {
            handler();
        } catch (const Error &e) {
            res.status = http_status(e.code());
            res.set_content(error_document(e.code(), e.detail()).dump(), "application/json");
        } catch (const json::exception &e) {
            res.status = 400;
            res.set_content(error_document(ErrorCode::InvalidRequest, e.what()).dump(), "application/json");
        } catch (const std::exception &e) {
            res.status = 500;
            res.set_content(json{{"error", "Internal"}, {"message", e.what()}}.dump(), "application/json");
        }
    }

    static json parse_body(const httplib::Request &req) {
        try {
            return req.body.empty() ? json::object() : json::parse(req.body);
        } catch (const json::exception &e) {
            throw Error(ErrorCode::InvalidRequest, std::string("body is not JSON: ") + e.what());
        }
    }

    void routes() {
        server_.Post("/plans", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                const ExecutionPlan plan = controller_.build_plan(parse_body(req));
                json body = plan;
                body["plan"] = plan.id;
                res.status = 201;
                res.set_content(body.dump(), "application/json");
            });
        });

        server_.Post(R"(/plans/([^/]+)/simulate)", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                std::optional<std::uint64_t> seed;
                if (req.has_param("seed")) {
                    const std::string text = req.get_param_value("seed");
                    std::uint64_t value = 0;
                    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
                    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
                        throw Error(ErrorCode::InvalidRequest, "seed must be an unsigned integer");
                    seed = value;
                }
                const json body = controller_.simulate_plan(req.matches[1], seed);
                res.set_content(body.dump(), "application/json");
            });
        });

        server_.Post(R"(/plans/([^/]+)/execute)", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                const auto run = controller_.execute_plan_real(req.matches[1]);
                res.status = 202;
                res.set_content(json{{"run", run}}.dump(), "application/json");
            });
        });

        server_.Get(R"(/runs/([^/]+)/events)", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                const std::string run_id = req.matches[1];
                controller_.run_terminal(run_id); // RunNotFound before the stream starts
                res.set_header("Cache-Control", "no-cache");
                res.set_chunked_content_provider(
                    "text/event-stream", [this, run_id](std::size_t, httplib::DataSink &sink) {
                        controller_.stream_events(run_id, [&](const RunEvent &event) {
                            const std::string message = "data: " + json(event).dump() + "\n\n";
                            return sink.write(message.data(), message.size());
                        });
                        sink.done();
                        return true;
                    });
            });
        });

        server_.Get(R"(/plans/([^/]+)/report)", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                std::optional<std::string> run;
                if (req.has_param("run") && !req.get_param_value("run").empty()) run = req.get_param_value("run");
                const json body = controller_.build_report(req.matches[1], run);
                res.set_content(body.dump(), "application/json");
            });
        });

        server_.Post("/compare", [this](const httplib::Request &req, httplib::Response &res) {
            guarded(res, [&] {
                const json body{{"rows", controller_.compare(parse_body(req))}};
                res.set_content(body.dump(), "application/json");
            });
        });
    }

    Controller &controller_;
    httplib::Server server_;
};

} // namespace edgeflow
