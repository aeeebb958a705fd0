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

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgeflow {

enum class ErrorCode {
    MalformedXml,
    UnknownJobReference,
    CyclicWorkflow,
    NegativeSize,
    InvalidLength,
    DuplicateTaskId,
    InvalidEdge,
    InvalidWidth,
    InvalidCount,
    InvalidEnvironment,
    MissingLink,
    EmptyTier,
    InconsistentAssignment,
    IncompatibleObjective,
    InvalidObjectives,
    InvalidParams,
    SearchSpaceTooLarge,
    UnboundTask,
    TaskPanic,
    WorkerPoolUnavailable,
    PlanNotFound,
    PlanNotSimulated,
    RunAlreadyActive,
    RunNotFound,
    RunNotTerminal,
    InvalidRequest,
    StoreError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedXml: return "MalformedXml";
        case ErrorCode::UnknownJobReference: return "UnknownJobReference";
        case ErrorCode::CyclicWorkflow: return "CyclicWorkflow";
        case ErrorCode::NegativeSize: return "NegativeSize";
        case ErrorCode::InvalidLength: return "InvalidLength";
        case ErrorCode::DuplicateTaskId: return "DuplicateTaskId";
        case ErrorCode::InvalidEdge: return "InvalidEdge";
        case ErrorCode::InvalidWidth: return "InvalidWidth";
        case ErrorCode::InvalidCount: return "InvalidCount";
        case ErrorCode::InvalidEnvironment: return "InvalidEnvironment";
        case ErrorCode::MissingLink: return "MissingLink";
        case ErrorCode::EmptyTier: return "EmptyTier";
        case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
        case ErrorCode::IncompatibleObjective: return "IncompatibleObjective";
        case ErrorCode::InvalidObjectives: return "InvalidObjectives";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::UnboundTask: return "UnboundTask";
        case ErrorCode::TaskPanic: return "TaskPanic";
        case ErrorCode::WorkerPoolUnavailable: return "WorkerPoolUnavailable";
        case ErrorCode::PlanNotFound: return "PlanNotFound";
        case ErrorCode::PlanNotSimulated: return "PlanNotSimulated";
        case ErrorCode::RunAlreadyActive: return "RunAlreadyActive";
        case ErrorCode::RunNotFound: return "RunNotFound";
        case ErrorCode::RunNotTerminal: return "RunNotTerminal";
        case ErrorCode::InvalidRequest: return "InvalidRequest";
        case ErrorCode::StoreError: return "StoreError";
    }
    return "Unknown";
}

/// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string &detail() const noexcept { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace edgeflow
