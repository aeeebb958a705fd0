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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "edgeflow/error.hpp"

namespace edgeflow {

/// Built-in computing tasks a workflow task can be bound to.
enum class BuiltinKind { PiCalculation, KmpMatch, LevenshteinDistance, SelectionSort, SimulatedOnly };

inline std::string_view to_string(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::PiCalculation: return "pi";
        case BuiltinKind::KmpMatch: return "kmp";
        case BuiltinKind::LevenshteinDistance: return "levenshtein";
        case BuiltinKind::SelectionSort: return "selection-sort";
        case BuiltinKind::SimulatedOnly: return "simulated-only";
    }
    return "unknown";
}

inline BuiltinKind builtin_kind_from_string(std::string_view name) {
    if (name == "pi") return BuiltinKind::PiCalculation;
    if (name == "kmp") return BuiltinKind::KmpMatch;
    if (name == "levenshtein") return BuiltinKind::LevenshteinDistance;
    if (name == "selection-sort") return BuiltinKind::SelectionSort;
    if (name == "simulated-only") return BuiltinKind::SimulatedOnly;
    throw Error(ErrorCode::InvalidRequest, "unknown binding kind '" + std::string(name) + "'");
}

/// Kind-specific workload parameters. Only the fields relevant to the kind are read;
/// a zero workload field means "derive from the task length".
struct BindingParams {
    std::uint64_t terms = 0;          // PiCalculation
    std::uint64_t text_length = 0;    // KmpMatch
    std::uint64_t pattern_length = 0; // KmpMatch
    std::uint64_t string_length = 0;  // LevenshteinDistance
    std::uint64_t array_length = 0;   // SelectionSort
    std::uint64_t seed = 0;

    friend bool operator==(const BindingParams &, const BindingParams &) = default;
};

struct TaskBinding {
    BuiltinKind kind = BuiltinKind::SimulatedOnly;
    BindingParams params;

    friend bool operator==(const TaskBinding &, const TaskBinding &) = default;
};

/// Maps abstract task length (MI) onto built-in workload sizes.
struct CalibrationConfig {
    double pi_terms_per_mi = 10'000.0;
    std::uint64_t pi_terms_cap = UINT64_MAX;
    double kmp_chars_per_mi = 1'000.0;
    std::uint64_t kmp_text_cap = 10'000'000;
    std::uint64_t kmp_pattern_length = 8;
    double levenshtein_sqrt_factor = 10.0;
    std::uint64_t levenshtein_cap = 20'000;
    double sort_elements_per_mi = 50.0;
    std::uint64_t sort_cap = 50'000;
};

namespace detail {

inline std::uint64_t scaled_count(double value, std::uint64_t cap) {
    if (!(value >= 1.0)) return 1;
    if (value >= static_cast<double>(cap)) return std::max<std::uint64_t>(cap, 1);
    return std::max<std::uint64_t>(static_cast<std::uint64_t>(std::llround(value)), 1);
}

} // namespace detail

inline BindingParams calibrate(double length_mi, BuiltinKind kind, const CalibrationConfig &config = {}) {
    if (!(length_mi > 0.0)) throw Error(ErrorCode::InvalidLength, "calibration needs a positive task length");
    BindingParams params;
    switch (kind) {
        case BuiltinKind::PiCalculation:
            params.terms = detail::scaled_count(length_mi * config.pi_terms_per_mi, config.pi_terms_cap);
            break;
        case BuiltinKind::KmpMatch:
            params.text_length = detail::scaled_count(length_mi * config.kmp_chars_per_mi, config.kmp_text_cap);
            params.pattern_length = std::max<std::uint64_t>(config.kmp_pattern_length, 1);
            break;
        case BuiltinKind::LevenshteinDistance:
            params.string_length =
                detail::scaled_count(config.levenshtein_sqrt_factor * std::sqrt(length_mi), config.levenshtein_cap);
            break;
        case BuiltinKind::SelectionSort:
            params.array_length = detail::scaled_count(length_mi * config.sort_elements_per_mi, config.sort_cap);
            break;
        case BuiltinKind::SimulatedOnly:
            break;
    }
    return params;
}

/// Fills any zero workload field of `binding` from the task length.
inline TaskBinding complete_binding(TaskBinding binding, double length_mi, const CalibrationConfig &config = {}) {
    const BindingParams derived = calibrate(length_mi, binding.kind, config);
    auto fill = [](std::uint64_t &field, std::uint64_t value) {
        if (field == 0) field = value;
    };
    fill(binding.params.terms, derived.terms);
    fill(binding.params.text_length, derived.text_length);
    fill(binding.params.pattern_length, derived.pattern_length);
    fill(binding.params.string_length, derived.string_length);
    fill(binding.params.array_length, derived.array_length);
    return binding;
}

/// 64-bit FNV-1a, used to derive stable per-task input seeds.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace edgeflow
