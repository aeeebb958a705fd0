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
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgeflow/binding.hpp"
#include "edgeflow/error.hpp"

namespace edgeflow {

/// Nilakantha series 3 + 4/(2*3*4) - 4/(4*5*6) + ... truncated after `terms` terms
/// (the leading 3 counts as the first). Alternating, so the error is below the
/// first omitted term.
inline double pi_series(std::uint64_t terms) {
    if (terms == 0) return 0.0;
    double sum = 3.0;
    double sign = 1.0;
    for (std::uint64_t k = 1; k < terms; ++k) {
        const double a = 2.0 * static_cast<double>(k);
        sum += sign * 4.0 / (a * (a + 1.0) * (a + 2.0));
        sign = -sign;
    }
    return sum;
}

/// All (possibly overlapping) match positions of `pattern` in `text`.
inline std::vector<std::size_t> kmp_search(std::string_view text, std::string_view pattern) {
    std::vector<std::size_t> matches;
    if (pattern.empty() || pattern.size() > text.size()) return matches;
    std::vector<std::size_t> failure(pattern.size(), 0);
    for (std::size_t i = 1, k = 0; i < pattern.size(); ++i) {
        while (k > 0 && pattern[i] != pattern[k]) k = failure[k - 1];
        if (pattern[i] == pattern[k]) ++k;
        failure[i] = k;
    }
    for (std::size_t i = 0, k = 0; i < text.size(); ++i) {
        while (k > 0 && text[i] != pattern[k]) k = failure[k - 1];
        if (text[i] == pattern[k]) ++k;
        if (k == pattern.size()) {
            matches.push_back(i + 1 - k);
            k = failure[k - 1];
        }
    }
    return matches;
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> previous(b.size() + 1), current(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) previous[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        current[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t substitute = previous[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            current[j] = std::min({previous[j] + 1, current[j - 1] + 1, substitute});
        }
        std::swap(previous, current);
    }
    return previous[b.size()];
}

template <typename T>
void selection_sort(std::span<T> values) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        std::size_t smallest = i;
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[j] < values[smallest]) smallest = j;
        if (smallest != i) std::swap(values[i], values[smallest]);
    }
}

// Seeded inputs for the built-in tasks.

inline std::string seeded_text(std::uint64_t seed, std::size_t length, std::string_view alphabet) {
    std::mt19937_64 rng(seed);
    std::string text(length, ' ');
    for (auto &c : text) c = alphabet[rng() % alphabet.size()];
    return text;
}

inline std::vector<std::int64_t> seeded_array(std::uint64_t seed, std::size_t length) {
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> values(length);
    for (auto &v : values) v = static_cast<std::int64_t>(rng() % 1'000'000'007ULL);
    return values;
}

inline constexpr std::string_view kKmpAlphabet = "ab";
inline constexpr std::string_view kLevenshteinAlphabet = "ACGT";

struct BuiltinResult {
    BuiltinKind kind = BuiltinKind::SimulatedOnly;
    double value = 0.0;        // pi estimate, match count, edit distance, or array length
    std::uint64_t digest = 0;  // stable digest of the full output
    std::string summary;
};

namespace detail {

inline std::uint64_t mix_digest(std::uint64_t hash, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        hash ^= (value >> (8 * byte)) & 0xffU;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace detail

/// Runs one built-in computing task on its seeded inputs. Any failure, including a
/// failed self-check, surfaces as TaskPanic.
inline BuiltinResult run_builtin(const TaskBinding &binding) {
    const auto &p = binding.params;
    BuiltinResult result;
    result.kind = binding.kind;
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    try {
        switch (binding.kind) {
            case BuiltinKind::PiCalculation: {
                if (p.terms == 0) throw Error(ErrorCode::TaskPanic, "pi task needs terms >= 1");
                result.value = pi_series(p.terms);
                if (std::abs(result.value - std::numbers::pi) > 1.0 / (2.0 * static_cast<double>(p.terms) + 1.0))
                    throw Error(ErrorCode::TaskPanic, "pi estimate outside the series bound");
                digest = detail::mix_digest(digest, std::bit_cast<std::uint64_t>(result.value));
                result.summary = "pi ~= " + std::to_string(result.value);
                break;
            }
            case BuiltinKind::KmpMatch: {
                if (p.text_length == 0 || p.pattern_length == 0)
                    throw Error(ErrorCode::TaskPanic, "kmp task needs text and pattern lengths >= 1");
                const auto text = seeded_text(p.seed, p.text_length, kKmpAlphabet);
                const auto pattern = seeded_text(p.seed ^ 0x9e3779b97f4a7c15ULL, p.pattern_length, kKmpAlphabet);
                const auto matches = kmp_search(text, pattern);
                for (std::size_t position : matches) digest = detail::mix_digest(digest, position);
                result.value = static_cast<double>(matches.size());
                result.summary = std::to_string(matches.size()) + " matches";
                break;
            }
            case BuiltinKind::LevenshteinDistance: {
                if (p.string_length == 0) throw Error(ErrorCode::TaskPanic, "levenshtein task needs string length >= 1");
                const auto a = seeded_text(p.seed, p.string_length, kLevenshteinAlphabet);
                const auto b = seeded_text(p.seed + 1, p.string_length, kLevenshteinAlphabet);
                const auto distance = levenshtein(a, b);
                digest = detail::mix_digest(digest, distance);
                result.value = static_cast<double>(distance);
                result.summary = "distance " + std::to_string(distance);
                break;
            }
            case BuiltinKind::SelectionSort: {
                if (p.array_length == 0) throw Error(ErrorCode::TaskPanic, "sort task needs array length >= 1");
                auto values = seeded_array(p.seed, p.array_length);
                selection_sort(std::span<std::int64_t>(values));
                if (!std::is_sorted(values.begin(), values.end()))
                    throw Error(ErrorCode::TaskPanic, "selection sort produced unsorted output");
                for (auto v : values) digest = detail::mix_digest(digest, static_cast<std::uint64_t>(v));
                result.value = static_cast<double>(values.size());
                result.summary = "sorted " + std::to_string(values.size()) + " values";
                break;
            }
            case BuiltinKind::SimulatedOnly:
                throw Error(ErrorCode::UnboundTask, "simulated-only tasks cannot run for real");
        }
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw Error(ErrorCode::TaskPanic, e.what());
    }
    result.digest = digest;
    return result;
}

} // namespace edgeflow
