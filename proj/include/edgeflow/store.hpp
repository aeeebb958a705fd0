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

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgeflow/error.hpp"

namespace edgeflow {

/// Append-only document store: one JSON file per entity under `<root>/<kind>/`,
/// plus `<root>/index.json` holding id counters, per-kind id lists and small
/// metadata maps. Documents are never rewritten once stored.
class RunStore {
  public:
    using json = nlohmann::json;

    explicit RunStore(std::filesystem::path root) : root_(std::move(root)) {
        std::error_code ec;
        std::filesystem::create_directories(root_, ec);
        if (ec) throw Error(ErrorCode::StoreError, "cannot create store at " + root_.string() + ": " + ec.message());
        index_ = read_file(index_path()).value_or(json{{"counters", json::object()}, {"ids", json::object()},
                                                       {"meta", json::object()}});
    }

    const std::filesystem::path &root() const { return root_; }

    /// Next id of the form `<prefix>-0001`.
    std::string allocate_id(const std::string &prefix) {
        std::lock_guard lock(mutex_);
        refresh();
        const auto next = index_["counters"].value(prefix, 0) + 1;
        index_["counters"][prefix] = next;
        write_index();
        std::string digits = std::to_string(next);
        if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
        return prefix + "-" + digits;
    }

    /// Stores a document. Returns false (and keeps the original) if it already exists.
    bool put(const std::string &kind, const std::string &id, const json &document) {
        std::lock_guard lock(mutex_);
        const auto path = document_path(kind, id);
        if (std::filesystem::exists(path)) return false;
        std::filesystem::create_directories(path.parent_path());
        write_file(path, document);
        refresh();
        index_["ids"][kind].push_back(id);
        write_index();
        return true;
    }

    std::optional<json> get(const std::string &kind, const std::string &id) const {
        std::lock_guard lock(mutex_);
        return read_file(document_path(kind, id));
    }

    bool contains(const std::string &kind, const std::string &id) const {
        std::lock_guard lock(mutex_);
        return std::filesystem::exists(document_path(kind, id));
    }

    /// Raw stored bytes of a document.
    std::optional<std::string> raw(const std::string &kind, const std::string &id) const {
        std::lock_guard lock(mutex_);
        std::ifstream in(document_path(kind, id), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }

    std::vector<std::string> list(const std::string &kind) const {
        std::lock_guard lock(mutex_);
        std::vector<std::string> ids;
        if (index_["ids"].contains(kind))
            for (const auto &id : index_["ids"][kind]) ids.push_back(id.get<std::string>());
        return ids;
    }

    void set_meta(const std::string &table, const std::string &key, const json &value) {
        std::lock_guard lock(mutex_);
        refresh();
        index_["meta"][table][key] = value;
        write_index();
    }

    std::optional<json> meta(const std::string &table, const std::string &key) const {
        std::lock_guard lock(mutex_);
        const auto &meta = index_["meta"];
        if (!meta.contains(table) || !meta[table].contains(key)) return std::nullopt;
        return std::optional<json>(std::in_place, meta[table][key]);
    }

    static std::string dump(const json &document) { return document.dump(2) + "\n"; }

  private:
    std::filesystem::path index_path() const { return root_ / "index.json"; }

    std::filesystem::path document_path(const std::string &kind, const std::string &id) const {
        if (id.empty() || id.find('/') != std::string::npos || id.find("..") != std::string::npos)
            throw Error(ErrorCode::StoreError, "invalid document id '" + id + "'");
        return root_ / kind / (id + ".json");
    }

    // Another process may have written the index since we loaded it.
    void refresh() {
        if (auto latest = read_file(index_path())) index_ = *latest;
    }

    void write_index() { write_file(index_path(), index_); }

    static std::optional<json> read_file(const std::filesystem::path &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        try {
            return json::parse(in);
        } catch (const json::exception &e) {
            throw Error(ErrorCode::StoreError, "corrupt document " + path.string() + ": " + e.what());
        }
    }

    static void write_file(const std::filesystem::path &path, const json &document) {
        const auto temporary = path.string() + ".tmp";
        {
            std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(ErrorCode::StoreError, "cannot write " + temporary);
            out << dump(document);
        }
        std::error_code ec;
        std::filesystem::rename(temporary, path, ec);
        if (ec) throw Error(ErrorCode::StoreError, "cannot move " + temporary + ": " + ec.message());
    }

    std::filesystem::path root_;
    mutable std::mutex mutex_;
    json index_;
};

} // namespace edgeflow
