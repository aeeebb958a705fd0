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

#include <cstdint>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "edgeflow/error.hpp"
#include "edgeflow/workflow.hpp"

namespace edgeflow {

/// DAX runtimes are seconds on a reference node of this speed.
inline constexpr double kReferenceMips = 1000.0;

namespace detail {

inline double parse_decimal(const std::string &text, const std::string &what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception &) {
        throw Error(ErrorCode::MalformedXml, what + " is not a number: '" + text + "'");
    }
}

inline std::string xml_escape(const std::string &text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Parses the DAX subset: jobs with runtimes and `uses` files, plus child/parent dependencies.
inline WorkflowDag parse_dax(const std::string &xml_text, double reference_mips = kReferenceMips) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in(xml_text);
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error &e) {
        throw Error(ErrorCode::MalformedXml, "line " + std::to_string(e.line()) + ": " + e.message());
    }

    const auto root = tree.get_child_optional("adag");
    if (!root) throw Error(ErrorCode::MalformedXml, "missing <adag> root element");

    WorkflowDag dag;
    dag.name = root->get("<xmlattr>.name", std::string("dax"));

    // file name -> producing / consuming job ids, with sizes
    std::map<std::string, std::map<std::string, std::uint64_t>> outputs, inputs;
    std::unordered_map<std::string, std::size_t> index;

    for (const auto &[tag, node] : *root) {
        if (tag != "job") continue;
        const auto id = node.get_optional<std::string>("<xmlattr>.id");
        if (!id || id->empty()) throw Error(ErrorCode::MalformedXml, "<job> without id attribute");
        const auto runtime_text = node.get_optional<std::string>("<xmlattr>.runtime");
        if (!runtime_text) throw Error(ErrorCode::MalformedXml, "job '" + *id + "' has no runtime attribute");
        const double runtime = detail::parse_decimal(*runtime_text, "runtime of job '" + *id + "'");
        if (!(runtime > 0.0)) throw Error(ErrorCode::InvalidLength, "job '" + *id + "' has non-positive runtime");
        if (!index.emplace(*id, dag.tasks.size()).second)
            throw Error(ErrorCode::DuplicateTaskId, "duplicate job id '" + *id + "'");
        dag.tasks.push_back(TaskSpec{*id, node.get("<xmlattr>.name", *id), runtime * reference_mips, std::nullopt});

        for (const auto &[use_tag, use] : node) {
            if (use_tag != "uses") continue;
            const auto file = use.get("<xmlattr>.file", std::string());
            const auto link = use.get("<xmlattr>.link", std::string());
            const double size = detail::parse_decimal(use.get("<xmlattr>.size", std::string("0")),
                                                      "size of file '" + file + "'");
            if (size < 0) throw Error(ErrorCode::NegativeSize, "file '" + file + "' has negative size");
            const auto bytes = static_cast<std::uint64_t>(size);
            if (link == "output")
                outputs[file][*id] = bytes;
            else if (link == "input")
                inputs[file][*id] = bytes;
        }
    }

    std::set<std::pair<std::string, std::string>> dependencies;
    for (const auto &[tag, node] : *root) {
        if (tag != "child") continue;
        const auto child = node.get("<xmlattr>.ref", std::string());
        if (!index.contains(child)) throw Error(ErrorCode::UnknownJobReference, "child ref '" + child + "' names no job");
        for (const auto &[parent_tag, parent_node] : node) {
            if (parent_tag != "parent") continue;
            const auto parent = parent_node.get("<xmlattr>.ref", std::string());
            if (!index.contains(parent))
                throw Error(ErrorCode::UnknownJobReference, "parent ref '" + parent + "' names no job");
            if (parent == child) throw Error(ErrorCode::CyclicWorkflow, "job '" + child + "' depends on itself");
            dependencies.emplace(parent, child);
        }
    }

    // Edge payload = sizes of files the parent writes and the child reads.
    std::map<std::pair<std::string, std::string>, std::uint64_t> payload;
    for (const auto &[file, producers] : outputs) {
        const auto consumers = inputs.find(file);
        if (consumers == inputs.end()) continue;
        for (const auto &[producer, size] : producers)
            for (const auto &[consumer, consumed] : consumers->second)
                if (dependencies.contains({producer, consumer})) payload[{producer, consumer}] += std::max(size, consumed);
    }

    // Keep edges in document order of children for readability; dependencies set is sorted.
    for (const auto &[parent, child] : dependencies) {
        auto found = payload.find({parent, child});
        dag.edges.push_back(DataEdge{parent, child, found == payload.end() ? 0 : found->second});
    }

    validate(dag);
    return dag;
}

/// Writes `dag` in the DAX subset understood by parse_dax. Each edge becomes one file.
inline std::string to_dax(const WorkflowDag &dag, double reference_mips = kReferenceMips) {
    std::map<std::string, std::vector<const DataEdge *>> in_edges, out_edges, parents;
    for (const auto &edge : dag.edges) {
        out_edges[edge.parent].push_back(&edge);
        in_edges[edge.child].push_back(&edge);
        parents[edge.child].push_back(&edge);
    }
    auto file_of = [](const DataEdge &edge) { return edge.parent + "__" + edge.child + ".dat"; };

    std::ostringstream out;
    out << std::setprecision(17);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<adag name=\"" << detail::xml_escape(dag.name) << "\" jobCount=\"" << dag.tasks.size() << "\" childCount=\""
        << parents.size() << "\">\n";
    for (const auto &task : dag.tasks) {
        out << "  <job id=\"" << detail::xml_escape(task.id) << "\" name=\"" << detail::xml_escape(task.label)
            << "\" runtime=\"" << task.length / reference_mips << "\">\n";
        for (const auto *edge : in_edges[task.id])
            out << "    <uses file=\"" << detail::xml_escape(file_of(*edge)) << "\" link=\"input\" size=\"" << edge->bytes
                << "\"/>\n";
        for (const auto *edge : out_edges[task.id])
            out << "    <uses file=\"" << detail::xml_escape(file_of(*edge)) << "\" link=\"output\" size=\""
                << edge->bytes << "\"/>\n";
        out << "  </job>\n";
    }
    for (const auto &[child, edges] : parents) {
        out << "  <child ref=\"" << detail::xml_escape(child) << "\">\n";
        for (const auto *edge : edges) out << "    <parent ref=\"" << detail::xml_escape(edge->parent) << "\"/>\n";
        out << "  </child>\n";
    }
    out << "</adag>\n";
    return out.str();
}

} // namespace edgeflow
