// Copyright 2026 The QNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qnc/network.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace qnc {

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Source:
            return "source";
        case NodeKind::Sink:
            return "sink";
        case NodeKind::Internal:
            break;
    }
    return "internal";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    if (text == "source") {
        return NodeKind::Source;
    }
    if (text == "sink") {
        return NodeKind::Sink;
    }
    if (text == "internal") {
        return NodeKind::Internal;
    }
    return std::nullopt;
}

std::string ValidationReport::str() const {
    std::ostringstream out;
    for (const auto &v : violations) {
        out << v.code << " at " << v.where << ": " << v.message << "\n";
    }
    return out.str();
}

InvalidInstance::InvalidInstance(const ValidationReport &report)
    : std::runtime_error("invalid network instance:\n" + report.str()), report_(report) {
}

namespace {

struct Adjacency {
    std::map<std::string, std::size_t> by_id;
    std::vector<std::vector<std::size_t>> in;
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> edge_ok;
};

Adjacency build_adjacency(const Network &net, ValidationReport *report) {
    Adjacency adj;
    adj.in.resize(net.nodes.size());
    adj.out.resize(net.nodes.size());
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        auto [it, inserted] = adj.by_id.emplace(net.nodes[v].id, v);
        if (!inserted && report != nullptr) {
            report->violations.push_back(
                {"duplicate-node", "node " + net.nodes[v].id, "node id appears more than once"});
        }
    }
    adj.edge_ok.assign(net.edges.size(), false);
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        const Edge &edge = net.edges[e];
        auto from = adj.by_id.find(edge.from);
        auto to = adj.by_id.find(edge.to);
        if (from == adj.by_id.end() || to == adj.by_id.end()) {
            if (report != nullptr) {
                report->violations.push_back({"dangling-edge", "edge " + std::to_string(e),
                                              "edge " + edge.from + " -> " + edge.to +
                                                  " references an unknown node"});
            }
            continue;
        }
        adj.edge_ok[e] = true;
        adj.out[from->second].push_back(e);
        adj.in[to->second].push_back(e);
    }
    return adj;
}

// Kahn's algorithm; ready nodes leave in lexicographic id order.
std::vector<std::size_t> kahn_order(const Network &net, const Adjacency &adj) {
    std::vector<std::size_t> indeg(net.nodes.size());
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        indeg[v] = adj.in[v].size();
    }
    using Item = std::pair<std::string, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        if (indeg[v] == 0) {
            ready.emplace(net.nodes[v].id, v);
        }
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto [id, v] = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t e : adj.out[v]) {
            std::size_t w = adj.by_id.at(net.edges[e].to);
            if (--indeg[w] == 0) {
                ready.emplace(net.nodes[w].id, w);
            }
        }
    }
    return order;
}

void check_output_op(const std::string &node_id, std::size_t indeg, const OutputOp &op,
                     std::vector<bool> &used, ValidationReport &report) {
    std::string where = "node " + node_id + " out " + std::to_string(op.out);
    if (op.terms.empty()) {
        report.violations.push_back({"op-no-terms", where, "output has no terms"});
    }
    std::set<int> seen;
    for (const Term &term : op.terms) {
        if (term.in < 0 || static_cast<std::size_t>(term.in) >= indeg) {
            report.violations.push_back({"dangling-edge-index", where,
                                         "term references incoming edge " + std::to_string(term.in) +
                                             " but node has indegree " + std::to_string(indeg)});
            continue;
        }
        if (!seen.insert(term.in).second) {
            report.violations.push_back(
                {"op-duplicate-input", where, "incoming edge " + std::to_string(term.in) + " used twice"});
        }
        used[term.in] = true;
        if (term.map.classify() == MapClass::Invalid) {
            std::set<unsigned> image;
            for (Letter x : term.map.table()) {
                image.insert(x.value());
            }
            report.violations.push_back(
                {"illegal-map", where,
                 "map on input " + std::to_string(term.in) + " has image size " + std::to_string(image.size()) +
                     "; only constant, one-to-one and two-to-one maps are allowed"});
        }
    }
}

}  // namespace

ValidationReport validate_network(const Network &net, const ClassicalProtocol &proto) {
    ValidationReport report;
    Adjacency adj = build_adjacency(net, &report);

    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        const Node &node = net.nodes[v];
        if (adj.by_id.at(node.id) != v) {
            continue;
        }
        std::string where = "node " + node.id;
        std::size_t indeg = adj.in[v].size();
        std::size_t outdeg = adj.out[v].size();
        switch (node.kind) {
            case NodeKind::Source:
                if (indeg > 0) {
                    report.violations.push_back({"source-indegree", where, "source has indegree > 0"});
                }
                if (outdeg == 0) {
                    report.violations.push_back({"source-outdegree", where, "source has no outgoing edge"});
                }
                break;
            case NodeKind::Sink:
                if (outdeg > 0) {
                    report.violations.push_back({"sink-outdegree", where, "sink has outdegree > 0"});
                }
                if (indeg == 0) {
                    report.violations.push_back({"sink-indegree", where, "sink has no incoming edge"});
                }
                break;
            case NodeKind::Internal:
                if (indeg == 0 || outdeg == 0) {
                    report.violations.push_back(
                        {"internal-degree", where, "internal node needs at least one incoming and one outgoing edge"});
                }
                break;
        }
    }

    std::vector<std::size_t> order = kahn_order(net, adj);
    if (order.size() != net.nodes.size()) {
        std::vector<bool> done(net.nodes.size(), false);
        for (std::size_t v : order) {
            done[v] = true;
        }
        std::string members;
        for (std::size_t v = 0; v < net.nodes.size(); ++v) {
            if (!done[v]) {
                members += (members.empty() ? "" : ", ") + net.nodes[v].id;
            }
        }
        report.violations.push_back({"cycle", "nodes " + members, "graph contains a directed cycle"});
    }

    std::set<std::string> required;
    for (const Requirement &req : net.requirements) {
        std::string where = "requirement " + req.sink + " <- " + req.source;
        auto sink = adj.by_id.find(req.sink);
        auto source = adj.by_id.find(req.source);
        if (sink == adj.by_id.end() || net.nodes[sink->second].kind != NodeKind::Sink) {
            report.violations.push_back({"requirement-sink", where, "'" + req.sink + "' is not a sink"});
        } else if (!required.insert(req.sink).second) {
            report.violations.push_back({"requirement-duplicate", where, "sink has more than one requirement"});
        }
        if (source == adj.by_id.end() || net.nodes[source->second].kind != NodeKind::Source) {
            report.violations.push_back({"requirement-source", where, "'" + req.source + "' is not a source"});
        }
    }
    for (const Node &node : net.nodes) {
        if (node.kind == NodeKind::Sink && !required.contains(node.id)) {
            report.violations.push_back({"missing-requirement", "node " + node.id, "missing σ entry for sink"});
        }
    }

    for (const auto &[id, outputs] : proto.ops) {
        auto it = adj.by_id.find(id);
        if (it == adj.by_id.end()) {
            report.violations.push_back({"op-unknown-node", "node " + id, "operation given for unknown node"});
            continue;
        }
        if (net.nodes[it->second].kind == NodeKind::Source) {
            report.violations.push_back({"op-on-source", "node " + id, "sources pass their input through unchanged"});
        }
    }

    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        const Node &node = net.nodes[v];
        if (node.kind == NodeKind::Source || adj.by_id.at(node.id) != v) {
            continue;
        }
        std::size_t indeg = adj.in[v].size();
        std::size_t slots = node.kind == NodeKind::Sink ? 1 : adj.out[v].size();
        auto found = proto.ops.find(node.id);
        std::string where = "node " + node.id;
        if (found == proto.ops.end() || found->second.empty()) {
            if (node.kind == NodeKind::Sink && indeg <= 1) {
                continue;
            }
            if (slots > 0 && indeg > 0) {
                report.violations.push_back({"op-missing", where, "no operation given"});
            }
            continue;
        }
        std::vector<bool> covered(slots, false);
        std::vector<bool> used(indeg, false);
        for (const OutputOp &op : found->second) {
            if (op.out < 0 || static_cast<std::size_t>(op.out) >= slots) {
                report.violations.push_back({"op-out-range", where,
                                             "output index " + std::to_string(op.out) + " but node has " +
                                                 std::to_string(slots) + " output slot(s)"});
                continue;
            }
            if (covered[op.out]) {
                report.violations.push_back(
                    {"op-out-duplicate", where, "output " + std::to_string(op.out) + " has more than one operation"});
                continue;
            }
            covered[op.out] = true;
            check_output_op(node.id, indeg, op, used, report);
        }
        for (std::size_t j = 0; j < slots; ++j) {
            if (!covered[j]) {
                report.violations.push_back(
                    {"op-missing", where, "output " + std::to_string(j) + " has no operation"});
            }
        }
        for (std::size_t i = 0; i < indeg; ++i) {
            if (!used[i]) {
                report.violations.push_back({"input-unused", where,
                                             "incoming edge " + std::to_string(i) +
                                                 " is not used by any output (use a constant map instead)"});
            }
        }
    }
    return report;
}

NetworkIndex::NetworkIndex(const Network &net, const ClassicalProtocol &proto) : net_(net), proto_(proto) {
    ValidationReport report = validate_network(net_, proto_);
    if (!report.ok()) {
        throw InvalidInstance(report);
    }
    Adjacency adj = build_adjacency(net_, nullptr);
    by_id_ = std::move(adj.by_id);
    in_ = std::move(adj.in);
    out_ = std::move(adj.out);
    // build_adjacency appends edges in id order, so the lists are already sorted.
    edge_ends_.reserve(net_.edges.size());
    for (const Edge &edge : net_.edges) {
        edge_ends_.emplace_back(by_id_.at(edge.from), by_id_.at(edge.to));
    }
    Adjacency again{by_id_, in_, out_, {}};
    topo_ = kahn_order(net_, again);

    std::map<std::string, std::size_t> source_pos;
    for (std::size_t v = 0; v < net_.nodes.size(); ++v) {
        if (net_.nodes[v].kind == NodeKind::Source) {
            source_pos[net_.nodes[v].id] = sources_.size();
            sources_.push_back(v);
        } else if (net_.nodes[v].kind == NodeKind::Sink) {
            sinks_.push_back(v);
        }
    }
    std::map<std::string, std::string> req;
    for (const Requirement &r : net_.requirements) {
        req[r.sink] = r.source;
    }
    for (std::size_t t : sinks_) {
        sink_source_.push_back(source_pos.at(req.at(net_.nodes[t].id)));
    }

    ops_.resize(net_.nodes.size());
    for (std::size_t v = 0; v < net_.nodes.size(); ++v) {
        const Node &node = net_.nodes[v];
        if (node.kind == NodeKind::Source) {
            continue;
        }
        std::size_t slots = node.kind == NodeKind::Sink ? 1 : out_[v].size();
        ops_[v].resize(slots);
        auto found = proto_.ops.find(node.id);
        if (found != proto_.ops.end()) {
            for (const OutputOp &op : found->second) {
                ops_[v][op.out] = op;
            }
        }
    }
}

std::size_t NetworkIndex::node_of(const std::string &id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        throw std::out_of_range("unknown node '" + id + "'");
    }
    return it->second;
}

const OutputOp *NetworkIndex::op(std::size_t v, int out) const {
    if (out < 0 || static_cast<std::size_t>(out) >= ops_[v].size() || !ops_[v][out]) {
        return nullptr;
    }
    return &*ops_[v][out];
}

Letter apply_output(GroupKind group, const OutputOp &op, const std::vector<Letter> &inputs) {
    Letter sum(0);
    for (const Term &term : op.terms) {
        sum = add(group, sum, term.map(inputs.at(term.in)));
    }
    return sum;
}

}  // namespace qnc
