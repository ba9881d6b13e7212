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


#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include "qnc/d3.hpp"

namespace qnc {

std::string to_string(NodeRole role) {
    switch (role) {
        case NodeRole::Source:
            return "source";
        case NodeRole::Sink:
            return "sink";
        case NodeRole::Fork:
            return "fork";
        case NodeRole::Join:
            return "join";
        case NodeRole::Transform:
            break;
    }
    return "transform";
}

std::size_t D3Network::node_of(const std::string &id) const {
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (nodes[v].id == id) {
            return v;
        }
    }
    throw std::out_of_range("unknown node '" + id + "'");
}

ValidationReport validate_d3(const D3Network &d3) {
    ValidationReport report;
    auto expect = [](NodeRole role) -> std::pair<std::size_t, std::size_t> {
        switch (role) {
            case NodeRole::Source:
                return {0, 1};
            case NodeRole::Sink:
                return {1, 0};
            case NodeRole::Fork:
                return {1, 2};
            case NodeRole::Join:
                return {2, 1};
            case NodeRole::Transform:
                break;
        }
        return {1, 1};
    };
    std::set<std::string> ids;
    std::vector<std::size_t> indeg(d3.nodes.size()), outdeg(d3.nodes.size());
    for (std::size_t e = 0; e < d3.edges.size(); ++e) {
        const D3Edge &edge = d3.edges[e];
        if (edge.from >= d3.nodes.size() || edge.to >= d3.nodes.size()) {
            report.violations.push_back({"dangling-edge", "edge " + std::to_string(e), "endpoint out of range"});
            continue;
        }
        ++outdeg[edge.from];
        ++indeg[edge.to];
    }
    for (std::size_t v = 0; v < d3.nodes.size(); ++v) {
        const D3Node &node = d3.nodes[v];
        std::string where = "node " + node.id;
        if (!ids.insert(node.id).second) {
            report.violations.push_back({"duplicate-node", where, "node id appears more than once"});
        }
        auto [want_in, want_out] = expect(node.role);
        if (indeg[v] != want_in || outdeg[v] != want_out || node.in.size() != want_in ||
            node.out.size() != want_out) {
            report.violations.push_back({"role-degree", where,
                                         to_string(node.role) + " needs degree (" + std::to_string(want_in) + "," +
                                             std::to_string(want_out) + ") but has (" + std::to_string(indeg[v]) +
                                             "," + std::to_string(outdeg[v]) + ")"});
        }
        for (std::size_t e : node.in) {
            if (e >= d3.edges.size() || d3.edges[e].to != v) {
                report.violations.push_back({"adjacency", where, "incoming edge list disagrees with edges"});
            }
        }
        for (std::size_t e : node.out) {
            if (e >= d3.edges.size() || d3.edges[e].from != v) {
                report.violations.push_back({"adjacency", where, "outgoing edge list disagrees with edges"});
            }
        }
        if (node.role == NodeRole::Transform && node.map.classify() == MapClass::Invalid) {
            report.violations.push_back({"illegal-map", where, "transform map is not constant/one-to-one/two-to-one"});
        }
    }
    // acyclicity
    std::vector<std::size_t> pending = indeg;
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < d3.nodes.size(); ++v) {
        if (pending[v] == 0) {
            stack.push_back(v);
        }
    }
    std::size_t seen = 0;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        ++seen;
        for (std::size_t e = 0; e < d3.edges.size(); ++e) {
            if (d3.edges[e].from == v && d3.edges[e].to < d3.nodes.size() && --pending[d3.edges[e].to] == 0) {
                stack.push_back(d3.edges[e].to);
            }
        }
    }
    if (seen != d3.nodes.size()) {
        report.violations.push_back({"cycle", "graph", "graph contains a directed cycle"});
    }
    for (std::size_t s : d3.sources) {
        if (s >= d3.nodes.size() || d3.nodes[s].role != NodeRole::Source) {
            report.violations.push_back({"source-list", "sources", "entry is not a source node"});
        }
    }
    for (std::size_t t : d3.sinks) {
        if (t >= d3.nodes.size() || d3.nodes[t].role != NodeRole::Sink) {
            report.violations.push_back({"sink-list", "sinks", "entry is not a sink node"});
        }
    }
    std::size_t n_sources = 0, n_sinks = 0;
    for (const D3Node &node : d3.nodes) {
        n_sources += node.role == NodeRole::Source;
        n_sinks += node.role == NodeRole::Sink;
    }
    if (n_sources != d3.sources.size() || n_sinks != d3.sinks.size()) {
        report.violations.push_back({"terminal-list", "graph", "source/sink lists do not cover every terminal"});
    }
    if (d3.sink_source.size() != d3.sinks.size()) {
        report.violations.push_back({"missing-requirement", "graph", "every sink needs a required source"});
    }
    for (std::size_t s : d3.sink_source) {
        if (s >= d3.sources.size()) {
            report.violations.push_back({"requirement-source", "graph", "required source out of range"});
        }
    }
    return report;
}

namespace {

constexpr std::size_t kUnattached = std::numeric_limits<std::size_t>::max();

class Builder {
   public:
    D3Network d3;
    std::vector<std::size_t> owner;  // new node -> original node
    std::vector<bool> principal;

    std::size_t add_node(std::string id, NodeRole role, std::size_t original, LetterMap map = {}) {
        d3.nodes.push_back(D3Node{std::move(id), role, {}, {}, map});
        owner.push_back(original);
        principal.push_back(false);
        return d3.nodes.size() - 1;
    }
    std::size_t emit(std::size_t node) {
        d3.edges.push_back(D3Edge{node, kUnattached});
        d3.nodes[node].out.push_back(d3.edges.size() - 1);
        return d3.edges.size() - 1;
    }
    void attach(std::size_t edge, std::size_t node) {
        d3.edges[edge].to = node;
        d3.nodes[node].in.push_back(edge);
    }
};

struct NameGen {
    std::set<std::string> taken;
    std::string fresh(const std::string &base, char tag, int &counter) {
        std::string name = base + "." + tag + std::to_string(counter++);
        while (taken.contains(name)) {
            name += "'";
        }
        taken.insert(name);
        return name;
    }
};

// Folds each non-principal transform into a transform child, then compacts
// node and edge numbering.
void fold_transforms(Builder &b) {
    std::size_t n = b.d3.nodes.size();
    std::vector<bool> dead_node(n, false);
    std::vector<bool> dead_edge(b.d3.edges.size(), false);
    for (std::size_t t = 0; t < n; ++t) {
        D3Node &node = b.d3.nodes[t];
        if (node.role != NodeRole::Transform || b.principal[t] || dead_node[t]) {
            continue;
        }
        std::size_t out_edge = node.out.at(0);
        std::size_t child = b.d3.edges[out_edge].to;
        if (b.d3.nodes[child].role != NodeRole::Transform) {
            continue;
        }
        std::size_t in_edge = node.in.at(0);
        D3Node &next = b.d3.nodes[child];
        next.map = next.map.compose(node.map);
        b.d3.edges[in_edge].to = child;
        next.in = {in_edge};
        dead_node[t] = true;
        dead_edge[out_edge] = true;
    }
    std::vector<std::size_t> node_map(n, kUnattached), edge_map(b.d3.edges.size(), kUnattached);
    D3Network out;
    out.group = b.d3.group;
    std::vector<std::size_t> owner;
    std::vector<bool> principal;
    for (std::size_t v = 0; v < n; ++v) {
        if (!dead_node[v]) {
            node_map[v] = out.nodes.size();
            out.nodes.push_back(D3Node{b.d3.nodes[v].id, b.d3.nodes[v].role, {}, {}, b.d3.nodes[v].map});
            owner.push_back(b.owner[v]);
            principal.push_back(b.principal[v]);
        }
    }
    for (std::size_t e = 0; e < b.d3.edges.size(); ++e) {
        if (dead_edge[e]) {
            continue;
        }
        edge_map[e] = out.edges.size();
        std::size_t from = node_map[b.d3.edges[e].from];
        std::size_t to = node_map[b.d3.edges[e].to];
        out.edges.push_back(D3Edge{from, to});
        out.nodes[from].out.push_back(edge_map[e]);
        out.nodes[to].in.push_back(edge_map[e]);
    }
    for (D3Node &node : out.nodes) {
        std::sort(node.in.begin(), node.in.end());
        std::sort(node.out.begin(), node.out.end());
    }
    b.d3 = std::move(out);
    b.owner = std::move(owner);
    b.principal = std::move(principal);
}

}  // namespace

Normalized normalize_to_d3(const Network &net, const ClassicalProtocol &proto) {
    NetworkIndex index(net, proto);
    Builder b;
    b.d3.group = proto.group;
    NameGen names;
    for (const Node &node : net.nodes) {
        names.taken.insert(node.id);
    }

    std::vector<std::size_t> port(net.edges.size(), kUnattached);  // original edge -> new edge
    std::vector<std::size_t> replacement(net.nodes.size(), kUnattached);

    auto fork_tree = [&](std::size_t edge, std::size_t uses, std::size_t original, const std::string &base,
                         int &fork_counter) {
        std::vector<std::size_t> copies;
        std::size_t cur = edge;
        for (std::size_t k = 0; k + 1 < uses; ++k) {
            std::size_t f = b.add_node(names.fresh(base, 'f', fork_counter), NodeRole::Fork, original);
            b.attach(cur, f);
            copies.push_back(b.emit(f));
            cur = b.emit(f);
        }
        copies.push_back(cur);
        return copies;
    };

    for (std::size_t v : index.topological_order()) {
        const Node &node = index.node(v);
        const std::string &base = node.id;
        int forks = 0, transforms = 0, joins = 0;
        std::size_t first_new = b.d3.nodes.size();

        if (node.kind == NodeKind::Source) {
            std::size_t s = b.add_node(base, NodeRole::Source, v);
            b.principal[s] = true;
            std::size_t edge = b.emit(s);
            auto copies = fork_tree(edge, index.out_edges(v).size(), v, base, forks);
            for (std::size_t k = 0; k < copies.size(); ++k) {
                port[index.out_edges(v)[k]] = copies[k];
            }
            replacement[v] = s;
            continue;
        }

        const auto &ins = index.in_edges(v);
        std::size_t slots = node.kind == NodeKind::Sink ? 1 : index.out_edges(v).size();
        std::vector<OutputOp> ops;
        for (std::size_t j = 0; j < slots; ++j) {
            const OutputOp *op = index.op(v, static_cast<int>(j));
            ops.push_back(op != nullptr ? *op : OutputOp{0, {Term{0, LetterMap::identity()}}});
        }

        std::vector<std::size_t> uses(ins.size(), 0);
        for (const OutputOp &op : ops) {
            for (const Term &term : op.terms) {
                ++uses[term.in];
            }
        }
        std::vector<std::vector<std::size_t>> copies(ins.size());
        std::optional<std::size_t> first_fork;
        for (std::size_t i = 0; i < ins.size(); ++i) {
            std::size_t before = b.d3.nodes.size();
            copies[i] = fork_tree(port[ins[i]], uses[i], v, base, forks);
            if (!first_fork && b.d3.nodes.size() > before) {
                first_fork = before;
            }
            std::reverse(copies[i].begin(), copies[i].end());  // consumed from the back
        }

        bool keep_identity = node.kind == NodeKind::Internal && ins.size() == 1 && slots == 1;
        std::vector<std::size_t> results;
        std::optional<std::size_t> out0_join, out0_transform;
        for (std::size_t j = 0; j < ops.size(); ++j) {
            std::vector<std::size_t> terms;
            for (const Term &term : ops[j].terms) {
                std::size_t c = copies[term.in].back();
                copies[term.in].pop_back();
                if (!term.map.is_identity() || (keep_identity && ops[j].terms.size() == 1)) {
                    std::size_t t = b.add_node(names.fresh(base, 't', transforms), NodeRole::Transform, v, term.map);
                    b.attach(c, t);
                    c = b.emit(t);
                    if (j == 0 && !out0_transform) {
                        out0_transform = t;
                    }
                }
                terms.push_back(c);
            }
            std::size_t acc = terms[0];
            for (std::size_t k = 1; k < terms.size(); ++k) {
                std::size_t jn = b.add_node(names.fresh(base, 'j', joins), NodeRole::Join, v);
                b.attach(acc, jn);
                b.attach(terms[k], jn);
                acc = b.emit(jn);
                if (j == 0) {
                    out0_join = jn;
                }
            }
            results.push_back(acc);
        }

        if (node.kind == NodeKind::Sink) {
            std::size_t t = b.add_node(base, NodeRole::Sink, v);
            b.attach(results[0], t);
            b.principal[t] = true;
            replacement[v] = t;
        } else {
            for (std::size_t j = 0; j < results.size(); ++j) {
                port[index.out_edges(v)[j]] = results[j];
            }
            std::optional<std::size_t> chosen = first_fork ? first_fork : out0_join ? out0_join : out0_transform;
            if (!chosen && b.d3.nodes.size() > first_new) {
                chosen = first_new;
            }
            if (chosen) {
                names.taken.erase(b.d3.nodes[*chosen].id);
                b.d3.nodes[*chosen].id = base;
                b.principal[*chosen] = true;
            }
        }
    }

    fold_transforms(b);

    std::map<std::size_t, std::size_t> principal_of;
    for (std::size_t w = 0; w < b.d3.nodes.size(); ++w) {
        if (b.principal[w]) {
            principal_of[b.owner[w]] = w;
        }
    }
    for (std::size_t s : index.sources()) {
        b.d3.sources.push_back(principal_of.at(s));
    }
    for (std::size_t j = 0; j < index.sinks().size(); ++j) {
        b.d3.sinks.push_back(principal_of.at(index.sinks()[j]));
        b.d3.sink_source.push_back(index.required_source(j));
    }

    Normalized result;
    for (const Node &node : net.nodes) {
        result.correspondence[node.id];
    }
    for (std::size_t w = 0; w < b.d3.nodes.size(); ++w) {
        result.correspondence[net.nodes[b.owner[w]].id].push_back(b.d3.nodes[w].id);
    }
    result.d3 = std::move(b.d3);
    ValidationReport check = validate_d3(result.d3);
    if (!check.ok()) {
        throw std::logic_error("normalization produced an invalid D3 network:\n" + check.str());
    }
    return result;
}

std::pair<Network, ClassicalProtocol> to_network(const D3Network &d3) {
    Network net;
    ClassicalProtocol proto;
    proto.group = d3.group;
    for (const D3Node &node : d3.nodes) {
        NodeKind kind = node.role == NodeRole::Source ? NodeKind::Source
                        : node.role == NodeRole::Sink ? NodeKind::Sink
                                                      : NodeKind::Internal;
        net.nodes.push_back(Node{node.id, kind});
        switch (node.role) {
            case NodeRole::Fork:
                proto.ops[node.id] = {OutputOp{0, {Term{0, LetterMap::identity()}}},
                                      OutputOp{1, {Term{0, LetterMap::identity()}}}};
                break;
            case NodeRole::Join:
                proto.ops[node.id] = {OutputOp{0, {Term{0, LetterMap::identity()}, Term{1, LetterMap::identity()}}}};
                break;
            case NodeRole::Transform:
                proto.ops[node.id] = {OutputOp{0, {Term{0, node.map}}}};
                break;
            default:
                break;
        }
    }
    for (const D3Edge &edge : d3.edges) {
        net.edges.push_back(Edge{d3.nodes[edge.from].id, d3.nodes[edge.to].id});
    }
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        net.requirements.push_back(Requirement{d3.nodes[d3.sinks[j]].id, d3.nodes[d3.sources[d3.sink_source[j]]].id});
    }
    return {std::move(net), std::move(proto)};
}

std::optional<D3Network> as_d3(const Network &net, const ClassicalProtocol &proto) {
    NetworkIndex index(net, proto);
    auto plain = [](const OutputOp *op, std::size_t terms) {
        if (!op || op->terms.size() != terms) {
            return false;
        }
        for (std::size_t k = 0; k < terms; ++k) {
            if (op->terms[k].in != static_cast<int>(k) || !op->terms[k].map.is_identity()) {
                return false;
            }
        }
        return true;
    };
    D3Network d3;
    d3.group = proto.group;
    for (std::size_t v = 0; v < index.node_count(); ++v) {
        const Node &node = index.node(v);
        std::size_t in = index.in_edges(v).size();
        std::size_t out = index.out_edges(v).size();
        D3Node d{node.id, NodeRole::Transform, index.in_edges(v), index.out_edges(v), LetterMap()};
        if (node.kind == NodeKind::Source) {
            if (out != 1) {
                return std::nullopt;
            }
            d.role = NodeRole::Source;
        } else if (node.kind == NodeKind::Sink) {
            const OutputOp *op = index.op(v, 0);
            if (in != 1 || (op && !plain(op, 1))) {
                return std::nullopt;
            }
            d.role = NodeRole::Sink;
        } else if (in == 1 && out == 2) {
            if (!plain(index.op(v, 0), 1) || !plain(index.op(v, 1), 1)) {
                return std::nullopt;
            }
            d.role = NodeRole::Fork;
        } else if (in == 2 && out == 1) {
            if (!plain(index.op(v, 0), 2)) {
                return std::nullopt;
            }
            d.role = NodeRole::Join;
        } else if (in == 1 && out == 1) {
            const OutputOp *op = index.op(v, 0);
            if (!op || op->terms.size() != 1 || op->terms[0].in != 0) {
                return std::nullopt;
            }
            d.map = op->terms[0].map;
        } else {
            return std::nullopt;
        }
        d3.nodes.push_back(std::move(d));
    }
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        d3.edges.push_back(D3Edge{index.edge_from(e), index.edge_to(e)});
    }
    d3.sources = index.sources();
    d3.sinks = index.sinks();
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        d3.sink_source.push_back(index.required_source(j));
    }
    if (!validate_d3(d3).ok()) {
        return std::nullopt;
    }
    return d3;
}

bool structurally_equal(const D3Network &a, const D3Network &b) {
    if (a.group != b.group || a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) {
        return false;
    }
    auto node_key = [](const D3Network &n) {
        std::map<std::string, std::pair<NodeRole, LetterMap>> keys;
        for (const D3Node &node : n.nodes) {
            keys[node.id] = {node.role, node.role == NodeRole::Transform ? node.map : LetterMap()};
        }
        return keys;
    };
    auto edge_key = [](const D3Network &n) {
        std::multiset<std::pair<std::string, std::string>> keys;
        for (const D3Edge &e : n.edges) {
            keys.emplace(n.nodes[e.from].id, n.nodes[e.to].id);
        }
        return keys;
    };
    auto terminals = [](const D3Network &n) {
        std::vector<std::tuple<std::string, std::string>> sinks;
        std::vector<std::string> sources;
        for (std::size_t s : n.sources) {
            sources.push_back(n.nodes[s].id);
        }
        for (std::size_t j = 0; j < n.sinks.size(); ++j) {
            sinks.emplace_back(n.nodes[n.sinks[j]].id, n.nodes[n.sources[n.sink_source[j]]].id);
        }
        return std::make_pair(sources, sinks);
    };
    return node_key(a) == node_key(b) && edge_key(a) == edge_key(b) && terminals(a) == terminals(b);
}

}  // namespace qnc
