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


#ifndef QNC_NETWORK_HPP
#define QNC_NETWORK_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnc/letter.hpp"

namespace qnc {

enum class NodeKind { Source, Sink, Internal };

std::string to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Internal;
    bool operator==(const Node &) const = default;
};

/// Edges are identified by their position in Network::edges (file order).
struct Edge {
    std::string from;
    std::string to;
    bool operator==(const Edge &) const = default;
};

struct Requirement {
    std::string sink;
    std::string source;
    bool operator==(const Requirement &) const = default;
};

/// A directed acyclic network with a source-sink requirement.
/// Stored as written in the input file; call validate_network before use.
struct Network {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<Requirement> requirements;
    bool operator==(const Network &) const = default;
};

/// One summand h(X_in) of an output; `in` is the position of the incoming
/// edge in the node's incoming-edge list sorted by edge id.
struct Term {
    int in = 0;
    LetterMap map;
    bool operator==(const Term &) const = default;
};

/// Output `out` (position in the node's sorted outgoing-edge list) is the
/// group sum of its terms. Sinks use out = 0 for the value they deliver.
struct OutputOp {
    int out = 0;
    std::vector<Term> terms;
    bool operator==(const OutputOp &) const = default;
};

struct ClassicalProtocol {
    GroupKind group = GroupKind::Z2xZ2;
    std::map<std::string, std::vector<OutputOp>> ops;
    bool operator==(const ClassicalProtocol &) const = default;
};

struct Violation {
    std::string code;
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const {
        return violations.empty();
    }
    std::string str() const;
};

ValidationReport validate_network(const Network &net, const ClassicalProtocol &proto);

class InvalidInstance : public std::runtime_error {
   public:
    explicit InvalidInstance(const ValidationReport &report);
    const ValidationReport &report() const {
        return report_;
    }

   private:
    ValidationReport report_;
};

/// Resolved adjacency of a validated instance. Incoming and outgoing edge
/// lists are sorted by edge id, which fixes the `in`/`out` positions of terms.
class NetworkIndex {
   public:
    /// Throws InvalidInstance if validate_network reports anything.
    NetworkIndex(const Network &net, const ClassicalProtocol &proto);

    std::size_t node_count() const {
        return net_.nodes.size();
    }
    std::size_t node_of(const std::string &id) const;
    const Node &node(std::size_t v) const {
        return net_.nodes[v];
    }
    const Network &network() const {
        return net_;
    }
    const ClassicalProtocol &protocol() const {
        return proto_;
    }
    std::size_t edge_from(std::size_t e) const {
        return edge_ends_[e].first;
    }
    std::size_t edge_to(std::size_t e) const {
        return edge_ends_[e].second;
    }
    const std::vector<std::size_t> &in_edges(std::size_t v) const {
        return in_[v];
    }
    const std::vector<std::size_t> &out_edges(std::size_t v) const {
        return out_[v];
    }
    /// Kahn order, ready nodes taken in lexicographic id order.
    const std::vector<std::size_t> &topological_order() const {
        return topo_;
    }
    /// Source / sink node indices in node-list order.
    const std::vector<std::size_t> &sources() const {
        return sources_;
    }
    const std::vector<std::size_t> &sinks() const {
        return sinks_;
    }
    /// Position in sources() of the source required by sinks()[j].
    std::size_t required_source(std::size_t sink_position) const {
        return sink_source_[sink_position];
    }
    /// Operation for output position `out` of node v; for sinks out = 0.
    /// Nullopt for sources and for sinks with a single input and no op.
    const OutputOp *op(std::size_t v, int out) const;

   private:
    Network net_;
    ClassicalProtocol proto_;
    std::map<std::string, std::size_t> by_id_;
    std::vector<std::pair<std::size_t, std::size_t>> edge_ends_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> topo_;
    std::vector<std::size_t> sources_;
    std::vector<std::size_t> sinks_;
    std::vector<std::size_t> sink_source_;
    std::vector<std::vector<std::optional<OutputOp>>> ops_;
};

/// Sum of h_i(X_i) over the terms, given the node's incoming values.
Letter apply_output(GroupKind group, const OutputOp &op, const std::vector<Letter> &inputs);

}  // namespace qnc

#endif
