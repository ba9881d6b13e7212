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


#ifndef QNC_D3_HPP
#define QNC_D3_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnc/letter.hpp"
#include "qnc/network.hpp"

namespace qnc {

/// Degree signature (in, out): source (0,1), sink (1,0), fork (1,2),
/// join (2,1), transform (1,1).
enum class NodeRole { Source, Sink, Fork, Join, Transform };

std::string to_string(NodeRole role);

struct D3Node {
    std::string id;
    NodeRole role = NodeRole::Transform;
    std::vector<std::size_t> in;   // edge ids, ascending
    std::vector<std::size_t> out;  // edge ids, ascending
    LetterMap map;                 // transform nodes only
};

struct D3Edge {
    std::size_t from = 0;
    std::size_t to = 0;
};

/// A degree-3 network with a simple protocol: forks copy, joins add under
/// `group`, transforms apply `map`, sources and sinks do nothing.
struct D3Network {
    GroupKind group = GroupKind::Z2xZ2;
    std::vector<D3Node> nodes;
    std::vector<D3Edge> edges;
    std::vector<std::size_t> sources;      // node indices, in input-tuple order
    std::vector<std::size_t> sinks;        // node indices, in output-tuple order
    std::vector<std::size_t> sink_source;  // sink position -> source position

    std::size_t node_of(const std::string &id) const;
};

ValidationReport validate_d3(const D3Network &d3);

/// Original node id -> ids of the D3 nodes that replace it.
using NodeCorrespondence = std::map<std::string, std::vector<std::string>>;

struct Normalized {
    D3Network d3;
    NodeCorrespondence correspondence;
};

/// Rewrites a validated instance into an equivalent D3 network with a
/// simple protocol. Throws InvalidInstance when validation fails.
///
/// Each original node becomes: a left-leaning fork tree per input that is
/// used more than once, one transform per non-identity term, and a
/// left-leaning join tree per output. A transform generated for an output
/// map is then folded into the transform that consumes it, so maps on fork
/// outputs move past the fork into the next transform; before a sink the
/// extra transform stays. A (1,1) node keeps its transform even when its
/// map is the identity, so a D3 input comes back unchanged. The node that
/// keeps the original id is the first fork, else the last join of output 0,
/// else the transform of output 0.
Normalized normalize_to_d3(const Network &net, const ClassicalProtocol &proto);

/// The D3 network written in the general network format (ops spelled out
/// as identity/sum terms), suitable for JSON output and re-normalization.
std::pair<Network, ClassicalProtocol> to_network(const D3Network &d3);

/// Reads an instance that already is a D3 network with the plain protocol
/// (identity forks and joins, one-term transforms, pass-through sinks)
/// without renaming or reordering anything. Nullopt otherwise.
std::optional<D3Network> as_d3(const Network &net, const ClassicalProtocol &proto);

/// Same node ids, roles, maps, edge multiset (by endpoint ids), sources,
/// sinks and requirements. Edge numbering may differ.
bool structurally_equal(const D3Network &a, const D3Network &b);

}  // namespace qnc

#endif
