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


#ifndef QNC_QCOMPILER_HPP
#define QNC_QCOMPILER_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qnc/d3.hpp"
#include "qnc/json_io.hpp"
#include "qnc/rational.hpp"

namespace qnc {

class CompileError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class OpTag { SourceTTR, Join, TransformConstant, TransformOneToOne, TransformTwoToOne, ForkEFC, SinkNoop };

std::string to_string(OpTag tag);
std::optional<OpTag> parse_op_tag(std::string_view text);

/// The two ways of reading the emission weights of a two-to-one node.
/// With a = alpha(parent), the parent reading emits g(X) with weight
/// 3/(6 - a) and each off-range letter with (3 - a)/(2(6 - a)), and the
/// output is the shrunk state with a/(6 - a). The own reading substitutes
/// the node's alpha for a; its output is generally not a shrunk state.
struct TwoToOneReadings {
    Rational parent_alpha;
    Rational own_alpha;
    std::array<Rational, 2> parent_weights;  // on g(X), on each off-range letter
    std::array<Rational, 2> own_weights;
    /// Shrink of the output produced by each reading, if it is a shrunk state.
    std::optional<Rational> parent_output_shrink;
    std::optional<Rational> own_output_shrink;
    bool agree() const {
        return parent_weights == own_weights;
    }
};

struct CompiledNode {
    std::size_t node = 0;  // index into the D3 network
    OpTag op = OpTag::SinkNoop;
    Rational alpha;
    std::size_t depth = 0;  // longest path from a source
    /// Transform map; the constant letter for TransformConstant is map(00).
    LetterMap map;
    std::optional<TwoToOneReadings> two_to_one;
};

/// Quantum operation and shrinking factor for every node of a D3 network.
class QuantumProtocol {
   public:
    QuantumProtocol(D3Network d3, std::vector<CompiledNode> order);

    const D3Network &network() const {
        return d3_;
    }
    /// Nodes by (depth, id).
    const std::vector<CompiledNode> &order() const {
        return order_;
    }
    const CompiledNode &at(std::size_t node) const {
        return order_[position_[node]];
    }
    const CompiledNode &at(const std::string &id) const {
        return at(d3_.node_of(id));
    }
    /// alpha of the node an edge leaves.
    const Rational &edge_alpha(std::size_t edge) const {
        return at(d3_.edges[edge].from).alpha;
    }
    /// alpha on the incoming edge of the sink at this position.
    const Rational &sink_alpha(std::size_t sink_position) const {
        return at(d3_.sinks[sink_position]).alpha;
    }

   private:
    D3Network d3_;
    std::vector<CompiledNode> order_;
    std::vector<std::size_t> position_;
};

/// Throws CompileError when the network is not a valid D3 network.
/// `source_alpha` gives the shrink of the state each source emits (all 1,
/// i.e. a pure tetra state, when empty); each must lie in (0, 1].
QuantumProtocol compile(const D3Network &d3, std::span<const Rational> source_alpha = {});

/// Emission weights over letters for a two-to-one node with parent shrink
/// alpha that measured `measured`: g(measured) gets 3/(6 - alpha), each
/// off-range letter (3 - alpha)/(2(6 - alpha)). Throws std::invalid_argument
/// unless g is two-to-one, std::domain_error unless 0 < alpha <= 1.
std::array<Rational, 4> two_to_one_emission(const Rational &alpha, const LetterMap &g, Letter measured);

TwoToOneReadings two_to_one_readings(const Rational &parent_alpha, const LetterMap &g);

/// { "network": D3 network file, "protocol": { id: {"op", "alpha", "depth", ...} } }
/// with the protocol in compile order.
Json to_json(const QuantumProtocol &qp);

/// Reads the network back, recompiles, and checks that the stored ops and
/// alphas match. Throws ParseError or CompileError.
QuantumProtocol parse_protocol(const Json &doc);

}  // namespace qnc

#endif
