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


#include "qnc/classical_eval.hpp"

#include <sstream>

namespace qnc {

std::string TruthTable::csv() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &id : source_ids) {
        out << (first ? "" : ",") << id;
        first = false;
    }
    for (const auto &id : sink_ids) {
        out << (first ? "" : ",") << id;
        first = false;
    }
    out << "\n";
    for (const TruthRow &row : rows) {
        first = true;
        for (Letter x : row.inputs) {
            out << (first ? "" : ",") << x.str();
            first = false;
        }
        for (Letter y : row.outputs) {
            out << (first ? "" : ",") << y.str();
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

ClassicalEvaluator::ClassicalEvaluator(NetworkIndex index, std::vector<std::size_t> sources,
                                       std::vector<std::size_t> sinks, std::vector<std::size_t> sink_source)
    : index_(std::move(index)),
      sources_(std::move(sources)),
      sinks_(std::move(sinks)),
      sink_source_(std::move(sink_source)) {
}

ClassicalEvaluator::ClassicalEvaluator(const Network &net, const ClassicalProtocol &proto)
    : index_(net, proto), sources_(index_.sources()), sinks_(index_.sinks()) {
    for (std::size_t j = 0; j < sinks_.size(); ++j) {
        sink_source_.push_back(index_.required_source(j));
    }
}

ClassicalEvaluator::ClassicalEvaluator(const D3Network &d3)
    : ClassicalEvaluator([&d3] {
          auto [net, proto] = to_network(d3);
          return NetworkIndex(net, proto);
      }(),
                         d3.sources, d3.sinks, d3.sink_source) {
    // to_network keeps node and edge order, so D3 indices carry over.
}

std::vector<std::string> ClassicalEvaluator::source_ids() const {
    std::vector<std::string> ids;
    for (std::size_t s : sources_) {
        ids.push_back(index_.node(s).id);
    }
    return ids;
}

std::vector<std::string> ClassicalEvaluator::sink_ids() const {
    std::vector<std::string> ids;
    for (std::size_t t : sinks_) {
        ids.push_back(index_.node(t).id);
    }
    return ids;
}

std::vector<Letter> ClassicalEvaluator::eval_edges(std::span<const Letter> inputs) const {
    if (inputs.size() != sources_.size()) {
        throw std::invalid_argument("expected " + std::to_string(sources_.size()) + " input letters, got " +
                                    std::to_string(inputs.size()));
    }
    std::vector<Letter> source_value(index_.node_count());
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        source_value[sources_[i]] = inputs[i];
    }
    std::vector<Letter> edge_value(index_.network().edges.size());
    std::vector<Letter> incoming;
    GroupKind group = index_.protocol().group;
    for (std::size_t v : index_.topological_order()) {
        const auto &outs = index_.out_edges(v);
        if (index_.node(v).kind == NodeKind::Source) {
            for (std::size_t e : outs) {
                edge_value[e] = source_value[v];
            }
            continue;
        }
        incoming.clear();
        for (std::size_t e : index_.in_edges(v)) {
            incoming.push_back(edge_value[e]);
        }
        for (std::size_t j = 0; j < outs.size(); ++j) {
            edge_value[outs[j]] = apply_output(group, *index_.op(v, static_cast<int>(j)), incoming);
        }
    }
    return edge_value;
}

std::vector<Letter> ClassicalEvaluator::eval(std::span<const Letter> inputs) const {
    std::vector<Letter> edge_value = eval_edges(inputs);
    GroupKind group = index_.protocol().group;
    std::vector<Letter> outputs;
    std::vector<Letter> incoming;
    for (std::size_t t : sinks_) {
        incoming.clear();
        for (std::size_t e : index_.in_edges(t)) {
            incoming.push_back(edge_value[e]);
        }
        const OutputOp *op = index_.op(t, 0);
        outputs.push_back(op != nullptr ? apply_output(group, *op, incoming) : incoming.at(0));
    }
    return outputs;
}

void ClassicalEvaluator::guard_size() const {
    if (sources_.size() > kMaxExhaustiveSources) {
        throw SizeError("exhaustive evaluation needs 4^" + std::to_string(sources_.size()) +
                        " rows; at most " + std::to_string(kMaxExhaustiveSources) + " sources are supported");
    }
}

TruthTable ClassicalEvaluator::truth_table() const {
    guard_size();
    TruthTable table{source_ids(), sink_ids(), {}};
    table.rows.reserve(std::size_t{1} << (2 * sources_.size()));
    for_each_input(sources_.size(), [&](const std::vector<Letter> &inputs) {
        table.rows.push_back(TruthRow{inputs, eval(inputs)});
    });
    return table;
}

RequirementCheck ClassicalEvaluator::check_requirement() const {
    guard_size();
    RequirementCheck result{true, std::nullopt};
    for_each_input(sources_.size(), [&](const std::vector<Letter> &inputs) {
        if (!result.satisfied) {
            return;
        }
        std::vector<Letter> outputs = eval(inputs);
        for (std::size_t j = 0; j < sinks_.size(); ++j) {
            if (outputs[j] != inputs[sink_source_[j]]) {
                result.satisfied = false;
                result.counterexample = TruthRow{inputs, outputs};
                return;
            }
        }
    });
    return result;
}

}  // namespace qnc
