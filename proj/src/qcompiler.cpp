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


#include "qnc/qcompiler.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "qnc/qmath.hpp"

namespace qnc {

namespace {

constexpr std::array<std::pair<OpTag, const char *>, 7> kTagNames = {{
    {OpTag::SourceTTR, "SourceTTR"},
    {OpTag::Join, "Join"},
    {OpTag::TransformConstant, "TransformConstant"},
    {OpTag::TransformOneToOne, "TransformOneToOne"},
    {OpTag::TransformTwoToOne, "TransformTwoToOne"},
    {OpTag::ForkEFC, "ForkEFC"},
    {OpTag::SinkNoop, "SinkNoop"},
}};

std::array<Rational, 2> emission_weights(const Rational &a) {
    Rational w1 = 3 / (6 - a);
    Rational w2 = (3 - a) / (2 * (6 - a));
    return {w1, w2};
}

// Output of a two-to-one node fed alpha*chi(z) + ..., emitting with (w1, w2).
std::optional<Rational> emitted_shrink(const Rational &a, const LetterMap &g, const std::array<Rational, 2> &w) {
    std::array<Rational, 4> outcome = ttr_probabilities(ShrunkState(Letter(0), a));
    TetraMixture mix;
    std::vector<Letter> off = g.off_range();
    for (Letter x : kAllLetters) {
        mix[g(x).value()] += outcome[x.value()] * w[0];
        for (Letter y : off) {
            mix[y.value()] += outcome[x.value()] * w[1];
        }
    }
    auto shrunk = as_shrunk(mix);
    if (!shrunk || shrunk->label() != g(Letter(0))) {
        return std::nullopt;
    }
    return shrunk->alpha();
}

std::vector<std::size_t> depths(const D3Network &d3) {
    std::vector<std::size_t> indegree(d3.nodes.size()), depth(d3.nodes.size(), 0);
    for (const D3Edge &e : d3.edges) {
        ++indegree[e.to];
    }
    std::queue<std::size_t> ready;
    for (std::size_t v = 0; v < d3.nodes.size(); ++v) {
        if (indegree[v] == 0) {
            ready.push(v);
        }
    }
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop();
        for (std::size_t e : d3.nodes[v].out) {
            std::size_t w = d3.edges[e].to;
            depth[w] = std::max(depth[w], depth[v] + 1);
            if (--indegree[w] == 0) {
                ready.push(w);
            }
        }
    }
    return depth;
}

}  // namespace

std::string to_string(OpTag tag) {
    for (const auto &[t, name] : kTagNames) {
        if (t == tag) {
            return name;
        }
    }
    return "?";
}

std::optional<OpTag> parse_op_tag(std::string_view text) {
    for (const auto &[t, name] : kTagNames) {
        if (text == name) {
            return t;
        }
    }
    return std::nullopt;
}

std::array<Rational, 4> two_to_one_emission(const Rational &alpha, const LetterMap &g, Letter measured) {
    if (g.classify() != MapClass::TwoToOne) {
        throw std::invalid_argument("two-to-one emission needs a two-to-one map, got " + to_string(g.classify()));
    }
    if (alpha <= 0 || alpha > 1) {
        throw std::domain_error("two-to-one emission needs alpha in (0, 1], got " + to_string(alpha));
    }
    auto w = emission_weights(alpha);
    std::array<Rational, 4> out;
    out[g(measured).value()] = w[0];
    for (Letter y : g.off_range()) {
        out[y.value()] = w[1];
    }
    return out;
}

TwoToOneReadings two_to_one_readings(const Rational &parent_alpha, const LetterMap &g) {
    TwoToOneReadings r;
    r.parent_alpha = parent_alpha;
    r.own_alpha = parent_alpha / (6 - parent_alpha);
    r.parent_weights = emission_weights(r.parent_alpha);
    r.own_weights = emission_weights(r.own_alpha);
    r.parent_output_shrink = emitted_shrink(parent_alpha, g, r.parent_weights);
    r.own_output_shrink = emitted_shrink(parent_alpha, g, r.own_weights);
    return r;
}

QuantumProtocol::QuantumProtocol(D3Network d3, std::vector<CompiledNode> order)
    : d3_(std::move(d3)), order_(std::move(order)), position_(d3_.nodes.size()) {
    for (std::size_t k = 0; k < order_.size(); ++k) {
        position_[order_[k].node] = k;
    }
}

QuantumProtocol compile(const D3Network &d3, std::span<const Rational> source_alpha) {
    ValidationReport report = validate_d3(d3);
    if (!report.ok()) {
        throw CompileError("not a valid D3 network: " + report.str());
    }
    if (!source_alpha.empty() && source_alpha.size() != d3.sources.size()) {
        throw CompileError("expected " + std::to_string(d3.sources.size()) + " source shrinks");
    }
    for (const Rational &a : source_alpha) {
        if (a <= 0 || a > 1) {
            throw CompileError("source shrink must lie in (0, 1], got " + to_string(a));
        }
    }
    std::vector<std::size_t> depth = depths(d3);
    std::vector<std::size_t> order(d3.nodes.size());
    for (std::size_t v = 0; v < order.size(); ++v) {
        order[v] = v;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(depth[a], d3.nodes[a].id) < std::tie(depth[b], d3.nodes[b].id);
    });

    std::vector<Rational> alpha(d3.nodes.size());
    std::vector<CompiledNode> compiled;
    auto parent = [&](const D3Node &node, std::size_t k) { return d3.edges[node.in[k]].from; };
    for (std::size_t v : order) {
        const D3Node &node = d3.nodes[v];
        CompiledNode c;
        c.node = v;
        c.depth = depth[v];
        switch (node.role) {
            case NodeRole::Source: {
                c.op = OpTag::SourceTTR;
                c.alpha = 1;
                if (!source_alpha.empty()) {
                    auto pos = std::find(d3.sources.begin(), d3.sources.end(), v) - d3.sources.begin();
                    c.alpha = source_alpha[static_cast<std::size_t>(pos)];
                }
                break;
            }
            case NodeRole::Sink:
                c.op = OpTag::SinkNoop;
                c.alpha = alpha[parent(node, 0)];
                break;
            case NodeRole::Fork:
                c.op = OpTag::ForkEFC;
                c.alpha = alpha[parent(node, 0)] / 9;
                break;
            case NodeRole::Join:
                c.op = OpTag::Join;
                c.alpha = alpha[parent(node, 0)] * alpha[parent(node, 1)] / 9;
                break;
            case NodeRole::Transform: {
                const Rational &a = alpha[parent(node, 0)];
                c.map = node.map;
                switch (node.map.classify()) {
                    case MapClass::Constant:
                        c.op = OpTag::TransformConstant;
                        c.alpha = 1;
                        break;
                    case MapClass::OneToOne:
                        c.op = OpTag::TransformOneToOne;
                        c.alpha = a / 3;
                        break;
                    case MapClass::TwoToOne: {
                        c.op = OpTag::TransformTwoToOne;
                        c.alpha = a / (6 - a);
                        c.two_to_one = two_to_one_readings(a, node.map);
                        if (c.two_to_one->parent_output_shrink != c.alpha) {
                            throw CompileError("two-to-one emission at " + node.id + " does not yield shrink " +
                                               to_string(c.alpha));
                        }
                        break;
                    }
                    case MapClass::Invalid:
                        throw CompileError("illegal map at " + node.id);
                }
                break;
            }
        }
        c.alpha.canonicalize();
        if (c.alpha <= 0) {
            throw CompileError("non-positive alpha at " + node.id);
        }
        alpha[v] = c.alpha;
        compiled.push_back(std::move(c));
    }
    return QuantumProtocol(d3, std::move(compiled));
}

Json to_json(const QuantumProtocol &qp) {
    const D3Network &d3 = qp.network();
    Json protocol = Json::object();
    for (const CompiledNode &c : qp.order()) {
        Json entry = {{"op", to_string(c.op)}, {"alpha", to_string(c.alpha)}, {"depth", c.depth}};
        if (c.op == OpTag::TransformConstant) {
            entry["constant"] = c.map(Letter(0)).str();
        } else if (c.op == OpTag::TransformOneToOne || c.op == OpTag::TransformTwoToOne) {
            Json table = Json::array();
            for (Letter x : c.map.table()) {
                table.push_back(x.str());
            }
            entry["map"] = table;
        }
        if (c.two_to_one) {
            const TwoToOneReadings &r = *c.two_to_one;
            auto shrink = [](const std::optional<Rational> &s) { return s ? Json(to_string(*s)) : Json(nullptr); };
            entry["emission"] = {
                {"parentAlpha", to_string(r.parent_alpha)},
                {"weights", {to_string(r.parent_weights[0]), to_string(r.parent_weights[1])}},
                {"ownAlphaWeights", {to_string(r.own_weights[0]), to_string(r.own_weights[1])}},
                {"ownAlphaOutputShrink", shrink(r.own_output_shrink)},
            };
        }
        protocol[d3.nodes[c.node].id] = entry;
    }
    Json sinks = Json::object();
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        sinks[d3.nodes[d3.sinks[j]].id] = to_string(qp.sink_alpha(j));
    }
    return {{"network", to_json(d3)}, {"protocol", protocol}, {"sinkAlpha", sinks}};
}

QuantumProtocol parse_protocol(const Json &doc) {
    if (!doc.is_object() || !doc.contains("network")) {
        throw ParseError("$.network", "missing");
    }
    if (!doc.contains("protocol") || !doc["protocol"].is_object()) {
        throw ParseError("$.protocol", "missing or not an object");
    }
    Instance inst;
    try {
        inst = parse_instance(doc["network"]);
    } catch (const ParseError &e) {
        std::string field = e.field();
        throw ParseError("$.network" + (field.starts_with("$") ? field.substr(1) : "." + field), e.what());
    }
    std::optional<D3Network> d3 = as_d3(inst.network, inst.protocol);
    QuantumProtocol qp = compile(d3 ? *d3 : normalize_to_d3(inst.network, inst.protocol).d3);
    const Json &stored = doc["protocol"];
    if (stored.size() != qp.order().size()) {
        throw CompileError("stored protocol has " + std::to_string(stored.size()) + " nodes, network has " +
                           std::to_string(qp.order().size()));
    }
    for (const CompiledNode &c : qp.order()) {
        const std::string &id = qp.network().nodes[c.node].id;
        std::string field = "$.protocol." + id;
        if (!stored.contains(id)) {
            throw ParseError(field, "missing node");
        }
        const Json &entry = stored[id];
        if (!entry.is_object() || !entry.contains("op") || !entry["op"].is_string()) {
            throw ParseError(field + ".op", "missing or not a string");
        }
        auto op = parse_op_tag(entry["op"].get<std::string>());
        if (!op) {
            throw ParseError(field + ".op", "unknown op tag");
        }
        if (!entry.contains("alpha") || !entry["alpha"].is_string()) {
            throw ParseError(field + ".alpha", "missing or not a string");
        }
        Rational a;
        try {
            a = parse_rational(entry["alpha"].get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw ParseError(field + ".alpha", e.what());
        }
        if (*op != c.op || a != c.alpha) {
            throw CompileError("stored entry for " + id + " (" + to_string(*op) + ", " + to_string(a) +
                               ") disagrees with recompilation (" + to_string(c.op) + ", " + to_string(c.alpha) +
                               ")");
        }
    }
    return qp;
}

}  // namespace qnc
