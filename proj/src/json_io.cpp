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


#include "qnc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qnc {

namespace {

const Json &member(const Json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) {
        throw ParseError(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path + "." + key, "missing field");
    }
    return *it;
}

std::string string_at(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = member(obj, key, path);
    if (!v.is_string()) {
        throw ParseError(path + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

int int_at(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = member(obj, key, path);
    if (!v.is_number_integer()) {
        throw ParseError(path + "." + key, "expected an integer");
    }
    return v.get<int>();
}

const Json &array_at(const Json &obj, const std::string &key, const std::string &path) {
    const Json &v = member(obj, key, path);
    if (!v.is_array()) {
        throw ParseError(path + "." + key, "expected an array");
    }
    return v;
}

LetterMap parse_map(const Json &v, const std::string &path) {
    if (!v.is_array() || v.size() != 4) {
        throw ParseError(path, "expected an array of 4 letters");
    }
    std::array<Letter, 4> table{};
    for (std::size_t i = 0; i < 4; ++i) {
        std::optional<Letter> letter = v[i].is_string() ? Letter::parse(v[i].get<std::string>()) : std::nullopt;
        if (!letter) {
            throw ParseError(path + "[" + std::to_string(i) + "]", "expected a letter \"00\"..\"11\"");
        }
        table[i] = *letter;
    }
    return LetterMap(table);
}

}  // namespace

Instance parse_instance(const Json &doc) {
    const std::string root = "$";
    Instance inst;
    std::string group = string_at(doc, "group", root);
    auto parsed_group = parse_group(group);
    if (!parsed_group) {
        throw ParseError(root + ".group", "expected \"Z4\" or \"Z2xZ2\", got \"" + group + "\"");
    }
    inst.protocol.group = *parsed_group;

    const Json &nodes = array_at(doc, "nodes", root);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string path = root + ".nodes[" + std::to_string(i) + "]";
        std::string kind = string_at(nodes[i], "kind", path);
        auto parsed_kind = parse_node_kind(kind);
        if (!parsed_kind) {
            throw ParseError(path + ".kind", "expected source|sink|internal, got \"" + kind + "\"");
        }
        inst.network.nodes.push_back(Node{string_at(nodes[i], "id", path), *parsed_kind});
    }
    const Json &edges = array_at(doc, "edges", root);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string path = root + ".edges[" + std::to_string(i) + "]";
        inst.network.edges.push_back(Edge{string_at(edges[i], "from", path), string_at(edges[i], "to", path)});
    }
    const Json &reqs = array_at(doc, "requirements", root);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        std::string path = root + ".requirements[" + std::to_string(i) + "]";
        inst.network.requirements.push_back(
            Requirement{string_at(reqs[i], "sink", path), string_at(reqs[i], "source", path)});
    }
    if (doc.contains("ops")) {
        const Json &ops = doc["ops"];
        if (!ops.is_object()) {
            throw ParseError(root + ".ops", "expected an object keyed by node id");
        }
        for (auto it = ops.begin(); it != ops.end(); ++it) {
            std::string path = root + ".ops." + it.key();
            if (!it.value().is_array()) {
                throw ParseError(path, "expected an array of output operations");
            }
            std::vector<OutputOp> outputs;
            for (std::size_t j = 0; j < it.value().size(); ++j) {
                const Json &op = it.value()[j];
                std::string op_path = path + "[" + std::to_string(j) + "]";
                OutputOp out;
                out.out = int_at(op, "out", op_path);
                const Json &terms = array_at(op, "terms", op_path);
                for (std::size_t k = 0; k < terms.size(); ++k) {
                    std::string term_path = op_path + ".terms[" + std::to_string(k) + "]";
                    out.terms.push_back(
                        Term{int_at(terms[k], "in", term_path), parse_map(member(terms[k], "map", term_path), term_path + ".map")});
                }
                outputs.push_back(std::move(out));
            }
            inst.protocol.ops[it.key()] = std::move(outputs);
        }
    }
    return inst;
}

Instance parse_instance_text(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    return parse_instance(doc);
}

Instance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), "cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_text(buffer.str());
}

Json to_json(const Network &net, const ClassicalProtocol &proto) {
    Json doc;
    doc["group"] = to_string(proto.group);
    doc["nodes"] = Json::array();
    for (const Node &node : net.nodes) {
        doc["nodes"].push_back({{"id", node.id}, {"kind", to_string(node.kind)}});
    }
    doc["edges"] = Json::array();
    for (const Edge &edge : net.edges) {
        doc["edges"].push_back({{"from", edge.from}, {"to", edge.to}});
    }
    doc["requirements"] = Json::array();
    for (const Requirement &req : net.requirements) {
        doc["requirements"].push_back({{"sink", req.sink}, {"source", req.source}});
    }
    Json ops = Json::object();
    // Keep node-list order rather than map order.
    for (const Node &node : net.nodes) {
        auto it = proto.ops.find(node.id);
        if (it == proto.ops.end()) {
            continue;
        }
        Json outputs = Json::array();
        for (const OutputOp &op : it->second) {
            Json terms = Json::array();
            for (const Term &term : op.terms) {
                Json map = Json::array();
                for (Letter x : term.map.table()) {
                    map.push_back(x.str());
                }
                terms.push_back({{"in", term.in}, {"map", map}});
            }
            outputs.push_back({{"out", op.out}, {"terms", terms}});
        }
        ops[node.id] = outputs;
    }
    doc["ops"] = ops;
    return doc;
}

Json to_json(const D3Network &d3, const NodeCorrespondence *correspondence) {
    auto [net, proto] = to_network(d3);
    Json doc = to_json(net, proto);
    Json roles = Json::object();
    for (const D3Node &node : d3.nodes) {
        roles[node.id] = to_string(node.role);
    }
    doc["roles"] = roles;
    if (correspondence != nullptr) {
        Json corr = Json::object();
        for (const auto &[id, ids] : *correspondence) {
            corr[id] = ids;
        }
        doc["correspondence"] = corr;
    }
    return doc;
}

}  // namespace qnc
