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


#ifndef QNC_JSON_IO_HPP
#define QNC_JSON_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qnc/d3.hpp"
#include "qnc/network.hpp"

namespace qnc {

using Json = nlohmann::ordered_json;

/// Malformed input: `field` is a path such as "nodes[2].kind".
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

struct Instance {
    Network network;
    ClassicalProtocol protocol;
};

/// Network file layout:
///   { "group": "Z4"|"Z2xZ2",
///     "nodes": [{"id": str, "kind": "source"|"sink"|"internal"}],
///     "edges": [{"from": str, "to": str}],
///     "requirements": [{"sink": str, "source": str}],
///     "ops": { nodeId: [{"out": int, "terms": [{"in": int, "map": ["00","01","10","11"]}]}] } }
/// Unknown top-level keys are ignored.
Instance parse_instance(const Json &doc);
Instance parse_instance_text(const std::string &text);
Instance load_instance(const std::filesystem::path &path);

Json to_json(const Network &net, const ClassicalProtocol &proto);

/// D3 network in the network-file layout, plus "roles" (node id -> role)
/// and, when given, "correspondence" (original id -> new ids).
Json to_json(const D3Network &d3, const NodeCorrespondence *correspondence = nullptr);

}  // namespace qnc

#endif
