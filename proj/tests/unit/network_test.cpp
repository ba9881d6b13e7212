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

#include <gtest/gtest.h>

#include <fstream>

#include "qnc/json_io.hpp"
#include "support.hpp"

using namespace qnc;
using qnc::testing::data_path;

namespace {

Json butterfly_doc() {
    std::ifstream in(data_path("butterfly.json"));
    return Json::parse(in);
}

std::vector<std::string> codes(const Json &doc) {
    Instance inst = parse_instance(doc);
    std::vector<std::string> out;
    for (const Violation &v : validate_network(inst.network, inst.protocol).violations) {
        out.push_back(v.code);
    }
    return out;
}

bool has(const std::vector<std::string> &codes, const std::string &code) {
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

}  // namespace

TEST(Network, bundled_instances_validate) {
    for (const char *name : {"butterfly.json", "butterfly_z4.json", "split_two_to_one.json", "reduced_butterfly.json"}) {
        Instance inst = load_instance(data_path(name));
        ValidationReport report = validate_network(inst.network, inst.protocol);
        EXPECT_TRUE(report.ok()) << name << "\n" << report.str();
    }
}

TEST(Network, json_round_trip) {
    Instance inst = load_instance(data_path("split_two_to_one.json"));
    Json doc = to_json(inst.network, inst.protocol);
    Instance back = parse_instance(doc);
    ASSERT_EQ(back.network, inst.network);
    ASSERT_EQ(back.protocol, inst.protocol);
    ASSERT_EQ(to_json(back.network, back.protocol).dump(), doc.dump());
}

TEST(Network, structural_violations) {
    Json doc = butterfly_doc();
    doc["edges"].push_back({{"from", "t1"}, {"to", "s0"}});
    auto c = codes(doc);
    ASSERT_TRUE(has(c, "sink-outdegree"));
    ASSERT_TRUE(has(c, "cycle"));

    doc = butterfly_doc();
    doc["edges"].push_back({{"from", "t0"}, {"to", "s1"}});
    ASSERT_TRUE(has(codes(doc), "source-indegree"));

    doc = butterfly_doc();
    doc["edges"].push_back({{"from", "s1"}, {"to", "nowhere"}});
    ASSERT_TRUE(has(codes(doc), "dangling-edge"));

    doc = butterfly_doc();
    doc["nodes"].push_back({{"id", "s1"}, {"kind", "internal"}});
    ASSERT_TRUE(has(codes(doc), "duplicate-node"));

    doc = butterfly_doc();
    doc["requirements"].erase(1);
    ASSERT_TRUE(has(codes(doc), "missing-requirement"));

    doc = butterfly_doc();
    doc["requirements"][0]["source"] = "t2";
    ASSERT_TRUE(has(codes(doc), "requirement-source"));
}

TEST(Network, protocol_violations) {
    Json doc = butterfly_doc();
    doc["ops"]["s0"][0]["terms"][0]["map"] = {"00", "00", "00", "01"};
    auto c = codes(doc);
    ASSERT_TRUE(has(c, "illegal-map"));

    doc = butterfly_doc();
    doc["ops"]["s0"][0]["terms"].erase(1);
    ASSERT_TRUE(has(codes(doc), "input-unused"));

    doc = butterfly_doc();
    doc["ops"]["t0"].erase(1);
    ASSERT_TRUE(has(codes(doc), "op-missing"));

    doc = butterfly_doc();
    doc["ops"]["t0"][1]["out"] = 5;
    ASSERT_TRUE(has(codes(doc), "op-out-range"));

    doc = butterfly_doc();
    doc["ops"]["s0"][0]["terms"][1]["in"] = 7;
    ASSERT_FALSE(codes(doc).empty());

    doc = butterfly_doc();
    doc["ops"]["s1"] = Json::array({{{"out", 0}, {"terms", Json::array()}}});
    ASSERT_TRUE(has(codes(doc), "op-on-source"));

    doc = butterfly_doc();
    doc["ops"]["zz"] = Json::array();
    ASSERT_TRUE(has(codes(doc), "op-unknown-node"));
}

TEST(Network, violation_messages_name_the_node) {
    Json doc = butterfly_doc();
    doc["ops"]["s0"][0]["terms"][0]["map"] = {"00", "00", "00", "01"};
    Instance inst = parse_instance(doc);
    ValidationReport report = validate_network(inst.network, inst.protocol);
    ASSERT_FALSE(report.ok());
    ASSERT_NE(report.str().find("s0"), std::string::npos);
    ASSERT_THROW(NetworkIndex(inst.network, inst.protocol), InvalidInstance);
}

TEST(JsonIo, parse_errors_name_the_field) {
    Json doc = butterfly_doc();
    doc["nodes"][2]["kind"] = "relay";
    try {
        parse_instance(doc);
        FAIL();
    } catch (const ParseError &e) {
        ASSERT_EQ(e.field(), "$.nodes[2].kind");
    }

    doc = butterfly_doc();
    doc["edges"][3].erase("to");
    try {
        parse_instance(doc);
        FAIL();
    } catch (const ParseError &e) {
        ASSERT_EQ(e.field(), "$.edges[3].to");
    }

    doc = butterfly_doc();
    doc["ops"]["t1"][0]["terms"][1]["map"][2] = "12";
    try {
        parse_instance(doc);
        FAIL();
    } catch (const ParseError &e) {
        ASSERT_EQ(e.field(), "$.ops.t1[0].terms[1].map[2]");
    }

    ASSERT_THROW(parse_instance_text("{ not json"), ParseError);
    ASSERT_THROW(load_instance(data_path("missing.json")), ParseError);
    doc = butterfly_doc();
    doc["group"] = "Z8";
    ASSERT_THROW(parse_instance(doc), ParseError);
}

TEST(NetworkIndex, topological_order_and_ports) {
    Instance inst = load_instance(data_path("butterfly.json"));
    NetworkIndex index(inst.network, inst.protocol);
    std::vector<std::string> order;
    for (std::size_t v : index.topological_order()) {
        order.push_back(index.node(v).id);
    }
    // Ties go to the lexicographically smaller id.
    ASSERT_EQ(order, (std::vector<std::string>{"s1", "s2", "s0", "t0", "t1", "t2"}));
    std::size_t t1 = index.node_of("t1");
    ASSERT_EQ(index.in_edges(t1), (std::vector<std::size_t>{3, 6}));
}
