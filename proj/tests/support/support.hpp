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


#ifndef QNC_TESTS_SUPPORT_HPP
#define QNC_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "qnc/d3.hpp"
#include "qnc/json_io.hpp"
#include "qnc/qmath.hpp"

namespace qnc::testing {

std::filesystem::path data_path(const std::string &name);

/// Small D3 networks assembled by hand.
class D3Builder {
   public:
    explicit D3Builder(GroupKind group = GroupKind::Z2xZ2);
    std::size_t node(const std::string &id, NodeRole role, LetterMap map = LetterMap::identity());
    D3Builder &edge(const std::string &from, const std::string &to);
    /// Sources and sinks in the order given; sink j requires source sink_source[j].
    D3Network finish(const std::vector<std::string> &sources, const std::vector<std::string> &sinks,
                     const std::vector<std::size_t> &sink_source);

   private:
    D3Network d3_;
};

/// s -> f -> (t1, t2).
D3Network fork_network();
/// (s1, s2) -> j -> t.
D3Network join_network(GroupKind group);
/// s -> x -> t with map g.
D3Network transform_network(const LetterMap &g);

/// Random valid D3 network with at most max_nodes nodes and 1..max_sources
/// sources, grown by applying random fork/join/transform steps to open edges.
D3Network random_d3(std::mt19937_64 &rng, std::size_t max_nodes = 12, std::size_t max_sources = 3);

/// Random valid general instance: multi-input nodes, multiple outputs,
/// sums of mapped terms, sinks with several inputs.
Instance random_instance(std::mt19937_64 &rng, std::size_t sources = 3, std::size_t internals = 4,
                         std::size_t sinks = 2);

LetterMap random_map(std::mt19937_64 &rng, MapClass cls);

/// Classical outputs computed by direct recursion on edge values.
std::vector<Letter> reference_eval(const Instance &inst, const std::vector<Letter> &inputs);

/// Uniform on the Bloch sphere.
Vec2 random_pure(std::mt19937_64 &rng);
/// Bloch vector uniform in the ball.
DensityMatrix2 random_density(std::mt19937_64 &rng);

/// Density-matrix versions of the node operations, written directly from
/// the measurement and preparation rules.
namespace reference {
double ttr_probability(const Mat2 &rho, Letter outcome);
Mat4 efc(const Mat2 &rho, double alpha);
Mat2 join(const Mat2 &a, const Mat2 &b, GroupKind group);
/// alpha is the shrink of the incoming state, used by the two-to-one weights.
Mat2 transform(const Mat2 &rho, const LetterMap &g, double alpha);
Mat2 shrunk(Letter z, double alpha);
}  // namespace reference

}  // namespace qnc::testing

#endif
