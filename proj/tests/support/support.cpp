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


#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qnc/classical_eval.hpp"

#ifndef QNC_DATA_DIR
#define QNC_DATA_DIR "data"
#endif

namespace qnc::testing {

std::filesystem::path data_path(const std::string &name) {
    return std::filesystem::path(QNC_DATA_DIR) / name;
}

D3Builder::D3Builder(GroupKind group) {
    d3_.group = group;
}

std::size_t D3Builder::node(const std::string &id, NodeRole role, LetterMap map) {
    d3_.nodes.push_back({id, role, {}, {}, map});
    return d3_.nodes.size() - 1;
}

D3Builder &D3Builder::edge(const std::string &from, const std::string &to) {
    std::size_t e = d3_.edges.size();
    std::size_t u = d3_.node_of(from), v = d3_.node_of(to);
    d3_.edges.push_back({u, v});
    d3_.nodes[u].out.push_back(e);
    d3_.nodes[v].in.push_back(e);
    return *this;
}

D3Network D3Builder::finish(const std::vector<std::string> &sources, const std::vector<std::string> &sinks,
                            const std::vector<std::size_t> &sink_source) {
    D3Network out = d3_;
    for (const auto &id : sources) {
        out.sources.push_back(out.node_of(id));
    }
    for (const auto &id : sinks) {
        out.sinks.push_back(out.node_of(id));
    }
    out.sink_source = sink_source;
    ValidationReport report = validate_d3(out);
    if (!report.ok()) {
        throw std::logic_error("test network invalid:\n" + report.str());
    }
    return out;
}

D3Network fork_network() {
    D3Builder b;
    b.node("s", NodeRole::Source);
    b.node("f", NodeRole::Fork);
    b.node("t1", NodeRole::Sink);
    b.node("t2", NodeRole::Sink);
    b.edge("s", "f").edge("f", "t1").edge("f", "t2");
    return b.finish({"s"}, {"t1", "t2"}, {0, 0});
}

D3Network join_network(GroupKind group) {
    D3Builder b(group);
    b.node("s1", NodeRole::Source);
    b.node("s2", NodeRole::Source);
    b.node("j", NodeRole::Join);
    b.node("t", NodeRole::Sink);
    b.edge("s1", "j").edge("s2", "j").edge("j", "t");
    return b.finish({"s1", "s2"}, {"t"}, {0});
}

D3Network transform_network(const LetterMap &g) {
    D3Builder b;
    b.node("s", NodeRole::Source);
    b.node("x", NodeRole::Transform, g);
    b.node("t", NodeRole::Sink);
    b.edge("s", "x").edge("x", "t");
    return b.finish({"s"}, {"t"}, {0});
}

LetterMap random_map(std::mt19937_64 &rng, MapClass cls) {
    std::array<Letter, 4> perm = kAllLetters;
    std::shuffle(perm.begin(), perm.end(), rng);
    switch (cls) {
        case MapClass::Constant:
            return LetterMap::constant(perm[0]);
        case MapClass::OneToOne:
            return LetterMap(perm);
        case MapClass::TwoToOne: {
            // perm[0], perm[1] form the image; shuffle which inputs hit which.
            std::array<Letter, 4> table = {perm[0], perm[0], perm[1], perm[1]};
            std::shuffle(table.begin(), table.end(), rng);
            return LetterMap(table);
        }
        case MapClass::Invalid:
            break;
    }
    throw std::invalid_argument("no random map for the invalid class");
}

namespace {

MapClass random_class(std::mt19937_64 &rng) {
    constexpr MapClass classes[] = {MapClass::Constant, MapClass::OneToOne, MapClass::TwoToOne};
    return classes[std::uniform_int_distribution<int>(0, 2)(rng)];
}

std::size_t pick(std::mt19937_64 &rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

D3Network random_d3(std::mt19937_64 &rng, std::size_t max_nodes, std::size_t max_sources) {
    std::size_t nsrc = 1 + pick(rng, max_sources);
    std::vector<std::size_t> names(max_nodes);
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);

    D3Network d3;
    d3.group = pick(rng, 2) ? GroupKind::Z4 : GroupKind::Z2xZ2;
    std::vector<std::size_t> open;  // nodes with a pending outgoing edge
    auto add = [&](NodeRole role, LetterMap map = LetterMap::identity()) {
        std::string id = "n" + std::string(names[d3.nodes.size()] < 10 ? "0" : "") +
                         std::to_string(names[d3.nodes.size()]);
        d3.nodes.push_back({id, role, {}, {}, map});
        return d3.nodes.size() - 1;
    };
    auto take = [&](std::size_t to) {
        std::size_t k = pick(rng, open.size());
        std::size_t from = open[k];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
        d3.edges.push_back({from, to});
    };
    for (std::size_t k = 0; k < nsrc; ++k) {
        std::size_t s = add(NodeRole::Source);
        d3.sources.push_back(s);
        open.push_back(s);
    }
    while (true) {
        std::size_t budget = max_nodes - d3.nodes.size() - open.size();
        std::vector<NodeRole> options;
        if (budget >= 2) {
            options.push_back(NodeRole::Fork);
        }
        if (budget >= 1) {
            options.push_back(NodeRole::Transform);
        }
        if (open.size() >= 2) {
            options.push_back(NodeRole::Join);
        }
        if (options.empty() || std::uniform_real_distribution<double>(0, 1)(rng) < 0.12) {
            break;
        }
        NodeRole role = options[pick(rng, options.size())];
        std::size_t v = add(role, role == NodeRole::Transform ? random_map(rng, random_class(rng)) : LetterMap());
        take(v);
        if (role == NodeRole::Join) {
            take(v);
        }
        open.push_back(v);
        if (role == NodeRole::Fork) {
            open.push_back(v);
        }
    }
    while (!open.empty()) {
        std::size_t t = add(NodeRole::Sink);
        take(t);
        d3.sinks.push_back(t);
        d3.sink_source.push_back(pick(rng, nsrc));
    }
    for (std::size_t e = 0; e < d3.edges.size(); ++e) {
        d3.nodes[d3.edges[e].from].out.push_back(e);
        d3.nodes[d3.edges[e].to].in.push_back(e);
    }
    ValidationReport report = validate_d3(d3);
    if (!report.ok()) {
        throw std::logic_error("random_d3 produced an invalid network:\n" + report.str());
    }
    return d3;
}

Instance random_instance(std::mt19937_64 &rng, std::size_t sources, std::size_t internals, std::size_t sinks) {
    while (true) {
        Instance inst;
        Network &net = inst.network;
        inst.protocol.group = pick(rng, 2) ? GroupKind::Z4 : GroupKind::Z2xZ2;
        for (std::size_t k = 0; k < sources; ++k) {
            net.nodes.push_back({"s" + std::to_string(k), NodeKind::Source});
        }
        for (std::size_t k = 0; k < internals; ++k) {
            net.nodes.push_back({"m" + std::to_string(k), NodeKind::Internal});
        }
        for (std::size_t k = 0; k < sinks; ++k) {
            net.nodes.push_back({"t" + std::to_string(k), NodeKind::Sink});
        }
        std::size_t producers = sources + internals;
        std::vector<std::size_t> outdeg(net.nodes.size());
        auto connect = [&](std::size_t u, std::size_t v) {
            net.edges.push_back({net.nodes[u].id, net.nodes[v].id});
            ++outdeg[u];
        };
        for (std::size_t v = sources; v < net.nodes.size(); ++v) {
            std::size_t pool = std::min(v, producers);
            std::size_t indeg = 1 + pick(rng, v < producers ? 3 : 2);
            for (std::size_t k = 0; k < indeg; ++k) {
                connect(pick(rng, pool), v);
            }
        }
        for (std::size_t u = 0; u < producers; ++u) {
            if (outdeg[u] == 0) {
                std::size_t first = std::max(u + 1, sources);
                connect(u, first + pick(rng, net.nodes.size() - first));
            }
        }
        std::shuffle(net.edges.begin(), net.edges.end(), rng);

        std::map<std::string, std::size_t> in_count, out_count;
        for (const Edge &e : net.edges) {
            ++out_count[e.from];
            ++in_count[e.to];
        }
        for (std::size_t v = sources; v < net.nodes.size(); ++v) {
            const std::string &id = net.nodes[v].id;
            std::size_t k = in_count[id];
            std::size_t m = v < producers ? out_count[id] : 1;
            if (v >= producers && k == 1 && pick(rng, 2) == 0) {
                continue;  // default identity at the sink
            }
            std::vector<OutputOp> ops(m);
            std::vector<bool> used(k, false);
            for (std::size_t o = 0; o < m; ++o) {
                ops[o].out = static_cast<int>(o);
                for (std::size_t i = 0; i < k; ++i) {
                    if (pick(rng, 2) == 0 || (v >= producers)) {
                        ops[o].terms.push_back({static_cast<int>(i), random_map(rng, random_class(rng))});
                        used[i] = true;
                    }
                }
            }
            for (std::size_t i = 0; i < k; ++i) {
                if (!used[i]) {
                    ops[pick(rng, m)].terms.push_back({static_cast<int>(i), random_map(rng, random_class(rng))});
                }
            }
            for (OutputOp &op : ops) {
                if (op.terms.empty()) {
                    op.terms.push_back({static_cast<int>(pick(rng, k)), random_map(rng, random_class(rng))});
                }
                std::sort(op.terms.begin(), op.terms.end(), [](const Term &a, const Term &b) { return a.in < b.in; });
            }
            inst.protocol.ops[id] = ops;
        }
        for (std::size_t k = 0; k < sinks; ++k) {
            net.requirements.push_back({"t" + std::to_string(k), "s" + std::to_string(pick(rng, sources))});
        }
        if (validate_network(net, inst.protocol).ok()) {
            return inst;
        }
    }
}

std::vector<Letter> reference_eval(const Instance &inst, const std::vector<Letter> &inputs) {
    const Network &net = inst.network;
    std::map<std::string, std::vector<std::size_t>> in_edges, out_edges;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        out_edges[net.edges[e].from].push_back(e);
        in_edges[net.edges[e].to].push_back(e);
    }
    std::map<std::string, std::size_t> source_pos;
    for (const Node &n : net.nodes) {
        if (n.kind == NodeKind::Source) {
            source_pos.emplace(n.id, source_pos.size());
        }
    }
    auto output_of = [&](const std::string &id, int out, const std::function<Letter(std::size_t)> &value) {
        auto it = inst.protocol.ops.find(id);
        const auto &ins = in_edges[id];
        if (it == inst.protocol.ops.end()) {
            return value(ins.at(0));
        }
        for (const OutputOp &op : it->second) {
            if (op.out == out) {
                Letter sum(0);
                for (const Term &t : op.terms) {
                    sum = add(inst.protocol.group, sum, t.map(value(ins.at(static_cast<std::size_t>(t.in)))));
                }
                return sum;
            }
        }
        throw std::logic_error("no op for output");
    };
    std::map<std::size_t, Letter> memo;
    std::function<Letter(std::size_t)> value = [&](std::size_t e) -> Letter {
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        const std::string &u = net.edges[e].from;
        Letter result;
        if (source_pos.count(u)) {
            result = inputs.at(source_pos[u]);
        } else {
            const auto &outs = out_edges[u];
            int pos = static_cast<int>(std::find(outs.begin(), outs.end(), e) - outs.begin());
            result = output_of(u, pos, value);
        }
        memo[e] = result;
        return result;
    };
    std::vector<Letter> out;
    for (const Node &n : net.nodes) {
        if (n.kind == NodeKind::Sink) {
            out.push_back(output_of(n.id, 0, value));
        }
    }
    return out;
}

Vec2 random_pure(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    double z = 2 * u(rng) - 1;
    double phi = 2 * M_PI * u(rng);
    return pure_from_bloch_angles(std::acos(z), phi);
}

DensityMatrix2 random_density(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    double x, y, z;
    do {
        x = u(rng);
        y = u(rng);
        z = u(rng);
    } while (x * x + y * y + z * z > 1);
    Mat2 m;
    m << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
    return DensityMatrix2(m / 2.0);
}

namespace reference {

double ttr_probability(const Mat2 &rho, Letter outcome) {
    return (rho * tetra_matrices()[outcome.value()]).trace().real() / 2;
}

Mat2 shrunk(Letter z, double alpha) {
    return alpha * tetra_matrices()[z.value()] + (1 - alpha) * Mat2::Identity() / 2.0;
}

Mat4 efc(const Mat2 &rho, double a) {
    double p[4] = {(81 + 6 * a + a * a) / 432, (9 - a) * (15 + a) / 1296, (9 - a) * (3 + a) / 1296,
                   (9 - 2 * a + a * a) / 432};
    const auto &chi = tetra_matrices();
    Mat4 out = Mat4::Zero();
    for (Letter x : kAllLetters) {
        double px = ttr_probability(rho, x);
        for (Letter z1 : kAllLetters) {
            for (Letter z2 : kAllLetters) {
                double w;
                if (z1 == x && z2 == x) {
                    w = p[0];
                } else if (z1 == x || z2 == x) {
                    w = p[1];
                } else if (z1 != z2) {
                    w = p[2];
                } else {
                    w = p[3];
                }
                out += px * w * kron(chi[z1.value()], chi[z2.value()]);
            }
        }
    }
    return out;
}

Mat2 join(const Mat2 &a, const Mat2 &b, GroupKind group) {
    Mat2 out = Mat2::Zero();
    for (unsigned x = 0; x < 4; ++x) {
        for (unsigned y = 0; y < 4; ++y) {
            unsigned sum = group == GroupKind::Z4 ? (x + y) % 4 : (x ^ y);
            out += ttr_probability(a, Letter(x)) * ttr_probability(b, Letter(y)) * tetra_matrices()[sum];
        }
    }
    return out;
}

Mat2 transform(const Mat2 &rho, const LetterMap &g, double a) {
    const auto &chi = tetra_matrices();
    std::array<bool, 4> hit{};
    for (Letter x : kAllLetters) {
        hit[g(x).value()] = true;
    }
    int image = static_cast<int>(std::count(hit.begin(), hit.end(), true));
    Mat2 out = Mat2::Zero();
    if (image == 1) {
        return chi[g(Letter(0)).value()];
    }
    for (Letter x : kAllLetters) {
        double px = ttr_probability(rho, x);
        if (image == 4) {
            out += px * chi[g(x).value()];
            continue;
        }
        out += px * 3 / (6 - a) * chi[g(x).value()];
        for (unsigned y = 0; y < 4; ++y) {
            if (!hit[y]) {
                out += px * (3 - a) / (2 * (6 - a)) * chi[y];
            }
        }
    }
    return out;
}

}  // namespace reference

}  // namespace qnc::testing
