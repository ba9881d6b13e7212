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


#include "qnc/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qnc/efc.hpp"

namespace qnc {

namespace {

// P(TTR on chi(label) gives X) = Tr(chi(label) chi(X)) / 2.
const Rational &ttr_weight(Letter label, Letter x) {
    static const auto table = [] {
        std::array<std::array<Rational, 4>, 4> t;
        for (Letter a : kAllLetters) {
            for (Letter b : kAllLetters) {
                t[a.value()][b.value()] = tetra_overlaps()[a.value()][b.value()] / 2;
            }
        }
        return t;
    }();
    return table[label.value()][x.value()];
}

std::size_t pow4(std::size_t k) {
    return std::size_t{1} << (2 * k);
}

template <typename Weight>
Weight convert(const Rational &r) {
    if constexpr (std::is_same_v<Weight, double>) {
        return to_double(r);
    } else {
        return r;
    }
}

template <typename Weight>
bool is_zero(const Weight &w) {
    return w == 0;
}

template <typename Weight>
bool close(const Weight &a, const Weight &b) {
    if constexpr (std::is_same_v<Weight, double>) {
        return std::abs(a - b) <= kMatrixTolerance;
    } else {
        return a == b;
    }
}

void check_arity(const QuantumProtocol &qp, std::size_t n) {
    if (n != qp.network().sources.size()) {
        throw std::invalid_argument("expected " + std::to_string(qp.network().sources.size()) +
                                    " source inputs, got " + std::to_string(n));
    }
}

// Source position of each source node.
std::vector<std::size_t> source_positions(const D3Network &d3) {
    std::vector<std::size_t> pos(d3.nodes.size(), d3.sources.size());
    for (std::size_t k = 0; k < d3.sources.size(); ++k) {
        pos[d3.sources[k]] = k;
    }
    return pos;
}

// Output distribution of a node for every input combination, merged over
// elementary outcomes. Index: input combination -> output combination, with
// letter k of a combination at base-4 digit k.
template <typename Weight>
std::vector<std::vector<Weight>> node_kernel(const QuantumProtocol &qp, const CompiledNode &node) {
    const D3Node &d = qp.network().nodes[node.node];
    std::size_t in = d.in.size(), out = d.out.size();
    std::vector<std::vector<Weight>> kernel(pow4(in), std::vector<Weight>(pow4(out)));
    std::vector<Letter> inputs(in);
    for (std::size_t code = 0; code < pow4(in); ++code) {
        for (std::size_t k = 0; k < in; ++k) {
            inputs[k] = Letter(static_cast<unsigned>(code >> (2 * k)));
        }
        for (const NodeOutcome &o : node_outcomes(qp, node, inputs)) {
            std::size_t oc = 0;
            for (std::size_t k = 0; k < out; ++k) {
                oc |= std::size_t{o.outputs[k].value()} << (2 * k);
            }
            kernel[code][oc] += convert<Weight>(o.probability);
        }
    }
    return kernel;
}

template <typename Weight>
std::array<Weight, 4> source_distribution(const SourceInput &input) {
    std::array<Weight, 4> dist{};
    if (const auto *x = std::get_if<Letter>(&input)) {
        dist[x->value()] = 1;
    } else if (const auto *s = std::get_if<ShrunkState>(&input)) {
        TetraMixture m = to_mixture(*s);
        for (std::size_t z = 0; z < 4; ++z) {
            dist[z] = convert<Weight>(m[z]);
        }
    } else {
        if constexpr (std::is_same_v<Weight, double>) {
            dist = ttr_probabilities(std::get<DensityMatrix2>(input));
        } else {
            throw std::invalid_argument("exact oracle needs label or shrunk-state inputs");
        }
    }
    return dist;
}

template <typename Weight>
OracleResult<Weight> run_oracle(const QuantumProtocol &qp, std::span<const SourceInput> inputs) {
    check_arity(qp, inputs.size());
    const D3Network &d3 = qp.network();
    std::vector<std::size_t> src_pos = source_positions(d3);

    OracleResult<Weight> result;
    result.edges.resize(d3.edges.size());
    std::vector<std::size_t> live;       // edge ids; position k is digit k
    std::vector<Weight> dist = {Weight(1)};  // over live configurations

    for (const CompiledNode &node : qp.order()) {
        const D3Node &d = d3.nodes[node.node];
        std::vector<std::vector<Weight>> kernel;
        if (d.role == NodeRole::Source) {
            auto sd = source_distribution<Weight>(inputs[src_pos[node.node]]);
            kernel = {std::vector<Weight>(sd.begin(), sd.end())};
        } else {
            kernel = node_kernel<Weight>(qp, node);
        }

        std::vector<std::size_t> in_pos;
        for (std::size_t e : d.in) {
            in_pos.push_back(static_cast<std::size_t>(std::find(live.begin(), live.end(), e) - live.begin()));
        }
        std::vector<std::size_t> next_live, keep_pos;
        for (std::size_t k = 0; k < live.size(); ++k) {
            if (std::find(in_pos.begin(), in_pos.end(), k) == in_pos.end()) {
                keep_pos.push_back(k);
                next_live.push_back(live[k]);
            }
        }
        std::size_t first_out = next_live.size();
        next_live.insert(next_live.end(), d.out.begin(), d.out.end());

        std::size_t work = dist.size() * pow4(d.out.size());
        if (work > kOracleCap || pow4(next_live.size()) > kOracleCap) {
            throw SizeError("exact oracle needs " + std::to_string(work) + " configuration-outcome pairs at node " +
                            d.id + " (cap " + std::to_string(kOracleCap) + "); use Monte Carlo instead");
        }
        std::vector<Weight> next(pow4(next_live.size()));
        for (std::size_t idx = 0; idx < dist.size(); ++idx) {
            if (is_zero(dist[idx])) {
                continue;
            }
            std::size_t in_code = 0;
            for (std::size_t k = 0; k < in_pos.size(); ++k) {
                in_code |= ((idx >> (2 * in_pos[k])) & 3u) << (2 * k);
            }
            std::size_t base = 0;
            for (std::size_t k = 0; k < keep_pos.size(); ++k) {
                base |= ((idx >> (2 * keep_pos[k])) & 3u) << (2 * k);
            }
            const std::vector<Weight> &row = kernel[in_code];
            for (std::size_t oc = 0; oc < row.size(); ++oc) {
                if (!is_zero(row[oc])) {
                    next[base | (oc << (2 * first_out))] += dist[idx] * row[oc];
                }
            }
        }
        live = std::move(next_live);
        dist = std::move(next);
        result.peak_configurations = std::max(result.peak_configurations, dist.size());

        // Marginals of every live edge; new ones are recorded.
        std::vector<std::array<Weight, 4>> marg(live.size());
        for (std::size_t idx = 0; idx < dist.size(); ++idx) {
            if (is_zero(dist[idx])) {
                continue;
            }
            for (std::size_t k = 0; k < live.size(); ++k) {
                marg[k][(idx >> (2 * k)) & 3u] += dist[idx];
            }
        }
        for (std::size_t k = first_out; k < live.size(); ++k) {
            result.edges[live[k]] = marg[k];
        }
        if (d.role == NodeRole::Fork) {
            std::array<Weight, 16> joint{};
            for (std::size_t idx = 0; idx < dist.size(); ++idx) {
                std::size_t a = (idx >> (2 * first_out)) & 3u, b = (idx >> (2 * (first_out + 1))) & 3u;
                joint[4 * a + b] += dist[idx];
            }
            result.fork_joints[node.node] = joint;
        }
        for (std::size_t idx = 0; idx < dist.size() && result.frontier_always_product; ++idx) {
            Weight product = 1;
            for (std::size_t k = 0; k < live.size(); ++k) {
                product *= marg[k][(idx >> (2 * k)) & 3u];
            }
            if (!close(product, dist[idx])) {
                result.frontier_always_product = false;
            }
        }
    }
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        result.sinks.push_back(result.edges[d3.nodes[d3.sinks[j]].in[0]]);
    }
    return result;
}

struct Sampler {
    std::vector<std::discrete_distribution<std::size_t>> rows;  // by input code
};

std::array<double, 4> real_source_distribution(const SourceInput &input) {
    return source_distribution<double>(input);
}

}  // namespace

std::vector<NodeOutcome> node_outcomes(const QuantumProtocol &qp, const CompiledNode &node,
                                       std::span<const Letter> inputs) {
    const D3Network &d3 = qp.network();
    const D3Node &d = d3.nodes[node.node];
    if (inputs.size() != d.in.size()) {
        throw std::invalid_argument("node " + d.id + " takes " + std::to_string(d.in.size()) + " inputs");
    }
    std::vector<NodeOutcome> out;
    switch (node.op) {
        case OpTag::SourceTTR:
            throw std::invalid_argument("source outcomes depend on the source input");
        case OpTag::SinkNoop:
            out.push_back({Rational(1), {}, {}});
            break;
        case OpTag::TransformConstant:
            out.push_back({Rational(1), {}, {node.map(Letter(0))}});
            break;
        case OpTag::ForkEFC: {
            const Rational &a = qp.edge_alpha(d.in[0]);
            for (Letter x : kAllLetters) {
                PairDistribution pairs = efc_pair_distribution(a, x);
                for (Letter z1 : kAllLetters) {
                    for (Letter z2 : kAllLetters) {
                        out.push_back({ttr_weight(inputs[0], x) * pairs.at(z1, z2), {x}, {z1, z2}});
                    }
                }
            }
            break;
        }
        case OpTag::Join:
            for (Letter x1 : kAllLetters) {
                for (Letter x2 : kAllLetters) {
                    out.push_back({ttr_weight(inputs[0], x1) * ttr_weight(inputs[1], x2),
                                   {x1, x2},
                                   {add(d3.group, x1, x2)}});
                }
            }
            break;
        case OpTag::TransformOneToOne:
            for (Letter x : kAllLetters) {
                out.push_back({ttr_weight(inputs[0], x), {x}, {node.map(x)}});
            }
            break;
        case OpTag::TransformTwoToOne: {
            const Rational &a = qp.edge_alpha(d.in[0]);
            for (Letter x : kAllLetters) {
                auto emit = two_to_one_emission(a, node.map, x);
                for (Letter y : kAllLetters) {
                    if (emit[y.value()] != 0) {
                        out.push_back({ttr_weight(inputs[0], x) * emit[y.value()], {x}, {y}});
                    }
                }
            }
            break;
        }
    }
    for (NodeOutcome &o : out) {
        o.probability.canonicalize();
    }
    return out;
}

AnalyticResult simulate_analytic(const QuantumProtocol &qp, std::span<const Letter> inputs) {
    check_arity(qp, inputs.size());
    const D3Network &d3 = qp.network();
    ClassicalEvaluator eval(d3);
    std::vector<Letter> labels = eval.eval_edges(inputs);
    AnalyticResult r;
    for (std::size_t e = 0; e < d3.edges.size(); ++e) {
        r.edges.emplace_back(labels[e], qp.edge_alpha(e));
    }
    for (std::size_t t : d3.sinks) {
        r.sinks.push_back(r.edges[d3.nodes[t].in[0]]);
    }
    return r;
}

OracleResult<Rational> simulate_oracle(const QuantumProtocol &qp, std::span<const SourceInput> inputs) {
    return run_oracle<Rational>(qp, inputs);
}

OracleResult<Rational> simulate_oracle(const QuantumProtocol &qp, std::span<const Letter> inputs) {
    std::vector<SourceInput> in(inputs.begin(), inputs.end());
    return run_oracle<Rational>(qp, in);
}

OracleResult<double> simulate_oracle_real(const QuantumProtocol &qp, std::span<const SourceInput> inputs) {
    return run_oracle<double>(qp, inputs);
}

Rational BranchTree::total() const {
    Rational sum;
    for (const Branch &b : branches) {
        sum += b.probability;
    }
    return sum;
}

BranchTree enumerate_branches(const QuantumProtocol &qp, std::span<const Letter> inputs, std::size_t max_branches) {
    std::vector<SourceInput> in(inputs.begin(), inputs.end());
    return enumerate_branches(qp, in, max_branches);
}

BranchTree enumerate_branches(const QuantumProtocol &qp, std::span<const SourceInput> inputs,
                              std::size_t max_branches) {
    check_arity(qp, inputs.size());
    const D3Network &d3 = qp.network();
    std::vector<std::size_t> src_pos = source_positions(d3);
    BranchTree tree;
    tree.branches.push_back({Rational(1), std::vector<Letter>(d3.edges.size())});
    for (const CompiledNode &node : qp.order()) {
        const D3Node &d = d3.nodes[node.node];
        std::vector<Branch> next;
        if (d.role == NodeRole::Source) {
            std::array<Rational, 4> dist = source_distribution<Rational>(inputs[src_pos[node.node]]);
            for (const Branch &b : tree.branches) {
                for (Letter z : kAllLetters) {
                    if (dist[z.value()] == 0) {
                        continue;
                    }
                    if (next.size() >= max_branches) {
                        throw SizeError("branch enumeration exceeds " + std::to_string(max_branches) + " branches");
                    }
                    Branch nb{b.probability * dist[z.value()], b.edges};
                    nb.edges[d.out[0]] = z;
                    next.push_back(std::move(nb));
                }
            }
            tree.branches = std::move(next);
            continue;
        }
        std::vector<Letter> in(d.in.size());
        for (const Branch &b : tree.branches) {
            for (std::size_t k = 0; k < d.in.size(); ++k) {
                in[k] = b.edges[d.in[k]];
            }
            for (const NodeOutcome &o : node_outcomes(qp, node, in)) {
                if (o.probability == 0) {
                    continue;
                }
                if (next.size() >= max_branches) {
                    throw SizeError("branch enumeration exceeds " + std::to_string(max_branches) +
                                    " branches at node " + d.id + "; use the merged oracle or Monte Carlo");
                }
                Branch nb{b.probability * o.probability, b.edges};
                for (std::size_t k = 0; k < d.out.size(); ++k) {
                    nb.edges[d.out[k]] = o.outputs[k];
                }
                next.push_back(std::move(nb));
            }
        }
        tree.branches = std::move(next);
    }
    return tree;
}

SourceInput vector_input(const Vec2 &psi) {
    return DensityMatrix2::pure(psi);
}

MonteCarloResult simulate_montecarlo(const QuantumProtocol &qp, std::span<const SourceInput> inputs,
                                     std::span<const Vec2> targets, std::uint64_t trials, std::uint64_t seed,
                                     unsigned threads) {
    check_arity(qp, inputs.size());
    if (trials < 1) {
        throw std::invalid_argument("Monte Carlo needs at least one trial");
    }
    if (targets.size() != inputs.size()) {
        throw std::invalid_argument("one fidelity target per source");
    }
    const D3Network &d3 = qp.network();
    std::vector<std::size_t> src_pos = source_positions(d3);

    // Per node in compile order: output combinations by input code.
    std::vector<Sampler> samplers;
    for (const CompiledNode &node : qp.order()) {
        const D3Node &d = d3.nodes[node.node];
        Sampler s;
        if (d.role == NodeRole::Source) {
            auto p = real_source_distribution(inputs[src_pos[node.node]]);
            s.rows.emplace_back(p.begin(), p.end());
        } else if (d.role != NodeRole::Sink) {
            for (const auto &row : node_kernel<double>(qp, node)) {
                s.rows.emplace_back(row.begin(), row.end());
            }
        }
        samplers.push_back(std::move(s));
    }
    // Per-sink fidelity of each label against the sink's target.
    std::vector<std::array<double, 4>> label_fidelity;
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        const Vec2 &psi = targets[d3.sink_source[j]];
        std::array<double, 4> f;
        for (Letter z : kAllLetters) {
            f[z.value()] = (psi.adjoint() * tetra(z).matrix * psi)(0).real();
        }
        label_fidelity.push_back(f);
    }

    struct Tally {
        std::vector<std::array<std::uint64_t, 4>> counts;
        std::vector<double> sum, sum_sq;
    };
    std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<Tally> tallies(blocks);

    auto run_block = [&](std::uint64_t b) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(seq);
        std::vector<Sampler> local = samplers;
        Tally t{std::vector<std::array<std::uint64_t, 4>>(d3.sinks.size()),
                std::vector<double>(d3.sinks.size()), std::vector<double>(d3.sinks.size())};
        std::vector<Letter> edges(d3.edges.size());
        std::uint64_t n = std::min<std::uint64_t>(kTrialsPerBlock, trials - b * kTrialsPerBlock);
        for (std::uint64_t trial = 0; trial < n; ++trial) {
            for (std::size_t k = 0; k < qp.order().size(); ++k) {
                const D3Node &d = d3.nodes[qp.order()[k].node];
                if (d.role == NodeRole::Sink) {
                    continue;
                }
                std::size_t code = 0;
                for (std::size_t i = 0; i < d.in.size(); ++i) {
                    code |= std::size_t{edges[d.in[i]].value()} << (2 * i);
                }
                std::size_t oc = local[k].rows[code](rng);
                for (std::size_t i = 0; i < d.out.size(); ++i) {
                    edges[d.out[i]] = Letter(static_cast<unsigned>(oc >> (2 * i)));
                }
            }
            for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
                Letter z = edges[d3.nodes[d3.sinks[j]].in[0]];
                ++t.counts[j][z.value()];
                double f = label_fidelity[j][z.value()];
                t.sum[j] += f;
                t.sum_sq[j] += f * f;
            }
        }
        tallies[b] = std::move(t);
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    if (threads <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            run_block(b);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < blocks; b += threads) {
                    run_block(b);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    MonteCarloResult result;
    result.trials = trials;
    result.sinks.resize(d3.sinks.size());
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        MonteCarloSink &s = result.sinks[j];
        double sum = 0, sum_sq = 0;
        for (const Tally &t : tallies) {
            for (std::size_t z = 0; z < 4; ++z) {
                s.counts[z] += t.counts[j][z];
            }
            sum += t.sum[j];
            sum_sq += t.sum_sq[j];
        }
        std::array<double, 4> freq;
        for (std::size_t z = 0; z < 4; ++z) {
            freq[z] = static_cast<double>(s.counts[z]) / static_cast<double>(trials);
        }
        s.empirical = densify(freq);
        double n = static_cast<double>(trials);
        s.fidelity = sum / n;
        double var = trials > 1 ? std::max(0.0, (sum_sq - n * s.fidelity * s.fidelity) / (n - 1)) : 0.0;
        s.stderr_ = std::sqrt(var / n);
    }
    return result;
}

bool SimReport::all_pass() const {
    return std::all_of(sinks.begin(), sinks.end(), [](const SinkReport &s) { return s.passes; });
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json SimReport::to_json() const {
    Json out = Json::object();
    if (trials) {
        out["trials"] = *trials;
        out["seed"] = *seed;
    }
    Json list = Json::array();
    for (const SinkReport &s : sinks) {
        Json j = {
            {"sink", s.sink},
            {"source", s.source},
            {"input", s.tetra_input ? "tetra" : "vector"},
            {"alphaAtSink", to_string(s.alpha)},
            {"analyticFidelity", to_double(s.analytic_fidelity)},
            {"analyticFidelityExact", to_string(s.analytic_fidelity)},
            {"tetraFidelity", to_double(s.tetra_fidelity)},
            {"tetraFidelityExact", to_string(s.tetra_fidelity)},
            {"requirementMet", s.requirement_met ? Json(*s.requirement_met) : Json(nullptr)},
        };
        if (s.oracle_fidelity) {
            j["oracleFidelity"] = *s.oracle_fidelity;
        }
        if (s.mc_fidelity) {
            j["mcFidelity"] = *s.mc_fidelity;
            j["mcStderr"] = *s.mc_stderr;
        }
        j["passes"] = s.passes;
        list.push_back(j);
    }
    out["sinks"] = list;
    out["allPass"] = all_pass();
    return out;
}

std::string SimReport::table() const {
    std::vector<std::vector<std::string>> rows = {
        {"sink", "source", "input", "requirement", "alpha", "analytic", "tetra", "oracle", "montecarlo", "pass"}};
    for (const SinkReport &s : sinks) {
        std::string req = s.requirement_met ? (*s.requirement_met ? "met" : "VIOLATED") : "unchecked";
        rows.push_back({s.sink, s.source, s.tetra_input ? "tetra" : "vector", req, to_string(s.alpha),
                        format_double(to_double(s.analytic_fidelity)), format_double(to_double(s.tetra_fidelity)),
                        s.oracle_fidelity ? format_double(*s.oracle_fidelity) : "-",
                        s.mc_fidelity ? format_double(*s.mc_fidelity) + " +- " + format_double(*s.mc_stderr) : "-",
                        s.passes ? "yes" : "NO"});
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto &r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            width[c] = std::max(width[c], r[c].size());
        }
    }
    std::ostringstream out;
    for (const auto &r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            out << r[c];
            if (c + 1 < r.size()) {
                out << std::string(width[c] - r[c].size() + 2, ' ');
            }
        }
        out << '\n';
    }
    return out.str();
}

SimReport fidelity_report(const QuantumProtocol &qp, std::span<const InputSpec> inputs, const ReportOptions &options) {
    check_arity(qp, inputs.size());
    const D3Network &d3 = qp.network();
    std::vector<SourceInput> sources;
    std::vector<Vec2> targets;
    for (const InputSpec &in : inputs) {
        if (const auto *x = std::get_if<Letter>(&in)) {
            sources.emplace_back(*x);
            targets.push_back(tetra(*x).vector);
        } else {
            const Vec2 &psi = std::get<Vec2>(in);
            if (std::abs(psi.norm() - 1.0) > kUnitNormTolerance) {
                throw std::invalid_argument("input vectors must have unit norm");
            }
            sources.push_back(vector_input(psi));
            targets.push_back(psi);
        }
    }

    SimReport report;
    for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
        SinkReport s;
        std::size_t src = d3.sink_source[j];
        s.sink = d3.nodes[d3.sinks[j]].id;
        s.source = d3.nodes[d3.sources[src]].id;
        s.alpha = qp.sink_alpha(j);
        s.analytic_fidelity = Rational(1, 2) + s.alpha / 6;
        s.tetra_fidelity = Rational(1, 2) + s.alpha / 2;
        s.analytic_fidelity.canonicalize();
        s.tetra_fidelity.canonicalize();
        s.tetra_input = std::holds_alternative<Letter>(inputs[src]);
        report.sinks.push_back(std::move(s));
    }
    if (d3.sources.size() <= kMaxExhaustiveSources) {
        for (SinkReport &s : report.sinks) {
            s.requirement_met = true;
        }
        ClassicalEvaluator eval(d3);
        for_each_input(d3.sources.size(), [&](const std::vector<Letter> &x) {
            std::vector<Letter> y = eval.eval(x);
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (y[j] != x[d3.sink_source[j]]) {
                    report.sinks[j].requirement_met = false;
                }
            }
        });
    }
    if (options.oracle) {
        OracleResult<double> oracle = simulate_oracle_real(qp, sources);
        for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
            const Vec2 &psi = targets[d3.sink_source[j]];
            report.sinks[j].oracle_fidelity = (psi.adjoint() * densify(oracle.sinks[j]) * psi)(0).real();
        }
    }
    if (options.trials > 0) {
        MonteCarloResult mc = simulate_montecarlo(qp, sources, targets, options.trials, options.seed);
        report.trials = options.trials;
        report.seed = options.seed;
        for (std::size_t j = 0; j < d3.sinks.size(); ++j) {
            report.sinks[j].mc_fidelity = mc.sinks[j].fidelity;
            report.sinks[j].mc_stderr = mc.sinks[j].stderr_;
        }
    }
    for (SinkReport &s : report.sinks) {
        s.passes = s.requirement_met.value_or(true) && s.expected() > Rational(1, 2) &&
                   (!s.oracle_fidelity || *s.oracle_fidelity > 0.5);
    }
    return report;
}

}  // namespace qnc
