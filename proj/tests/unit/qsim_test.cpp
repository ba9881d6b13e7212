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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnc/efc.hpp"
#include "support.hpp"

using namespace qnc;
using qnc::testing::data_path;
namespace ref = qnc::testing::reference;

namespace {

QuantumProtocol compile_file(const std::string &name) {
    Instance inst = load_instance(data_path(name));
    return compile(normalize_to_d3(inst.network, inst.protocol).d3);
}

D3Network direct_network(std::size_t sources) {
    qnc::testing::D3Builder b;
    std::vector<std::string> s, t;
    std::vector<std::size_t> sigma;
    for (std::size_t k = 0; k < sources; ++k) {
        s.push_back("s" + std::to_string(k));
        t.push_back("t" + std::to_string(k));
        sigma.push_back(k);
        b.node(s.back(), NodeRole::Source);
        b.node(t.back(), NodeRole::Sink);
        b.edge(s.back(), t.back());
    }
    return b.finish(s, t, sigma);
}

Mat4 joint_density(const std::array<Rational, 16> &joint) {
    PairDistribution d;
    d.weights = joint;
    return joint_matrix(d);
}

}  // namespace

TEST(Analytic, single_nodes) {
    QuantumProtocol fork = compile(qnc::testing::fork_network());
    AnalyticResult r = simulate_analytic(fork, std::vector<Letter>{Letter(2)});
    ASSERT_EQ(r.sinks[0], ShrunkState(Letter(2), rational(1, 9)));
    ASSERT_EQ(r.sinks[1], ShrunkState(Letter(2), rational(1, 9)));

    QuantumProtocol join = compile(qnc::testing::join_network(GroupKind::Z4));
    r = simulate_analytic(join, std::vector<Letter>{Letter(3), Letter(2)});
    ASSERT_EQ(r.sinks[0], ShrunkState(Letter(1), rational(1, 9)));
    ASSERT_THROW(simulate_analytic(join, std::vector<Letter>{Letter(3)}), std::invalid_argument);
}

TEST(Analytic, butterfly_labels_follow_classical_values) {
    QuantumProtocol qp = compile_file("butterfly.json");
    ClassicalEvaluator eval(qp.network());
    std::vector<Letter> in = {Letter(0), Letter(1)};
    AnalyticResult r = simulate_analytic(qp, in);
    std::vector<Letter> labels = eval.eval_edges(in);
    for (std::size_t e = 0; e < labels.size(); ++e) {
        ASSERT_EQ(r.edges[e].label(), labels[e]);
        ASSERT_EQ(r.edges[e].alpha(), qp.edge_alpha(e));
    }
    ASSERT_EQ(r.sinks[0], ShrunkState(Letter(0), qp.sink_alpha(0)));
    ASSERT_EQ(r.sinks[1], ShrunkState(Letter(1), qp.sink_alpha(1)));
}

TEST(NodeOutcomes, tables_sum_to_one) {
    QuantumProtocol qp = compile_file("split_two_to_one.json");
    for (const CompiledNode &c : qp.order()) {
        const D3Node &d = qp.network().nodes[c.node];
        if (d.role == NodeRole::Source) {
            continue;
        }
        std::vector<Letter> in(d.in.size(), Letter(1));
        Rational total;
        for (const NodeOutcome &o : node_outcomes(qp, c, in)) {
            ASSERT_GE(o.probability, 0);
            ASSERT_EQ(o.outputs.size(), d.out.size());
            total += o.probability;
        }
        ASSERT_EQ(total, 1) << d.id;
    }
}

TEST(Oracle, fork_on_tetra_state) {
    QuantumProtocol qp = compile(qnc::testing::fork_network());
    OracleResult<Rational> r = simulate_oracle(qp, std::vector<Letter>{Letter(0)});
    Mat2 marginal = densify(ShrunkState(Letter(0), rational(1, 9)));
    ASSERT_LT(max_abs_diff(densify(r.sinks[0]), marginal), 1e-12);
    const auto &joint = r.fork_joints.at(qp.network().node_of("f"));
    ASSERT_LT(max_abs_diff(joint_density(joint), kron(marginal, marginal)), 1e-12);
    ASSERT_TRUE(r.frontier_always_product);
}

TEST(Oracle, identity_transform) {
    QuantumProtocol qp = compile(qnc::testing::transform_network(LetterMap::identity()));
    OracleResult<Rational> r = simulate_oracle(qp, std::vector<Letter>{Letter(2)});
    ASSERT_EQ(r.sinks[0], to_mixture(ShrunkState(Letter(2), rational(1, 3))));
}

TEST(Oracle, node_rules_against_density_matrices) {
    const LetterMap maps[] = {LetterMap::constant(Letter(1)), LetterMap({Letter(3), Letter(0), Letter(2), Letter(1)}),
                              LetterMap({Letter(1), Letter(3), Letter(3), Letter(1)})};
    for (int i = 1; i <= 6; ++i) {
        Rational a = rational(i, 6);
        for (const LetterMap &g : maps) {
            std::vector<Rational> alphas = {a};
            QuantumProtocol qp = compile(qnc::testing::transform_network(g), alphas);
            std::vector<SourceInput> in = {ShrunkState(Letter(2), a)};
            OracleResult<Rational> r = simulate_oracle(qp, in);
            ASSERT_EQ(as_shrunk(r.sinks[0]), ShrunkState(g(Letter(2)), qp.sink_alpha(0)));
            Mat2 want = ref::transform(densify(ShrunkState(Letter(2), a)), g, to_double(a));
            ASSERT_LT(max_abs_diff(densify(r.sinks[0]), want), 1e-12);
        }
        for (int j = 1; j <= 6; ++j) {
            Rational b = rational(j, 7);
            std::vector<Rational> alphas = {a, b};
            for (GroupKind group : {GroupKind::Z4, GroupKind::Z2xZ2}) {
                QuantumProtocol qp = compile(qnc::testing::join_network(group), alphas);
                std::vector<SourceInput> in = {ShrunkState(Letter(1), a), ShrunkState(Letter(3), b)};
                OracleResult<Rational> r = simulate_oracle(qp, in);
                ASSERT_EQ(as_shrunk(r.sinks[0]), ShrunkState(add(group, Letter(1), Letter(3)), a * b / 9));
                Mat2 want = ref::join(densify(ShrunkState(Letter(1), a)), densify(ShrunkState(Letter(3), b)), group);
                ASSERT_LT(max_abs_diff(densify(r.sinks[0]), want), 1e-12);
            }
        }
    }
}

TEST(Oracle, butterfly_exact_agreement_with_analytic) {
    QuantumProtocol qp = compile_file("butterfly.json");
    for_each_input(2, [&](const std::vector<Letter> &in) {
        OracleResult<Rational> oracle = simulate_oracle(qp, in);
        AnalyticResult analytic = simulate_analytic(qp, in);
        for (std::size_t e = 0; e < analytic.edges.size(); ++e) {
            ASSERT_EQ(oracle.edges[e], to_mixture(analytic.edges[e]));
        }
        for (std::size_t j = 0; j < analytic.sinks.size(); ++j) {
            ASSERT_LT(max_abs_diff(densify(oracle.sinks[j]), densify(analytic.sinks[j])), 1e-12);
        }
        ASSERT_TRUE(oracle.frontier_always_product);
    });
}

TEST(Oracle, shrunk_states_on_random_networks) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        D3Network d3 = qnc::testing::random_d3(rng, 10, 2);
        QuantumProtocol qp = compile(d3);
        ClassicalEvaluator eval(d3);
        for_each_input(d3.sources.size(), [&](const std::vector<Letter> &in) {
            OracleResult<Rational> r = simulate_oracle(qp, in);
            std::vector<Letter> labels = eval.eval_edges(in);
            for (std::size_t e = 0; e < labels.size(); ++e) {
                ASSERT_EQ(r.edges[e], to_mixture(ShrunkState(labels[e], qp.edge_alpha(e))));
            }
            for (const auto &[fork, joint] : r.fork_joints) {
                const D3Node &f = d3.nodes[fork];
                const auto &m1 = r.edges[f.out[0]];
                const auto &m2 = r.edges[f.out[1]];
                for (std::size_t a = 0; a < 4; ++a) {
                    for (std::size_t b = 0; b < 4; ++b) {
                        ASSERT_EQ(joint[4 * a + b], m1[a] * m2[b]);
                    }
                }
            }
            ASSERT_TRUE(r.frontier_always_product);
        });
    }
}

TEST(Oracle, arbitrary_inputs_reach_analytic_fidelity) {
    std::mt19937_64 rng(41);
    for (const char *name : {"butterfly.json", "butterfly_z4.json", "split_two_to_one.json"}) {
        QuantumProtocol qp = compile_file(name);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Vec2> psi;
            std::vector<SourceInput> in;
            for (std::size_t k = 0; k < qp.network().sources.size(); ++k) {
                psi.push_back(qnc::testing::random_pure(rng));
                in.push_back(vector_input(psi.back()));
            }
            OracleResult<double> r = simulate_oracle_real(qp, in);
            for (std::size_t j = 0; j < r.sinks.size(); ++j) {
                const Vec2 &target = psi[qp.network().sink_source[j]];
                double f = fidelity(target, DensityMatrix2(densify(r.sinks[j])));
                ASSERT_NEAR(f, 0.5 + to_double(qp.sink_alpha(j)) / 6, 1e-12) << name;
                ASSERT_GT(f, 0.5);
            }
        }
    }
}

TEST(Oracle, exact_oracle_refuses_density_inputs) {
    QuantumProtocol qp = compile(qnc::testing::fork_network());
    std::vector<SourceInput> in = {DensityMatrix2::maximally_mixed()};
    ASSERT_THROW(simulate_oracle(qp, in), std::invalid_argument);
}

TEST(Oracle, size_guard) {
    QuantumProtocol qp = compile(direct_network(12));
    std::vector<Letter> in(12, Letter(0));
    ASSERT_THROW(simulate_oracle(qp, in), SizeError);
    QuantumProtocol small = compile(direct_network(3));
    ASSERT_NO_THROW(simulate_oracle(small, std::vector<Letter>(3, Letter(1))));
}

TEST(BranchTree, sums_to_one_and_matches_merged_oracle) {
    std::vector<QuantumProtocol> nets = {compile(qnc::testing::fork_network()),
                                         compile(qnc::testing::join_network(GroupKind::Z4)),
                                         compile(qnc::testing::transform_network(
                                             LetterMap({Letter(1), Letter(3), Letter(3), Letter(1)})))};
    std::mt19937_64 rng(5);
    while (nets.size() < 15) {
        D3Network d3 = qnc::testing::random_d3(rng, 7, 2);
        nets.push_back(compile(d3));
    }
    int enumerated = 0;
    for (const QuantumProtocol &qp : nets) {
        std::vector<Letter> in(qp.network().sources.size(), Letter(3));
        BranchTree tree;
        try {
            tree = enumerate_branches(qp, in, 200'000);
        } catch (const SizeError &) {
            continue;
        }
        ++enumerated;
        ASSERT_EQ(tree.total(), 1);
        OracleResult<Rational> oracle = simulate_oracle(qp, in);
        for (std::size_t e = 0; e < qp.network().edges.size(); ++e) {
            TetraMixture m;
            for (const Branch &b : tree.branches) {
                m[b.edges[e].value()] += b.probability;
            }
            ASSERT_EQ(m, oracle.edges[e]);
        }
    }
    ASSERT_GE(enumerated, 5);
    ASSERT_THROW(enumerate_branches(compile_file("butterfly.json"), std::vector<Letter>(2, Letter(0)), 1000),
                 SizeError);
}

TEST(BranchTree, shrunk_source_branches) {
    QuantumProtocol qp = compile(qnc::testing::fork_network(), std::vector<Rational>{rational(1, 5)});
    std::vector<SourceInput> in = {ShrunkState(Letter(1), rational(1, 5))};
    BranchTree tree = enumerate_branches(qp, in);
    ASSERT_EQ(tree.total(), 1);
    ASSERT_EQ(tree.branches.size(), 4u * 64u);
}

TEST(MonteCarlo, ttr_frequencies_on_single_edge) {
    QuantumProtocol qp = compile(direct_network(1));
    std::vector<SourceInput> in = {vector_input(tetra(Letter(0)).vector)};
    std::vector<Vec2> target = {tetra(Letter(0)).vector};
    const std::uint64_t n = 200'000;
    MonteCarloResult mc = simulate_montecarlo(qp, in, target, n, 12345);
    const double expected[4] = {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6};
    for (int z = 0; z < 4; ++z) {
        double f = static_cast<double>(mc.sinks[0].counts[z]) / n;
        double sigma = std::sqrt(expected[z] * (1 - expected[z]) / n);
        ASSERT_NEAR(f, expected[z], 3 * sigma);
    }
}

TEST(MonteCarlo, single_trial_and_determinism) {
    QuantumProtocol qp = compile_file("butterfly.json");
    std::vector<SourceInput> in = {Letter(1), Letter(2)};
    std::vector<Vec2> target = {tetra(Letter(1)).vector, tetra(Letter(2)).vector};
    MonteCarloResult one = simulate_montecarlo(qp, in, target, 1, 9);
    for (const MonteCarloSink &s : one.sinks) {
        ASSERT_EQ(s.counts[0] + s.counts[1] + s.counts[2] + s.counts[3], 1u);
        ASSERT_EQ(s.stderr_, 0);
    }
    std::uint64_t n = 3 * kTrialsPerBlock + 17;
    MonteCarloResult a = simulate_montecarlo(qp, in, target, n, 77, 1);
    MonteCarloResult b = simulate_montecarlo(qp, in, target, n, 77, 3);
    MonteCarloResult c = simulate_montecarlo(qp, in, target, n, 78, 1);
    for (std::size_t j = 0; j < a.sinks.size(); ++j) {
        ASSERT_EQ(a.sinks[j].counts, b.sinks[j].counts);
        ASSERT_EQ(a.sinks[j].fidelity, b.sinks[j].fidelity);
    }
    ASSERT_NE(a.sinks[0].counts, c.sinks[0].counts);
    ASSERT_THROW(simulate_montecarlo(qp, in, target, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, chi_square_against_oracle) {
    QuantumProtocol qp = compile_file("split_two_to_one.json");
    std::mt19937_64 rng(8);
    std::vector<SourceInput> in;
    std::vector<Vec2> target;
    for (int k = 0; k < 2; ++k) {
        target.push_back(qnc::testing::random_pure(rng));
        in.push_back(vector_input(target.back()));
    }
    OracleResult<double> oracle = simulate_oracle_real(qp, in);
    const std::uint64_t n = 1'000'000;
    MonteCarloResult mc = simulate_montecarlo(qp, in, target, n, 2718);
    for (std::size_t j = 0; j < mc.sinks.size(); ++j) {
        double chi2 = 0;
        for (int z = 0; z < 4; ++z) {
            double expected = oracle.sinks[j][z] * n;
            double diff = static_cast<double>(mc.sinks[j].counts[z]) - expected;
            chi2 += diff * diff / expected;
        }
        ASSERT_LT(chi2, 16.266);  // df = 3, significance 0.001
        double want = 0.5 + to_double(qp.sink_alpha(j)) / 6;
        ASSERT_NEAR(mc.sinks[j].fidelity, want, 3 * mc.sinks[j].stderr_);
    }
}

TEST(Report, butterfly_fidelities) {
    QuantumProtocol qp = compile_file("butterfly.json");
    std::mt19937_64 rng(4);
    std::vector<InputSpec> a = {qnc::testing::random_pure(rng), qnc::testing::random_pure(rng)};
    std::vector<InputSpec> b = {qnc::testing::random_pure(rng), Vec2(0, 1)};
    SimReport ra = fidelity_report(qp, a, {.oracle = true});
    SimReport rb = fidelity_report(qp, b);
    for (std::size_t j = 0; j < 2; ++j) {
        ASSERT_EQ(ra.sinks[j].analytic_fidelity, rational(1, 2) + rational(1, 531441) / 6);
        ASSERT_EQ(ra.sinks[j].analytic_fidelity, rb.sinks[j].analytic_fidelity);
        ASSERT_NEAR(*ra.sinks[j].oracle_fidelity, to_double(ra.sinks[j].analytic_fidelity), 1e-12);
        ASSERT_TRUE(ra.sinks[j].passes);
        ASSERT_EQ(ra.sinks[j].requirement_met, true);
    }
    ASSERT_TRUE(ra.all_pass());

    std::vector<InputSpec> tetra_in = {Letter(2), Letter(3)};
    SimReport rt = fidelity_report(qp, tetra_in, {.oracle = true});
    ASSERT_TRUE(rt.sinks[0].tetra_input);
    ASSERT_EQ(rt.sinks[0].expected(), rational(1, 2) + rational(1, 531441) / 2);
    ASSERT_NEAR(*rt.sinks[0].oracle_fidelity, to_double(rt.sinks[0].tetra_fidelity), 1e-12);

    Json doc = ra.to_json();
    ASSERT_EQ(doc["sinks"][0]["alphaAtSink"], "1/531441");
    ASSERT_TRUE(doc["allPass"].get<bool>());
    ASSERT_NE(ra.table().find("t2"), std::string::npos);
}

TEST(Report, requirement_violation_fails) {
    QuantumProtocol qp = compile_file("reduced_butterfly.json");
    std::vector<InputSpec> in = {Letter(0), Letter(0)};
    SimReport r = fidelity_report(qp, in, {.oracle = true});
    ASSERT_TRUE(r.sinks[0].passes);
    ASSERT_FALSE(r.sinks[1].passes);
    ASSERT_EQ(r.sinks[1].requirement_met, false);
    ASSERT_FALSE(r.all_pass());
}

TEST(Report, montecarlo_attached) {
    QuantumProtocol qp = compile_file("butterfly.json");
    std::vector<InputSpec> in = {Vec2(1, 0), Vec2(0, 1)};
    SimReport r = fidelity_report(qp, in, {.trials = 20'000, .seed = 3});
    ASSERT_TRUE(r.sinks[0].mc_fidelity.has_value());
    ASSERT_GT(*r.sinks[0].mc_stderr, 0);
    ASSERT_EQ(*r.trials, 20'000u);
    ASSERT_EQ(format_double(0.1), "0.10000000000000001");
}
