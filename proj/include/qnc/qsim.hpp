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


#ifndef QNC_QSIM_HPP
#define QNC_QSIM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qnc/classical_eval.hpp"
#include "qnc/json_io.hpp"
#include "qnc/qcompiler.hpp"
#include "qnc/qmath.hpp"

namespace qnc {

/// One elementary outcome of a node: every measurement result and emission
/// choice is a separate entry, so the same output letters may repeat.
struct NodeOutcome {
    Rational probability;
    std::vector<Letter> measured;  // TTR results, one per input edge
    std::vector<Letter> outputs;   // letter per output edge
};

/// Exact outcome table of a non-source node given the tetra labels on its
/// input edges. Sinks have a single outcome with no outputs.
std::vector<NodeOutcome> node_outcomes(const QuantumProtocol &qp, const CompiledNode &node,
                                       std::span<const Letter> inputs);

/// Per-edge states when every source j is fed chi(x_j).
struct AnalyticResult {
    std::vector<ShrunkState> edges;  // by edge id
    std::vector<ShrunkState> sinks;  // by sink position
};

/// Throws std::invalid_argument on wrong arity.
AnalyticResult simulate_analytic(const QuantumProtocol &qp, std::span<const Letter> inputs);

/// What a source emits. A tetra label is passed on as chi(x); a shrunk state
/// as its tetra mixture; any other density matrix is measured with TTR.
using SourceInput = std::variant<Letter, ShrunkState, DensityMatrix2>;

inline constexpr std::size_t kOracleCap = 10'000'000;

/// Exact process over tetra labels. Weight is Rational when all inputs are
/// labels or shrunk states, double otherwise.
template <typename Weight>
struct OracleResult {
    /// Label distribution on each edge = its tetra mixture.
    std::vector<std::array<Weight, 4>> edges;
    /// Fork node -> joint over (first out edge, second out edge), index 4a+b.
    std::map<std::size_t, std::array<Weight, 16>> fork_joints;
    std::vector<std::array<Weight, 4>> sinks;
    /// Largest number of live-edge configurations held at once.
    std::size_t peak_configurations = 0;
    /// Whether the joint over live edges equalled the product of its
    /// marginals after every step (exactly, or within 1e-12 for double).
    bool frontier_always_product = true;
};

/// Exact-weight oracle. Throws SizeError if a step would handle more than
/// kOracleCap configurations times outcomes, and std::invalid_argument if an
/// input is a DensityMatrix2 (use simulate_oracle_real).
OracleResult<Rational> simulate_oracle(const QuantumProtocol &qp, std::span<const SourceInput> inputs);
OracleResult<Rational> simulate_oracle(const QuantumProtocol &qp, std::span<const Letter> inputs);
/// Same process with double weights; accepts any SourceInput.
OracleResult<double> simulate_oracle_real(const QuantumProtocol &qp, std::span<const SourceInput> inputs);

/// Every branch of the process with its exact probability and the label on
/// every edge.
struct Branch {
    Rational probability;
    std::vector<Letter> edges;
};
struct BranchTree {
    std::vector<Branch> branches;
    Rational total() const;
};

/// Literal enumeration; a shrunk-state source branches over its tetra
/// mixture. Branches with zero probability are pruned. Throws SizeError past
/// max_branches and std::invalid_argument for DensityMatrix2 inputs.
BranchTree enumerate_branches(const QuantumProtocol &qp, std::span<const SourceInput> inputs,
                              std::size_t max_branches = 1'000'000);
BranchTree enumerate_branches(const QuantumProtocol &qp, std::span<const Letter> inputs,
                              std::size_t max_branches = 1'000'000);

struct MonteCarloSink {
    std::array<std::uint64_t, 4> counts{};
    Mat2 empirical;  // sum_z freq(z) chi(z)
    double fidelity = 0;
    double stderr_ = 0;
};

struct MonteCarloResult {
    std::uint64_t trials = 0;
    std::vector<MonteCarloSink> sinks;
};

inline constexpr std::uint64_t kTrialsPerBlock = 1 << 16;

/// Samples the process `trials` times. Trials are split into blocks of
/// kTrialsPerBlock, block b drawing from a generator seeded with
/// (seed, b), so the result does not depend on the thread count. Fidelity at
/// sink j is measured against the pure target of source sigma(j): chi(x) for
/// label inputs, the given vector otherwise; stderr is the sample standard
/// deviation of the per-trial fidelity over sqrt(trials).
MonteCarloResult simulate_montecarlo(const QuantumProtocol &qp, std::span<const SourceInput> inputs,
                                     std::span<const Vec2> targets, std::uint64_t trials, std::uint64_t seed,
                                     unsigned threads = 0);

/// Source input and fidelity target for a pure vector.
SourceInput vector_input(const Vec2 &psi);

struct SinkReport {
    std::string sink;
    std::string source;
    Rational alpha;
    /// 1/2 + alpha/6: arbitrary pure inputs, source TTR included.
    Rational analytic_fidelity;
    /// 1/2 + alpha/2: input fed as a tetra label.
    Rational tetra_fidelity;
    bool tetra_input = false;
    /// Whether the classical protocol delivers x_sigma(j) here for every
    /// input tuple; empty when there are too many sources to check.
    std::optional<bool> requirement_met;
    std::optional<double> oracle_fidelity;
    std::optional<double> mc_fidelity;
    std::optional<double> mc_stderr;
    bool passes = false;

    /// Fidelity predicted for the actual input kind.
    const Rational &expected() const {
        return tetra_input ? tetra_fidelity : analytic_fidelity;
    }
};

struct SimReport {
    std::vector<SinkReport> sinks;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    bool all_pass() const;
    Json to_json() const;
    std::string table() const;
};

/// One pure state per source: a tetra label or a vector.
using InputSpec = std::variant<Letter, Vec2>;

struct ReportOptions {
    bool oracle = false;
    std::uint64_t trials = 0;  // 0: no Monte Carlo
    std::uint64_t seed = 0;
};

/// A sink passes when its classical requirement holds (or could not be
/// checked) and the analytic fidelity, and the oracle one if run, exceed 1/2.
/// The fidelity formulas presume the requirement. The Monte Carlo estimate
/// is reported but not judged.
SimReport fidelity_report(const QuantumProtocol &qp, std::span<const InputSpec> inputs,
                          const ReportOptions &options = {});

/// 17 significant digits.
std::string format_double(double x);

}  // namespace qnc

#endif
