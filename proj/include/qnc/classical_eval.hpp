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


#ifndef QNC_CLASSICAL_EVAL_HPP
#define QNC_CLASSICAL_EVAL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnc/d3.hpp"
#include "qnc/network.hpp"

namespace qnc {

/// Raised when an exhaustive enumeration or simulation exceeds its bound.
class SizeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxExhaustiveSources = 8;

struct TruthRow {
    std::vector<Letter> inputs;   // one per source
    std::vector<Letter> outputs;  // one per sink
    bool operator==(const TruthRow &) const = default;
};

struct TruthTable {
    std::vector<std::string> source_ids;
    std::vector<std::string> sink_ids;
    std::vector<TruthRow> rows;  // inputs in lexicographic order, first source most significant

    /// Header "sources..., sinks...", one line per row, letters as "00".."11".
    std::string csv() const;
};

struct RequirementCheck {
    bool satisfied = false;
    std::optional<TruthRow> counterexample;
};

/// Runs a classical protocol. Built once per instance; the evaluation
/// order is fixed at construction.
class ClassicalEvaluator {
   public:
    ClassicalEvaluator(const Network &net, const ClassicalProtocol &proto);
    explicit ClassicalEvaluator(const D3Network &d3);

    std::size_t source_count() const {
        return sources_.size();
    }
    std::size_t sink_count() const {
        return sinks_.size();
    }
    std::vector<std::string> source_ids() const;
    std::vector<std::string> sink_ids() const;

    /// Letter on every edge, indexed by edge id. Throws std::invalid_argument
    /// if the input arity is wrong.
    std::vector<Letter> eval_edges(std::span<const Letter> inputs) const;
    /// Letter delivered at each sink.
    std::vector<Letter> eval(std::span<const Letter> inputs) const;

    /// All 4^n rows; throws SizeError for more than kMaxExhaustiveSources sources.
    TruthTable truth_table() const;
    /// y_j == x_{sigma(j)} for every input tuple.
    RequirementCheck check_requirement() const;

   private:
    ClassicalEvaluator(NetworkIndex index, std::vector<std::size_t> sources, std::vector<std::size_t> sinks,
                       std::vector<std::size_t> sink_source);

    void guard_size() const;

    NetworkIndex index_;
    std::vector<std::size_t> sources_;      // node indices
    std::vector<std::size_t> sinks_;        // node indices
    std::vector<std::size_t> sink_source_;  // sink position -> source position
};

/// Calls `fn(inputs)` for every tuple in Sigma4^n, lexicographic order.
template <typename Fn>
void for_each_input(std::size_t n, Fn &&fn) {
    std::vector<Letter> inputs(n, Letter(0));
    std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t i = 0; i < n; ++i) {
            inputs[i] = Letter(static_cast<unsigned>(code >> (2 * (n - 1 - i))));
        }
        fn(static_cast<const std::vector<Letter> &>(inputs));
    }
}

}  // namespace qnc

#endif
