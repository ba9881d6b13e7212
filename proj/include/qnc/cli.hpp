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


#ifndef QNC_CLI_HPP
#define QNC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qnc/qsim.hpp"

namespace qnc {

enum class ExitCode : int {
    Ok = 0,
    FidelityFail = 1,
    Usage = 2,
    Parse = 3,
    Validation = 4,
    SizeGuard = 5,
    Compile = 6,
};

enum class Command { Validate, Eval, Normalize, Compile, Simulate, Report };
enum class SimMode { Analytic, Oracle, MonteCarlo };

struct RunConfig {
    Command command = Command::Validate;
    std::string input_path;
    SimMode mode = SimMode::Analytic;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;
    /// Comma-separated, one per source: "00".."11" for a tetra label, "0" or
    /// "1" for a computational basis state, "theta:phi" for Bloch angles.
    /// Empty means tetra label 00 everywhere.
    std::string inputs;
    std::optional<std::string> output_path;
};

/// Throws std::invalid_argument naming the bad token.
std::vector<InputSpec> parse_input_spec(const std::string &text, std::size_t sources);

/// Parses argv into a config. On --help or bad arguments prints to `out`/`err`
/// and returns the exit code instead.
struct ParsedArgs {
    std::optional<RunConfig> config;
    int exit_code = 0;
};
ParsedArgs parse_args(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Runs one pipeline stage. Artifacts go to config.output_path, or to `out`
/// when there is none; messages go to `err`.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace qnc

#endif
