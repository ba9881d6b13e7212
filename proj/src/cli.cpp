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


#include "qnc/cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qnc {

namespace {

void setup_logging() {
    static bool done = false;
    if (done) {
        return;
    }
    done = true;
    auto logger = spdlog::stderr_color_mt("qnc");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char *env = std::getenv("QNC_LOG");
    spdlog::set_level(env != nullptr ? spdlog::level::from_str(env) : spdlog::level::warn);
}

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
}

bool is_compiled(const Json &doc) {
    return doc.is_object() && doc.contains("protocol") && doc.contains("network");
}

Instance instance_of(const Json &doc) {
    return parse_instance(is_compiled(doc) ? doc["network"] : doc);
}

QuantumProtocol protocol_of(const Json &doc) {
    if (is_compiled(doc)) {
        return parse_protocol(doc);
    }
    Instance inst = parse_instance(doc);
    if (std::optional<D3Network> d3 = as_d3(inst.network, inst.protocol)) {
        return compile(*d3);
    }
    return compile(normalize_to_d3(inst.network, inst.protocol).d3);
}

void emit(const RunConfig &config, const std::string &text, std::ostream &out) {
    if (config.output_path) {
        std::ofstream file(*config.output_path);
        if (!file) {
            throw std::runtime_error("cannot write " + *config.output_path);
        }
        file << text;
        spdlog::info("wrote {}", *config.output_path);
    } else {
        out << text;
    }
}

int simulate(const RunConfig &config, const QuantumProtocol &qp, std::ostream &out) {
    std::vector<InputSpec> inputs = parse_input_spec(config.inputs, qp.network().sources.size());
    ReportOptions options;
    options.oracle = config.mode == SimMode::Oracle;
    if (config.mode == SimMode::MonteCarlo) {
        if (config.trials < 1) {
            throw std::invalid_argument("--trials must be at least 1");
        }
        options.trials = config.trials;
        options.seed = config.seed;
    }
    spdlog::debug("simulating {} nodes", qp.order().size());
    SimReport report = fidelity_report(qp, inputs, options);

    const char *mode_name[] = {"analytic", "oracle", "montecarlo"};
    Json doc = {{"mode", mode_name[static_cast<int>(config.mode)]}};
    Json body = report.to_json();
    for (auto &[key, value] : body.items()) {
        doc[key] = value;
    }
    bool all_labels = std::all_of(inputs.begin(), inputs.end(),
                                  [](const InputSpec &in) { return std::holds_alternative<Letter>(in); });
    if (config.mode == SimMode::Analytic && all_labels) {
        std::vector<Letter> labels;
        for (const InputSpec &in : inputs) {
            labels.push_back(std::get<Letter>(in));
        }
        AnalyticResult analytic = simulate_analytic(qp, labels);
        const D3Network &d3 = qp.network();
        Json edges = Json::array();
        for (std::size_t e = 0; e < d3.edges.size(); ++e) {
            edges.push_back({{"from", d3.nodes[d3.edges[e].from].id},
                             {"to", d3.nodes[d3.edges[e].to].id},
                             {"label", analytic.edges[e].label().str()},
                             {"alpha", to_string(analytic.edges[e].alpha())}});
        }
        doc["edges"] = edges;
    }

    if (config.command == Command::Report) {
        out << report.table();
        if (config.output_path) {
            emit(config, doc.dump(2) + "\n", out);
        }
    } else {
        emit(config, doc.dump(2) + "\n", out);
    }
    for (const SinkReport &s : report.sinks) {
        if (!s.passes) {
            spdlog::error("sink {} fails: {}", s.sink,
                          s.requirement_met == false ? "classical protocol does not deliver its source"
                                                     : "fidelity does not exceed 1/2");
        }
    }
    return static_cast<int>(report.all_pass() ? ExitCode::Ok : ExitCode::FidelityFail);
}

int dispatch(const RunConfig &config, std::ostream &out, std::ostream &err) {
    Json doc = read_json(config.input_path);
    switch (config.command) {
        case Command::Validate: {
            Instance inst = instance_of(doc);
            ValidationReport report = validate_network(inst.network, inst.protocol);
            if (!report.ok()) {
                err << report.str();
                return static_cast<int>(ExitCode::Validation);
            }
            out << "ok: " << inst.network.nodes.size() << " nodes, " << inst.network.edges.size() << " edges\n";
            return 0;
        }
        case Command::Eval: {
            Instance inst = instance_of(doc);
            ClassicalEvaluator eval(inst.network, inst.protocol);
            TruthTable table = eval.truth_table();
            RequirementCheck check = eval.check_requirement();
            if (!check.satisfied) {
                spdlog::warn("protocol does not meet the sink requirements");
            }
            emit(config, table.csv(), out);
            return 0;
        }
        case Command::Normalize: {
            Instance inst = instance_of(doc);
            Normalized n = normalize_to_d3(inst.network, inst.protocol);
            spdlog::info("normalized to {} nodes", n.d3.nodes.size());
            emit(config, to_json(n.d3, &n.correspondence).dump(2) + "\n", out);
            return 0;
        }
        case Command::Compile:
            emit(config, to_json(protocol_of(doc)).dump(2) + "\n", out);
            return 0;
        case Command::Simulate:
        case Command::Report:
            return simulate(config, protocol_of(doc), out);
    }
    return static_cast<int>(ExitCode::Usage);
}

}  // namespace

std::vector<InputSpec> parse_input_spec(const std::string &text, std::size_t sources) {
    std::vector<InputSpec> specs;
    if (text.empty()) {
        specs.assign(sources, Letter(0));
        return specs;
    }
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (auto letter = Letter::parse(token)) {
            specs.emplace_back(*letter);
        } else if (token == "0" || token == "1") {
            specs.emplace_back(token == "0" ? Vec2(1, 0) : Vec2(0, 1));
        } else if (auto colon = token.find(':'); colon != std::string::npos) {
            try {
                std::size_t used1 = 0, used2 = 0;
                std::string a = token.substr(0, colon), b = token.substr(colon + 1);
                double theta = std::stod(a, &used1), phi = std::stod(b, &used2);
                if (used1 != a.size() || used2 != b.size()) {
                    throw std::invalid_argument("trailing characters");
                }
                specs.emplace_back(pure_from_bloch_angles(theta, phi));
            } catch (const std::exception &) {
                throw std::invalid_argument("bad Bloch angles '" + token + "'");
            }
        } else {
            throw std::invalid_argument("bad input '" + token + "' (expected 00..11, 0, 1 or theta:phi)");
        }
    }
    if (specs.size() != sources) {
        throw std::invalid_argument("--inputs has " + std::to_string(specs.size()) + " entries for " +
                                    std::to_string(sources) + " sources");
    }
    return specs;
}

ParsedArgs parse_args(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum network coding compiler and simulator"};
    std::string command, mode = "analytic";
    RunConfig config;
    std::string output;
    app.add_option("command", command, "validate | eval | normalize | compile | simulate | report")
        ->required()
        ->check(CLI::IsMember({"validate", "eval", "normalize", "compile", "simulate", "report"}));
    app.add_option("input", config.input_path, "network or compiled protocol JSON")->required();
    app.add_option("--mode", mode, "simulation mode")
        ->check(CLI::IsMember({"analytic", "oracle", "montecarlo"}));
    app.add_option("--trials", config.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "Monte Carlo seed");
    app.add_option("--inputs", config.inputs, "per-source inputs: 00..11, 0, 1 or theta:phi");
    app.add_option("--out", output, "write the artifact here instead of stdout");

    ParsedArgs result;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        result.exit_code = app.exit(e, out, err);
        if (result.exit_code != 0) {
            result.exit_code = static_cast<int>(ExitCode::Usage);
        }
        return result;
    }
    const std::pair<const char *, Command> commands[] = {
        {"validate", Command::Validate}, {"eval", Command::Eval},         {"normalize", Command::Normalize},
        {"compile", Command::Compile},   {"simulate", Command::Simulate}, {"report", Command::Report},
    };
    for (const auto &[name, c] : commands) {
        if (command == name) {
            config.command = c;
        }
    }
    config.mode = mode == "oracle" ? SimMode::Oracle : mode == "montecarlo" ? SimMode::MonteCarlo : SimMode::Analytic;
    if (!output.empty()) {
        config.output_path = output;
    }
    result.config = config;
    return result;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    setup_logging();
    try {
        return dispatch(config, out, err);
    } catch (const ParseError &e) {
        err << "parse error at " << e.what() << "\n";
        return static_cast<int>(ExitCode::Parse);
    } catch (const InvalidInstance &e) {
        err << e.what();
        return static_cast<int>(ExitCode::Validation);
    } catch (const SizeError &e) {
        err << "size limit: " << e.what() << "\n";
        return static_cast<int>(ExitCode::SizeGuard);
    } catch (const CompileError &e) {
        err << "compile error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Compile);
    } catch (const std::invalid_argument &e) {
        err << "usage: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    }
}

}  // namespace qnc
