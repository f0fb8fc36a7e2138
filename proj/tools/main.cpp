// Copyright 2026 The corrsim Authors
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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace corrsim;
using namespace corrsim::cli;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct RunFlags {
    std::string preset;
    std::string spec_file;
    std::string name;
    std::string scheme;
    std::string w;
    std::string channel_file;
    std::size_t rounds = 1;
    std::string data;
    std::string carrier;
    std::size_t n = 3;
    std::string ancilla;
    std::vector<std::string> errors;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    std::string noise;
    std::string format = "json";
    std::string output;
    bool ibm_bit_order = false;
};

// Base spec from --preset or --spec, then every flag given on the command line on top.
RunOptions build_run_options(const RunFlags &f, const CLI::App &run) {
    ExperimentSpec spec;
    if (!f.preset.empty()) {
        spec = preset_experiment(f.preset);
    } else if (!f.spec_file.empty()) {
        spec = parse_experiment_json(read_file(f.spec_file));
    } else if (!f.scheme.empty()) {
        spec.scheme = parse_scheme(f.scheme);
        spec.name = f.scheme;
    } else {
        throw std::invalid_argument("run needs --preset, --spec or --scheme");
    }
    auto given = [&](const char *flag) {
        return run.count(flag) > 0;
    };
    if (given("--scheme")) spec.scheme = parse_scheme(f.scheme);
    if (given("--name")) spec.name = f.name;
    if (given("--w")) spec.w = f.w;
    if (given("--channel")) spec.channel = read_file(f.channel_file);
    if (given("--rounds")) spec.rounds = f.rounds;
    if (given("--data")) spec.data = f.data;
    if (given("--carrier")) spec.carrier = f.carrier;
    if (given("--n")) spec.n = f.n;
    if (given("--ancilla")) spec.ancilla = f.ancilla;
    if (given("--errors")) {
        spec.errors.clear();
        for (const auto &e : f.errors) {
            spec.errors.push_back(parse_error_tag(e));
        }
    }
    if (given("--shots")) spec.shots = f.shots;
    if (given("--seed")) spec.seed = f.seed;
    if (given("--noise")) spec.noise = parse_noise(f.noise);
    spec.validate();

    RunOptions opts;
    opts.spec = std::move(spec);
    opts.format = f.format == "csv" ? Format::csv : Format::json;
    if (!f.output.empty()) {
        opts.output = f.output;
    }
    opts.ibm_bit_order = f.ibm_bit_order;
    return opts;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator for error avoidance under fully-correlated noise"};
    app.require_subcommand(1);

    auto *verify = app.add_subcommand("verify", "Run the invariant battery; exit 1 on any failure");
    std::uint64_t verify_seed = 2024;
    verify->add_option("--seed", verify_seed, "Seed for the randomized checks");

    RunFlags rf;
    auto *run = app.add_subcommand("run", "Run an experiment and write its report");
    run->add_option("--preset", rf.preset, "Built-in experiment name");
    run->add_option("--spec", rf.spec_file, "Experiment spec JSON file");
    run->add_option("--name", rf.name, "Report name (also selects the RNG stream)");
    run->add_option("--scheme", rf.scheme, "corr3 | corr3-basic | corr5 | corr5-basic | hybrid");
    run->add_option("--w", rf.w, "Error atom: h | x | y | z | i | ry:<alpha> | matrix:<json>");
    run->add_option("--channel", rf.channel_file, "Channel JSON file (overrides --w)");
    run->add_option("--rounds", rf.rounds, "Channel applications")->check(CLI::PositiveNumber);
    run->add_option("--data", rf.data, "Prepared data bits");
    run->add_option("--carrier", rf.carrier, "Carrier qubit: 0 | 1 | ry:<alpha>");
    run->add_option("--n", rf.n, "Hybrid register size (2..8)");
    run->add_option("--ancilla", rf.ancilla, "Hybrid ancilla: 0 | 1 | 00..11 | ry:<alpha>");
    run->add_option("--errors", rf.errors, "Hybrid error list, e.g. x,y")->delimiter(',');
    run->add_option("--shots", rf.shots, "Number of shots");
    run->add_option("--seed", rf.seed, "RNG seed");
    run->add_option("--noise", rf.noise, "0 | synthetic | p1=<x>,p2=<x>,readout=<x>");
    run->add_option("--format", rf.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("-o,--output", rf.output, "Output path (default: $CORRSIM_OUT_DIR/<name>.<ext> or stdout)");
    run->add_flag("--ibm-bit-order", rf.ibm_bit_order, "Reverse bitstrings so wire 0 is rightmost");

    std::string what;
    auto *dump = app.add_subcommand("dump", "Print a matrix or circuit");
    dump->add_option("what", what, "u | old-u | p2 | p3 | pn:<n> | circuit:<name>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    if (verify->parsed()) {
        VerifyOptions opts;
        opts.seed = verify_seed;
        return cmd_verify(opts, std::cout);
    }
    if (run->parsed()) {
        RunOptions opts;
        try {
            opts = build_run_options(rf, *run);
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        return cmd_run(opts, std::cout, std::cerr);
    }
    return cmd_dump(what, std::cout, std::cerr);
}
