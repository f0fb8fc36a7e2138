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

#ifndef CORRSIM_TOOLS_CLI_HPP
#define CORRSIM_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "corrsim/linalg.hpp"
#include "corrsim/noise_exp.hpp"

namespace corrsim::cli {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct VerifyOptions {
    /// Reference encoder the decompositions are checked against. Defaults to
    /// build_new_U(); tests replace it to confirm the suite notices.
    std::optional<ComplexMatrix> reference_u;
    std::uint64_t seed = 2024;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_checks(const VerifyOptions &opts);
int cmd_verify(const VerifyOptions &opts, std::ostream &out);

enum class Format { json, csv };

struct RunOptions {
    ExperimentSpec spec;
    Format format = Format::json;
    /// Output file. When unset, CORRSIM_OUT_DIR/<name>.<ext> if that variable is
    /// set, else stdout.
    std::optional<std::string> output;
    bool ibm_bit_order = false;
};

/// Validates, runs and writes the report. Files are written only after the run
/// succeeds.
int cmd_run(const RunOptions &opts, std::ostream &out, std::ostream &err);

/// `u`, `old-u`, `p2`, `p3`, `pn:<n>` or `circuit:<standard3|basic3|recursive5|explicit5|hybrid<n>>`.
std::string dump_text(const std::string &what);
int cmd_dump(const std::string &what, std::ostream &out, std::ostream &err);

/// The 4-decimal values quoted for the product of the original six-factor circuit.
ComplexMatrix printed_erroneous_product();

}  // namespace corrsim::cli

#endif
