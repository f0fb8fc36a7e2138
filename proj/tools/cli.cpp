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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "corrsim/correlated.hpp"
#include "corrsim/hybrid.hpp"

using namespace corrsim;
using namespace corrsim::cli;

namespace {

std::string dev(double x) {
    return format_double(x);
}

CheckResult check(std::string name, bool pass, std::string detail) {
    return CheckResult{std::move(name), pass, std::move(detail)};
}

CheckResult guarded(const std::string &name, const std::function<CheckResult()> &body) {
    try {
        return body();
    } catch (const std::exception &e) {
        return check(name, false, std::string("exception: ") + e.what());
    }
}

std::string extension(Format f) {
    return f == Format::json ? ".json" : ".csv";
}

void write_file_atomically(const std::filesystem::path &path, const std::string &text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        f << text;
        if (!f) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::size_t parse_register_size(const std::string &text, const char *what) {
    double x = parse_real(text);
    if (x != std::floor(x) || x < 2 || x > 8) {
        throw std::invalid_argument(std::string(what) + ": n must be an integer in 2..8");
    }
    return static_cast<std::size_t>(x);
}

}  // namespace

ComplexMatrix corrsim::cli::printed_erroneous_product() {
    return ComplexMatrix::from_rows({
        {0, 0, 0, 0, 0, -1.0000, 0, 0},
        {0.7071, 0, 0.4082, 0, 0, 0, 0.5774, 0},
        {-0.7071, 0, 0.4082, 0, 0, 0, 0.5774, 0},
        {0, 0, 0, 0.8165, 0, 0, 0, -0.5774},
        {0, 0, -0.8165, 0, 0, 0, 0.5774, 0},
        {0, 0.7071, 0, -0.4082, 0, 0, 0, -0.5774},
        {0, -0.7071, 0, -0.4082, 0, 0, 0, -0.5774},
        {0, 0, 0, 0, 1.0000, 0, 0, 0},
    });
}

std::vector<CheckResult> corrsim::cli::run_checks(const VerifyOptions &opts) {
    const ComplexMatrix u = opts.reference_u ? *opts.reference_u : build_new_U();
    std::vector<CheckResult> results;

    results.push_back(guarded("standard-decomposition", [&] {
        Circuit c = standard_decomposition();
        double d = max_abs_diff(realize(c), u);
        return check("standard-decomposition", d <= 1e-12 && c.size() == 6, "max_dev=" + dev(d) + " gates=" + std::to_string(c.size()));
    }));

    results.push_back(guarded("basic-decomposition", [&] {
        Circuit c = basic_decomposition();
        double d = max_abs_diff(realize(c), u);
        std::size_t two = c.count_arity(2);
        std::size_t one = c.count_arity(1);
        return check(
            "basic-decomposition",
            d <= 1e-12 && two == 6 && one == 8,
            "max_dev=" + dev(d) + " two_wire=" + std::to_string(two) + " one_wire=" + std::to_string(one));
    }));

    results.push_back(guarded("old-new-shared-columns", [&] {
        ComplexMatrix old_u = build_old_U();
        double d = max_abs_diff(block(old_u, 0, 0, 8, 4), block(u, 0, 0, 8, 4));
        return check("old-new-shared-columns", d <= 1e-12, "max_dev=" + dev(d));
    }));

    results.push_back(guarded("erroneous-product", [&] {
        ComplexMatrix product = erroneous_decomposition_product();
        ComplexMatrix printed = printed_erroneous_product();
        std::size_t mismatched = 0;
        for (std::size_t r = 0; r < 8; r++) {
            for (std::size_t c = 0; c < 8; c++) {
                Complex rounded{std::round(product(r, c).real() * 1e4) / 1e4, std::round(product(r, c).imag() * 1e4) / 1e4};
                mismatched += std::abs(rounded - printed(r, c)) > 1e-12 ? 1 : 0;
            }
        }
        double vs_old = max_abs_diff(product, build_old_U());
        return check(
            "erroneous-product",
            mismatched == 0 && vs_old >= 0.5,
            "entries_off_at_4dp=" + std::to_string(mismatched) + " printed_dev=" + dev(max_abs_diff(product, printed)) +
                " max_diff_vs_old_u=" + dev(vs_old));
    }));

    results.push_back(guarded("block-structure", [&] {
        Rng rng = Rng::for_stream(opts.seed, "block-structure");
        double worst_off = 0;
        double worst_tl = 0;
        for (int i = 0; i < 100; i++) {
            ComplexMatrix w = haar_su2(rng);
            BlockReport r = verify_block_structure(u, w);
            worst_off = std::max(worst_off, r.off_diag_norm);
            worst_tl = std::max(worst_tl, max_abs_diff(r.top_left, kron(ComplexMatrix::identity(2), w)));
        }
        ComplexMatrix h = hadamard().matrix();
        BlockReport rh = verify_block_structure(u, h);
        Complex det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
        double h_tl = max_abs_diff(rh.top_left, det * kron(ComplexMatrix::identity(2), h));
        bool pass = worst_off <= 1e-10 && worst_tl <= 1e-10 && rh.off_diag_norm <= 1e-12 && h_tl <= 1e-12;
        return check(
            "block-structure",
            pass,
            "haar_off_diag=" + dev(worst_off) + " haar_top_left=" + dev(worst_tl) + " h_off_diag=" + dev(rh.off_diag_norm) +
                " h_top_left_vs_det=" + dev(h_tl));
    }));

    results.push_back(guarded("three-qubit-recovery", [&] {
        Rng rng = Rng::for_stream(opts.seed, "three-qubit-recovery");
        double worst = 0;
        for (int i = 0; i < 10; i++) {
            StateVector psi = haar_state(1, rng);
            StateVector v = haar_state(1, rng);
            CorrelatedChannel ch = make_channel(3, {ChannelAtom{"w", haar_su2(rng), 1.0}});
            for (std::size_t m : {1, 3}) {
                worst = std::max(worst, 1 - three_qubit_protect(psi, v, ch, m, u).fidelity_data);
            }
        }
        return check("three-qubit-recovery", worst <= 1e-9, "max_infidelity=" + dev(worst));
    }));

    results.push_back(guarded("recursive-recovery", [&] {
        Rng rng = Rng::for_stream(opts.seed, "recursive-recovery");
        double worst = 0;
        for (int i = 0; i < 5; i++) {
            std::vector<StateVector> data{haar_state(1, rng), haar_state(1, rng)};
            StateVector v = haar_state(1, rng);
            CorrelatedChannel ch = make_channel(5, {ChannelAtom{"w", haar_su2(rng), 1.0}});
            RecursiveResult r = recursive_protect(2, data, v, ch, 1);
            for (double f : r.data_fidelities) worst = std::max(worst, 1 - f);
            for (double f : r.zero_fidelities) worst = std::max(worst, 1 - f);
        }
        double explicit_dev = max_abs_diff(realize(recursive_explicit_circuit()), realize(recursive_encoder(2)));
        return check(
            "recursive-recovery",
            worst <= 1e-9 && explicit_dev <= 1e-12,
            "max_infidelity=" + dev(worst) + " explicit_circuit_dev=" + dev(explicit_dev));
    }));

    results.push_back(guarded("hybrid-conjugation", [&] {
        double worst = 0;
        bool readback = true;
        for (std::size_t n = 2; n <= 8; n++) {
            std::size_t na = hybrid_ancilla_wires(n).size();
            StateVector data = StateVector::basis(n - na, 0);
            for (PauliErrorTag tag : {PauliErrorTag::X, PauliErrorTag::Y, PauliErrorTag::Z}) {
                const PauliErrorTag errs[] = {tag};
                for (std::size_t b = 0; b < (std::size_t{1} << na); b++) {
                    std::string bits = bits_of(b, na);
                    HybridResult r = hybrid_protect(n, data, StateVector::from_bits(bits), errs);
                    worst = std::max(worst, 1 - r.fidelity_data);
                    if (na == 2 && (!r.ancilla_deterministic || r.ancilla_readback != bits)) {
                        readback = false;
                    }
                }
            }
        }
        return check(
            "hybrid-conjugation",
            worst <= 1e-10 && readback,
            "max_infidelity=" + dev(worst) + " ancilla_readback=" + (readback ? "exact" : "broken"));
    }));

    results.push_back(guarded("hybrid-circuits", [&] {
        double worst = 0;
        for (std::size_t n = 2; n <= 6; n++) {
            HybridEncoder e = hybrid_encoder(n);
            worst = std::max(worst, global_phase_distance(e.matrix, realize(e.circuit)));
        }
        return check("hybrid-circuits", worst <= 1e-10, "max_dev_up_to_phase=" + dev(worst));
    }));

    return results;
}

int corrsim::cli::cmd_verify(const VerifyOptions &opts, std::ostream &out) {
    std::size_t failures = 0;
    for (const auto &r : run_checks(opts)) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " " << r.detail << "\n";
        failures += r.pass ? 0 : 1;
    }
    if (failures) {
        out << failures << " check(s) failed\n";
        return kExitVerifyFailed;
    }
    out << "all checks passed\n";
    return kExitOk;
}

int corrsim::cli::cmd_run(const RunOptions &opts, std::ostream &out, std::ostream &err) {
    std::string text;
    std::optional<std::filesystem::path> path;
    try {
        opts.spec.validate();
        if (opts.output) {
            path = *opts.output;
        } else if (const char *dir = std::getenv("CORRSIM_OUT_DIR"); dir && *dir) {
            path = std::filesystem::path(dir) / (opts.spec.name + extension(opts.format));
        }
        ExperimentReport report = run_named(opts.spec);
        text = opts.format == Format::json ? report_to_json(report, opts.ibm_bit_order)
                                           : report_to_csv(report, opts.ibm_bit_order);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!path) {
        out << text;
        return kExitOk;
    }
    try {
        write_file_atomically(*path, text);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

std::string corrsim::cli::dump_text(const std::string &what) {
    if (what == "u") return format_matrix(build_new_U());
    if (what == "old-u") return format_matrix(build_old_U());
    if (what == "p2") return format_matrix(p2_matrix());
    if (what == "p3") return format_matrix(p3_matrix());
    if (what.starts_with("pn:")) {
        return format_matrix(hybrid_matrix(parse_register_size(what.substr(3), "pn")));
    }
    if (what == "circuit:standard3") return format_circuit(standard_decomposition());
    if (what == "circuit:basic3") return format_circuit(basic_decomposition());
    if (what == "circuit:recursive5") return format_circuit(recursive_encoder(2));
    if (what == "circuit:explicit5") return format_circuit(recursive_explicit_circuit());
    if (what.starts_with("circuit:hybrid")) {
        return format_circuit(hybrid_circuit(parse_register_size(what.substr(14), "circuit:hybrid")));
    }
    throw std::invalid_argument("unknown dump target '" + what + "'");
}

int corrsim::cli::cmd_dump(const std::string &what, std::ostream &out, std::ostream &err) {
    std::string text;
    try {
        text = dump_text(what);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    out << text;
    return kExitOk;
}
