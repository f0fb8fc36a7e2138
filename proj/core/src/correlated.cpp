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

#include "corrsim/correlated.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

using namespace corrsim;

namespace {

constexpr double kChannelTolerance = 1e-12;
constexpr double kInputTolerance = 1e-10;

// Angle with sin(alpha/2) = sqrt(1/3); RY(alpha) X is the controlled rotation of the encoder.
const double kAlpha = 2 * std::asin(std::sqrt(1.0 / 3.0));

using Column = std::vector<Complex>;

Column kron_vec(const Column &a, const Column &b) {
    Column out;
    out.reserve(a.size() * b.size());
    for (Complex x : a) {
        for (Complex y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

Column kron_vec(const Column &a, const Column &b, const Column &c) {
    return kron_vec(kron_vec(a, b), c);
}

Complex parse_entry(const nlohmann::json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0};
    }
    if (j.is_string()) {
        return parse_complex(j.get<std::string>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("matrix entry must be a number, an 're+imj' string or [re, im]");
}

ComplexMatrix parse_w_matrix(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        std::vector<Complex> entries;
        if (j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_array() == false) {
            for (const auto &row : j) {
                for (const auto &e : row) {
                    entries.push_back(parse_entry(e));
                }
            }
        } else if (j.is_array() && j.size() == 4) {
            for (const auto &e : j) {
                entries.push_back(parse_entry(e));
            }
        } else {
            throw std::invalid_argument("matrix selector must hold 2x2 or 4 entries");
        }
        if (entries.size() != 4) {
            throw std::invalid_argument("matrix selector must hold 2x2 or 4 entries");
        }
        return ComplexMatrix(2, 2, std::move(entries));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("parse_w_matrix: ") + e.what());
    }
}

void check_single_qubit(const StateVector &s, const char *what) {
    if (s.n_wires() != 1) {
        throw std::invalid_argument(std::string(what) + " must be a single-qubit state");
    }
}

// W on every wire of the register.
DensityMatrix conjugate_all_wires(const ComplexMatrix &w, const DensityMatrix &rho) {
    std::size_t n = rho.n_wires();
    ComplexMatrix m = rho.matrix();
    for (int pass = 0; pass < 2; pass++) {
        for (std::size_t wire = 0; wire < n; wire++) {
            std::size_t wires[] = {wire};
            left_multiply_embedded(w, wires, n, m);
        }
        m = dagger(m);
    }
    return DensityMatrix(n, std::move(m));
}

}  // namespace

CorrelatedChannel::CorrelatedChannel(std::size_t n_qubits, std::vector<ChannelAtom> support)
    : n_qubits_(n_qubits), support_(std::move(support)) {
    if (n_qubits_ == 0) {
        throw std::invalid_argument("CorrelatedChannel: needs at least one qubit");
    }
    if (support_.empty()) {
        throw std::invalid_argument("CorrelatedChannel: empty support");
    }
    double total = 0;
    for (const auto &atom : support_) {
        if (!(atom.p >= 0)) {
            throw std::invalid_argument("CorrelatedChannel: negative probability for atom '" + atom.label + "'");
        }
        if (atom.w.rows() != 2 || atom.w.cols() != 2 || !is_unitary(atom.w, Tolerance(kChannelTolerance))) {
            throw std::invalid_argument("CorrelatedChannel: atom '" + atom.label + "' is not a 2x2 unitary");
        }
        total += atom.p;
    }
    if (std::abs(total - 1) > kChannelTolerance) {
        throw std::invalid_argument("CorrelatedChannel: probabilities sum to " + format_double(total));
    }
}

CorrelatedChannel corrsim::make_channel(std::size_t n_qubits, std::vector<ChannelAtom> support) {
    return CorrelatedChannel(n_qubits, std::move(support));
}

CorrelatedChannel corrsim::single_atom_channel(std::size_t n_qubits, const Gate &w) {
    if (w.arity() != 1) {
        throw std::invalid_argument("single_atom_channel: W must act on one qubit");
    }
    return CorrelatedChannel(n_qubits, {ChannelAtom{w.label(), w.matrix(), 1.0}});
}

DensityMatrix corrsim::apply_channel(const CorrelatedChannel &ch, const DensityMatrix &rho) {
    if (rho.n_wires() != ch.n_qubits()) {
        throw std::invalid_argument("apply_channel: channel/state wire count mismatch");
    }
    std::size_t dim = rho.matrix().rows();
    ComplexMatrix acc(dim, dim);
    for (const auto &atom : ch.support()) {
        if (atom.p == 0) {
            continue;
        }
        acc += Complex{atom.p, 0} * conjugate_all_wires(atom.w, rho).matrix();
    }
    return DensityMatrix(rho.n_wires(), std::move(acc));
}

Gate corrsim::w_from_selector(std::string_view selector) {
    if (selector == "h") return hadamard();
    if (selector == "x") return pauli_x();
    if (selector == "y") return pauli_y();
    if (selector == "z") return pauli_z();
    if (selector == "i") return identity_gate();
    if (selector.starts_with("ry:")) {
        return ry(parse_real(selector.substr(3)));
    }
    if (selector.starts_with("matrix:")) {
        return custom_gate("W", parse_w_matrix(selector.substr(7)));
    }
    throw std::invalid_argument("unknown W selector '" + std::string(selector) + "'");
}

CorrelatedChannel corrsim::parse_channel_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        std::size_t n = j.at("n").get<std::size_t>();
        std::vector<ChannelAtom> support;
        for (const auto &atom : j.at("support")) {
            std::string sel = atom.at("w").get<std::string>();
            Gate w = w_from_selector(sel);
            support.push_back(ChannelAtom{sel, w.matrix(), atom.at("p").get<double>()});
        }
        return CorrelatedChannel(n, std::move(support));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("parse_channel_json: ") + e.what());
    }
}

std::string corrsim::channel_to_json(const CorrelatedChannel &ch) {
    nlohmann::ordered_json j;
    j["n"] = ch.n_qubits();
    j["support"] = nlohmann::ordered_json::array();
    for (const auto &atom : ch.support()) {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (Complex z : atom.w.entries()) {
            entries.push_back(format_complex(z));
        }
        j["support"].push_back({{"w", "matrix:" + entries.dump()}, {"p", atom.p}});
    }
    return j.dump(2) + "\n";
}

ComplexMatrix corrsim::build_old_U() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 3.0);
    const double c = std::sqrt(1.0 / 6.0);
    const double d = std::sqrt(1.0 / 2.0);
    return ComplexMatrix::from_rows({
        {0, 0, 0, 0, 1, 0, 0, 0},
        {a, 0, 0, 0, 0, b, 0, 0},
        {-c, 0, d, 0, 0, b, 0, 0},
        {0, c, 0, d, 0, 0, b, 0},
        {-c, 0, -d, 0, 0, b, 0, 0},
        {0, c, 0, -d, 0, 0, b, 0},
        {0, -a, 0, 0, 0, 0, b, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
    });
}

ComplexMatrix corrsim::build_new_U() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 3.0);
    const double c = std::sqrt(1.0 / 6.0);
    const double d = std::sqrt(1.0 / 2.0);
    return ComplexMatrix::from_rows({
        {0, 0, 0, 0, 0, 0, 0, -1},
        {a, 0, 0, 0, b, 0, 0, 0},
        {-c, 0, d, 0, b, 0, 0, 0},
        {0, c, 0, d, 0, -b, 0, 0},
        {-c, 0, -d, 0, b, 0, 0, 0},
        {0, c, 0, -d, 0, -b, 0, 0},
        {0, -a, 0, 0, 0, -b, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0},
    });
}

BlockReport corrsim::verify_block_structure(const ComplexMatrix &u, const ComplexMatrix &w) {
    if (u.rows() != 8 || u.cols() != 8 || !is_unitary(u, Tolerance(kInputTolerance))) {
        throw std::invalid_argument("verify_block_structure: U must be an 8x8 unitary");
    }
    if (w.rows() != 2 || w.cols() != 2 || !is_unitary(w, Tolerance(kInputTolerance))) {
        throw std::invalid_argument("verify_block_structure: W must be a 2x2 unitary");
    }
    ComplexMatrix m = matmul(matmul(dagger(u), kron_power(w, 3)), u);
    BlockReport report{block(m, 0, 0, 4, 4), block(m, 4, 4, 4, 4), 0};
    report.off_diag_norm = std::max(max_abs(block(m, 0, 4, 4, 4)), max_abs(block(m, 4, 0, 4, 4)));
    return report;
}

Circuit corrsim::standard_decomposition() {
    // U = P1 P2 P3 Q1 Q2 Q3; Q3 is applied first.
    Circuit c(3);
    c.add(controlled(ry_x(kAlpha), 0), {1, 0});            // Q3
    c.add(controlled(ry(std::numbers::pi / 2), 0), {0, 1});  // Q2
    c.add(pauli_z(), {2});                                  // Q1
    c.add(cnot(), {2, 1});                                  // P3
    c.add(cnot(), {0, 2});                                  // P2
    c.add(controlled(pauli_x(), 0), {1, 0});                // P1
    return c;
}

Circuit corrsim::basic_decomposition() {
    const double quarter = std::numbers::pi / 4;
    Circuit c(3);
    c.add(pauli_x(), {1});
    c.add(ry(-kAlpha / 2), {0});
    c.add(cnot(), {1, 0});
    c.add(x_ry(kAlpha / 2), {0});
    c.add(cnot(), {0, 1});
    c.add(ry(quarter), {1});
    c.add(cnot(), {0, 1});
    c.add(pauli_x(), {0});
    c.add(ry(-quarter), {1});
    c.add(pauli_z(), {2});
    c.add(cnot(), {2, 1});
    c.add(cnot(), {0, 2});
    c.add(cnot(), {1, 0});
    c.add(pauli_x(), {1});
    return c;
}

Circuit corrsim::decomposition(Decomposition d) {
    return d == Decomposition::standard ? standard_decomposition() : basic_decomposition();
}

std::array<ComplexMatrix, 6> corrsim::erroneous_decomposition_factors() {
    const double r3 = std::sqrt(3.0);
    const double r2 = std::sqrt(2.0);
    const Column e0{1, 0};
    const Column e1{0, 1};
    const Column a1{1 / r3, -r2 / r3};
    const Column a2{r2 / r3, 1 / r3};
    const Column b1{1 / r2, -1 / r2};
    const Column b2{1 / r2, 1 / r2};
    auto k = [](const Column &x, const Column &y, const Column &z) {
        return kron_vec(x, y, z);
    };
    ComplexMatrix u1 = ComplexMatrix::from_columns({
        k(e0, e0, e0), k(e0, e0, e1), k(a1, e1, e0), k(a1, e1, e1),
        k(e1, e0, e0), k(e1, e0, e1), k(a2, e1, e0), k(a2, e1, e1),
    });
    ComplexMatrix u2 = ComplexMatrix::from_columns({
        k(e0, b1, e0), k(e0, b1, e1), k(e0, b2, e0), k(e0, b2, e1),
        k(e1, e0, e0), k(e1, e0, e1), k(e1, e1, e0), k(e1, e1, e1),
    });
    ComplexMatrix u3 = kron(ComplexMatrix::identity(4), pauli_z().matrix());
    ComplexMatrix u4 = ComplexMatrix::from_columns({
        k(e0, e0, e0), k(e1, e0, e1), k(e0, e1, e0), k(e1, e1, e1),
        k(e1, e0, e0), k(e0, e0, e1), k(e1, e1, e0), k(e0, e1, e1),
    });
    ComplexMatrix u5 = ComplexMatrix::from_columns({
        k(e0, e0, e1), k(e0, e0, e0), k(e0, e1, e0), k(e0, e1, e1),
        k(e1, e0, e1), k(e1, e0, e0), k(e1, e1, e0), k(e1, e1, e1),
    });
    ComplexMatrix u6 = ComplexMatrix::from_columns({
        k(e0, e0, e0), k(e0, e0, e1), k(e0, e1, e0), k(e0, e1, e1),
        k(e1, e1, e0), k(e1, e1, e1), k(e1, e0, e0), k(e1, e0, e1),
    });
    return {u1, u2, u3, u4, u5, u6};
}

ComplexMatrix corrsim::erroneous_decomposition_product() {
    auto f = erroneous_decomposition_factors();
    ComplexMatrix out = f[0];
    for (std::size_t i = 1; i < f.size(); i++) {
        out = matmul(f[i], out);
    }
    return out;
}

ProtectResult corrsim::three_qubit_protect(
    const StateVector &psi, const StateVector &v, const CorrelatedChannel &ch, std::size_t rounds) {
    return three_qubit_protect(psi, v, ch, rounds, build_new_U());
}

ProtectResult corrsim::three_qubit_protect(
    const StateVector &psi,
    const StateVector &v,
    const CorrelatedChannel &ch,
    std::size_t rounds,
    const ComplexMatrix &encoder) {
    check_single_qubit(psi, "psi");
    check_single_qubit(v, "v");
    if (ch.n_qubits() != 3) {
        throw std::invalid_argument("three_qubit_protect: channel must act on 3 qubits");
    }
    if (rounds == 0) {
        throw std::invalid_argument("three_qubit_protect: rounds must be >= 1");
    }
    if (encoder.rows() != 8 || !is_unitary(encoder, Tolerance(kInputTolerance))) {
        throw std::invalid_argument("three_qubit_protect: encoder must be an 8x8 unitary");
    }
    const StateVector parts[] = {StateVector::basis(1, 0), psi, v};
    DensityMatrix rho = DensityMatrix::from_state(StateVector::product(parts));
    rho = apply_unitary(encoder, rho);
    for (std::size_t r = 0; r < rounds; r++) {
        rho = apply_channel(ch, rho);
    }
    rho = apply_unitary(dagger(encoder), rho);
    double f = fidelity(partial_trace(rho, {1}), psi);
    return ProtectResult{f, std::move(rho)};
}

RecursiveLayout corrsim::recursive_layout(std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("recursive_layout: k must be >= 1");
    }
    RecursiveLayout layout;
    layout.k = k;
    layout.blocks.push_back({0, 1, 2});
    layout.data_wires.push_back(1);
    layout.zero_wires.push_back(0);
    for (std::size_t j = 2; j <= k; j++) {
        layout.blocks.push_back({2 * j, 2 * j - 1, 2 * j - 2});
        layout.data_wires.push_back(2 * j - 1);
        layout.zero_wires.push_back(2 * j);
    }
    return layout;
}

Circuit corrsim::recursive_encoder(std::size_t k, Decomposition d) {
    RecursiveLayout layout = recursive_layout(k);
    Circuit block = decomposition(d);
    Circuit c(layout.n_wires());
    for (const auto &b : layout.blocks) {
        c.append_mapped(block, b);
    }
    return c;
}

Circuit corrsim::recursive_explicit_circuit() {
    // Rows of the drawing map to wires 0..4 directly. The top block is the
    // 3-wire encoder on (0, 1, 2); the bottom block is the same encoder on (4, 3, 2).
    Circuit c(5);
    c.add(pauli_z(), {2});
    c.add(controlled(ry_x(kAlpha), 0), {1, 0});
    c.add(controlled(ry(std::numbers::pi / 2), 0), {0, 1});
    c.add(controlled(ry_x(kAlpha), 0), {3, 4});
    c.add(controlled(ry(std::numbers::pi / 2), 0), {4, 3});
    c.add(cnot(), {2, 1});
    c.add(cnot(), {0, 2});
    c.add(controlled(pauli_x(), 0), {1, 0});
    c.add(pauli_z(), {2});
    c.add(cnot(), {2, 3});
    c.add(cnot(), {4, 2});
    c.add(controlled(pauli_x(), 0), {3, 4});
    return c;
}

RecursiveResult corrsim::recursive_protect(
    std::size_t k,
    const std::vector<StateVector> &data,
    const StateVector &v,
    const CorrelatedChannel &ch,
    std::size_t rounds,
    Decomposition d) {
    RecursiveLayout layout = recursive_layout(k);
    if (data.size() != k) {
        throw std::invalid_argument("recursive_protect: expected " + std::to_string(k) + " data states");
    }
    for (const auto &s : data) {
        check_single_qubit(s, "data state");
    }
    check_single_qubit(v, "v");
    if (ch.n_qubits() != layout.n_wires()) {
        throw std::invalid_argument("recursive_protect: channel must act on 2k+1 qubits");
    }
    if (rounds == 0) {
        throw std::invalid_argument("recursive_protect: rounds must be >= 1");
    }
    std::vector<StateVector> wires(layout.n_wires(), StateVector::basis(1, 0));
    for (std::size_t i = 0; i < k; i++) {
        wires[layout.data_wires[i]] = data[i];
    }
    wires[layout.carrier_wire] = v;
    Circuit encoder = recursive_encoder(k, d);
    DensityMatrix rho = apply(encoder, DensityMatrix::from_state(StateVector::product(wires)));
    for (std::size_t r = 0; r < rounds; r++) {
        rho = apply_channel(ch, rho);
    }
    rho = apply(inverse(encoder), rho);

    RecursiveResult result{{}, {}, rho};
    for (std::size_t i = 0; i < k; i++) {
        result.data_fidelities.push_back(fidelity(partial_trace(rho, {layout.data_wires[i]}), data[i]));
    }
    for (std::size_t w : layout.zero_wires) {
        result.zero_fidelities.push_back(fidelity(partial_trace(rho, {w}), StateVector::basis(1, 0)));
    }
    return result;
}
