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

#include "corrsim/gates.hpp"

#include <cmath>
#include <stdexcept>

using namespace corrsim;

namespace {

// Unitarity bound enforced at construction. Library gates meet 1e-12; this
// leaves room for custom matrices that went through a few products.
constexpr double kConstructionTolerance = 1e-10;

std::size_t log2_exact(std::size_t dim) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < dim) {
        k++;
    }
    return (std::size_t{1} << k) == dim ? k : 0;
}

ComplexMatrix ry_matrix(double alpha) {
    double c = std::cos(alpha / 2);
    double s = std::sin(alpha / 2);
    return ComplexMatrix::from_rows({{c, -s}, {s, c}});
}

const ComplexMatrix &x_matrix() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    return m;
}

struct BaseSpec {
    std::string_view name;
    std::size_t n_params;
};

constexpr BaseSpec kBaseGates[] = {
    {"I", 0}, {"X", 0}, {"Y", 0}, {"Z", 0}, {"H", 0}, {"RY", 1}, {"RYX", 1}, {"XRY", 1}, {"SWAP", 0},
};

const BaseSpec *find_base(std::string_view name) {
    for (const auto &b : kBaseGates) {
        if (b.name == name) {
            return &b;
        }
    }
    return nullptr;
}

Gate base_gate(std::string_view name, std::span<const double> params) {
    if (name == "I") return identity_gate();
    if (name == "X") return pauli_x();
    if (name == "Y") return pauli_y();
    if (name == "Z") return pauli_z();
    if (name == "H") return hadamard();
    if (name == "SWAP") return swap_gate();
    if (name == "RY") return ry(params[0]);
    if (name == "RYX") return ry_x(params[0]);
    if (name == "XRY") return x_ry(params[0]);
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

// Splits "OCRY" into control prefix "OC" and base "RY", preferring the longest
// base name that leaves a pure C/O prefix.
bool split_controls(std::string_view name, std::string_view &prefix, std::string_view &base) {
    for (std::size_t k = 0; k <= name.size(); k++) {
        std::string_view head = name.substr(0, k);
        if (head.find_first_not_of("CO") != std::string_view::npos) {
            return false;
        }
        if (find_base(name.substr(k)) != nullptr) {
            prefix = head;
            base = name.substr(k);
            return true;
        }
    }
    return false;
}

}  // namespace

Gate::Gate(std::string name, std::vector<double> params, ComplexMatrix matrix)
    : name_(std::move(name)), params_(std::move(params)), matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() < 2 || log2_exact(matrix_.rows()) == 0) {
        throw std::invalid_argument("Gate '" + name_ + "': matrix must be 2^k x 2^k with k >= 1");
    }
    if (!is_unitary(matrix_, Tolerance(kConstructionTolerance))) {
        throw std::invalid_argument("Gate '" + name_ + "': matrix is not unitary");
    }
    arity_ = log2_exact(matrix_.rows());
}

std::string Gate::label() const {
    if (params_.empty()) {
        return name_;
    }
    std::string out = name_ + "(";
    for (std::size_t k = 0; k < params_.size(); k++) {
        if (k) {
            out += ',';
        }
        out += format_double(params_[k]);
    }
    out += ')';
    return out;
}

void PlacedGate::validate(std::size_t n_wires) const {
    if (wires.size() != gate.arity()) {
        throw std::invalid_argument(
            "gate " + gate.label() + " needs " + std::to_string(gate.arity()) + " wires, got " +
            std::to_string(wires.size()));
    }
    for (std::size_t i = 0; i < wires.size(); i++) {
        if (wires[i] >= n_wires) {
            throw std::out_of_range(
                "gate " + gate.label() + ": wire " + std::to_string(wires[i]) + " outside a " +
                std::to_string(n_wires) + "-wire register");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (wires[i] == wires[j]) {
                throw std::invalid_argument("gate " + gate.label() + ": repeated wire " + std::to_string(wires[i]));
            }
        }
    }
}

Gate corrsim::identity_gate() {
    return Gate("I", {}, ComplexMatrix::identity(2));
}

Gate corrsim::pauli_x() {
    return Gate("X", {}, x_matrix());
}

Gate corrsim::pauli_y() {
    return Gate("Y", {}, ComplexMatrix::from_rows({{0, Complex{0, -1}}, {Complex{0, 1}, 0}}));
}

Gate corrsim::pauli_z() {
    return Gate("Z", {}, ComplexMatrix::from_rows({{1, 0}, {0, -1}}));
}

Gate corrsim::hadamard() {
    double h = 1 / std::sqrt(2.0);
    return Gate("H", {}, ComplexMatrix::from_rows({{h, h}, {h, -h}}));
}

Gate corrsim::ry(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("ry: angle must be finite");
    }
    return Gate("RY", {alpha}, ry_matrix(alpha));
}

Gate corrsim::ry_x(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("ry_x: angle must be finite");
    }
    return Gate("RYX", {alpha}, matmul(ry_matrix(alpha), x_matrix()));
}

Gate corrsim::x_ry(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("x_ry: angle must be finite");
    }
    return Gate("XRY", {alpha}, matmul(x_matrix(), ry_matrix(alpha)));
}

Gate corrsim::swap_gate() {
    return Gate(
        "SWAP", {},
        ComplexMatrix::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
}

Gate corrsim::controlled(const Gate &g, int control_value) {
    if (control_value != 0 && control_value != 1) {
        throw std::invalid_argument("controlled: control value must be 0 or 1");
    }
    std::size_t d = g.matrix().rows();
    ComplexMatrix m = ComplexMatrix::identity(2 * d);
    std::size_t offset = control_value == 1 ? d : 0;
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            m(offset + r, offset + c) = g.matrix()(r, c);
        }
    }
    std::string prefix = control_value == 1 ? "C" : "O";
    return Gate(prefix + g.name(), std::vector<double>(g.params().begin(), g.params().end()), std::move(m));
}

Gate corrsim::cnot() {
    return controlled(pauli_x(), 1);
}

Gate corrsim::toffoli() {
    return controlled(cnot(), 1);
}

Gate corrsim::custom_gate(std::string name, ComplexMatrix matrix) {
    return Gate(std::move(name), {}, std::move(matrix));
}

Gate corrsim::inverse(const Gate &g) {
    std::string_view prefix;
    std::string_view base;
    ComplexMatrix m = dagger(g.matrix());
    if (!split_controls(g.name(), prefix, base)) {
        constexpr std::string_view kSuffix = "_dg";
        std::string name = g.name();
        if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
            name.resize(name.size() - kSuffix.size());
        } else {
            name += kSuffix;
        }
        return Gate(std::move(name), std::vector<double>(g.params().begin(), g.params().end()), std::move(m));
    }
    std::string new_base(base);
    std::vector<double> params(g.params().begin(), g.params().end());
    if (base == "RY") {
        params[0] = -params[0];
    } else if (base == "RYX") {
        // (RY(a) X)^dag = X RY(-a)
        new_base = "XRY";
        params[0] = -params[0];
    } else if (base == "XRY") {
        new_base = "RYX";
        params[0] = -params[0];
    }
    return Gate(std::string(prefix) + new_base, std::move(params), std::move(m));
}

Gate corrsim::parse_gate_label(std::string_view label) {
    std::string_view name = label;
    std::vector<double> params;
    if (auto open = label.find('('); open != std::string_view::npos) {
        if (label.back() != ')') {
            throw std::invalid_argument("gate label '" + std::string(label) + "': missing ')'");
        }
        name = label.substr(0, open);
        std::string_view args = label.substr(open + 1, label.size() - open - 2);
        while (!args.empty()) {
            auto comma = args.find(',');
            params.push_back(parse_real(args.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            args.remove_prefix(comma + 1);
        }
    }
    std::string_view prefix;
    std::string_view base;
    if (!split_controls(name, prefix, base)) {
        throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
    }
    if (find_base(base)->n_params != params.size()) {
        throw std::invalid_argument(
            "gate '" + std::string(base) + "' takes " + std::to_string(find_base(base)->n_params) + " parameter(s)");
    }
    Gate g = base_gate(base, params);
    for (std::size_t k = prefix.size(); k-- > 0;) {
        g = controlled(g, prefix[k] == 'C' ? 1 : 0);
    }
    return g;
}

void corrsim::left_multiply_embedded(
    const ComplexMatrix &gate, std::span<const std::size_t> wires, std::size_t n_wires, ComplexMatrix &target) {
    std::size_t k = wires.size();
    std::size_t sub_dim = std::size_t{1} << k;
    if (gate.rows() != sub_dim || gate.cols() != sub_dim) {
        throw std::invalid_argument("left_multiply_embedded: gate size does not match wire count");
    }
    if (target.rows() != (std::size_t{1} << n_wires)) {
        throw std::invalid_argument("left_multiply_embedded: target rows must be 2^n_wires");
    }
    std::size_t mask = 0;
    std::vector<std::size_t> offsets(sub_dim, 0);
    for (std::size_t i = 0; i < k; i++) {
        if (wires[i] >= n_wires) {
            throw std::out_of_range("left_multiply_embedded: wire out of range");
        }
        std::size_t bit = std::size_t{1} << (n_wires - 1 - wires[i]);
        if (mask & bit) {
            throw std::invalid_argument("left_multiply_embedded: repeated wire");
        }
        mask |= bit;
        for (std::size_t s = 0; s < sub_dim; s++) {
            if ((s >> (k - 1 - i)) & 1) {
                offsets[s] |= bit;
            }
        }
    }
    std::size_t cols = target.cols();
    std::vector<Complex> in(sub_dim);
    for (std::size_t base = 0; base < target.rows(); base++) {
        if (base & mask) {
            continue;
        }
        for (std::size_t c = 0; c < cols; c++) {
            for (std::size_t s = 0; s < sub_dim; s++) {
                in[s] = target(base | offsets[s], c);
            }
            for (std::size_t r = 0; r < sub_dim; r++) {
                Complex acc = 0;
                for (std::size_t s = 0; s < sub_dim; s++) {
                    acc += gate(r, s) * in[s];
                }
                target(base | offsets[r], c) = acc;
            }
        }
    }
}

ComplexMatrix corrsim::embed(const PlacedGate &pg, std::size_t n_wires) {
    pg.validate(n_wires);
    ComplexMatrix m = ComplexMatrix::identity(std::size_t{1} << n_wires);
    left_multiply_embedded(pg.gate.matrix(), pg.wires, n_wires, m);
    return m;
}

ComplexMatrix corrsim::permute_wires(const ComplexMatrix &m, std::span<const std::size_t> perm) {
    std::size_t n = perm.size();
    std::size_t dim = std::size_t{1} << n;
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("permute_wires: matrix size does not match permutation length");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) {
            throw std::invalid_argument("permute_wires: not a permutation");
        }
        seen[p] = true;
    }
    auto map_index = [&](std::size_t idx) {
        std::size_t out = 0;
        for (std::size_t w = 0; w < n; w++) {
            if ((idx >> (n - 1 - w)) & 1) {
                out |= std::size_t{1} << (n - 1 - perm[w]);
            }
        }
        return out;
    };
    ComplexMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            out(map_index(r), map_index(c)) = m(r, c);
        }
    }
    return out;
}
