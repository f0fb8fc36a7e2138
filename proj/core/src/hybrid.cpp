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

#include "corrsim/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace corrsim;

namespace {

constexpr std::size_t kMinWires = 2;
constexpr std::size_t kMaxWires = 8;

void check_range(std::size_t n, const char *what) {
    if (n < kMinWires || n > kMaxWires) {
        throw std::invalid_argument(std::string(what) + ": n must be in 2..8, got " + std::to_string(n));
    }
}

std::size_t ancilla_count(std::size_t n) {
    return n % 2 == 1 ? 1 : 2;
}

void add_qlabel_gates(Circuit &c, std::size_t n) {
    if (n == 2) {
        c.add(cnot(), {0, 1});
        c.add(hadamard(), {0});
        c.add(cnot(), {0, 1});
        return;
    }
    if (n == 3) {
        c.add(cnot(), {2, 1});
        c.add(cnot(), {0, 2});
        c.add(cnot(), {1, 0});
        return;
    }
    if (n % 2 == 1) {
        c.add(cnot(), {n - 1, n - 2});
        c.add(cnot(), {n - 3, n - 1});
        c.add(cnot(), {n - 2, n - 3});
        add_qlabel_gates(c, n - 2);
    } else {
        c.add(cnot(), {n - 2, n - 1});
        c.add(hadamard(), {n - 2});
        c.add(cnot(), {n - 2, n - 1});
        add_qlabel_gates(c, n - 1);
    }
}

}  // namespace

PauliErrorTag corrsim::parse_error_tag(std::string_view text) {
    if (text == "i" || text == "I") return PauliErrorTag::I;
    if (text == "x" || text == "X") return PauliErrorTag::X;
    if (text == "y" || text == "Y") return PauliErrorTag::Y;
    if (text == "z" || text == "Z") return PauliErrorTag::Z;
    throw std::invalid_argument("unknown error tag '" + std::string(text) + "'");
}

std::string corrsim::error_tag_name(PauliErrorTag tag) {
    switch (tag) {
        case PauliErrorTag::I:
            return "i";
        case PauliErrorTag::X:
            return "x";
        case PauliErrorTag::Y:
            return "y";
        case PauliErrorTag::Z:
            return "z";
    }
    throw std::invalid_argument("invalid error tag");
}

Gate corrsim::error_gate(PauliErrorTag tag) {
    switch (tag) {
        case PauliErrorTag::I:
            return identity_gate();
        case PauliErrorTag::X:
            return pauli_x();
        case PauliErrorTag::Y:
            return pauli_y();
        case PauliErrorTag::Z:
            return pauli_z();
    }
    throw std::invalid_argument("invalid error tag");
}

ComplexMatrix corrsim::p2_matrix() {
    ComplexMatrix m = kron(ComplexMatrix::identity(2), pauli_z().matrix()) + kron(pauli_x().matrix(), pauli_x().matrix());
    return Complex{1 / std::sqrt(2.0), 0} * std::move(m);
}

ComplexMatrix corrsim::p3_matrix() {
    ComplexMatrix m(8, 8);
    for (std::size_t in = 0; in < 8; in++) {
        std::size_t a = (in >> 2) & 1;
        std::size_t b = (in >> 1) & 1;
        std::size_t c = in & 1;
        std::size_t out = ((a ^ c) << 2) | ((a ^ b) << 1) | (a ^ b ^ c);
        m(out, in) = 1;
    }
    return m;
}

ComplexMatrix corrsim::hybrid_matrix(std::size_t n) {
    check_range(n, "hybrid_matrix");
    if (n == 2) {
        return p2_matrix();
    }
    if (n == 3) {
        return p3_matrix();
    }
    if (n % 2 == 0) {
        return matmul(
            kron(ComplexMatrix::identity(2), hybrid_matrix(n - 1)),
            kron(p2_matrix(), ComplexMatrix::identity(std::size_t{1} << (n - 2))));
    }
    return matmul(
        kron(ComplexMatrix::identity(4), hybrid_matrix(n - 2)),
        kron(p3_matrix(), ComplexMatrix::identity(std::size_t{1} << (n - 3))));
}

Circuit corrsim::hybrid_qlabel_circuit(std::size_t n) {
    check_range(n, "hybrid_qlabel_circuit");
    Circuit c(n);
    add_qlabel_gates(c, n);
    return c;
}

Circuit corrsim::hybrid_circuit(std::size_t n) {
    Circuit fig = hybrid_qlabel_circuit(n);
    std::vector<std::size_t> map(n);
    for (std::size_t j = 0; j < n; j++) {
        map[j] = n - 1 - j;
    }
    Circuit c(n);
    c.append_mapped(fig, map);
    return c;
}

HybridEncoder corrsim::hybrid_encoder(std::size_t n) {
    check_range(n, "hybrid_encoder");
    return HybridEncoder{n, hybrid_matrix(n), hybrid_circuit(n)};
}

std::vector<std::size_t> corrsim::hybrid_ancilla_wires(std::size_t n) {
    check_range(n, "hybrid_ancilla_wires");
    std::vector<std::size_t> wires(ancilla_count(n));
    std::iota(wires.begin(), wires.end(), 0);
    return wires;
}

std::vector<std::size_t> corrsim::hybrid_data_wires(std::size_t n) {
    check_range(n, "hybrid_data_wires");
    std::vector<std::size_t> wires(n - ancilla_count(n));
    std::iota(wires.begin(), wires.end(), ancilla_count(n));
    return wires;
}

ComplexMatrix corrsim::conjugated_error(std::size_t n, PauliErrorTag tag) {
    ComplexMatrix p = hybrid_matrix(n);
    return matmul(matmul(dagger(p), kron_power(error_gate(tag).matrix(), n)), p);
}

HybridResult corrsim::hybrid_protect(
    std::size_t n, const StateVector &data, const StateVector &ancilla, std::span<const PauliErrorTag> errors) {
    check_range(n, "hybrid_protect");
    std::size_t na = ancilla_count(n);
    if (ancilla.n_wires() != na) {
        throw std::invalid_argument(
            "hybrid_protect: ancilla must span " + std::to_string(na) + " wire(s) for n=" + std::to_string(n));
    }
    if (data.n_wires() != n - na) {
        throw std::invalid_argument(
            "hybrid_protect: data must span " + std::to_string(n - na) + " wire(s) for n=" + std::to_string(n));
    }
    ComplexMatrix error = ComplexMatrix::identity(std::size_t{1} << n);
    for (PauliErrorTag tag : errors) {
        error = matmul(kron_power(error_gate(tag).matrix(), n), error);
    }
    ComplexMatrix p = hybrid_matrix(n);
    ComplexMatrix total = matmul(matmul(dagger(p), error), p);

    const StateVector parts[] = {ancilla, data};
    StateVector out = apply_unitary(total, StateVector::product(parts));
    DensityMatrix rho = DensityMatrix::from_state(out);

    std::vector<std::size_t> data_wires = hybrid_data_wires(n);
    std::vector<std::size_t> ancilla_wires = hybrid_ancilla_wires(n);
    // n = 2 carries no data; only the classical bits are protected.
    double f = data_wires.empty() ? 1.0 : fidelity(partial_trace(rho, data_wires), data);
    auto dist = marginal_distribution(basis_probabilities(out), n, ancilla_wires);
    std::size_t best = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());

    return HybridResult{
        f,
        bits_of(best, na),
        dist[best],
        std::abs(dist[best] - 1) <= 1e-10,
        std::move(out),
    };
}

StateVector corrsim::ancilla_from_selector(std::string_view selector) {
    if (selector.starts_with("ry:")) {
        return apply_unitary(ry(parse_real(selector.substr(3))).matrix(), StateVector::basis(1, 0));
    }
    return StateVector::from_bits(selector);
}
