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
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "testing/oracle.hpp"

using namespace corrsim;

namespace {

constexpr PauliErrorTag kTags[] = {PauliErrorTag::X, PauliErrorTag::Y, PauliErrorTag::Z};

StateVector to_state(const oracle::Vec &v) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < v.size()) {
        n++;
    }
    return StateVector(n, v);
}

oracle::Mat tag_matrix(PauliErrorTag t) {
    switch (t) {
        case PauliErrorTag::X:
            return oracle::pauli_x();
        case PauliErrorTag::Y:
            return oracle::pauli_y();
        case PauliErrorTag::Z:
            return oracle::pauli_z();
        default:
            return oracle::eye(2);
    }
}

oracle::Mat kron_power(const oracle::Mat &m, std::size_t n) {
    oracle::Mat out = oracle::eye(1);
    for (std::size_t i = 0; i < n; i++) {
        out = oracle::kron(out, m);
    }
    return out;
}

}  // namespace

TEST(PauliErrorTag, parse_and_name) {
    EXPECT_EQ(parse_error_tag("x"), PauliErrorTag::X);
    EXPECT_EQ(parse_error_tag("Y"), PauliErrorTag::Y);
    EXPECT_EQ(parse_error_tag("i"), PauliErrorTag::I);
    EXPECT_EQ(error_tag_name(PauliErrorTag::Z), "z");
    EXPECT_THROW(parse_error_tag("h"), std::invalid_argument);
    EXPECT_EQ(error_gate(PauliErrorTag::Y).matrix(), pauli_y().matrix());
}

TEST(p2_matrix, entries_and_unitarity) {
    ComplexMatrix p = p2_matrix();
    EXPECT_NEAR(p(0, 0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(is_unitary(p, Tolerance(1e-12)));
    EXPECT_LE(oracle::max_diff(oracle::to_mat(p), oracle::hybrid_p2()), 1e-15);
}

TEST(p3_matrix, permutation) {
    ComplexMatrix p = p3_matrix();
    EXPECT_EQ(p(1, 7), Complex(1));
    EXPECT_EQ(p(0, 0), Complex(1));
    // Image of each basis state |abc>.
    const std::size_t image[] = {0, 5, 3, 6, 7, 2, 4, 1};
    for (std::size_t in = 0; in < 8; in++) {
        EXPECT_EQ(p(image[in], in), Complex(1)) << in;
    }
    EXPECT_LE(oracle::max_diff(oracle::to_mat(p), oracle::hybrid_p3()), 0);
}

TEST(hybrid_matrix, recursion) {
    EXPECT_EQ(hybrid_matrix(2), p2_matrix());
    EXPECT_EQ(hybrid_matrix(3), p3_matrix());
    auto p2 = oracle::hybrid_p2();
    auto p3 = oracle::hybrid_p3();
    auto p4 = oracle::mul(oracle::kron(oracle::eye(2), p3), oracle::kron(p2, oracle::eye(4)));
    auto p5 = oracle::mul(oracle::kron(oracle::eye(4), p3), oracle::kron(p3, oracle::eye(4)));
    EXPECT_LE(oracle::max_diff(oracle::to_mat(hybrid_matrix(4)), p4), 1e-15);
    EXPECT_LE(oracle::max_diff(oracle::to_mat(hybrid_matrix(5)), p5), 1e-15);
    for (std::size_t n = 2; n <= 8; n++) {
        ComplexMatrix m = hybrid_matrix(n);
        EXPECT_TRUE(is_unitary(m, Tolerance(1e-12))) << n;
        EXPECT_LE(oracle::max_diff(oracle::to_mat(m), oracle::hybrid_pn(n)), 1e-14) << n;
    }
    EXPECT_THROW(hybrid_matrix(1), std::invalid_argument);
    EXPECT_THROW(hybrid_matrix(9), std::invalid_argument);
}

TEST(hybrid_wires, split) {
    EXPECT_EQ(hybrid_ancilla_wires(5), (std::vector<std::size_t>{0}));
    EXPECT_EQ(hybrid_data_wires(5), (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_EQ(hybrid_ancilla_wires(4), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(hybrid_data_wires(4), (std::vector<std::size_t>{2, 3}));
    EXPECT_TRUE(hybrid_data_wires(2).empty());
}

TEST(conjugated_error, identity_tag) {
    for (std::size_t n = 2; n <= 6; n++) {
        EXPECT_LE(max_abs_diff(conjugated_error(n, PauliErrorTag::I), ComplexMatrix::identity(std::size_t{1} << n)), 1e-12);
    }
}

TEST(conjugated_error, acts_only_on_ancilla) {
    // P^dag W^(x)n P = A (x) I on (ancilla, data) with A a unitary on the ancilla.
    for (std::size_t n = 2; n <= 8; n++) {
        std::size_t na = n % 2 == 1 ? 1 : 2;
        std::size_t dd = std::size_t{1} << (n - na);
        auto p = oracle::hybrid_pn(n);
        for (PauliErrorTag t : kTags) {
            auto m = oracle::mul(oracle::mul(oracle::adjoint(p), kron_power(tag_matrix(t), n)), p);
            auto lib = oracle::to_mat(conjugated_error(n, t));
            EXPECT_LE(oracle::max_diff(lib, m), 1e-12);
            oracle::Mat a = oracle::zeros(std::size_t{1} << na, std::size_t{1} << na);
            for (std::size_t r = 0; r < a.size(); r++) {
                for (std::size_t c = 0; c < a.size(); c++) {
                    a[r][c] = m[r * dd][c * dd];
                }
            }
            EXPECT_LE(oracle::max_diff(m, oracle::kron(a, oracle::eye(dd))), 1e-12) << n;
        }
    }
}

TEST(conjugated_error, even_sizes_keep_ancilla_basis_states) {
    for (std::size_t n : {2u, 4u, 6u}) {
        std::size_t dd = std::size_t{1} << (n - 2);
        for (PauliErrorTag t : kTags) {
            ComplexMatrix m = conjugated_error(n, t);
            for (std::size_t r = 0; r < 4; r++) {
                for (std::size_t c = 0; c < 4; c++) {
                    double mag = std::abs(m(r * dd, c * dd));
                    EXPECT_NEAR(mag, r == c ? 1 : 0, 1e-12) << n << " " << r << " " << c;
                }
            }
        }
    }
}

TEST(hybrid_qlabel_circuit, realizes_matrix_after_reversal) {
    for (std::size_t n = 2; n <= 6; n++) {
        std::vector<std::size_t> rev(n);
        for (std::size_t j = 0; j < n; j++) {
            rev[j] = n - 1 - j;
        }
        auto perm = oracle::wire_permutation(rev);
        auto fig = oracle::to_mat(realize(hybrid_qlabel_circuit(n)));
        auto relabelled = oracle::mul(oracle::mul(perm, fig), oracle::adjoint(perm));
        EXPECT_LE(oracle::phase_diff(relabelled, oracle::hybrid_pn(n)), 1e-10) << n;
        EXPECT_LE(global_phase_distance(realize(hybrid_circuit(n)), hybrid_matrix(n)), 1e-10) << n;
    }
}

TEST(hybrid_qlabel_circuit, reversal_is_the_only_matching_relabelling) {
    for (std::size_t n = 3; n <= 6; n++) {
        auto fig = oracle::to_mat(realize(hybrid_qlabel_circuit(n)));
        auto target = oracle::hybrid_pn(n);
        std::vector<std::size_t> perm(n);
        for (std::size_t j = 0; j < n; j++) {
            perm[j] = j;
        }
        std::vector<std::vector<std::size_t>> matches;
        do {
            auto w = oracle::wire_permutation(perm);
            if (oracle::phase_diff(oracle::mul(oracle::mul(w, fig), oracle::adjoint(w)), target) <= 1e-10) {
                matches.push_back(perm);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        ASSERT_EQ(matches.size(), 1u) << n;
        for (std::size_t j = 0; j < n; j++) {
            EXPECT_EQ(matches[0][j], n - 1 - j);
        }
    }
}

TEST(hybrid_qlabel_circuit, gate_counts) {
    EXPECT_EQ(hybrid_qlabel_circuit(2).size(), 3u);
    EXPECT_EQ(hybrid_qlabel_circuit(3).size(), 3u);
    EXPECT_EQ(hybrid_qlabel_circuit(4).size(), 6u);
    EXPECT_EQ(hybrid_qlabel_circuit(5).size(), 6u);
    EXPECT_EQ(hybrid_qlabel_circuit(6).size(), 9u);
}

TEST(hybrid_encoder, bundles_matrix_and_circuit) {
    HybridEncoder e = hybrid_encoder(5);
    EXPECT_EQ(e.n_qubits, 5u);
    EXPECT_EQ(e.matrix, hybrid_matrix(5));
    EXPECT_EQ(e.circuit.n_wires(), 5u);
    EXPECT_THROW(hybrid_encoder(1), std::invalid_argument);
}

TEST(hybrid_protect, three_wires_x_error) {
    const PauliErrorTag errors[] = {PauliErrorTag::X};
    HybridResult r = hybrid_protect(3, StateVector::from_bits("00"), StateVector::basis(1, 0), errors);
    EXPECT_NEAR(r.fidelity_data, 1, 1e-10);
}

TEST(hybrid_protect, rotated_ancilla_y_error) {
    const PauliErrorTag errors[] = {PauliErrorTag::Y};
    StateVector anc = ancilla_from_selector("ry:" + std::to_string(3 * std::numbers::pi / 4));
    std::mt19937_64 rng(9);
    StateVector data = to_state(oracle::haar_state(2, rng));
    EXPECT_NEAR(hybrid_protect(3, data, anc, errors).fidelity_data, 1, 1e-10);
}

TEST(hybrid_protect, four_wires_keep_classical_bits) {
    const PauliErrorTag errors[] = {PauliErrorTag::Z};
    HybridResult r = hybrid_protect(4, StateVector::from_bits("00"), StateVector::from_bits("10"), errors);
    EXPECT_NEAR(r.fidelity_data, 1, 1e-10);
    EXPECT_EQ(r.ancilla_readback, "10");
    EXPECT_NEAR(r.ancilla_readback_probability, 1, 1e-10);
    EXPECT_TRUE(r.ancilla_deterministic);
}

TEST(hybrid_protect, random_data_all_sizes_and_error_products) {
    std::mt19937_64 rng(33);
    for (std::size_t n = 3; n <= 8; n++) {
        std::size_t na = n % 2 == 1 ? 1 : 2;
        StateVector data = to_state(oracle::haar_state(n - na, rng));
        std::vector<PauliErrorTag> errors{kTags[rng() % 3], kTags[rng() % 3], kTags[rng() % 3]};
        if (na == 1) {
            StateVector anc = to_state(oracle::haar_state(1, rng));
            EXPECT_NEAR(hybrid_protect(n, data, anc, errors).fidelity_data, 1, 1e-10) << n;
        } else {
            for (const char *bits : {"00", "01", "10", "11"}) {
                HybridResult r = hybrid_protect(n, data, StateVector::from_bits(bits), errors);
                EXPECT_NEAR(r.fidelity_data, 1, 1e-10) << n;
                EXPECT_EQ(r.ancilla_readback, bits);
                EXPECT_TRUE(r.ancilla_deterministic);
            }
        }
    }
}

TEST(hybrid_protect, two_wires_protect_bits) {
    const PauliErrorTag errors[] = {PauliErrorTag::Y};
    StateVector empty(0, {1});
    for (const char *bits : {"00", "01", "10", "11"}) {
        HybridResult r = hybrid_protect(2, empty, StateVector::from_bits(bits), errors);
        EXPECT_EQ(r.ancilla_readback, bits);
        EXPECT_TRUE(r.ancilla_deterministic);
    }
}

TEST(hybrid_protect, unencoded_register_is_damaged) {
    // Without the encoder X^(x)3 flips the data bits.
    StateVector in = StateVector::from_bits("000");
    ComplexMatrix x3 = kron_power(pauli_x().matrix(), 3);
    EXPECT_NEAR(fidelity(apply_unitary(x3, in), in), 0, 1e-12);
}

TEST(hybrid_protect, shape_errors) {
    const PauliErrorTag errors[] = {PauliErrorTag::X};
    StateVector q = StateVector::basis(1, 0);
    EXPECT_THROW(hybrid_protect(3, StateVector::from_bits("000"), q, errors), std::invalid_argument);
    EXPECT_THROW(hybrid_protect(4, StateVector::from_bits("00"), q, errors), std::invalid_argument);
    EXPECT_THROW(hybrid_protect(9, StateVector::from_bits("00"), q, errors), std::invalid_argument);
}

TEST(ancilla_from_selector, forms) {
    StateVector s = ancilla_from_selector("ry:3.141592653589793");
    EXPECT_NEAR(std::abs(s.amplitudes()[1]), 1, 1e-12);
    EXPECT_EQ(ancilla_from_selector("01").n_wires(), 2u);
    EXPECT_THROW(ancilla_from_selector("2"), std::invalid_argument);
}
