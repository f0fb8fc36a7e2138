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

// Reference implementations used as test oracles. They work on plain nested
// vectors and share no code with the library beyond std::complex.

#ifndef CORRSIM_TESTS_ORACLE_HPP
#define CORRSIM_TESTS_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "corrsim/linalg.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;
using Vec = std::vector<C>;

Mat zeros(std::size_t rows, std::size_t cols);
Mat eye(std::size_t dim);
Mat mul(const Mat &a, const Mat &b);
Mat adjoint(const Mat &a);
Mat kron(const Mat &a, const Mat &b);
Mat add(const Mat &a, const Mat &b);
Mat scale(C s, const Mat &a);
Vec apply(const Mat &a, const Vec &v);

/// Operator of `g` on the given wires of an n-wire register, built entry by entry
/// from bit patterns (wire 0 = most-significant bit).
Mat embed(const Mat &g, const std::vector<std::size_t> &wires, std::size_t n);
/// Operator sending basis |b_0 .. b_{n-1}> to the state with bit b_w on wire perm[w].
Mat wire_permutation(const std::vector<std::size_t> &perm);

/// Trace over every wire not in `keep` (kept wires in ascending order).
Mat partial_trace(const Mat &rho, std::size_t n, const std::vector<std::size_t> &keep);
Mat outer(const Vec &a, const Vec &b);

double max_diff(const Mat &a, const Mat &b);
/// min over phases of max_diff(a, e^{i phi} b), phi taken from the largest entry of a.
double phase_diff(const Mat &a, const Mat &b);

Mat to_mat(const corrsim::ComplexMatrix &m);
corrsim::ComplexMatrix from_mat(const Mat &m);

/// Haar SU(2) via QR of a complex Ginibre matrix, then determinant removal.
Mat haar_su2(std::mt19937_64 &rng);
/// Haar-random pure state on n wires (normalized complex Gaussian vector).
Vec haar_state(std::size_t n, std::mt19937_64 &rng);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat hadamard();
Mat ry(double alpha);

/// Encoder with the exact algebraic entries of the corrected matrix.
Mat reference_new_u();
/// Encoder with the exact algebraic entries of the original matrix.
Mat reference_old_u();
/// The 4-decimal matrix quoted for the product of the six original factors.
Mat printed_erroneous_product();

/// The six factors of the corrected encoder as explicit 8x8 matrices, in product
/// order: {P1, P2, P3, Q1, Q2, Q3}, with Q1 = I4 (x) sigma_z.
std::vector<Mat> standard_factor_matrices();
/// sigma_z (x) I4, the other placement of the single-qubit factor.
Mat top_wire_z_factor();
/// The fourteen factors of the basic-gate form, in product order (leftmost first).
std::vector<Mat> basic_factor_matrices();
Mat product(const std::vector<Mat> &factors);

/// (I (x) Z + X (x) X) / sqrt(2).
Mat hybrid_p2();
/// Basis permutation |abc> -> |a^c, a^b, a^b^c>.
Mat hybrid_p3();
/// Recursive hybrid encoder on n wires, 2 <= n.
Mat hybrid_pn(std::size_t n);

/// Half-up rounding to `digits` decimals.
double round_to(double x, int digits);

}  // namespace oracle

#endif
