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

// Hybrid codes against the Pauli-correlated errors X^(x)n, Y^(x)n, Z^(x)n.
//
// After decoding, the error acts only on the ancilla wires:
//   odd n:  wire 0 is the ancilla, wires 1..n-1 carry data;
//   even n: wires 0,1 hold two classical bits, wires 2..n-1 carry data.
// Diagrams number wires q0..q(n-1) with q0 least significant; diagram wire q_j
// is register wire n-1-j.

#ifndef CORRSIM_HYBRID_HPP
#define CORRSIM_HYBRID_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrsim/circuit.hpp"
#include "corrsim/linalg.hpp"

namespace corrsim {

enum class PauliErrorTag { I, X, Y, Z };

/// Accepts `i`, `x`, `y`, `z` in either case.
PauliErrorTag parse_error_tag(std::string_view text);
/// Lower-case name.
std::string error_tag_name(PauliErrorTag tag);
Gate error_gate(PauliErrorTag tag);

/// Encoder for n wires: the recursive matrix and its gate circuit.
struct HybridEncoder {
    std::size_t n_qubits = 0;
    ComplexMatrix matrix;
    Circuit circuit;
};

/// (I (x) Z + X (x) X) / sqrt(2).
ComplexMatrix p2_matrix();
/// Permutation |abc> -> |a^c, a^b, a^b^c>.
ComplexMatrix p3_matrix();
/// Recursive encoder matrix. Throws std::invalid_argument unless 2 <= n <= 8.
ComplexMatrix hybrid_matrix(std::size_t n);
/// Gate sequence in diagram order, with wire index j meaning diagram wire q_j.
Circuit hybrid_qlabel_circuit(std::size_t n);
/// hybrid_qlabel_circuit(n) relabelled onto register wires (q_j -> n-1-j).
Circuit hybrid_circuit(std::size_t n);
/// Throws std::invalid_argument unless 2 <= n <= 8.
HybridEncoder hybrid_encoder(std::size_t n);

std::vector<std::size_t> hybrid_ancilla_wires(std::size_t n);
std::vector<std::size_t> hybrid_data_wires(std::size_t n);

/// P_n^dag W^(x)n P_n.
ComplexMatrix conjugated_error(std::size_t n, PauliErrorTag tag);

struct HybridResult {
    double fidelity_data = 0;
    /// Most likely ancilla outcome after decoding (ancilla wires in ascending order).
    std::string ancilla_readback;
    double ancilla_readback_probability = 0;
    /// True when the readback probability is 1 within 1e-10.
    bool ancilla_deterministic = false;
    StateVector final_state;
};

/// Encodes ancilla (x) data, applies the product of `errors` (first element
/// first) and decodes. The ancilla spans 1 wire for odd n and 2 wires for even n;
/// data spans the rest. Throws std::invalid_argument on shape mismatch.
HybridResult hybrid_protect(
    std::size_t n, const StateVector &data, const StateVector &ancilla, std::span<const PauliErrorTag> errors);

/// Ancilla state from a selector: a bitstring (`0`, `1`, `00` .. `11`) or
/// `ry:<alpha>` for RY(alpha)|0>.
StateVector ancilla_from_selector(std::string_view selector);

}  // namespace corrsim

#endif
