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

// Error avoidance for fully-correlated noise rho -> sum_i p_i W_i^(x)n rho (W_i^(x)n)^dag.
//
// Three-wire register layout used throughout (wire 0 = most-significant bit):
//   wire 0: pure ancilla |0>
//   wire 1: protected data qubit
//   wire 2: arbitrary carrier qubit |v>
// The encoder U satisfies U^dag W^(x)3 U = (I2 (x) W) (+) F_W for W in SU(2), so the
// data wire comes back untouched and only the carrier picks up W.
//
// Circuit diagrams that label wires q0 (top) .. q2 count q0 as the least-significant
// bit; diagram wire q_j is register wire 2 - j here.

#ifndef CORRSIM_CORRELATED_HPP
#define CORRSIM_CORRELATED_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corrsim/circuit.hpp"
#include "corrsim/gates.hpp"
#include "corrsim/linalg.hpp"

namespace corrsim {

/// One error atom: the single-qubit unitary W applied to every wire, with weight p.
struct ChannelAtom {
    std::string label;
    ComplexMatrix w;
    double p;
};

/// Finitely supported fully-correlated channel on n wires.
class CorrelatedChannel {
   public:
    /// Throws std::invalid_argument if n == 0, the support is empty, any p < 0,
    /// the weights don't sum to 1 within 1e-12, or any W is not a 2x2 unitary
    /// within 1e-12.
    CorrelatedChannel(std::size_t n_qubits, std::vector<ChannelAtom> support);

    std::size_t n_qubits() const {
        return n_qubits_;
    }
    const std::vector<ChannelAtom> &support() const {
        return support_;
    }

   private:
    std::size_t n_qubits_;
    std::vector<ChannelAtom> support_;
};

CorrelatedChannel make_channel(std::size_t n_qubits, std::vector<ChannelAtom> support);
/// Single-atom channel rho -> W^(x)n rho W^(x)n^dag.
CorrelatedChannel single_atom_channel(std::size_t n_qubits, const Gate &w);
DensityMatrix apply_channel(const CorrelatedChannel &ch, const DensityMatrix &rho);

/// Error atom from a selector: `h`, `x`, `y`, `z`, `i`, `ry:<alpha>`, or
/// `matrix:<json>` where <json> is a 2x2 nested array or 4-entry row-major array
/// of numbers, `re+imj` strings or [re, im] pairs.
Gate w_from_selector(std::string_view selector);
/// `{ "n": int, "support": [ {"w": <selector>, "p": real}, ... ] }`
CorrelatedChannel parse_channel_json(std::string_view text);
std::string channel_to_json(const CorrelatedChannel &ch);

/// Diagonal blocks and off-diagonal size of U^dag W^(x)3 U.
struct BlockReport {
    ComplexMatrix top_left;
    ComplexMatrix bottom_right;
    double off_diag_norm = 0;
};

/// The original encoder (first four columns shared with build_new_U()).
ComplexMatrix build_old_U();
/// The corrected encoder, which factors into standard gates.
ComplexMatrix build_new_U();

/// Throws std::invalid_argument unless u is an 8x8 unitary and w a 2x2 unitary
/// (tolerance 1e-10).
BlockReport verify_block_structure(const ComplexMatrix &u, const ComplexMatrix &w);

/// U as three CNOTs (one with an open control), one single-qubit gate and two
/// controlled rotations.
Circuit standard_decomposition();
/// U as 6 CNOTs and 8 single-qubit gates.
Circuit basic_decomposition();

enum class Decomposition { standard, basic };
Circuit decomposition(Decomposition d);

/// The six factors of the original (incorrect) circuit for build_old_U(), built
/// from their listed column vectors. Index 0 is applied first.
std::array<ComplexMatrix, 6> erroneous_decomposition_factors();
/// factors[5] * ... * factors[0].
ComplexMatrix erroneous_decomposition_product();

struct ProtectResult {
    double fidelity_data = 0;
    DensityMatrix final_state;
};

/// Encodes |0> (x) |psi> (x) |v>, applies the channel `rounds` times, decodes, and
/// scores the data wire against psi. Throws std::invalid_argument if the channel
/// is not 3-wide, psi/v are not single qubits, or rounds == 0.
ProtectResult three_qubit_protect(
    const StateVector &psi, const StateVector &v, const CorrelatedChannel &ch, std::size_t rounds);
/// Same with an explicit 8x8 encoder.
ProtectResult three_qubit_protect(
    const StateVector &psi,
    const StateVector &v,
    const CorrelatedChannel &ch,
    std::size_t rounds,
    const ComplexMatrix &encoder);

/// Wire roles of the (2k+1)-wire recursive scheme.
///
/// Block 1 places the 3-wire encoder on (0, 1, 2); block j >= 2 on
/// (2j, 2j-1, 2j-2). Data sits on the odd wires, wire 2 carries |v> and every
/// other even wire starts in |0>.
struct RecursiveLayout {
    std::size_t k = 0;
    std::vector<std::array<std::size_t, 3>> blocks;  // (zero, data, carrier) per block
    std::vector<std::size_t> data_wires;
    std::vector<std::size_t> zero_wires;
    std::size_t carrier_wire = 2;

    std::size_t n_wires() const {
        return 2 * k + 1;
    }
};

/// Throws std::invalid_argument for k == 0.
RecursiveLayout recursive_layout(std::size_t k);
/// Encoder for k data qubits on 2k+1 wires; blocks are applied in layout order.
Circuit recursive_encoder(std::size_t k, Decomposition d = Decomposition::standard);
/// Gate-level 5-wire encoder written out gate by gate, with both blocks interleaved.
Circuit recursive_explicit_circuit();

struct RecursiveResult {
    std::vector<double> data_fidelities;  // per layout.data_wires
    std::vector<double> zero_fidelities;  // per layout.zero_wires, against |0>
    DensityMatrix final_state;
};

/// Runs the recursive scheme: encode data (one state per data wire) with carrier
/// v, apply the channel `rounds` times, decode and score every wire.
RecursiveResult recursive_protect(
    std::size_t k,
    const std::vector<StateVector> &data,
    const StateVector &v,
    const CorrelatedChannel &ch,
    std::size_t rounds,
    Decomposition d = Decomposition::standard);

}  // namespace corrsim

#endif
