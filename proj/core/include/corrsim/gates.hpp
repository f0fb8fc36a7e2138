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

#ifndef CORRSIM_GATES_HPP
#define CORRSIM_GATES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrsim/linalg.hpp"

namespace corrsim {

/// A unitary on `arity()` wires.
///
/// The name is the gate's text form without parameters. Control prefixes are
/// spelled `C` (fires on |1>) and `O` (fires on |0>) in front of the target
/// gate's name, outermost control first, e.g. `OCX` or `ORYX`. Library base names
/// are I, X, Y, Z, H, RY, RYX (= RY(a)*X), XRY (= X*RY(a)) and SWAP; anything else
/// is a custom gate that can be printed but not parsed back.
class Gate {
   public:
    /// Throws std::invalid_argument unless `matrix` is a unitary of size 2^k, k >= 1.
    Gate(std::string name, std::vector<double> params, ComplexMatrix matrix);

    const std::string &name() const {
        return name_;
    }
    std::span<const double> params() const {
        return params_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    std::size_t arity() const {
        return arity_;
    }
    /// `NAME` or `NAME(p0,p1,...)` with round-trip-exact parameters.
    std::string label() const;

   private:
    std::string name_;
    std::vector<double> params_;
    ComplexMatrix matrix_;
    std::size_t arity_ = 0;
};

/// A gate bound to register wires. wires[0] is the gate's most-significant wire.
struct PlacedGate {
    Gate gate;
    std::vector<std::size_t> wires;

    /// Throws std::invalid_argument if the wire list has the wrong length, repeats a
    /// wire, or (std::out_of_range) names a wire >= n_wires.
    void validate(std::size_t n_wires) const;
};

Gate identity_gate();
Gate pauli_x();
Gate pauli_y();
Gate pauli_z();
Gate hadamard();
/// exp(-i alpha/2 sigma_y) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
Gate ry(double alpha);
/// ry(alpha) * sigma_x.
Gate ry_x(double alpha);
/// sigma_x * ry(alpha).
Gate x_ry(double alpha);
Gate swap_gate();
/// Adds one control wire in front of `g`. control_value must be 0 or 1.
Gate controlled(const Gate &g, int control_value);
Gate cnot();
Gate toffoli();
/// Wraps an arbitrary unitary, e.g. a sampled channel atom.
Gate custom_gate(std::string name, ComplexMatrix matrix);

/// Conjugate transpose, with a name that stays inside the library vocabulary
/// whenever the input's does.
Gate inverse(const Gate &g);

/// Parses a gate label produced by Gate::label(). Throws std::invalid_argument for
/// names outside the library vocabulary or wrong parameter counts.
Gate parse_gate_label(std::string_view label);

/// 2^n x 2^n matrix of the placed gate acting on an n-wire register.
ComplexMatrix embed(const PlacedGate &pg, std::size_t n_wires);

/// target <- embed(gate on wires) * target, without forming the embedded matrix.
/// `target` must have 2^n_wires rows; any column count.
void left_multiply_embedded(
    const ComplexMatrix &gate, std::span<const std::size_t> wires, std::size_t n_wires, ComplexMatrix &target);

/// Permutes the register's wires: wire w of the input ends up as wire perm[w].
ComplexMatrix permute_wires(const ComplexMatrix &m, std::span<const std::size_t> perm);

}  // namespace corrsim

#endif
