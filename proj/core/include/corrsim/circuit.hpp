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

#ifndef CORRSIM_CIRCUIT_HPP
#define CORRSIM_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrsim/gates.hpp"
#include "corrsim/linalg.hpp"

namespace corrsim {

/// Ordered gate list. Gates apply left to right in time.
class Circuit {
   public:
    explicit Circuit(std::size_t n_wires);

    std::size_t n_wires() const {
        return n_wires_;
    }
    const std::vector<PlacedGate> &gates() const {
        return gates_;
    }
    std::size_t size() const {
        return gates_.size();
    }

    Circuit &add(Gate gate, std::vector<std::size_t> wires);
    Circuit &add(PlacedGate pg);
    /// Appends `other`'s gates after this circuit's gates.
    Circuit &append(const Circuit &other);
    /// Appends `other`, sending its wire w to wire_map[w] of this circuit.
    Circuit &append_mapped(const Circuit &other, std::span<const std::size_t> wire_map);

    /// Number of gates acting on exactly `arity` wires.
    std::size_t count_arity(std::size_t arity) const;

   private:
    std::size_t n_wires_;
    std::vector<PlacedGate> gates_;
};

/// Reversed gate order with every gate inverted.
Circuit inverse(const Circuit &c);

/// Normalized pure state on n wires (wire 0 = most-significant bit).
class StateVector {
   public:
    /// Throws std::invalid_argument unless the length is 2^n_wires and the norm is
    /// 1 within 1e-10.
    StateVector(std::size_t n_wires, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t n_wires, std::size_t index);
    /// Basis state from a bitstring, leftmost character = wire 0.
    static StateVector from_bits(std::string_view bits);
    /// Tensor product, first factor on the top wires.
    static StateVector product(std::span<const StateVector> factors);

    std::size_t n_wires() const {
        return n_wires_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    /// Column vector view as a matrix.
    ComplexMatrix as_column() const;

   private:
    std::size_t n_wires_;
    std::vector<Complex> amplitudes_;
};

/// Mixed state on n wires.
class DensityMatrix {
   public:
    /// Throws std::invalid_argument unless `matrix` is 2^n x 2^n, Hermitian within
    /// 1e-10 and of unit trace within 1e-10.
    DensityMatrix(std::size_t n_wires, ComplexMatrix matrix);

    static DensityMatrix from_state(const StateVector &s);
    static DensityMatrix maximally_mixed(std::size_t n_wires);

    std::size_t n_wires() const {
        return n_wires_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }

   private:
    std::size_t n_wires_;
    ComplexMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Smallest quadratic form <x|rho|x> / <x|x> over `samples` random vectors.
double min_sampled_quadratic_form(const DensityMatrix &rho, std::uint64_t seed, std::size_t samples);

/// Measurement record. Keys list wire outcomes in ascending wire order, so the
/// lowest measured wire is the leftmost character.
struct Histogram {
    std::size_t n_measured = 0;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;

    /// Throws std::invalid_argument if counts don't sum to shots or a key has the
    /// wrong length or non-binary characters.
    void validate() const;
    /// Same counts with every key reversed (the q0-rightmost display order).
    Histogram with_reversed_keys() const;
    double frequency(const std::string &key) const;
};

std::string histogram_to_json(const Histogram &h);
std::string histogram_to_csv(const Histogram &h);
Histogram histogram_from_json(std::string_view text);

/// Seeded generator used for all sampling.
///
/// Engine: std::mt19937_64 (sequence fixed by the C++ standard) seeded with
/// splitmix64(seed). uniform() uses the top 53 bits, so streams do not depend on
/// the standard library's distribution implementations. Seed 0 is valid.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);
    /// Independent stream for a named task: Rng(seed ^ fnv1a64(name)).
    static Rng for_stream(std::uint64_t seed, std::string_view name);

    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform double in [0, 1).
    double uniform();

   private:
    std::mt19937_64 engine_;
};

/// Box-Muller normal deviate drawn from two uniform() calls.
double standard_normal(Rng &rng);
/// Haar-distributed element of SU(2), via a uniform point on the 3-sphere.
ComplexMatrix haar_su2(Rng &rng);
/// Haar-distributed pure state on n wires.
StateVector haar_state(std::size_t n_wires, Rng &rng);

/// U = embed(g_k) ... embed(g_1).
ComplexMatrix realize(const Circuit &c);

StateVector apply(const Circuit &c, const StateVector &s);
DensityMatrix apply(const Circuit &c, const DensityMatrix &rho);
/// rho -> U rho U^dag for an arbitrary 2^n unitary.
DensityMatrix apply_unitary(const ComplexMatrix &u, const DensityMatrix &rho);
StateVector apply_unitary(const ComplexMatrix &u, const StateVector &s);

/// Reduced state on `keep` (sorted ascending in the result). Throws
/// std::invalid_argument for an empty set, repeats or out-of-range wires.
DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep);

/// Born probabilities of every basis state.
std::vector<double> basis_probabilities(const StateVector &s);
std::vector<double> basis_probabilities(const DensityMatrix &rho);
/// Distribution over outcomes of `wires` (sorted ascending; outcome index uses
/// the lowest wire as its most-significant bit).
std::vector<double> marginal_distribution(std::span<const double> probs, std::size_t n_wires, std::vector<std::size_t> wires);

/// Inverse-CDF sampling of `shots` outcomes of a distribution over 2^n_measured
/// outcomes.
Histogram sample_histogram(std::span<const double> distribution, std::size_t n_measured, std::uint64_t shots, Rng &rng);

Histogram measure_shots(const StateVector &s, std::vector<std::size_t> wires, std::uint64_t shots, std::uint64_t seed);
Histogram measure_shots(const DensityMatrix &rho, std::vector<std::size_t> wires, std::uint64_t shots, std::uint64_t seed);

/// <b|rho|b>.
double fidelity(const DensityMatrix &a, const StateVector &b);
/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// `LABEL @ w0,w1,...` per line.
std::string format_circuit(const Circuit &c);
/// Inverse of format_circuit. Blank lines and `#` comments are skipped. When
/// n_wires is 0 the register size is one more than the largest wire used.
Circuit parse_circuit(std::string_view text, std::size_t n_wires = 0);

std::string bits_of(std::size_t index, std::size_t width);

}  // namespace corrsim

#endif
