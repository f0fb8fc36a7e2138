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

// Gate-level depolarizing noise and the experiment runner.

#ifndef CORRSIM_NOISE_EXP_HPP
#define CORRSIM_NOISE_EXP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrsim/circuit.hpp"
#include "corrsim/correlated.hpp"
#include "corrsim/hybrid.hpp"

namespace corrsim {

/// p1: depolarizing strength after each one-wire gate.
/// p2: total strength after each multi-wire gate, split as p2/k over its k wires.
/// p_readout: independent bit-flip probability per measured wire.
struct NoiseModel {
    double p1 = 0;
    double p2 = 0;
    double p_readout = 0;

    /// Throws std::invalid_argument unless every field is in [0, 1].
    void validate() const;
    bool is_zero() const {
        return p1 == 0 && p2 == 0 && p_readout == 0;
    }
};

/// p1 = 0.001, p2 = 0.01, no readout error.
NoiseModel synthetic_noise();

/// `0`, `synthetic`, or comma-separated `p1=<x>`, `p2=<x>`, `readout=<x>` assignments.
NoiseModel parse_noise(std::string_view text);

/// rho -> (1 - p) rho + p Tr_w(rho) (x) I/2 on one wire.
DensityMatrix depolarize(const DensityMatrix &rho, std::size_t wire, double p);
/// Runs the circuit, depolarizing every touched wire after each gate.
DensityMatrix apply_noisy(const Circuit &c, const DensityMatrix &rho, const NoiseModel &nm);
/// Distribution after independent bit flips with probability p on each of the
/// n_measured bits.
std::vector<double> apply_readout_error(std::vector<double> dist, std::size_t n_measured, double p);

enum class Scheme { corr3, corr3_basic, corr5, corr5_basic, hybrid };

Scheme parse_scheme(std::string_view text);
std::string scheme_name(Scheme s);

/// Everything needed to reproduce one run.
struct ExperimentSpec {
    std::string name = "experiment";
    Scheme scheme = Scheme::corr3;
    /// Error atom selector for the correlated schemes (see w_from_selector).
    std::string w = "h";
    /// Optional channel JSON; overrides `w` when set.
    std::optional<std::string> channel;
    std::size_t rounds = 1;
    /// Prepared data bits; empty means all zeros.
    std::string data;
    /// Carrier selector for the correlated schemes: bitstring or `ry:<alpha>`.
    std::string carrier = "0";
    /// Hybrid register size and ancilla selector.
    std::size_t n = 3;
    std::string ancilla = "0";
    std::vector<PauliErrorTag> errors{PauliErrorTag::X};
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    NoiseModel noise;

    /// Throws std::invalid_argument for inconsistent fields.
    void validate() const;
};

/// `{ "name", "scheme", "w", "channel", "rounds", "data", "carrier", "n", "ancilla",
/// "errors", "shots", "seed", "noise": {"p1", "p2", "p_readout"} }`; every key is
/// optional except "scheme".
ExperimentSpec parse_experiment_json(std::string_view text);

struct ExperimentReport {
    std::string name;
    std::uint64_t seed = 0;
    ExperimentSpec spec;
    std::vector<std::size_t> measured_wires;
    /// Outcome that counts as success on the measured wires.
    std::string expected;
    /// Exact outcome distribution on the measured wires, readout error included.
    std::vector<double> exact_distribution;
    Histogram histogram;
    /// Exact probability of the expected outcome.
    double success_probability = 0;
    /// Frequency of the expected outcome among the shots.
    double sampled_success_rate = 0;
};

/// Runs the experiment. Sampling uses Rng::for_stream(seed, name).
ExperimentReport run_named(const ExperimentSpec &spec);

/// Built-in experiments, e.g. `corr3-h`. Throws std::invalid_argument for unknown names.
ExperimentSpec preset_experiment(std::string_view name);
std::vector<std::string> preset_names();

/// With ibm_bit_order the count keys are reversed (q0 rightmost).
std::string report_to_json(const ExperimentReport &r, bool ibm_bit_order = false);
std::string report_to_csv(const ExperimentReport &r, bool ibm_bit_order = false);

/// Total-variation distance between a histogram's frequencies and a distribution.
double total_variation(const Histogram &h, std::span<const double> distribution);

}  // namespace corrsim

#endif
