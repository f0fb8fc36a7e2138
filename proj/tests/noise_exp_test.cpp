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

#include "corrsim/noise_exp.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "testing/oracle.hpp"

using namespace corrsim;

namespace {

DensityMatrix random_density(std::size_t n, std::mt19937_64 &rng) {
    auto a = oracle::haar_state(n, rng);
    auto b = oracle::haar_state(n, rng);
    auto m = oracle::add(oracle::scale(0.6, oracle::outer(a, a)), oracle::scale(0.4, oracle::outer(b, b)));
    return DensityMatrix(n, oracle::from_mat(m));
}

// Kraus form: (1 - 3p/4) rho + p/4 (X rho X + Y rho Y + Z rho Z) on one wire.
oracle::Mat oracle_depolarize(const oracle::Mat &rho, std::size_t wire, std::size_t n, double p) {
    oracle::Mat out = oracle::scale(1 - 0.75 * p, rho);
    for (const auto &pauli : {oracle::pauli_x(), oracle::pauli_y(), oracle::pauli_z()}) {
        oracle::Mat e = oracle::embed(pauli, {wire}, n);
        out = oracle::add(out, oracle::scale(p / 4, oracle::mul(oracle::mul(e, rho), e)));
    }
    return out;
}

ExperimentSpec corr3(double p1, double p2) {
    ExperimentSpec spec;
    spec.name = "corr3-sweep";
    spec.scheme = Scheme::corr3;
    spec.noise = NoiseModel{p1, p2, 0};
    return spec;
}

}  // namespace

TEST(NoiseModel, validation_and_parsing) {
    EXPECT_THROW((NoiseModel{-0.1, 0, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseModel{0, 1.5, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseModel{0, 0, std::nan("")}.validate()), std::invalid_argument);
    EXPECT_TRUE(parse_noise("0").is_zero());
    NoiseModel nm = parse_noise("p1=0.001,p2=0.01,readout=0.02");
    EXPECT_EQ(nm.p1, 0.001);
    EXPECT_EQ(nm.p2, 0.01);
    EXPECT_EQ(nm.p_readout, 0.02);
    NoiseModel s = parse_noise("synthetic");
    EXPECT_EQ(s.p1, 0.001);
    EXPECT_EQ(s.p2, 0.01);
    EXPECT_THROW(parse_noise("p3=0.1"), std::invalid_argument);
    EXPECT_THROW(parse_noise("p1"), std::invalid_argument);
    EXPECT_THROW(parse_noise("p1=2"), std::invalid_argument);
}

TEST(depolarize, matches_kraus_oracle) {
    std::mt19937_64 rng(1);
    DensityMatrix rho = random_density(3, rng);
    for (std::size_t wire = 0; wire < 3; wire++) {
        for (double p : {0.0, 0.1, 0.5, 1.0}) {
            auto lib = oracle::to_mat(depolarize(rho, wire, p).matrix());
            EXPECT_LE(oracle::max_diff(lib, oracle_depolarize(oracle::to_mat(rho.matrix()), wire, 3, p)), 1e-14);
        }
    }
}

TEST(apply_noisy, zero_noise_is_noiseless) {
    std::mt19937_64 rng(2);
    DensityMatrix rho = random_density(3, rng);
    Circuit c = basic_decomposition();
    EXPECT_LE(max_abs_diff(apply_noisy(c, rho, NoiseModel{}).matrix(), apply(c, rho).matrix()), 1e-15);
}

TEST(apply_noisy, full_single_qubit_noise_mixes) {
    Circuit c(1);
    c.add(hadamard(), {0});
    DensityMatrix out = apply_noisy(c, DensityMatrix::from_state(StateVector::basis(1, 0)), NoiseModel{1, 0, 0});
    EXPECT_LE(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
}

TEST(apply_noisy, splits_two_wire_strength) {
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_density(2, rng);
    Circuit c(2);
    c.add(cnot(), {0, 1});
    const double p2 = 0.3;
    auto expected = oracle::to_mat(apply(c, rho).matrix());
    expected = oracle_depolarize(expected, 0, 2, p2 / 2);
    expected = oracle_depolarize(expected, 1, 2, p2 / 2);
    EXPECT_LE(oracle::max_diff(oracle::to_mat(apply_noisy(c, rho, NoiseModel{0, p2, 0}).matrix()), expected), 1e-14);
}

TEST(apply_noisy, trace_preserved_and_dims_checked) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; trial++) {
        NoiseModel nm{u(rng), u(rng), 0};
        DensityMatrix out = apply_noisy(basic_decomposition(), random_density(3, rng), nm);
        EXPECT_NEAR(out.matrix().trace().real(), 1, 1e-10);
        EXPECT_TRUE(is_hermitian(out.matrix(), Tolerance(1e-10)));
    }
    EXPECT_THROW(apply_noisy(Circuit(2), DensityMatrix::maximally_mixed(3), NoiseModel{}), std::invalid_argument);
}

TEST(apply_readout_error, flips_bits) {
    auto d = apply_readout_error({1, 0, 0, 0}, 2, 0.1);
    EXPECT_NEAR(d[0], 0.81, 1e-15);
    EXPECT_NEAR(d[1], 0.09, 1e-15);
    EXPECT_NEAR(d[2], 0.09, 1e-15);
    EXPECT_NEAR(d[3], 0.01, 1e-15);
    EXPECT_THROW(apply_readout_error({1, 0}, 2, 0.1), std::invalid_argument);
}

TEST(Scheme, names_round_trip) {
    for (Scheme s : {Scheme::corr3, Scheme::corr3_basic, Scheme::corr5, Scheme::corr5_basic, Scheme::hybrid}) {
        EXPECT_EQ(parse_scheme(scheme_name(s)), s);
    }
    EXPECT_THROW(parse_scheme("corr7"), std::invalid_argument);
}

TEST(run_named, noiseless_corr3_recovers) {
    ExperimentSpec spec = corr3(0, 0);
    spec.shots = 8192;
    ExperimentReport r = run_named(spec);
    EXPECT_NEAR(r.success_probability, 1, 1e-10);
    EXPECT_EQ(r.histogram.counts.at("0"), 8192u);
    EXPECT_EQ(r.measured_wires, (std::vector<std::size_t>{1}));
}

TEST(run_named, every_preset_is_noiseless_perfect) {
    for (const auto &name : preset_names()) {
        ExperimentReport r = run_named(preset_experiment(name));
        EXPECT_NEAR(r.success_probability, 1, 1e-10) << name;
        EXPECT_NO_THROW(r.histogram.validate());
    }
}

TEST(run_named, data_bits_and_rounds) {
    ExperimentSpec spec;
    spec.scheme = Scheme::corr5_basic;
    spec.data = "10";
    spec.carrier = "ry:0.7";
    spec.w = "ry:1.1";
    spec.rounds = 3;
    ExperimentReport r = run_named(spec);
    EXPECT_EQ(r.expected, "10");
    EXPECT_NEAR(r.success_probability, 1, 1e-10);

    ExperimentSpec hyb;
    hyb.scheme = Scheme::hybrid;
    hyb.n = 6;
    hyb.ancilla = "01";
    hyb.data = "1011";
    hyb.errors = {PauliErrorTag::X, PauliErrorTag::Z, PauliErrorTag::Y};
    ExperimentReport h = run_named(hyb);
    EXPECT_EQ(h.expected, "011011");
    EXPECT_NEAR(h.success_probability, 1, 1e-10);
}

TEST(run_named, channel_overrides_w) {
    ExperimentSpec spec;
    spec.scheme = Scheme::corr3;
    spec.channel = R"({"n": 3, "support": [{"w": "x", "p": 0.5}, {"w": "ry:2.0", "p": 0.5}]})";
    EXPECT_NEAR(run_named(spec).success_probability, 1, 1e-10);
    spec.channel = R"({"n": 5, "support": [{"w": "x", "p": 1}]})";
    EXPECT_THROW(run_named(spec), std::invalid_argument);
}

TEST(run_named, synthetic_noise_above_threshold) {
    ExperimentSpec spec = preset_experiment("corr3-h");
    spec.noise = synthetic_noise();
    spec.seed = 11;
    ExperimentReport r = run_named(spec);
    EXPECT_GT(r.success_probability, 0.8);
    EXPECT_LT(r.success_probability, 1);
}

TEST(run_named, success_non_increasing_in_p2) {
    double prev = 2;
    for (double p2 : {0.0, 0.005, 0.01, 0.02, 0.04}) {
        double s = run_named(corr3(p2 / 10, p2)).success_probability;
        if (p2 == 0) {
            EXPECT_NEAR(s, 1, 1e-10);
        }
        EXPECT_LE(s, prev + 1e-12) << p2;
        prev = s;
    }
}

TEST(run_named, more_gates_lose_more_under_two_wire_noise) {
    ExperimentSpec a = preset_experiment("corr3-h");
    ExperimentSpec b = preset_experiment("corr3-basic-h");
    a.noise = b.noise = NoiseModel{0, 0.02, 0};
    EXPECT_GT(run_named(a).success_probability, run_named(b).success_probability);
}

TEST(run_named, readout_error_lowers_success) {
    ExperimentSpec spec = corr3(0, 0);
    spec.noise.p_readout = 0.05;
    EXPECT_NEAR(run_named(spec).success_probability, 0.95, 1e-10);
}

TEST(run_named, deterministic_per_seed) {
    ExperimentSpec spec = corr3(0.01, 0.1);
    spec.seed = 99;
    EXPECT_EQ(report_to_json(run_named(spec)), report_to_json(run_named(spec)));
    ExperimentSpec other = spec;
    other.seed = 100;
    EXPECT_NE(run_named(spec).histogram.counts, run_named(other).histogram.counts);
}

TEST(run_named, sampling_close_to_exact) {
    ExperimentSpec spec;
    spec.scheme = Scheme::corr5;
    spec.w = "y";
    spec.noise = NoiseModel{0.01, 0.1, 0.02};
    spec.shots = 65536;
    ExperimentReport r = run_named(spec);
    double k = static_cast<double>(r.exact_distribution.size());
    EXPECT_LE(total_variation(r.histogram, r.exact_distribution), 5 * std::sqrt(k / 65536));
    EXPECT_NEAR(r.sampled_success_rate, r.success_probability, 0.01);
}

TEST(run_named, invalid_specs) {
    EXPECT_THROW(preset_experiment("nope"), std::invalid_argument);
    ExperimentSpec spec;
    spec.data = "01";
    EXPECT_THROW(run_named(spec), std::invalid_argument);
    spec = ExperimentSpec{};
    spec.shots = 0;
    EXPECT_THROW(run_named(spec), std::invalid_argument);
    spec = ExperimentSpec{};
    spec.rounds = 0;
    EXPECT_THROW(run_named(spec), std::invalid_argument);
    spec = ExperimentSpec{};
    spec.scheme = Scheme::hybrid;
    spec.n = 4;
    spec.ancilla = "1";
    EXPECT_THROW(run_named(spec), std::invalid_argument);
    spec.n = 9;
    EXPECT_THROW(run_named(spec), std::invalid_argument);
}

TEST(experiment_json, parse) {
    ExperimentSpec spec = parse_experiment_json(
        R"({"scheme": "hybrid", "n": 4, "ancilla": "11", "errors": ["x", "z"], "shots": 100, "noise": {"p2": 0.01}})");
    EXPECT_EQ(spec.scheme, Scheme::hybrid);
    EXPECT_EQ(spec.n, 4u);
    EXPECT_EQ(spec.errors.size(), 2u);
    EXPECT_EQ(spec.noise.p2, 0.01);
    EXPECT_EQ(spec.name, "hybrid");
    EXPECT_THROW(parse_experiment_json("{}"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_json("[1,"), std::invalid_argument);
}

TEST(report, json_and_csv) {
    ExperimentSpec spec = preset_experiment("hybrid4-z");
    spec.shots = 10;
    ExperimentReport r = run_named(spec);
    std::string json = report_to_json(r);
    EXPECT_NE(json.find("\"counts\": {\n    \"1000\": 10\n  }"), std::string::npos);
    EXPECT_NE(json.find("\"bit_order\": \"library\""), std::string::npos);
    std::string ibm = report_to_json(r, true);
    EXPECT_NE(ibm.find("\"0001\": 10"), std::string::npos);
    EXPECT_EQ(report_to_csv(r).substr(0, 16), "bitstring,count\n");
}
