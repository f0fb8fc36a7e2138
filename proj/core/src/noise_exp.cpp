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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

using namespace corrsim;

namespace {

using ojson = nlohmann::ordered_json;

void check_probability(double p, const char *field) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string("NoiseModel: ") + field + " must be in [0, 1], got " + format_double(p));
    }
}

// G M G^dag for Hermitian M.
ComplexMatrix conjugate_on_wire(const ComplexMatrix &g, std::size_t wire, std::size_t n, const ComplexMatrix &m) {
    const std::size_t wires[] = {wire};
    ComplexMatrix out = m;
    left_multiply_embedded(g, wires, n, out);
    out = dagger(out);
    left_multiply_embedded(g, wires, n, out);
    return out;
}

std::size_t register_size(Scheme s, std::size_t hybrid_n) {
    switch (s) {
        case Scheme::corr3:
        case Scheme::corr3_basic:
            return 3;
        case Scheme::corr5:
        case Scheme::corr5_basic:
            return 5;
        case Scheme::hybrid:
            return hybrid_n;
    }
    throw std::invalid_argument("invalid scheme");
}

bool is_corr5(Scheme s) {
    return s == Scheme::corr5 || s == Scheme::corr5_basic;
}

std::vector<std::size_t> data_wires_of(const ExperimentSpec &spec) {
    if (spec.scheme == Scheme::hybrid) {
        return hybrid_data_wires(spec.n);
    }
    return recursive_layout(is_corr5(spec.scheme) ? 2 : 1).data_wires;
}

std::string data_bits(const ExperimentSpec &spec) {
    return spec.data.empty() ? std::string(data_wires_of(spec).size(), '0') : spec.data;
}

Decomposition decomposition_of(Scheme s) {
    return s == Scheme::corr3_basic || s == Scheme::corr5_basic ? Decomposition::basic : Decomposition::standard;
}

StateVector carrier_state(std::string_view selector) {
    StateVector s = ancilla_from_selector(selector);
    if (s.n_wires() != 1) {
        throw std::invalid_argument("carrier must be a single-qubit selector");
    }
    return s;
}

CorrelatedChannel channel_of(const ExperimentSpec &spec) {
    std::size_t n = register_size(spec.scheme, spec.n);
    if (spec.channel) {
        CorrelatedChannel ch = parse_channel_json(*spec.channel);
        if (ch.n_qubits() != n) {
            throw std::invalid_argument("channel acts on " + std::to_string(ch.n_qubits()) + " qubits, scheme needs " + std::to_string(n));
        }
        return ch;
    }
    return single_atom_channel(n, w_from_selector(spec.w));
}

ojson noise_json(const NoiseModel &nm) {
    return ojson{{"p1", nm.p1}, {"p2", nm.p2}, {"p_readout", nm.p_readout}};
}

ojson config_json(const ExperimentSpec &spec) {
    ojson c;
    c["scheme"] = scheme_name(spec.scheme);
    if (spec.scheme == Scheme::hybrid) {
        c["n"] = spec.n;
        c["ancilla"] = spec.ancilla;
        c["errors"] = ojson::array();
        for (PauliErrorTag t : spec.errors) {
            c["errors"].push_back(error_tag_name(t));
        }
    } else {
        if (spec.channel) {
            c["channel"] = ojson::parse(*spec.channel);
        } else {
            c["w"] = spec.w;
        }
        c["rounds"] = spec.rounds;
        c["carrier"] = spec.carrier;
    }
    c["data"] = data_bits(spec);
    c["noise"] = noise_json(spec.noise);
    return c;
}

std::string maybe_reversed(const std::string &key, bool reverse) {
    return reverse ? std::string(key.rbegin(), key.rend()) : key;
}

}  // namespace

void NoiseModel::validate() const {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    check_probability(p_readout, "p_readout");
}

NoiseModel corrsim::synthetic_noise() {
    return NoiseModel{0.001, 0.01, 0};
}

NoiseModel corrsim::parse_noise(std::string_view text) {
    NoiseModel nm;
    if (text == "0" || text.empty()) {
        return nm;
    }
    if (text == "synthetic") {
        return synthetic_noise();
    }
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("noise: expected key=value, got '" + std::string(item) + "'");
        }
        std::string_view key = item.substr(0, eq);
        double value = parse_real(item.substr(eq + 1));
        if (key == "p1") {
            nm.p1 = value;
        } else if (key == "p2") {
            nm.p2 = value;
        } else if (key == "readout" || key == "p_readout") {
            nm.p_readout = value;
        } else {
            throw std::invalid_argument("noise: unknown key '" + std::string(key) + "'");
        }
    }
    nm.validate();
    return nm;
}

DensityMatrix corrsim::depolarize(const DensityMatrix &rho, std::size_t wire, double p) {
    std::size_t n = rho.n_wires();
    if (wire >= n) {
        throw std::out_of_range("depolarize: wire out of range");
    }
    check_probability(p, "p");
    if (p == 0) {
        return rho;
    }
    const ComplexMatrix &m = rho.matrix();
    ComplexMatrix out = Complex{1 - 0.75 * p, 0} * m;
    for (const Gate &g : {pauli_x(), pauli_y(), pauli_z()}) {
        out += Complex{0.25 * p, 0} * conjugate_on_wire(g.matrix(), wire, n, m);
    }
    return DensityMatrix(n, std::move(out));
}

DensityMatrix corrsim::apply_noisy(const Circuit &c, const DensityMatrix &rho, const NoiseModel &nm) {
    nm.validate();
    if (c.n_wires() != rho.n_wires()) {
        throw std::invalid_argument("apply_noisy: circuit/state wire count mismatch");
    }
    if (nm.p1 == 0 && nm.p2 == 0) {
        return apply(c, rho);
    }
    DensityMatrix state = rho;
    for (const auto &pg : c.gates()) {
        Circuit one(c.n_wires());
        one.add(pg);
        state = apply(one, state);
        std::size_t k = pg.wires.size();
        double p = k == 1 ? nm.p1 : nm.p2 / static_cast<double>(k);
        for (std::size_t w : pg.wires) {
            state = depolarize(state, w, p);
        }
    }
    return state;
}

std::vector<double> corrsim::apply_readout_error(std::vector<double> dist, std::size_t n_measured, double p) {
    check_probability(p, "p_readout");
    if (dist.size() != (std::size_t{1} << n_measured)) {
        throw std::invalid_argument("apply_readout_error: distribution size mismatch");
    }
    if (p == 0) {
        return dist;
    }
    for (std::size_t bit = 0; bit < n_measured; bit++) {
        std::size_t mask = std::size_t{1} << bit;
        for (std::size_t k = 0; k < dist.size(); k++) {
            if (k & mask) {
                continue;
            }
            double a = dist[k];
            double b = dist[k | mask];
            dist[k] = (1 - p) * a + p * b;
            dist[k | mask] = p * a + (1 - p) * b;
        }
    }
    return dist;
}

Scheme corrsim::parse_scheme(std::string_view text) {
    if (text == "corr3") return Scheme::corr3;
    if (text == "corr3-basic") return Scheme::corr3_basic;
    if (text == "corr5") return Scheme::corr5;
    if (text == "corr5-basic") return Scheme::corr5_basic;
    if (text == "hybrid") return Scheme::hybrid;
    throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

std::string corrsim::scheme_name(Scheme s) {
    switch (s) {
        case Scheme::corr3:
            return "corr3";
        case Scheme::corr3_basic:
            return "corr3-basic";
        case Scheme::corr5:
            return "corr5";
        case Scheme::corr5_basic:
            return "corr5-basic";
        case Scheme::hybrid:
            return "hybrid";
    }
    throw std::invalid_argument("invalid scheme");
}

void ExperimentSpec::validate() const {
    if (name.empty()) {
        throw std::invalid_argument("experiment name must not be empty");
    }
    noise.validate();
    if (scheme == Scheme::hybrid) {
        if (n < 2 || n > 8) {
            throw std::invalid_argument("hybrid: n must be in 2..8");
        }
        StateVector a = ancilla_from_selector(ancilla);
        if (a.n_wires() != hybrid_ancilla_wires(n).size()) {
            throw std::invalid_argument(
                "hybrid: n=" + std::to_string(n) + " needs a " + std::to_string(hybrid_ancilla_wires(n).size()) + "-wire ancilla");
        }
        if (errors.empty()) {
            throw std::invalid_argument("hybrid: error list must not be empty");
        }
    } else {
        if (rounds == 0) {
            throw std::invalid_argument("rounds must be >= 1");
        }
        carrier_state(carrier);
        channel_of(*this);
    }
    std::size_t expected = data_wires_of(*this).size();
    if (!data.empty()) {
        if (data.size() != expected || data.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("data must be a " + std::to_string(expected) + "-bit string");
        }
    }
}

ExperimentSpec corrsim::parse_experiment_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        ExperimentSpec spec;
        spec.scheme = parse_scheme(j.at("scheme").get<std::string>());
        spec.name = j.value("name", scheme_name(spec.scheme));
        spec.w = j.value("w", spec.w);
        if (j.contains("channel")) {
            spec.channel = j.at("channel").dump();
        }
        spec.rounds = j.value("rounds", spec.rounds);
        spec.data = j.value("data", spec.data);
        spec.carrier = j.value("carrier", spec.carrier);
        spec.n = j.value("n", spec.n);
        spec.ancilla = j.value("ancilla", spec.ancilla);
        if (j.contains("errors")) {
            spec.errors.clear();
            for (const auto &e : j.at("errors")) {
                spec.errors.push_back(parse_error_tag(e.get<std::string>()));
            }
        }
        spec.shots = j.value("shots", spec.shots);
        spec.seed = j.value("seed", spec.seed);
        if (j.contains("noise")) {
            const auto &nj = j.at("noise");
            spec.noise.p1 = nj.value("p1", 0.0);
            spec.noise.p2 = nj.value("p2", 0.0);
            spec.noise.p_readout = nj.value("p_readout", 0.0);
        }
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("parse_experiment_json: ") + e.what());
    }
}

ExperimentReport corrsim::run_named(const ExperimentSpec &spec) {
    spec.validate();
    std::size_t n = register_size(spec.scheme, spec.n);
    std::string bits = data_bits(spec);
    std::vector<std::size_t> data_wires = data_wires_of(spec);

    ExperimentReport report;
    report.name = spec.name;
    report.seed = spec.seed;
    report.spec = spec;
    report.measured_wires = data_wires;
    report.expected = bits;

    std::vector<StateVector> wires(n, StateVector::basis(1, 0));
    for (std::size_t i = 0; i < data_wires.size(); i++) {
        wires[data_wires[i]] = StateVector::from_bits(bits.substr(i, 1));
    }

    DensityMatrix rho = DensityMatrix::maximally_mixed(1);
    if (spec.scheme == Scheme::hybrid) {
        StateVector anc = ancilla_from_selector(spec.ancilla);
        std::vector<std::size_t> anc_wires = hybrid_ancilla_wires(spec.n);
        for (std::size_t i = 0; i < anc_wires.size(); i++) {
            wires[anc_wires[i]] = anc_wires.size() == 1 ? anc : StateVector::from_bits(spec.ancilla.substr(i, 1));
        }
        // Even registers carry two classical bits that must come back intact; the
        // odd-register ancilla absorbs the error and is not scored.
        if (anc_wires.size() == 2) {
            report.measured_wires = anc_wires;
            report.measured_wires.insert(report.measured_wires.end(), data_wires.begin(), data_wires.end());
            report.expected = spec.ancilla + bits;
        }
        Circuit encoder = hybrid_circuit(spec.n);
        ComplexMatrix error = ComplexMatrix::identity(std::size_t{1} << n);
        for (PauliErrorTag t : spec.errors) {
            error = matmul(kron_power(error_gate(t).matrix(), n), error);
        }
        rho = apply_noisy(encoder, DensityMatrix::from_state(StateVector::product(wires)), spec.noise);
        rho = apply_unitary(error, rho);
        rho = apply_noisy(inverse(encoder), rho, spec.noise);
    } else {
        wires[2] = carrier_state(spec.carrier);
        CorrelatedChannel ch = channel_of(spec);
        Circuit encoder = recursive_encoder(is_corr5(spec.scheme) ? 2 : 1, decomposition_of(spec.scheme));
        rho = apply_noisy(encoder, DensityMatrix::from_state(StateVector::product(wires)), spec.noise);
        for (std::size_t r = 0; r < spec.rounds; r++) {
            rho = apply_channel(ch, rho);
        }
        rho = apply_noisy(inverse(encoder), rho, spec.noise);
    }

    std::size_t m = report.measured_wires.size();
    auto dist = marginal_distribution(basis_probabilities(rho), n, report.measured_wires);
    dist = apply_readout_error(std::move(dist), m, spec.noise.p_readout);
    std::size_t expected_index = 0;
    for (char ch : report.expected) {
        expected_index = (expected_index << 1) | static_cast<std::size_t>(ch == '1');
    }
    report.success_probability = std::clamp(dist[expected_index], 0.0, 1.0);
    report.exact_distribution = dist;

    Rng rng = Rng::for_stream(spec.seed, spec.name);
    report.histogram = sample_histogram(dist, m, spec.shots, rng);
    report.sampled_success_rate = report.histogram.frequency(report.expected);
    return report;
}

ExperimentSpec corrsim::preset_experiment(std::string_view name) {
    ExperimentSpec spec;
    spec.name = std::string(name);
    const std::string three_quarter_pi = "ry:" + format_double(3 * std::numbers::pi / 4);
    if (name == "corr3-h") {
        spec.scheme = Scheme::corr3;
    } else if (name == "corr3-basic-h") {
        spec.scheme = Scheme::corr3_basic;
    } else if (name == "corr5-h") {
        spec.scheme = Scheme::corr5;
    } else if (name == "corr5-basic-h") {
        spec.scheme = Scheme::corr5_basic;
    } else if (name == "hybrid3-x") {
        spec.scheme = Scheme::hybrid;
        spec.n = 3;
    } else if (name == "hybrid3-ry-y") {
        spec.scheme = Scheme::hybrid;
        spec.n = 3;
        spec.ancilla = three_quarter_pi;
        spec.errors = {PauliErrorTag::Y};
    } else if (name == "hybrid4-z") {
        spec.scheme = Scheme::hybrid;
        spec.n = 4;
        spec.ancilla = "10";
        spec.errors = {PauliErrorTag::Z};
    } else if (name == "hybrid5-ry-x") {
        spec.scheme = Scheme::hybrid;
        spec.n = 5;
        spec.ancilla = three_quarter_pi;
    } else {
        throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
    }
    return spec;
}

std::vector<std::string> corrsim::preset_names() {
    return {"corr3-h", "corr3-basic-h", "corr5-h", "corr5-basic-h", "hybrid3-x", "hybrid3-ry-y", "hybrid4-z", "hybrid5-ry-x"};
}

std::string corrsim::report_to_json(const ExperimentReport &r, bool ibm_bit_order) {
    Histogram h = ibm_bit_order ? r.histogram.with_reversed_keys() : r.histogram;
    ojson j;
    j["name"] = r.name;
    j["seed"] = r.seed;
    j["config"] = config_json(r.spec);
    j["config"]["bit_order"] = ibm_bit_order ? "ibm" : "library";
    j["shots"] = h.shots;
    j["counts"] = ojson::object();
    for (const auto &[key, count] : h.counts) {
        j["counts"][key] = count;
    }
    j["success_probability"] = r.success_probability;
    j["sampled_success_rate"] = r.sampled_success_rate;
    j["measured_wires"] = r.measured_wires;
    j["expected"] = maybe_reversed(r.expected, ibm_bit_order);
    ojson exact = ojson::object();
    std::map<std::string, double> sorted;
    for (std::size_t k = 0; k < r.exact_distribution.size(); k++) {
        sorted[maybe_reversed(bits_of(k, r.measured_wires.size()), ibm_bit_order)] = r.exact_distribution[k];
    }
    for (const auto &[key, p] : sorted) {
        exact[key] = p;
    }
    j["exact_distribution"] = exact;
    return j.dump(2) + "\n";
}

std::string corrsim::report_to_csv(const ExperimentReport &r, bool ibm_bit_order) {
    return histogram_to_csv(ibm_bit_order ? r.histogram.with_reversed_keys() : r.histogram);
}

double corrsim::total_variation(const Histogram &h, std::span<const double> distribution) {
    if (distribution.size() != (std::size_t{1} << h.n_measured)) {
        throw std::invalid_argument("total_variation: distribution size mismatch");
    }
    double acc = 0;
    for (std::size_t k = 0; k < distribution.size(); k++) {
        acc += std::abs(h.frequency(bits_of(k, h.n_measured)) - distribution[k]);
    }
    return acc / 2;
}
