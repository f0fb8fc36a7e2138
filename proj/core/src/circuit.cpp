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

#include "corrsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

using namespace corrsim;

namespace {

constexpr double kStateTolerance = 1e-10;

void check_wire_count(std::size_t expected, std::size_t got, const char *what) {
    if (expected != got) {
        throw std::invalid_argument(
            std::string(what) + ": circuit has " + std::to_string(expected) + " wires, state has " + std::to_string(got));
    }
}

std::vector<std::size_t> normalize_wires(std::vector<std::size_t> wires, std::size_t n_wires, const char *what) {
    if (wires.empty()) {
        throw std::invalid_argument(std::string(what) + ": wire set is empty");
    }
    std::sort(wires.begin(), wires.end());
    for (std::size_t k = 0; k < wires.size(); k++) {
        if (wires[k] >= n_wires) {
            throw std::invalid_argument(std::string(what) + ": wire " + std::to_string(wires[k]) + " out of range");
        }
        if (k && wires[k] == wires[k - 1]) {
            throw std::invalid_argument(std::string(what) + ": repeated wire " + std::to_string(wires[k]));
        }
    }
    return wires;
}

// Gathers the bits of `index` on `wires` into a compact number, first wire most significant.
std::size_t extract_bits(std::size_t index, std::size_t n_wires, std::span<const std::size_t> wires) {
    std::size_t out = 0;
    for (std::size_t w : wires) {
        out = (out << 1) | ((index >> (n_wires - 1 - w)) & 1);
    }
    return out;
}

std::size_t deposit_bits(std::size_t value, std::size_t n_wires, std::span<const std::size_t> wires) {
    std::size_t out = 0;
    std::size_t k = wires.size();
    for (std::size_t i = 0; i < k; i++) {
        if ((value >> (k - 1 - i)) & 1) {
            out |= std::size_t{1} << (n_wires - 1 - wires[i]);
        }
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

void apply_gate(const PlacedGate &pg, std::size_t n_wires, ComplexMatrix &m) {
    left_multiply_embedded(pg.gate.matrix(), pg.wires, n_wires, m);
}

}  // namespace

Circuit::Circuit(std::size_t n_wires) : n_wires_(n_wires) {
    if (n_wires == 0) {
        throw std::invalid_argument("Circuit: needs at least one wire");
    }
}

Circuit &Circuit::add(Gate gate, std::vector<std::size_t> wires) {
    return add(PlacedGate{std::move(gate), std::move(wires)});
}

Circuit &Circuit::add(PlacedGate pg) {
    pg.validate(n_wires_);
    gates_.push_back(std::move(pg));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_wires() > n_wires_) {
        throw std::invalid_argument("Circuit::append: other circuit is wider");
    }
    for (const auto &pg : other.gates()) {
        add(pg);
    }
    return *this;
}

Circuit &Circuit::append_mapped(const Circuit &other, std::span<const std::size_t> wire_map) {
    if (wire_map.size() != other.n_wires()) {
        throw std::invalid_argument("Circuit::append_mapped: wire map size mismatch");
    }
    for (const auto &pg : other.gates()) {
        std::vector<std::size_t> wires;
        for (std::size_t w : pg.wires) {
            wires.push_back(wire_map[w]);
        }
        add(pg.gate, std::move(wires));
    }
    return *this;
}

std::size_t Circuit::count_arity(std::size_t arity) const {
    return static_cast<std::size_t>(std::count_if(gates_.begin(), gates_.end(), [&](const PlacedGate &pg) {
        return pg.gate.arity() == arity;
    }));
}

Circuit corrsim::inverse(const Circuit &c) {
    Circuit out(c.n_wires());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        out.add(inverse(it->gate), it->wires);
    }
    return out;
}

StateVector::StateVector(std::size_t n_wires, std::vector<Complex> amplitudes)
    : n_wires_(n_wires), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << n_wires)) {
        throw std::invalid_argument("StateVector: expected 2^" + std::to_string(n_wires) + " amplitudes");
    }
    double norm = 0;
    for (Complex z : amplitudes_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("StateVector: non-finite amplitude");
        }
        norm += std::norm(z);
    }
    if (std::abs(norm - 1) > kStateTolerance) {
        throw std::invalid_argument("StateVector: squared norm " + format_double(norm) + " is not 1");
    }
}

StateVector StateVector::basis(std::size_t n_wires, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << n_wires, Complex{0, 0});
    if (index >= amps.size()) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    amps[index] = 1;
    return StateVector(n_wires, std::move(amps));
}

StateVector StateVector::from_bits(std::string_view bits) {
    if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos) {
        throw std::invalid_argument("StateVector::from_bits: expected a non-empty 0/1 string");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        index = (index << 1) | static_cast<std::size_t>(ch == '1');
    }
    return basis(bits.size(), index);
}

StateVector StateVector::product(std::span<const StateVector> factors) {
    std::vector<Complex> amps{1};
    std::size_t n = 0;
    for (const auto &f : factors) {
        std::vector<Complex> next;
        next.reserve(amps.size() * f.amplitudes().size());
        for (Complex a : amps) {
            for (Complex b : f.amplitudes()) {
                next.push_back(a * b);
            }
        }
        amps = std::move(next);
        n += f.n_wires();
    }
    return StateVector(n, std::move(amps));
}

ComplexMatrix StateVector::as_column() const {
    return ComplexMatrix(amplitudes_.size(), 1, amplitudes_);
}

DensityMatrix::DensityMatrix(std::size_t n_wires, ComplexMatrix matrix) : n_wires_(n_wires), matrix_(std::move(matrix)) {
    std::size_t dim = std::size_t{1} << n_wires;
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: expected a 2^" + std::to_string(n_wires) + " square matrix");
    }
    if (!matrix_.all_finite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entry");
    }
    if (!is_hermitian(matrix_, Tolerance(kStateTolerance))) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex{1, 0}) > kStateTolerance) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
}

DensityMatrix DensityMatrix::from_state(const StateVector &s) {
    auto amps = s.amplitudes();
    ComplexMatrix m(amps.size(), amps.size());
    for (std::size_t r = 0; r < amps.size(); r++) {
        for (std::size_t c = 0; c < amps.size(); c++) {
            m(r, c) = amps[r] * std::conj(amps[c]);
        }
    }
    return DensityMatrix(s.n_wires(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_wires) {
    std::size_t dim = std::size_t{1} << n_wires;
    return DensityMatrix(n_wires, Complex{1.0 / static_cast<double>(dim), 0} * ComplexMatrix::identity(dim));
}

DensityMatrix corrsim::tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(a.n_wires() + b.n_wires(), kron(a.matrix(), b.matrix()));
}

double corrsim::min_sampled_quadratic_form(const DensityMatrix &rho, std::uint64_t seed, std::size_t samples) {
    Rng rng(seed);
    std::size_t dim = rho.matrix().rows();
    double worst = std::numeric_limits<double>::infinity();
    std::vector<Complex> x(dim);
    for (std::size_t s = 0; s < samples; s++) {
        double norm = 0;
        for (auto &z : x) {
            z = {rng.uniform() - 0.5, rng.uniform() - 0.5};
            norm += std::norm(z);
        }
        Complex q = 0;
        for (std::size_t r = 0; r < dim; r++) {
            Complex row = 0;
            for (std::size_t c = 0; c < dim; c++) {
                row += rho.matrix()(r, c) * x[c];
            }
            q += std::conj(x[r]) * row;
        }
        worst = std::min(worst, q.real() / norm);
    }
    return worst;
}

void Histogram::validate() const {
    std::uint64_t total = 0;
    for (const auto &[key, count] : counts) {
        if (key.size() != n_measured || key.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("Histogram: bad key '" + key + "'");
        }
        total += count;
    }
    if (total != shots) {
        throw std::invalid_argument("Histogram: counts sum to " + std::to_string(total) + ", shots = " + std::to_string(shots));
    }
}

Histogram Histogram::with_reversed_keys() const {
    Histogram out{n_measured, {}, shots};
    for (const auto &[key, count] : counts) {
        out.counts[std::string(key.rbegin(), key.rend())] += count;
    }
    return out;
}

double Histogram::frequency(const std::string &key) const {
    auto it = counts.find(key);
    if (it == counts.end() || shots == 0) {
        return 0;
    }
    return static_cast<double>(it->second) / static_cast<double>(shots);
}

std::string corrsim::histogram_to_json(const Histogram &h) {
    nlohmann::ordered_json j;
    j["shots"] = h.shots;
    j["counts"] = nlohmann::ordered_json::object();
    for (const auto &[key, count] : h.counts) {
        j["counts"][key] = count;
    }
    return j.dump(2) + "\n";
}

std::string corrsim::histogram_to_csv(const Histogram &h) {
    std::string out = "bitstring,count\n";
    for (const auto &[key, count] : h.counts) {
        out += key + "," + std::to_string(count) + "\n";
    }
    return out;
}

Histogram corrsim::histogram_from_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        Histogram h;
        h.shots = j.at("shots").get<std::uint64_t>();
        for (const auto &[key, value] : j.at("counts").items()) {
            h.counts[key] = value.get<std::uint64_t>();
            h.n_measured = key.size();
        }
        h.validate();
        return h;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("histogram_from_json: ") + e.what());
    }
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {
}

Rng Rng::for_stream(std::uint64_t seed, std::string_view name) {
    return Rng(seed ^ fnv1a64(name));
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double corrsim::standard_normal(Rng &rng) {
    double u1 = 1.0 - rng.uniform();  // (0, 1]
    double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

ComplexMatrix corrsim::haar_su2(Rng &rng) {
    double q[4];
    double norm = 0;
    do {
        norm = 0;
        for (double &x : q) {
            x = standard_normal(rng);
            norm += x * x;
        }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    Complex a{q[0] / norm, q[1] / norm};
    Complex b{q[2] / norm, q[3] / norm};
    return ComplexMatrix::from_rows({{a, b}, {-std::conj(b), std::conj(a)}});
}

StateVector corrsim::haar_state(std::size_t n_wires, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << n_wires);
    double norm = 0;
    do {
        norm = 0;
        for (auto &z : amps) {
            z = {standard_normal(rng), standard_normal(rng)};
            norm += std::norm(z);
        }
    } while (norm < 1e-12);
    for (auto &z : amps) {
        z /= std::sqrt(norm);
    }
    return StateVector(n_wires, std::move(amps));
}

ComplexMatrix corrsim::realize(const Circuit &c) {
    ComplexMatrix m = ComplexMatrix::identity(std::size_t{1} << c.n_wires());
    for (const auto &pg : c.gates()) {
        apply_gate(pg, c.n_wires(), m);
    }
    return m;
}

StateVector corrsim::apply(const Circuit &c, const StateVector &s) {
    check_wire_count(c.n_wires(), s.n_wires(), "apply");
    ComplexMatrix v = s.as_column();
    for (const auto &pg : c.gates()) {
        apply_gate(pg, c.n_wires(), v);
    }
    auto e = v.entries();
    return StateVector(s.n_wires(), std::vector<Complex>(e.begin(), e.end()));
}

DensityMatrix corrsim::apply(const Circuit &c, const DensityMatrix &rho) {
    check_wire_count(c.n_wires(), rho.n_wires(), "apply");
    ComplexMatrix m = rho.matrix();
    for (const auto &pg : c.gates()) {
        // G M G^dag = (G (G M)^dag)^dag
        apply_gate(pg, c.n_wires(), m);
        m = dagger(m);
        apply_gate(pg, c.n_wires(), m);
        m = dagger(m);
    }
    return DensityMatrix(rho.n_wires(), std::move(m));
}

DensityMatrix corrsim::apply_unitary(const ComplexMatrix &u, const DensityMatrix &rho) {
    if (u.rows() != rho.matrix().rows() || !u.is_square()) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    return DensityMatrix(rho.n_wires(), matmul(matmul(u, rho.matrix()), dagger(u)));
}

StateVector corrsim::apply_unitary(const ComplexMatrix &u, const StateVector &s) {
    if (u.rows() != s.amplitudes().size() || !u.is_square()) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    ComplexMatrix v = matmul(u, s.as_column());
    auto e = v.entries();
    return StateVector(s.n_wires(), std::vector<Complex>(e.begin(), e.end()));
}

DensityMatrix corrsim::partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep) {
    std::size_t n = rho.n_wires();
    keep = normalize_wires(std::move(keep), n, "partial_trace");
    std::vector<std::size_t> traced;
    for (std::size_t w = 0; w < n; w++) {
        if (!std::binary_search(keep.begin(), keep.end(), w)) {
            traced.push_back(w);
        }
    }
    std::size_t keep_dim = std::size_t{1} << keep.size();
    std::size_t trace_dim = std::size_t{1} << traced.size();
    std::vector<std::size_t> traced_offsets(trace_dim);
    for (std::size_t t = 0; t < trace_dim; t++) {
        traced_offsets[t] = deposit_bits(t, n, traced);
    }
    ComplexMatrix out(keep_dim, keep_dim);
    for (std::size_t r = 0; r < keep_dim; r++) {
        std::size_t r_full = deposit_bits(r, n, keep);
        for (std::size_t c = 0; c < keep_dim; c++) {
            std::size_t c_full = deposit_bits(c, n, keep);
            Complex acc = 0;
            for (std::size_t off : traced_offsets) {
                acc += rho.matrix()(r_full | off, c_full | off);
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(keep.size(), std::move(out));
}

std::vector<double> corrsim::basis_probabilities(const StateVector &s) {
    std::vector<double> p;
    p.reserve(s.amplitudes().size());
    for (Complex z : s.amplitudes()) {
        p.push_back(std::norm(z));
    }
    return p;
}

std::vector<double> corrsim::basis_probabilities(const DensityMatrix &rho) {
    std::vector<double> p;
    p.reserve(rho.matrix().rows());
    for (std::size_t k = 0; k < rho.matrix().rows(); k++) {
        p.push_back(std::max(0.0, rho.matrix()(k, k).real()));
    }
    return p;
}

std::vector<double> corrsim::marginal_distribution(
    std::span<const double> probs, std::size_t n_wires, std::vector<std::size_t> wires) {
    if (probs.size() != (std::size_t{1} << n_wires)) {
        throw std::invalid_argument("marginal_distribution: distribution size is not 2^n_wires");
    }
    wires = normalize_wires(std::move(wires), n_wires, "marginal_distribution");
    std::vector<double> out(std::size_t{1} << wires.size(), 0.0);
    for (std::size_t k = 0; k < probs.size(); k++) {
        out[extract_bits(k, n_wires, wires)] += probs[k];
    }
    return out;
}

Histogram corrsim::sample_histogram(
    std::span<const double> distribution, std::size_t n_measured, std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("sample_histogram: shots must be positive");
    }
    if (distribution.size() != (std::size_t{1} << n_measured)) {
        throw std::invalid_argument("sample_histogram: distribution size is not 2^n_measured");
    }
    std::vector<double> cdf(distribution.size());
    std::partial_sum(distribution.begin(), distribution.end(), cdf.begin());
    double total = cdf.back();
    if (!(total > 0)) {
        throw std::invalid_argument("sample_histogram: distribution has no mass");
    }
    std::vector<std::uint64_t> tallies(distribution.size(), 0);
    for (std::uint64_t s = 0; s < shots; s++) {
        double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t outcome = static_cast<std::size_t>(it - cdf.begin());
        // Rounding can push u onto the last cdf entry; fall back to the last outcome with mass.
        if (outcome >= distribution.size()) {
            outcome = distribution.size() - 1;
            while (outcome > 0 && distribution[outcome] <= 0) {
                outcome--;
            }
        }
        tallies[outcome]++;
    }
    Histogram h{n_measured, {}, shots};
    for (std::size_t k = 0; k < tallies.size(); k++) {
        if (tallies[k]) {
            h.counts[bits_of(k, n_measured)] = tallies[k];
        }
    }
    return h;
}

Histogram corrsim::measure_shots(
    const StateVector &s, std::vector<std::size_t> wires, std::uint64_t shots, std::uint64_t seed) {
    std::size_t m = wires.size();
    auto dist = marginal_distribution(basis_probabilities(s), s.n_wires(), std::move(wires));
    Rng rng(seed);
    return sample_histogram(dist, m, shots, rng);
}

Histogram corrsim::measure_shots(
    const DensityMatrix &rho, std::vector<std::size_t> wires, std::uint64_t shots, std::uint64_t seed) {
    std::size_t m = wires.size();
    auto dist = marginal_distribution(basis_probabilities(rho), rho.n_wires(), std::move(wires));
    Rng rng(seed);
    return sample_histogram(dist, m, shots, rng);
}

double corrsim::fidelity(const DensityMatrix &a, const StateVector &b) {
    if (a.n_wires() != b.n_wires()) {
        throw std::invalid_argument("fidelity: wire count mismatch");
    }
    auto amps = b.amplitudes();
    Complex acc = 0;
    for (std::size_t r = 0; r < amps.size(); r++) {
        Complex row = 0;
        for (std::size_t c = 0; c < amps.size(); c++) {
            row += a.matrix()(r, c) * amps[c];
        }
        acc += std::conj(amps[r]) * row;
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

double corrsim::fidelity(const StateVector &a, const StateVector &b) {
    if (a.n_wires() != b.n_wires()) {
        throw std::invalid_argument("fidelity: wire count mismatch");
    }
    Complex overlap = 0;
    for (std::size_t k = 0; k < a.amplitudes().size(); k++) {
        overlap += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

std::string corrsim::format_circuit(const Circuit &c) {
    std::string out;
    for (const auto &pg : c.gates()) {
        out += pg.gate.label();
        out += " @ ";
        for (std::size_t k = 0; k < pg.wires.size(); k++) {
            if (k) {
                out += ',';
            }
            out += std::to_string(pg.wires[k]);
        }
        out += '\n';
    }
    return out;
}

Circuit corrsim::parse_circuit(std::string_view text, std::size_t n_wires) {
    std::vector<PlacedGate> parsed;
    std::size_t widest = 0;
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto at = line.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": missing '@'");
        }
        std::string label = line.substr(0, at);
        label.erase(std::remove_if(label.begin(), label.end(), ::isspace), label.end());
        std::vector<std::size_t> wires;
        std::istringstream wire_list(line.substr(at + 1));
        std::string item;
        while (std::getline(wire_list, item, ',')) {
            item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
            if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": bad wire '" + item + "'");
            }
            wires.push_back(std::stoul(item));
            widest = std::max(widest, wires.back() + 1);
        }
        parsed.push_back(PlacedGate{parse_gate_label(label), std::move(wires)});
    }
    Circuit c(n_wires == 0 ? std::max<std::size_t>(widest, 1) : n_wires);
    for (auto &pg : parsed) {
        c.add(std::move(pg));
    }
    return c;
}

std::string corrsim::bits_of(std::size_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t k = 0; k < width; k++) {
        if ((index >> (width - 1 - k)) & 1) {
            s[k] = '1';
        }
    }
    return s;
}
