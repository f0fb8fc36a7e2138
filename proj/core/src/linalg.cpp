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

#include "corrsim/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace corrsim;

namespace {

std::string shape_str(const ComplexMatrix &m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
    }
}

}  // namespace

Tolerance::Tolerance(double eps) : epsilon(eps) {
    if (!(eps >= 0)) {
        throw std::invalid_argument("Tolerance epsilon must be non-negative");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0, 0}) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument(
            "ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
            std::to_string(entries_.size()));
    }
    if (!all_finite()) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t n_rows = rows.size();
    std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(n_rows * n_cols);
    for (const auto &row : rows) {
        if (row.size() != n_cols) {
            throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(n_rows, n_cols, std::move(entries));
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<std::vector<Complex>> &columns) {
    std::size_t n_cols = columns.size();
    std::size_t n_rows = n_cols == 0 ? 0 : columns.front().size();
    std::vector<Complex> entries(n_rows * n_cols);
    for (std::size_t c = 0; c < n_cols; c++) {
        if (columns[c].size() != n_rows) {
            throw std::invalid_argument("ComplexMatrix::from_columns: ragged columns");
        }
        for (std::size_t r = 0; r < n_rows; r++) {
            entries[r * n_cols + c] = columns[c][r];
        }
    }
    return ComplexMatrix(n_rows, n_cols, std::move(entries));
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix corrsim::operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix corrsim::operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix corrsim::operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

ComplexMatrix corrsim::operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

ComplexMatrix corrsim::kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            Complex s = a(ar, ac);
            if (s == Complex{0, 0}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix corrsim::kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        return ComplexMatrix::identity(1);
    }
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); k++) {
        out = kron(out, factors[k]);
    }
    return out;
}

ComplexMatrix corrsim::kron_power(const ComplexMatrix &a, std::size_t n) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t k = 0; k < n; k++) {
        out = kron(out, a);
    }
    return out;
}

ComplexMatrix corrsim::matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimension mismatch " + shape_str(a) + " * " + shape_str(b));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            Complex s = a(r, k);
            if (s == Complex{0, 0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); c++) {
                out(r, c) += s * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix corrsim::dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexMatrix corrsim::direct_sum(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            out(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows(); r++) {
        for (std::size_t c = 0; c < b.cols(); c++) {
            out(a.rows() + r, a.cols() + c) = b(r, c);
        }
    }
    return out;
}

ComplexMatrix corrsim::block(
    const ComplexMatrix &a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    if (row0 + rows > a.rows() || col0 + cols > a.cols()) {
        throw std::out_of_range("block: range exceeds " + shape_str(a));
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            out(r, c) = a(row0 + r, col0 + c);
        }
    }
    return out;
}

bool corrsim::is_unitary(const ComplexMatrix &a, Tolerance tol) {
    if (!a.is_square()) {
        throw std::invalid_argument("is_unitary: matrix is " + shape_str(a));
    }
    return max_abs_diff(matmul(dagger(a), a), ComplexMatrix::identity(a.rows())) <= tol.epsilon;
}

bool corrsim::is_hermitian(const ComplexMatrix &a, Tolerance tol) {
    if (!a.is_square()) {
        throw std::invalid_argument("is_hermitian: matrix is " + shape_str(a));
    }
    return max_abs_diff(a, dagger(a)) <= tol.epsilon;
}

double corrsim::max_abs(const ComplexMatrix &a) {
    double m = 0;
    for (Complex z : a.entries()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double corrsim::max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); k++) {
        m = std::max(m, std::abs(ea[k] - eb[k]));
    }
    return m;
}

double corrsim::global_phase_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "equal_up_to_global_phase");
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < ea.size(); k++) {
        if (std::abs(ea[k]) > std::abs(ea[pivot])) {
            pivot = k;
        }
    }
    if (ea.empty() || std::abs(ea[pivot]) == 0) {
        return max_abs(b);
    }
    if (std::abs(eb[pivot]) == 0) {
        return max_abs_diff(a, b);
    }
    Complex phase = ea[pivot] / eb[pivot];
    phase /= std::abs(phase);
    double m = 0;
    for (std::size_t k = 0; k < ea.size(); k++) {
        m = std::max(m, std::abs(ea[k] - phase * eb[k]));
    }
    return m;
}

bool corrsim::equal_up_to_global_phase(const ComplexMatrix &a, const ComplexMatrix &b, Tolerance tol) {
    return global_phase_distance(a, b) <= tol.epsilon;
}

std::string corrsim::format_double(double x) {
    if (x == 0) {
        x = 0;  // Drop the sign of negative zero.
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string corrsim::format_complex(Complex z) {
    std::string out = format_double(z.real());
    double im = z.imag() == 0 ? 0.0 : z.imag();
    out += im < 0 ? '-' : '+';
    out += format_double(std::abs(im));
    out += 'j';
    return out;
}

Complex corrsim::parse_complex(std::string_view token) {
    if (token.empty()) {
        throw std::invalid_argument("empty complex token");
    }
    if (token.back() != 'j' && token.back() != 'i') {
        return {parse_real(token), 0};
    }
    std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s);
    };
    if (split == std::string_view::npos) {
        return {0, imag_part(body)};
    }
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string corrsim::format_matrix(const ComplexMatrix &a) {
    std::string out;
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            if (c) {
                out += ' ';
            }
            out += format_complex(a(r, c));
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix corrsim::parse_matrix(std::string_view text) {
    std::vector<Complex> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tokens(line);
        std::string token;
        std::size_t count = 0;
        while (tokens >> token) {
            entries.push_back(parse_complex(token));
            count++;
        }
        if (count == 0) {
            continue;
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw std::invalid_argument(
                "parse_matrix: row " + std::to_string(rows) + " has " + std::to_string(count) + " entries, expected " +
                std::to_string(cols));
        }
        rows++;
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

double corrsim::parse_real(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

