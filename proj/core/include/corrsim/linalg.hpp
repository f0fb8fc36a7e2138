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

#ifndef CORRSIM_LINALG_HPP
#define CORRSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corrsim {

using Complex = std::complex<double>;

/// Absolute per-entry bound used by every approximate comparison.
struct Tolerance {
    double epsilon;

    explicit Tolerance(double eps);
};

/// Dense row-major complex matrix.
///
/// Bit convention shared by the whole library: when a matrix acts on n wires,
/// wire 0 is the most-significant bit of the row/column index, so the first
/// factor of a Kronecker product is the top wire.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major entries. Throws std::invalid_argument if the
    /// entry count is wrong or any entry is NaN/Inf.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// Matrix whose k-th column is columns[k].
    static ComplexMatrix from_columns(const std::vector<std::vector<Complex>> &columns);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    bool empty() const {
        return entries_.empty();
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> mutable_entries() {
        return entries_;
    }

    Complex trace() const;
    bool all_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product; `a` is the most-significant (top-wire) factor.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
/// Left-to-right Kronecker product of all factors.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
/// n-fold Kronecker power.
ComplexMatrix kron_power(const ComplexMatrix &a, std::size_t n);

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &a);
/// Direct sum: block-diagonal [a 0; 0 b].
ComplexMatrix direct_sum(const ComplexMatrix &a, const ComplexMatrix &b);
/// Copy of the rows x cols block whose top-left corner is (row0, col0).
ComplexMatrix block(const ComplexMatrix &a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols);

/// max-entry |a^dag a - I| <= tol. Throws std::invalid_argument if `a` is not square.
bool is_unitary(const ComplexMatrix &a, Tolerance tol);
bool is_hermitian(const ComplexMatrix &a, Tolerance tol);

/// Largest absolute entry.
double max_abs(const ComplexMatrix &a);
/// Largest absolute entry of a - b. Throws std::invalid_argument on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Phase-insensitive comparison. Aligns the phase of `b` to `a` at the
/// largest-magnitude entry of `a`, then compares entrywise.
bool equal_up_to_global_phase(const ComplexMatrix &a, const ComplexMatrix &b, Tolerance tol);
/// The deviation `equal_up_to_global_phase` compares against its tolerance.
double global_phase_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Text fixture format: one row per line, whitespace-separated `re+imj` entries.
std::string format_matrix(const ComplexMatrix &a);
ComplexMatrix parse_matrix(std::string_view text);
/// Parses a single `re+imj`, `re-imj`, `re` or `imj` token.
Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);
/// Parses a real number, allowing a leading '+'. Throws std::invalid_argument.
double parse_real(std::string_view text);
/// Shortest text that round-trips to the same double.
std::string format_double(double x);

}  // namespace corrsim

#endif
