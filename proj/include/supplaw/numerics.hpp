/*
 * Copyright 2026 The supplaw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "supplaw/random.hpp"

namespace supplaw {

using Complex = std::complex<double>;

/// Default tolerance for structural checks (unitarity, symmetry relations).
inline constexpr double kStructuralTol = 1e-12;
/// Default tolerance for comparing probabilities.
inline constexpr double kProbabilityTol = 1e-10;

/// Largest N accepted by the factorial-time permanent oracle.
inline constexpr std::size_t kMaxNaivePermanent = 10;
/// Largest N accepted by the Ryser kernel.
inline constexpr std::size_t kMaxRyserPermanent = 30;

/**
 * Dense row-major complex matrix.
 *
 * Holds single-particle unitaries, scattering matrices, eigenbases and
 * distinguishability matrices. Entries supplied at construction must be
 * finite.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix elementwise_abs2() const;
    /// Largest entry modulus.
    double max_abs() const;
    bool is_diagonal(double tol = kStructuralTol) const;

    ComplexMatrix operator*(const ComplexMatrix &rhs) const;
    ComplexMatrix operator-(const ComplexMatrix &rhs) const;
    ComplexMatrix operator+(const ComplexMatrix &rhs) const;
    ComplexMatrix operator*(Complex scale) const;

    bool operator==(const ComplexMatrix &other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// max_{i,j} |a_ij - b_ij|; throws on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Permanent by explicit enumeration of all N! permutations. Oracle only.
Complex permanent_naive(const ComplexMatrix &m);

/// Permanent via Ryser's inclusion-exclusion formula, Gray-code ordered.
Complex permanent_ryser(const ComplexMatrix &m);

/// Default permanent kernel.
inline Complex permanent(const ComplexMatrix &m) { return permanent_ryser(m); }

/// Determinant via LU elimination with partial pivoting.
Complex determinant(const ComplexMatrix &m);

/// True iff the matrix is square and max|M^dagger M - 1| <= tol.
bool is_unitary(const ComplexMatrix &m, double tol = kStructuralTol);

/// Haar-distributed q x q unitary: Gram-Schmidt QR of a standard complex
/// Gaussian matrix, with R's diagonal made positive.
ComplexMatrix haar_random_unitary(std::size_t q, Rng &rng);
ComplexMatrix haar_random_unitary(std::size_t q, std::uint64_t seed);

/// Running sum with Neumaier compensation.
class CompensatedSum {
  public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace supplaw
