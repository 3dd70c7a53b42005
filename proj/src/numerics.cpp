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

#include "supplaw/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace supplaw {

namespace {

void require_finite(std::span<const Complex> data) {
    for (const auto &z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
}

void require_square(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("matrix data length " + std::to_string(data_.size()) +
                                    " does not match shape " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    require_finite(m.data_);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::elementwise_abs2() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
        out.data_[k] = std::norm(data_[k]);
    }
    return out;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

bool ComplexMatrix::is_diagonal(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && std::abs((*this)(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("matrix difference shape mismatch");
    }
    ComplexMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        out.data_[k] -= rhs.data_[k];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("matrix sum shape mismatch");
    }
    ComplexMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        out.data_[k] += rhs.data_[k];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    ComplexMatrix out = *this;
    for (auto &z : out.data_) {
        z *= scale;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).max_abs();
}

Complex permanent_naive(const ComplexMatrix &m) {
    require_square(m, "permanent_naive");
    const std::size_t n = m.rows();
    if (n > kMaxNaivePermanent) {
        throw std::domain_error("permanent_naive: N=" + std::to_string(n) + " exceeds factorial-enumeration limit " +
                                std::to_string(kMaxNaivePermanent));
    }
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total{0.0, 0.0};
    do {
        Complex term{1.0, 0.0};
        for (std::size_t row = 0; row < n; ++row) {
            term *= m(row, sigma[row]);
        }
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

Complex permanent_ryser(const ComplexMatrix &m) {
    require_square(m, "permanent_ryser");
    const std::size_t n = m.rows();
    if (n > kMaxRyserPermanent) {
        throw std::domain_error("permanent_ryser: N=" + std::to_string(n) + " exceeds limit " +
                                std::to_string(kMaxRyserPermanent));
    }
    if (n == 0) {
        return {1.0, 0.0};
    }

    // perm(M) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} M_ij, with S
    // walked in Gray-code order so each step toggles a single column.
    std::vector<Complex> row_sums(n, Complex{0.0, 0.0});
    Complex total{0.0, 0.0};
    const std::uint64_t num_subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < num_subsets; ++k) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] += m(i, col);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                row_sums[i] -= m(i, col);
            }
        }
        Complex prod = row_sums[0];
        for (std::size_t i = 1; i < n; ++i) {
            prod *= row_sums[i];
        }
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return n % 2 == 1 ? -total : total;
}

Complex determinant(const ComplexMatrix &m) {
    require_square(m, "determinant");
    const std::size_t n = m.rows();
    ComplexMatrix lu = m;
    Complex det{1.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t row = col + 1; row < n; ++row) {
            double mag = std::abs(lu(row, col));
            if (mag > best) {
                best = mag;
                pivot = row;
            }
        }
        if (best == 0.0) {
            return {0.0, 0.0};
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(pivot, j), lu(col, j));
            }
            det = -det;
        }
        const Complex diag = lu(col, col);
        det *= diag;
        for (std::size_t row = col + 1; row < n; ++row) {
            const Complex factor = lu(row, col) / diag;
            if (factor == Complex{}) {
                continue;
            }
            for (std::size_t j = col + 1; j < n; ++j) {
                lu(row, j) -= factor * lu(col, j);
            }
        }
    }
    return det;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

ComplexMatrix haar_random_unitary(std::size_t q, Rng &rng) {
    if (q == 0) {
        throw std::invalid_argument("haar_random_unitary: dimension must be at least 1");
    }
    const double scale = 1.0 / std::sqrt(2.0);
    // Columns stored contiguously while orthogonalizing.
    std::vector<std::vector<Complex>> cols(q, std::vector<Complex>(q));
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            double re = rng.normal();
            double im = rng.normal();
            cols[j][i] = Complex{re * scale, im * scale};
        }
    }
    // Modified Gram-Schmidt, two passes. The resulting R has a positive real
    // diagonal, which is the phase fixing that makes Q Haar distributed.
    for (std::size_t j = 0; j < q; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj{0.0, 0.0};
                for (std::size_t i = 0; i < q; ++i) {
                    proj += std::conj(cols[k][i]) * cols[j][i];
                }
                for (std::size_t i = 0; i < q; ++i) {
                    cols[j][i] -= proj * cols[k][i];
                }
            }
        }
        double norm = 0.0;
        for (const auto &z : cols[j]) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (auto &z : cols[j]) {
            z /= norm;
        }
    }
    ComplexMatrix out(q, q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            out(i, j) = cols[j][i];
        }
    }
    return out;
}

ComplexMatrix haar_random_unitary(std::size_t q, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(q, rng);
}

void CompensatedSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

}  // namespace supplaw
