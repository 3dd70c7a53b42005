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

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the matrix container.

#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "supplaw/fock.hpp"
#include "supplaw/numerics.hpp"

namespace supplaw::oracle {

inline int permutation_sign(const std::vector<std::size_t> &p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

/// Sum over all permutations, optionally weighted by their sign.
inline Complex leibniz(const ComplexMatrix &m, bool signed_sum) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = signed_sum ? static_cast<double>(permutation_sign(p)) : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            term *= m(i, p[i]);
        }
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline std::vector<std::size_t> expand(const ModeOccupation &r) {
    std::vector<std::size_t> d;
    for (std::size_t j = 0; j < r.num_modes(); ++j) {
        for (int k = 0; k < r[j]; ++k) {
            d.push_back(j);
        }
    }
    return d;
}

inline double factorials(const ModeOccupation &r) {
    double f = 1.0;
    for (std::size_t j = 0; j < r.num_modes(); ++j) {
        for (int k = 2; k <= r[j]; ++k) {
            f *= k;
        }
    }
    return f;
}

/// Literal double sum over sigma, rho in S_N of the partial-distinguishability
/// probability; `fermion` applies both permutation signs.
inline double partial_double_sum(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s,
                                 const ComplexMatrix &dist, bool fermion) {
    const auto dr = expand(r);
    const auto ds = expand(s);
    const std::size_t n = dr.size();
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total = 0.0;
    do {
        std::vector<std::size_t> rho(n);
        std::iota(rho.begin(), rho.end(), 0);
        do {
            Complex term = fermion ? static_cast<double>(permutation_sign(sigma) * permutation_sign(rho)) : 1.0;
            for (std::size_t a = 0; a < n; ++a) {
                const std::size_t j = dr[sigma[a]];
                const std::size_t k = dr[rho[a]];
                term *= dist(j, k) * std::conj(u(j, ds[a])) * u(k, ds[a]);
            }
            total += term;
        } while (std::next_permutation(rho.begin(), rho.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total.real() / (factorials(r) * factorials(s));
}

/// Unitary from the QR factors of a complex Gaussian matrix, computed with
/// classical Gram-Schmidt; independent of the library's sampler.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g;
    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (auto &c : cols) {
        for (auto &z : c) {
            z = {g(gen), g(gen)};
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += std::conj(cols[j][i]) * cols[k][i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                cols[k][i] -= dot * cols[j][i];
            }
        }
        double norm = 0.0;
        for (auto &z : cols[k]) {
            norm += std::norm(z);
        }
        for (auto &z : cols[k]) {
            z /= std::sqrt(norm);
        }
    }
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            u(i, k) = cols[k][i];
        }
    }
    return u;
}

inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = {g(gen), g(gen)};
        }
    }
    return m;
}

}  // namespace supplaw::oracle
