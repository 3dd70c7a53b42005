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

#include "supplaw/unitaries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace supplaw {

namespace {

ComplexMatrix phase_matrix(const std::vector<double> &phases, std::size_t n) {
    std::vector<Complex> diag(n, Complex{1.0, 0.0});
    for (std::size_t j = 0; j < phases.size(); ++j) {
        diag[j] = std::polar(1.0, phases[j]);
    }
    return ComplexMatrix::diagonal(diag);
}

}  // namespace

void UnitarySpec::validate() const {
    const std::size_t n = permutation.size();
    if (n == 0) {
        throw std::invalid_argument("unitary spec needs a permutation on at least one mode");
    }
    if (!theta_phases.empty() && theta_phases.size() != n) {
        throw std::invalid_argument("theta has " + std::to_string(theta_phases.size()) + " phases, expected " +
                                    std::to_string(n));
    }
    if (!sigma_phases.empty() && sigma_phases.size() != n) {
        throw std::invalid_argument("sigma has " + std::to_string(sigma_phases.size()) + " phases, expected " +
                                    std::to_string(n));
    }
    for (double phi : theta_phases) {
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("theta phases must be finite");
        }
    }
    for (double phi : sigma_phases) {
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("sigma phases must be finite");
        }
    }
    if (column_order && column_order->size() != n) {
        throw std::invalid_argument("column order acts on " + std::to_string(column_order->size()) +
                                    " columns, expected " + std::to_string(n));
    }
}

double ConstructedUnitary::symmetry_residual() const {
    return supplaw::symmetry_residual(spec.permutation, u, theta, eigenvalues);
}

ConstructedUnitary build_unitary(const UnitarySpec &spec) {
    spec.validate();
    const std::size_t n = spec.permutation.size();
    EigenStructure eig = eigenstructure(spec.permutation);
    ComplexMatrix a = eig.eigenvectors;
    std::vector<RootOfUnity> lambda = eig.eigenvalues;

    if (spec.rotation_seed) {
        // Group columns by exact eigenvalue; each group spans one eigenspace.
        std::map<RootOfUnity, std::vector<std::size_t>> spaces;
        for (std::size_t col = 0; col < n; ++col) {
            spaces[lambda[col]].push_back(col);
        }
        Rng rng(*spec.rotation_seed);
        for (const auto &[value, cols] : spaces) {
            const std::size_t q = cols.size();
            const ComplexMatrix v = haar_random_unitary(q, rng);
            ComplexMatrix rotated(n, q);
            for (std::size_t row = 0; row < n; ++row) {
                for (std::size_t c = 0; c < q; ++c) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t k = 0; k < q; ++k) {
                        acc += a(row, cols[k]) * v(k, c);
                    }
                    rotated(row, c) = acc;
                }
            }
            for (std::size_t row = 0; row < n; ++row) {
                for (std::size_t c = 0; c < q; ++c) {
                    a(row, cols[c]) = rotated(row, c);
                }
            }
        }
    }

    if (spec.column_order) {
        const Permutation &order = *spec.column_order;
        ComplexMatrix reordered(n, n);
        std::vector<RootOfUnity> reordered_lambda(n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t row = 0; row < n; ++row) {
                reordered(row, k) = a(row, order(k));
            }
            reordered_lambda[k] = lambda[order(k)];
        }
        a = std::move(reordered);
        lambda = std::move(reordered_lambda);
    }

    ConstructedUnitary out;
    out.theta = phase_matrix(spec.theta_phases, n);
    out.sigma = phase_matrix(spec.sigma_phases, n);
    out.u = out.theta * a * out.sigma;
    out.eigenbasis = std::move(a);
    out.eigenvalues = std::move(lambda);
    out.spec = spec;
    return out;
}

ComplexMatrix fourier_unitary(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("fourier_unitary: n must be at least 1");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix u(n, n);
    const auto nn = static_cast<std::int64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce the exponent exactly so large j*k do not lose phase accuracy.
            RootOfUnity phase(static_cast<std::int64_t>(j * k) % nn, nn);
            u(j, k) = phase.to_complex() * norm;
        }
    }
    return u;
}

FourierSymmetry fourier_symmetry(std::size_t n, std::size_t m) {
    if (m < 2 || n == 0 || n % m != 0) {
        throw std::invalid_argument("fourier_symmetry: m=" + std::to_string(m) + " must be >= 2 and divide n=" +
                                    std::to_string(n));
    }
    const std::size_t shift = n / m;
    std::vector<std::size_t> image(n);
    for (std::size_t j = 0; j < n; ++j) {
        image[j] = (j + shift) % n;
    }
    FourierSymmetry out{Permutation(std::move(image)), {}};
    out.eigenvalues.reserve(n);
    const auto mm = static_cast<std::int64_t>(m);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues.emplace_back(static_cast<std::int64_t>(k) % mm, mm);
    }

    const ComplexMatrix u = fourier_unitary(n);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex expected = u(j, k) * out.eigenvalues[k].to_complex();
            worst = std::max(worst, std::abs(u(out.permutation(j), k) - expected));
        }
    }
    if (worst > kStructuralTol) {
        throw std::logic_error("Fourier mode-exchange symmetry violated by " + std::to_string(worst));
    }
    return out;
}

}  // namespace supplaw
