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

#include "supplaw/scattering.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace supplaw {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-10;

Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return out;
}

void check_dimensions(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s) {
    if (!u.is_square()) {
        throw std::invalid_argument("single-particle unitary must be square");
    }
    if (r.num_modes() != u.rows() || s.num_modes() != u.rows()) {
        throw std::invalid_argument("occupation lists must have " + std::to_string(u.rows()) +
                                    " modes (got input " + std::to_string(r.num_modes()) + ", output " +
                                    std::to_string(s.num_modes()) + ")");
    }
    if (r.num_particles() != s.num_particles()) {
        throw std::invalid_argument("particle number mismatch: input has " + std::to_string(r.num_particles()) +
                                    ", output has " + std::to_string(s.num_particles()));
    }
}

void require_fermionic(const ModeOccupation &r, const ModeOccupation &s) {
    if (!r.is_fermionic()) {
        throw std::invalid_argument("fermionic input " + r.to_string() + " has a multiply occupied mode");
    }
    if (!s.is_fermionic()) {
        throw std::invalid_argument("fermionic output " + s.to_string() + " has a multiply occupied mode");
    }
}

double clamp_probability(double p) {
    if (p < -kNegativeProbabilityTol) {
        throw std::logic_error("probability " + std::to_string(p) + " is negative beyond cancellation noise");
    }
    return std::max(p, 0.0);
}

int parity(const std::vector<std::size_t> &sigma) {
    std::vector<bool> seen(sigma.size(), false);
    int sign = 1;
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        std::size_t len = 0;
        for (std::size_t j = start; !seen[j]; j = sigma[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) {
            sign = -sign;
        }
    }
    return sign;
}

}  // namespace

DistinguishabilityMatrix::DistinguishabilityMatrix(ComplexMatrix s) : s_(std::move(s)) {
    if (!s_.is_square()) {
        throw std::invalid_argument("distinguishability matrix must be square");
    }
    const std::size_t n = s_.rows();
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(s_(j, j) - Complex{1.0, 0.0}) > kHermitianTol) {
            throw std::invalid_argument("distinguishability matrix needs a unit diagonal (entry " +
                                        std::to_string(j + 1) + ")");
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(s_(j, k) - std::conj(s_(k, j))) > kHermitianTol) {
                throw std::invalid_argument("distinguishability matrix is not Hermitian at (" + std::to_string(j + 1) +
                                            "," + std::to_string(k + 1) + ")");
            }
            if (std::abs(s_(j, k)) > 1.0 + kHermitianTol) {
                throw std::invalid_argument("distinguishability overlap exceeds 1 in modulus at (" +
                                            std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
        }
    }
    if (n > 0 && min_hermitian_eigenvalue(s_) < -kPsdTol) {
        throw std::invalid_argument("distinguishability matrix is not positive semidefinite");
    }
}

DistinguishabilityMatrix DistinguishabilityMatrix::indistinguishable(std::size_t n) {
    return DistinguishabilityMatrix(ComplexMatrix(n, n, std::vector<Complex>(n * n, Complex{1.0, 0.0})));
}

DistinguishabilityMatrix DistinguishabilityMatrix::distinguishable(std::size_t n) {
    return DistinguishabilityMatrix(ComplexMatrix::identity(n));
}

double min_hermitian_eigenvalue(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool repair_distinguishability(ComplexMatrix &s) {
    if (s.rows() == 0 || min_hermitian_eigenvalue(s) >= 0.0) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(s));
    Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXcd vecs = solver.eigenvectors();
    Eigen::MatrixXcd fixed = vecs * values.asDiagonal() * vecs.adjoint();
    const std::size_t n = s.rows();
    std::vector<double> scale(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = fixed(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
        if (d <= 0.0) {
            throw std::runtime_error("distinguishability repair collapsed mode " + std::to_string(j + 1));
        }
        scale[j] = 1.0 / std::sqrt(d);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            s(j, k) = fixed(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * scale[j] * scale[k];
        }
        s(j, j) = 1.0;
    }
    // Restore exact Hermiticity lost to rounding.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            s(k, j) = std::conj(s(j, k));
        }
    }
    return true;
}

std::string_view to_string(DeviationDistribution d) {
    switch (d) {
        case DeviationDistribution::RandomPhase:
            return "random_phase";
        case DeviationDistribution::ComplexGaussian:
            return "complex_gaussian";
    }
    return "unknown";
}

DeviationDistribution parse_deviation_distribution(std::string_view text) {
    if (text == "random_phase") {
        return DeviationDistribution::RandomPhase;
    }
    if (text == "complex_gaussian") {
        return DeviationDistribution::ComplexGaussian;
    }
    throw std::invalid_argument("unknown deviation distribution '" + std::string(text) +
                                "' (expected random_phase or complex_gaussian)");
}

ComplexMatrix scattering_matrix(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s) {
    check_dimensions(u, r, s);
    const ModeAssignment in = occupation_to_assignment(r);
    const ModeAssignment out = occupation_to_assignment(s);
    const std::size_t n = in.num_particles();
    ComplexMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            m(a, b) = u(in[a], out[b]);
        }
    }
    return m;
}

double prob_boson(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s) {
    const ComplexMatrix m = scattering_matrix(u, r, s);
    return std::norm(permanent_ryser(m)) / (r.factorial_product() * s.factorial_product());
}

double prob_fermion(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s) {
    require_fermionic(r, s);
    return std::norm(determinant(scattering_matrix(u, r, s)));
}

double prob_distinguishable(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s) {
    const ComplexMatrix m = scattering_matrix(u, r, s);
    return clamp_probability(permanent_ryser(m.elementwise_abs2()).real() / s.factorial_product());
}

double transition_probability(ParticleType t, const ComplexMatrix &u, const ModeOccupation &r,
                              const ModeOccupation &s) {
    switch (t) {
        case ParticleType::Boson:
            return prob_boson(u, r, s);
        case ParticleType::Fermion:
            return prob_fermion(u, r, s);
        case ParticleType::Distinguishable:
            return prob_distinguishable(u, r, s);
    }
    throw std::invalid_argument("unknown particle type");
}

double prob_partial(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s,
                    const DistinguishabilityMatrix &dist, ParticleType t) {
    check_dimensions(u, r, s);
    if (t == ParticleType::Distinguishable) {
        throw std::invalid_argument("prob_partial takes boson or fermion statistics");
    }
    if (t == ParticleType::Fermion) {
        require_fermionic(r, s);
    }
    if (dist.size() != u.rows()) {
        throw std::invalid_argument("distinguishability matrix must be " + std::to_string(u.rows()) + "x" +
                                    std::to_string(u.rows()));
    }
    const std::size_t n = r.num_particles();
    if (n > kMaxPartialParticles) {
        throw std::domain_error("prob_partial supports at most " + std::to_string(kMaxPartialParticles) +
                                " particles, got " + std::to_string(n));
    }
    const ModeAssignment in = occupation_to_assignment(r);
    const ModeAssignment out = occupation_to_assignment(s);

    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    ComplexMatrix w(n, n);
    Complex total{0.0, 0.0};
    do {
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t src = in[sigma[a]];
            const Complex left = std::conj(u(src, out[a]));
            for (std::size_t b = 0; b < n; ++b) {
                w(a, b) = dist(src, in[b]) * left * u(in[b], out[a]);
            }
        }
        if (t == ParticleType::Boson) {
            total += permanent_ryser(w);
        } else {
            total += static_cast<double>(parity(sigma)) * determinant(w);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    const double p = total.real() / (r.factorial_product() * s.factorial_product());
    return clamp_probability(p);
}

ComplexMatrix perturb_unitary(const ComplexMatrix &u, const PerturbationModel &model, Rng &rng) {
    if (model.mean_abs < 0.0) {
        throw std::invalid_argument("perturbation mean_abs must be non-negative");
    }
    ComplexMatrix out = u;
    // E|X + iY| = sqrt(pi/2) for X, Y standard normal.
    const double gaussian_scale = model.mean_abs / std::sqrt(std::numbers::pi / 2.0);
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            Complex delta;
            if (model.distribution == DeviationDistribution::RandomPhase) {
                delta = std::polar(model.mean_abs, 2.0 * std::numbers::pi * rng.uniform());
            } else {
                double re = rng.normal();
                double im = rng.normal();
                delta = Complex{re, im} * gaussian_scale;
            }
            out(i, j) = u(i, j) * (Complex{1.0, 0.0} + delta);
        }
    }
    return out;
}

ComplexMatrix perturb_unitary(const ComplexMatrix &u, const PerturbationModel &model) {
    Rng rng(model.seed);
    return perturb_unitary(u, model, rng);
}

}  // namespace supplaw
