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

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "supplaw/fock.hpp"
#include "supplaw/numerics.hpp"
#include "supplaw/random.hpp"

namespace supplaw {

/// Largest particle number accepted by prob_partial.
inline constexpr std::size_t kMaxPartialParticles = 6;

/// Probabilities below this are treated as cancellation noise and clamped.
inline constexpr double kNegativeProbabilityTol = 1e-12;

/**
 * Gram matrix of the particles' internal states, indexed by input mode.
 * Validated on construction: Hermitian, unit diagonal, |S_jk| <= 1 and
 * smallest eigenvalue >= -1e-10.
 */
class DistinguishabilityMatrix {
  public:
    explicit DistinguishabilityMatrix(ComplexMatrix s);

    /// All ones: fully indistinguishable.
    static DistinguishabilityMatrix indistinguishable(std::size_t n);
    /// Identity: fully distinguishable.
    static DistinguishabilityMatrix distinguishable(std::size_t n);

    const ComplexMatrix &matrix() const { return s_; }
    std::size_t size() const { return s_.rows(); }
    Complex operator()(std::size_t j, std::size_t k) const { return s_(j, k); }

  private:
    ComplexMatrix s_;
};

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const ComplexMatrix &h);

/**
 * Repairs a Hermitian unit-diagonal matrix that lost positive
 * semidefiniteness: negative eigenvalues are clipped to zero and the diagonal
 * is rescaled back to one. Returns true if a repair was needed.
 */
bool repair_distinguishability(ComplexMatrix &s);

/// How the entrywise deviations Delta_jk are drawn.
enum class DeviationDistribution {
    /// |Delta| = mean_abs exactly, phase uniform on [0, 2 pi).
    RandomPhase,
    /// Circular complex Gaussian scaled so that E|Delta| = mean_abs.
    ComplexGaussian,
};

std::string_view to_string(DeviationDistribution d);
DeviationDistribution parse_deviation_distribution(std::string_view text);

struct PerturbationModel {
    double mean_abs = 0.0;
    std::uint64_t seed = 0;
    DeviationDistribution distribution = DeviationDistribution::RandomPhase;
};

/// M_{a,b} = U_{d_a(r), d_b(s)}.
ComplexMatrix scattering_matrix(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s);

/// |perm M|^2 / (prod r_j! prod s_k!)
double prob_boson(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s);
/// |det M|^2; r and s must be singly occupied.
double prob_fermion(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s);
/// perm(|M|^2) / prod s_k!
double prob_distinguishable(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s);

/// Dispatches on particle type.
double transition_probability(ParticleType t, const ComplexMatrix &u, const ModeOccupation &r,
                              const ModeOccupation &s);

/**
 * Probability for partially distinguishable bosons or fermions:
 *
 *   P = 1/(prod s! prod r!) sum_{sigma,rho} chi(sigma) chi(rho)
 *       prod_a S[d_sigma(a)(r), d_rho(a)(r)] conj(U[d_sigma(a)(r), d_a(s)]) U[d_rho(a)(r), d_a(s)]
 *
 * with chi the sign for fermions and 1 for bosons. The inner sum over rho is
 * a permanent (determinant) of an N x N matrix, so the cost is N! times one
 * Ryser (LU) evaluation.
 */
double prob_partial(const ComplexMatrix &u, const ModeOccupation &r, const ModeOccupation &s,
                    const DistinguishabilityMatrix &dist, ParticleType t);

/// U_jk (1 + Delta_jk) with Delta drawn from `model` using `rng`.
ComplexMatrix perturb_unitary(const ComplexMatrix &u, const PerturbationModel &model, Rng &rng);
/// Same, drawing from a generator seeded with `model.seed`.
ComplexMatrix perturb_unitary(const ComplexMatrix &u, const PerturbationModel &model);

}  // namespace supplaw
