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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "supplaw/permutations.hpp"
#include "supplaw/scattering.hpp"

namespace supplaw {
namespace {

const double kH = 1.0 / std::sqrt(2.0);
const ComplexMatrix kBeamSplitter{{kH, kH}, {kH, -kH}};

ComplexMatrix hom_overlap(Complex x) { return ComplexMatrix{{1.0, x}, {std::conj(x), 1.0}}; }

/// Random unit-diagonal Gram matrix of n normalized complex vectors.
ComplexMatrix random_gram(std::size_t n, std::mt19937_64 &gen) {
    ComplexMatrix v = oracle::random_gaussian(n, 3, gen);
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            norm += std::norm(v(j, k));
        }
        for (std::size_t k = 0; k < 3; ++k) {
            v(j, k) /= std::sqrt(norm);
        }
    }
    ComplexMatrix s = v * v.adjoint();
    for (std::size_t j = 0; j < n; ++j) {
        s(j, j) = 1.0;
    }
    return s;
}

/// Random occupation of n modes holding p particles.
ModeOccupation random_occupation(std::size_t n, std::size_t p, bool exclusive, std::mt19937_64 &gen) {
    if (exclusive && p > n) {
        throw std::invalid_argument("random_occupation: too many particles");
    }
    std::vector<int> occ(n, 0);
    std::uniform_int_distribution<std::size_t> mode(0, n - 1);
    for (std::size_t placed = 0; placed < p;) {
        std::size_t j = mode(gen);
        if (exclusive && occ[j] > 0) {
            continue;
        }
        ++occ[j];
        ++placed;
    }
    return ModeOccupation(occ);
}

TEST(Scattering, HongOuMandel) {
    const ModeOccupation r{1, 1};
    EXPECT_LE(prob_boson(kBeamSplitter, r, {1, 1}), 1e-15);
    EXPECT_NEAR(prob_boson(kBeamSplitter, r, {2, 0}), 0.5, 1e-15);
    EXPECT_NEAR(prob_boson(kBeamSplitter, r, {0, 2}), 0.5, 1e-15);
    EXPECT_NEAR(prob_fermion(kBeamSplitter, r, {1, 1}), 1.0, 1e-15);
    EXPECT_NEAR(prob_distinguishable(kBeamSplitter, r, {1, 1}), 0.5, 1e-15);
    EXPECT_NEAR(prob_distinguishable(kBeamSplitter, r, {2, 0}), 0.25, 1e-15);
    EXPECT_NEAR(prob_distinguishable(kBeamSplitter, r, {0, 2}), 0.25, 1e-15);
}

TEST(Scattering, ScatteringMatrixRows) {
    ComplexMatrix u = oracle::random_unitary(3, 5);
    ComplexMatrix m = scattering_matrix(u, {2, 0, 1}, {0, 1, 2});
    ASSERT_EQ(m.rows(), 3u);
    const std::size_t rows[] = {0, 0, 2};
    const std::size_t cols[] = {1, 2, 2};
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            EXPECT_EQ(m(a, b), u(rows[a], cols[b]));
        }
    }
}

TEST(Scattering, AgreesWithLeibnizSums) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ComplexMatrix u = oracle::random_unitary(4, seed);
        const ModeOccupation r{2, 1, 0, 1};
        const ModeOccupation s{0, 1, 3, 0};
        ComplexMatrix m = scattering_matrix(u, r, s);
        double expected = std::norm(oracle::leibniz(m, false)) / (oracle::factorials(r) * oracle::factorials(s));
        EXPECT_NEAR(prob_boson(u, r, s), expected, 1e-13);
        double dist = oracle::leibniz(m.elementwise_abs2(), false).real() / oracle::factorials(s);
        EXPECT_NEAR(prob_distinguishable(u, r, s), dist, 1e-13);
        const ModeOccupation rf{1, 1, 0, 1};
        const ModeOccupation sf{0, 1, 1, 1};
        EXPECT_NEAR(prob_fermion(u, rf, sf), std::norm(oracle::leibniz(scattering_matrix(u, rf, sf), true)), 1e-13);
    }
}

TEST(Scattering, NormalizationOverRandomUnitaries) {
    std::mt19937_64 gen(11);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const std::size_t p = 1 + trial % 4;
        ComplexMatrix u = oracle::random_unitary(n, 100 + trial);
        for (ParticleType t : {ParticleType::Boson, ParticleType::Fermion, ParticleType::Distinguishable}) {
            const bool fermion = t == ParticleType::Fermion;
            if (fermion && p > n) {
                continue;
            }
            ModeOccupation r = random_occupation(n, p, fermion, gen);
            double total = 0.0;
            for (const ModeOccupation &s : enumerate_outputs(n, p, t)) {
                double prob = transition_probability(t, u, r, s);
                EXPECT_GE(prob, 0.0);
                total += prob;
            }
            EXPECT_NEAR(total, 1.0, 1e-10) << to_string(t) << " n=" << n << " r=" << r.to_string();
        }
    }
}

TEST(Scattering, LocalPhasesDoNotChangeProbabilities) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    ComplexMatrix u = oracle::random_unitary(5, 77);
    std::vector<Complex> left(5);
    std::vector<Complex> right(5);
    for (std::size_t j = 0; j < 5; ++j) {
        left[j] = std::polar(1.0, angle(gen));
        right[j] = std::polar(1.0, angle(gen));
    }
    ComplexMatrix v = ComplexMatrix::diagonal(left) * u * ComplexMatrix::diagonal(right);
    const ModeOccupation r{1, 0, 2, 0, 1};
    for (const ModeOccupation &s : enumerate_outputs(5, 4, ParticleType::Boson)) {
        EXPECT_NEAR(prob_boson(u, r, s), prob_boson(v, r, s), 1e-13);
        EXPECT_NEAR(prob_distinguishable(u, r, s), prob_distinguishable(v, r, s), 1e-13);
    }
    const ModeOccupation rf{1, 0, 1, 1, 0};
    for (const ModeOccupation &s : enumerate_outputs(5, 3, ParticleType::Fermion)) {
        EXPECT_NEAR(prob_fermion(u, rf, s), prob_fermion(v, rf, s), 1e-13);
    }
}

TEST(Scattering, PermutationMatrixRoutesDeterministically) {
    ComplexMatrix u = operator_matrix(Permutation::parse("(1 3 2)"));
    // Row j maps to the column holding its single 1.
    const ModeOccupation r{2, 1, 0};
    ModeOccupation target{0, 0, 0};
    std::vector<int> occ(3, 0);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (u(j, k) == Complex(1.0)) {
                occ[k] += r[j];
            }
        }
    }
    target = ModeOccupation(occ);
    for (ParticleType t : {ParticleType::Boson, ParticleType::Distinguishable}) {
        for (const ModeOccupation &s : enumerate_outputs(3, 3, t)) {
            EXPECT_NEAR(transition_probability(t, u, r, s), s == target ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(Scattering, RejectsBadInputs) {
    EXPECT_THROW(prob_boson(kBeamSplitter, {1, 1}, {1, 0}), std::invalid_argument);
    EXPECT_THROW(prob_boson(kBeamSplitter, {1, 1, 0}, {1, 1, 0}), std::invalid_argument);
    EXPECT_THROW(prob_fermion(kBeamSplitter, {2, 0}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(prob_fermion(kBeamSplitter, {1, 1}, {2, 0}), std::invalid_argument);
    EXPECT_THROW(prob_boson(ComplexMatrix(2, 3), {1, 1}, {1, 1}), std::invalid_argument);
}

TEST(PartialDistinguishability, MatchesDoubleSumOracle) {
    std::mt19937_64 gen(21);
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + trial % 3;
        const std::size_t p = 2 + trial % 3;
        ComplexMatrix u = oracle::random_unitary(n, 500 + trial);
        ComplexMatrix gram = random_gram(n, gen);
        DistinguishabilityMatrix dist(gram);
        ModeOccupation r = random_occupation(n, p, false, gen);
        ModeOccupation s = random_occupation(n, p, false, gen);
        EXPECT_NEAR(prob_partial(u, r, s, dist, ParticleType::Boson),
                    oracle::partial_double_sum(u, r, s, gram, false), 1e-12);
        if (p <= n) {
            ModeOccupation rf = random_occupation(n, p, true, gen);
            ModeOccupation sf = random_occupation(n, p, true, gen);
            EXPECT_NEAR(prob_partial(u, rf, sf, dist, ParticleType::Fermion),
                        oracle::partial_double_sum(u, rf, sf, gram, true), 1e-12);
        }
    }
}

TEST(PartialDistinguishability, Limits) {
    std::mt19937_64 gen(31);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 4;
        const std::size_t p = 2 + trial % 3;
        ComplexMatrix u = oracle::random_unitary(n, 900 + trial);
        auto ones = DistinguishabilityMatrix::indistinguishable(n);
        auto eye = DistinguishabilityMatrix::distinguishable(n);
        ModeOccupation r = random_occupation(n, p, false, gen);
        ModeOccupation s = random_occupation(n, p, false, gen);
        EXPECT_NEAR(prob_partial(u, r, s, ones, ParticleType::Boson), prob_boson(u, r, s), 1e-10);
        EXPECT_NEAR(prob_partial(u, r, s, eye, ParticleType::Boson), prob_distinguishable(u, r, s), 1e-10);
        if (p > n) {
            continue;
        }
        ModeOccupation rf = random_occupation(n, p, true, gen);
        ModeOccupation sf = random_occupation(n, p, true, gen);
        EXPECT_NEAR(prob_partial(u, rf, sf, ones, ParticleType::Fermion), prob_fermion(u, rf, sf), 1e-10);
        EXPECT_NEAR(prob_partial(u, rf, sf, eye, ParticleType::Fermion), prob_distinguishable(u, rf, sf), 1e-10);
    }
}

TEST(PartialDistinguishability, HongOuMandelDip) {
    double previous = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const double eps = i / 20.0;
        const Complex overlap = std::polar(1.0 - eps, 0.7);
        double p = prob_partial(kBeamSplitter, {1, 1}, {1, 1}, DistinguishabilityMatrix(hom_overlap(overlap)),
                                ParticleType::Boson);
        EXPECT_NEAR(p, eps - eps * eps / 2.0, 1e-14);
        EXPECT_GT(p, previous);
        previous = p;
    }
}

TEST(PartialDistinguishability, NormalizedForMixedOverlaps) {
    std::mt19937_64 gen(5);
    ComplexMatrix u = oracle::random_unitary(4, 9);
    ComplexMatrix gram = random_gram(4, gen);
    DistinguishabilityMatrix dist(gram);
    const ModeOccupation r{1, 1, 0, 1};
    double boson = 0.0;
    for (const ModeOccupation &s : enumerate_outputs(4, 3, ParticleType::Boson)) {
        boson += prob_partial(u, r, s, dist, ParticleType::Boson);
    }
    // Partially distinguishable fermions may bunch, so exclusive outputs carry
    // at most the full weight.
    double fermion = 0.0;
    for (const ModeOccupation &s : enumerate_outputs(4, 3, ParticleType::Fermion)) {
        fermion += prob_partial(u, r, s, dist, ParticleType::Fermion);
    }
    EXPECT_NEAR(boson, 1.0, 1e-12);
    EXPECT_GT(fermion, 0.0);
    EXPECT_LT(fermion, 1.0);
}

TEST(PartialDistinguishability, RejectsBadArguments) {
    auto ones = DistinguishabilityMatrix::indistinguishable(2);
    EXPECT_THROW(prob_partial(kBeamSplitter, {1, 1}, {1, 1}, ones, ParticleType::Distinguishable),
                 std::invalid_argument);
    EXPECT_THROW(prob_partial(kBeamSplitter, {1, 1}, {2, 0}, ones, ParticleType::Fermion), std::invalid_argument);
    EXPECT_THROW(prob_partial(kBeamSplitter, {1, 1}, {1, 1}, DistinguishabilityMatrix::indistinguishable(3),
                              ParticleType::Boson),
                 std::invalid_argument);
    ComplexMatrix u = ComplexMatrix::identity(8);
    EXPECT_THROW(prob_partial(u, {7, 0, 0, 0, 0, 0, 0, 0}, {7, 0, 0, 0, 0, 0, 0, 0},
                              DistinguishabilityMatrix::indistinguishable(8), ParticleType::Boson),
                 std::domain_error);
}

TEST(DistinguishabilityMatrix, Validation) {
    EXPECT_NO_THROW(DistinguishabilityMatrix(hom_overlap({0.3, 0.4})));
    EXPECT_THROW(DistinguishabilityMatrix(ComplexMatrix{{1.0, 0.5}, {0.4, 1.0}}), std::invalid_argument);
    EXPECT_THROW(DistinguishabilityMatrix(ComplexMatrix{{0.9, 0.0}, {0.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(DistinguishabilityMatrix(hom_overlap(1.2)), std::invalid_argument);
    // Pairwise valid overlaps that are jointly not a Gram matrix.
    ComplexMatrix bad{{1.0, 0.9, -0.9}, {0.9, 1.0, 0.9}, {-0.9, 0.9, 1.0}};
    EXPECT_LT(min_hermitian_eigenvalue(bad), 0.0);
    EXPECT_THROW(DistinguishabilityMatrix{bad}, std::invalid_argument);
    ComplexMatrix fixed = bad;
    EXPECT_TRUE(repair_distinguishability(fixed));
    EXPECT_GE(min_hermitian_eigenvalue(fixed), -1e-12);
    EXPECT_NO_THROW(DistinguishabilityMatrix{fixed});
    ComplexMatrix good = hom_overlap({0.3, 0.4});
    EXPECT_FALSE(repair_distinguishability(good));
    EXPECT_EQ(good, hom_overlap({0.3, 0.4}));
}

TEST(Perturbation, MeanModulusMatchesRequest) {
    ComplexMatrix u = oracle::random_unitary(6, 3);
    for (DeviationDistribution d : {DeviationDistribution::RandomPhase, DeviationDistribution::ComplexGaussian}) {
        Rng rng(17);
        double total = 0.0;
        std::size_t count = 0;
        const double target = 0.01;
        for (int rep = 0; rep < 300; ++rep) {
            ComplexMatrix v = perturb_unitary(u, PerturbationModel{target, 0, d}, rng);
            for (std::size_t i = 0; i < 6; ++i) {
                for (std::size_t j = 0; j < 6; ++j) {
                    total += std::abs(v(i, j) / u(i, j) - 1.0);
                    ++count;
                }
            }
        }
        EXPECT_NEAR(total / count / target, 1.0, 0.05) << to_string(d);
    }
}

TEST(Perturbation, ZeroDeviationAndSeeding) {
    ComplexMatrix u = oracle::random_unitary(4, 1);
    EXPECT_EQ(perturb_unitary(u, PerturbationModel{0.0, 5}), u);
    EXPECT_EQ(perturb_unitary(u, PerturbationModel{0.01, 5}), perturb_unitary(u, PerturbationModel{0.01, 5}));
    EXPECT_NE(perturb_unitary(u, PerturbationModel{0.01, 5}), perturb_unitary(u, PerturbationModel{0.01, 6}));
    EXPECT_THROW(perturb_unitary(u, PerturbationModel{-0.1, 5}), std::invalid_argument);
    EXPECT_EQ(parse_deviation_distribution(to_string(DeviationDistribution::ComplexGaussian)),
              DeviationDistribution::ComplexGaussian);
    EXPECT_THROW(parse_deviation_distribution("uniform"), std::invalid_argument);
}

}  // namespace
}  // namespace supplaw
