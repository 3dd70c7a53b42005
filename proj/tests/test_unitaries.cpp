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

#include <gtest/gtest.h>

#include "supplaw/scattering.hpp"
#include "supplaw/suppression.hpp"
#include "supplaw/unitaries.hpp"

namespace supplaw {
namespace {

const Permutation kEightMode = Permutation::parse("(1 2 3)(4 5 6)(7 8)");

UnitarySpec eight_mode_spec() {
    UnitarySpec spec;
    spec.permutation = kEightMode;
    return spec;
}

TEST(BuildUnitary, HongOuMandel) {
    UnitarySpec spec;
    spec.permutation = Permutation::parse("(1 2)");
    ConstructedUnitary c = build_unitary(spec);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(c.u, ComplexMatrix{{h, h}, {h, -h}}), 1e-15);
    EXPECT_EQ(c.eigenvalues, (std::vector<RootOfUnity>{RootOfUnity(0, 1), RootOfUnity(1, 2)}));
    EXPECT_LE(c.symmetry_residual(), 1e-15);
}

TEST(BuildUnitary, EightModeSymmetryAcrossSeedsAndPhases) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        UnitarySpec spec = eight_mode_spec();
        spec.rotation_seed = seed;
        if (seed % 2 == 1) {
            for (int j = 0; j < 8; ++j) {
                spec.theta_phases.push_back(0.37 * j + 0.01 * static_cast<double>(seed));
                spec.sigma_phases.push_back(1.3 - 0.21 * j);
            }
        }
        ConstructedUnitary c = build_unitary(spec);
        EXPECT_TRUE(is_unitary(c.u));
        EXPECT_LE(c.symmetry_residual(), 1e-12) << "seed " << seed;
        EXPECT_TRUE(c.theta.is_diagonal());
        EXPECT_TRUE(c.sigma.is_diagonal());
    }
}

TEST(BuildUnitary, ColumnOrderGroupsEigenvalues) {
    UnitarySpec spec = eight_mode_spec();
    spec.column_order = Permutation::parse("[1,4,7,2,5,3,6,8]");
    ConstructedUnitary c = build_unitary(spec);
    std::vector<RootOfUnity> expected{RootOfUnity(0, 1), RootOfUnity(0, 1), RootOfUnity(0, 1), RootOfUnity(1, 3),
                                      RootOfUnity(1, 3), RootOfUnity(2, 3), RootOfUnity(2, 3), RootOfUnity(1, 2)};
    EXPECT_EQ(c.eigenvalues, expected);
    EXPECT_LE(c.symmetry_residual(), 1e-12);
}

TEST(BuildUnitary, RotationStaysInsideEigenspaces) {
    UnitarySpec plain = eight_mode_spec();
    UnitarySpec rotated = eight_mode_spec();
    rotated.rotation_seed = 9;
    ConstructedUnitary a = build_unitary(plain);
    ConstructedUnitary b = build_unitary(rotated);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_GT(max_abs_diff(a.u, b.u), 0.1);
    ConstructedUnitary again = build_unitary(rotated);
    EXPECT_EQ(again.u, b.u);
}

TEST(BuildUnitary, ValidationErrors) {
    UnitarySpec spec = eight_mode_spec();
    spec.theta_phases = {0.0, 1.0};
    EXPECT_THROW(build_unitary(spec), std::invalid_argument);
    spec = eight_mode_spec();
    spec.sigma_phases = std::vector<double>(8, std::nan(""));
    EXPECT_THROW(build_unitary(spec), std::invalid_argument);
    spec = eight_mode_spec();
    spec.column_order = Permutation::identity(3);
    EXPECT_THROW(build_unitary(spec), std::invalid_argument);
    EXPECT_THROW(build_unitary(UnitarySpec{}), std::invalid_argument);
}

TEST(BuildUnitary, VerdictsIndependentOfBasisAndPhases) {
    const ModeOccupation r{1, 1, 1, 0, 0, 0, 1, 1};
    std::vector<bool> reference;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        UnitarySpec spec = eight_mode_spec();
        spec.rotation_seed = seed;
        ConstructedUnitary c = build_unitary(spec);
        std::vector<bool> verdicts;
        for (const ModeOccupation &s : enumerate_outputs(8, 5, ParticleType::Boson)) {
            verdicts.push_back(boson_suppressed(c.eigenvalues, s));
        }
        if (reference.empty()) {
            reference = verdicts;
        }
        EXPECT_EQ(verdicts, reference);
    }
}

TEST(BuildUnitary, PhasesDoNotChangeProbabilities) {
    UnitarySpec plain = eight_mode_spec();
    plain.rotation_seed = 4;
    UnitarySpec phased = plain;
    for (int j = 0; j < 8; ++j) {
        phased.theta_phases.push_back(0.5 * j);
        phased.sigma_phases.push_back(2.0 - 0.3 * j);
    }
    ConstructedUnitary a = build_unitary(plain);
    ConstructedUnitary b = build_unitary(phased);
    const ModeOccupation r{1, 1, 1, 0, 0, 0, 1, 1};
    for (const ModeOccupation &s : enumerate_outputs(8, 5, ParticleType::Boson)) {
        EXPECT_NEAR(prob_boson(a.u, r, s), prob_boson(b.u, r, s), 1e-13);
    }
}

TEST(Fourier, SmallCases) {
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(fourier_unitary(2), ComplexMatrix{{h, h}, {h, -h}}), 1e-15);
    ComplexMatrix f4 = fourier_unitary(4);
    EXPECT_TRUE(is_unitary(f4));
    EXPECT_EQ(f4(1, 1), Complex(0.0, 0.5));
    EXPECT_EQ(f4(2, 2), Complex(0.5, 0.0));
    EXPECT_EQ(f4(3, 1), Complex(0.0, -0.5));
    EXPECT_THROW(fourier_unitary(0), std::invalid_argument);
}

TEST(Fourier, ModeExchangeSymmetryForAllDivisors) {
    for (std::size_t n = 2; n <= 12; ++n) {
        ComplexMatrix f = fourier_unitary(n);
        EXPECT_TRUE(is_unitary(f));
        for (std::size_t m = 2; m <= n; ++m) {
            if (n % m != 0) {
                EXPECT_THROW(fourier_symmetry(n, m), std::invalid_argument);
                continue;
            }
            FourierSymmetry sym = fourier_symmetry(n, m);
            EXPECT_EQ(cycle_decompose(sym.permutation).order(), m);
            EXPECT_LE(symmetry_residual(sym.permutation, f, ComplexMatrix::identity(n), sym.eigenvalues), 1e-12)
                << "n=" << n << " m=" << m;
        }
    }
}

TEST(Fourier, SixModeEigenvalues) {
    FourierSymmetry two = fourier_symmetry(6, 2);
    EXPECT_EQ(two.permutation, Permutation::parse("(1 4)(2 5)(3 6)"));
    FourierSymmetry three = fourier_symmetry(6, 3);
    EXPECT_EQ(three.permutation, Permutation::parse("(1 3 5)(2 4 6)"));
    EXPECT_EQ(three.eigenvalues[4], RootOfUnity(1, 3));
}

}  // namespace
}  // namespace supplaw
