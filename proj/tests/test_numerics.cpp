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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "supplaw/numerics.hpp"
#include "supplaw/random.hpp"

namespace supplaw {
namespace {

ComplexMatrix ones(std::size_t n) {
    ComplexMatrix m(n, n);
    for (auto &z : m.data()) {
        z = 1.0;
    }
    return m;
}

double factorial(std::size_t n) { return n <= 1 ? 1.0 : static_cast<double>(n) * factorial(n - 1); }

TEST(Permanent, SmallClosedForms) {
    EXPECT_EQ(permanent_naive(ComplexMatrix::identity(2)), Complex(1.0));
    EXPECT_EQ(permanent_naive(ones(2)), Complex(2.0));
    EXPECT_EQ(permanent_ryser(ComplexMatrix::identity(3)), Complex(1.0));
    EXPECT_NEAR(std::abs(permanent_ryser(ones(3)) - 6.0), 0.0, 1e-12);
    ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
    EXPECT_NEAR(std::abs(permanent_ryser(m) - 10.0), 0.0, 1e-12);
}

TEST(Permanent, AllOnesIsFactorial) {
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_NEAR(permanent_naive(ones(n)).real(), factorial(n), 1e-9) << n;
        EXPECT_NEAR(permanent_ryser(ones(n)).real(), factorial(n), 1e-9 * factorial(n)) << n;
    }
}

TEST(Permanent, RyserMatchesNaiveOnRandomMatrices) {
    std::mt19937_64 gen(7);
    for (std::size_t trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 7;
        ComplexMatrix m = oracle::random_gaussian(n, n, gen);
        Complex a = permanent_ryser(m);
        Complex b = oracle::leibniz(m, false);
        EXPECT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b))) << "n=" << n;
        EXPECT_LE(std::abs(permanent_naive(m) - b), 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST(Permanent, ZeroRowGivesZero) {
    std::mt19937_64 gen(3);
    for (std::size_t n = 1; n <= 6; ++n) {
        ComplexMatrix m = oracle::random_gaussian(n, n, gen);
        for (std::size_t j = 0; j < n; ++j) {
            m(n / 2, j) = 0.0;
        }
        EXPECT_EQ(permanent_naive(m), Complex(0.0));
        EXPECT_LE(std::abs(permanent_ryser(m)), 1e-12);
    }
}

TEST(Permanent, RejectsBadShapes) {
    EXPECT_THROW(permanent_naive(ComplexMatrix(2, 3)), std::invalid_argument);
    EXPECT_THROW(permanent_ryser(ComplexMatrix(3, 2)), std::invalid_argument);
    EXPECT_THROW(permanent_naive(ones(kMaxNaivePermanent + 1)), std::domain_error);
    EXPECT_THROW(permanent_ryser(ones(kMaxRyserPermanent + 1)), std::domain_error);
}

TEST(Determinant, ClosedForms) {
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix::identity(5)) - 1.0), 0.0, 1e-14);
    const Complex a{1.0, 2.0}, b{-0.5, 0.25}, c{3.0, -1.0}, d{0.0, 4.0};
    ComplexMatrix m{{a, b}, {c, d}};
    EXPECT_NEAR(std::abs(determinant(m) - (a * d - b * c)), 0.0, 1e-12);
    ComplexMatrix singular{{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {0.0, 1.0, 5.0}};
    EXPECT_LE(std::abs(determinant(singular)), 1e-12);
    EXPECT_THROW(determinant(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(Determinant, MatchesSignedPermutationSum) {
    std::mt19937_64 gen(11);
    for (std::size_t trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + trial % 6;
        ComplexMatrix m = oracle::random_gaussian(n, n, gen);
        Complex ref = oracle::leibniz(m, true);
        EXPECT_LE(std::abs(determinant(m) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Determinant, IsMultiplicative) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix a = oracle::random_gaussian(5, 5, gen);
        ComplexMatrix b = oracle::random_gaussian(5, 5, gen);
        Complex lhs = determinant(a * b);
        Complex rhs = determinant(a) * determinant(b);
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
    }
}

TEST(Unitary, Checks) {
    EXPECT_TRUE(is_unitary(ComplexMatrix::identity(4)));
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix bs{{h, h}, {h, -h}};
    EXPECT_TRUE(is_unitary(bs));
    ComplexMatrix scaled = bs;
    scaled(0, 0) *= 2.0;
    scaled(0, 1) *= 2.0;
    EXPECT_FALSE(is_unitary(scaled));
    EXPECT_FALSE(is_unitary(ComplexMatrix(2, 3)));
}

TEST(Haar, UnitaryAndReproducible) {
    ComplexMatrix one = haar_random_unitary(1, 42);
    EXPECT_NEAR(std::abs(one(0, 0)), 1.0, 1e-15);
    for (std::size_t q = 1; q <= 12; ++q) {
        ComplexMatrix u = haar_random_unitary(q, 100 + q);
        EXPECT_TRUE(is_unitary(u, 1e-12)) << q;
        EXPECT_EQ(u, haar_random_unitary(q, 100 + q));
    }
    EXPECT_NE(haar_random_unitary(3, 1), haar_random_unitary(3, 2));
    EXPECT_THROW(haar_random_unitary(0, 1), std::invalid_argument);
}

TEST(Haar, FirstMomentVanishes) {
    Rng rng(2024);
    Complex sum[2][2] = {};
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        ComplexMatrix u = haar_random_unitary(2, rng);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                sum[a][b] += u(a, b);
            }
        }
    }
    for (auto &row : sum) {
        for (auto &z : row) {
            EXPECT_LT(std::abs(z / static_cast<double>(draws)), 0.05);
        }
    }
}

TEST(Haar, SecondMomentIsUniform) {
    // E|U_jk|^2 = 1/q for Haar measure.
    Rng rng(99);
    const std::size_t q = 3;
    double sum = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        sum += std::norm(haar_random_unitary(q, rng)(0, 2));
    }
    EXPECT_NEAR(sum / draws, 1.0 / q, 0.01);
}

TEST(Matrix, RejectsNonFiniteAndBadLength) {
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0.0, INFINITY)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(CompensatedSum, RecoversSmallTerms) {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) {
        s.add(1e-17);
    }
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-14, 1e-20);
}

TEST(Random, DeriveSeedIsDeterministicAndSpread) {
    EXPECT_EQ(derive_seed(1, 0), derive_seed(1, 0));
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    Rng a(5), b(5);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(a.normal(), b.normal());
        double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

}  // namespace
}  // namespace supplaw
