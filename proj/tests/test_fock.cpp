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


#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "supplaw/fock.hpp"

namespace supplaw {
namespace {

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

TEST(ModeOccupation, Basics) {
    ModeOccupation r{2, 0, 1};
    EXPECT_EQ(r.num_modes(), 3u);
    EXPECT_EQ(r.num_particles(), 3u);
    EXPECT_EQ(r.max_occupation(), 2);
    EXPECT_FALSE(r.is_fermionic());
    EXPECT_DOUBLE_EQ(r.factorial_product(), 2.0);
    EXPECT_TRUE((ModeOccupation{1, 0, 1}).is_fermionic());
    EXPECT_THROW((ModeOccupation{1, -1}), std::invalid_argument);
}

TEST(ModeAssignment, PaperExample) {
    ModeOccupation s{0, 2, 0, 1, 1, 1};
    ModeAssignment d = occupation_to_assignment(s);
    std::vector<std::size_t> one_based;
    for (std::size_t m : d.modes()) {
        one_based.push_back(m + 1);
    }
    EXPECT_EQ(one_based, (std::vector<std::size_t>{2, 2, 4, 5, 6}));
    EXPECT_EQ(assignment_to_occupation(d, 6), s);
    EXPECT_THROW(ModeAssignment(std::vector<std::size_t>{2, 1}), std::invalid_argument);
    EXPECT_THROW(assignment_to_occupation(d, 4), std::out_of_range);
}

TEST(Counting, PaperCounts) {
    EXPECT_EQ(count_outputs(8, 5, ParticleType::Boson), 792u);
    EXPECT_EQ(count_outputs(8, 5, ParticleType::Fermion), 56u);
    EXPECT_EQ(count_outputs(8, 5, ParticleType::Distinguishable), 792u);
}

TEST(Counting, EnumerationMatchesClosedForm) {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::size_t p = 0; p <= 6; ++p) {
            for (ParticleType t : {ParticleType::Boson, ParticleType::Fermion}) {
                const bool fermion = t == ParticleType::Fermion;
                if (fermion && p > n) {
                    EXPECT_THROW(enumerate_outputs(n, p, t), std::invalid_argument);
                    EXPECT_EQ(count_outputs(n, p, t), 0u);
                    continue;
                }
                const std::uint64_t expected = fermion ? binomial(n, p) : binomial(n + p - 1, p);
                std::set<ModeOccupation> seen;
                ModeOccupation previous;
                bool first = true;
                for (const ModeOccupation &s : enumerate_outputs(n, p, t)) {
                    EXPECT_EQ(s.num_modes(), n);
                    EXPECT_EQ(s.num_particles(), p);
                    if (fermion) {
                        EXPECT_TRUE(s.is_fermionic());
                    }
                    if (!first) {
                        // Lexicographic order of the mode assignment lists.
                        const ModeAssignment a = occupation_to_assignment(previous);
                        const ModeAssignment b = occupation_to_assignment(s);
                        EXPECT_TRUE(std::lexicographical_compare(a.modes().begin(), a.modes().end(),
                                                                 b.modes().begin(), b.modes().end()));
                    }
                    previous = s;
                    first = false;
                    seen.insert(s);
                }
                EXPECT_EQ(seen.size(), expected) << "n=" << n << " N=" << p;
                EXPECT_EQ(count_outputs(n, p, t), expected);
                EXPECT_EQ(enumerate_outputs(n, p, t).size(), expected);
            }
        }
    }
}

TEST(Counting, TwoModeOrder) {
    std::vector<ModeOccupation> got;
    for (const ModeOccupation &s : enumerate_outputs(2, 2, ParticleType::Boson)) {
        got.push_back(s);
    }
    EXPECT_EQ(got, (std::vector<ModeOccupation>{{2, 0}, {1, 1}, {0, 2}}));
}

TEST(Counting, Binomial) {
    EXPECT_EQ(binomial(12, 5), 792u);
    EXPECT_EQ(binomial(5, 7), 0u);
    for (std::uint64_t n = 0; n <= 15; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            EXPECT_EQ(binomial(n, k), factorial(n) / (factorial(k) * factorial(n - k)));
        }
    }
}

TEST(ModeAssignment, RoundTripAll) {
    for (const ModeOccupation &s : enumerate_outputs(5, 4, ParticleType::Boson)) {
        EXPECT_EQ(assignment_to_occupation(occupation_to_assignment(s), 5), s);
    }
}

}  // namespace
}  // namespace supplaw
