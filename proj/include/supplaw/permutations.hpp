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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "supplaw/fock.hpp"
#include "supplaw/numerics.hpp"

namespace supplaw {

/**
 * The complex number exp(2*pi*i * num/den), stored as a reduced fraction
 * with 0 <= num < den. All suppression decisions are made on these exact
 * values; nothing in that path compares floating-point phases.
 */
class RootOfUnity {
  public:
    RootOfUnity() = default;
    RootOfUnity(std::int64_t num, std::int64_t den);

    static RootOfUnity one() { return {}; }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_one() const { return num_ == 0; }

    /// Multiplication of roots is addition of phases modulo one turn.
    RootOfUnity operator*(const RootOfUnity &other) const;
    RootOfUnity inverse() const { return {den_ - num_, den_}; }

    Complex to_complex() const;
    /// "k/l"
    std::string to_string() const;
    static RootOfUnity parse(std::string_view text);

    bool operator==(const RootOfUnity &other) const = default;
    /// Orders by phase in [0, 1).
    std::strong_ordering operator<=>(const RootOfUnity &other) const;

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// A bijection on n modes, 0-based.
class Permutation {
  public:
    Permutation() = default;
    /// From 0-based images; throws unless a bijection.
    explicit Permutation(std::vector<std::size_t> image);

    static Permutation identity(std::size_t n);
    /// From 1-based one-line notation.
    static Permutation from_one_line(std::span<const std::size_t> one_based);
    /**
     * Parses cycle notation "(1 2 3)(4 5)" or a one-line array "[2,3,1]",
     * both 1-based. For cycle notation the mode count is `num_modes` if given,
     * else the largest mode mentioned. Errors carry the character position.
     */
    static Permutation parse(std::string_view text, std::optional<std::size_t> num_modes = std::nullopt);

    std::size_t size() const { return image_.size(); }
    std::size_t operator()(std::size_t j) const { return image_[j]; }
    std::span<const std::size_t> image() const { return image_; }

    Permutation inverse() const;
    bool is_identity() const;
    /// "(1 2 3)(4 5)", fixed points omitted; "()" for the identity.
    std::string to_cycle_string() const;
    /// 1-based one-line notation.
    std::vector<std::size_t> one_line() const;

    bool operator==(const Permutation &other) const = default;

  private:
    std::vector<std::size_t> image_;
};

/// Cycles rotated to start at their smallest element, sorted by it.
struct CycleDecomposition {
    std::vector<std::vector<std::size_t>> cycles;

    /// lcm of the cycle lengths.
    std::uint64_t order() const;
    std::size_t num_cycles() const { return cycles.size(); }
    std::string to_string() const;
};

CycleDecomposition cycle_decompose(const Permutation &p);

/// The 0/1 matrix with P_{j,k} = 1 iff k = pi(j).
ComplexMatrix operator_matrix(const Permutation &p);

/// r_{pi(j)} == r_j for every mode j.
bool is_invariant(const Permutation &p, const ModeOccupation &r);

/// Where a canonical eigenvector came from: which cycle, which root index.
struct EigenvectorOrigin {
    std::size_t cycle = 0;
    std::size_t root = 0;
    bool operator==(const EigenvectorOrigin &other) const = default;
};

struct EigenStructure {
    std::vector<RootOfUnity> eigenvalues;
    /// Columns are eigenvectors; this is the matrix A with P = A D A^dagger.
    ComplexMatrix eigenvectors;
    std::vector<EigenvectorOrigin> column_origin;
};

/**
 * Canonical analytic eigenbasis. For cycle (c_0, ..., c_{l-1}) with
 * pi(c_j) = c_{j+1 mod l} and k in 0..l-1 the eigenvector has entries
 * exp(2 pi i k j / l) / sqrt(l) at c_j and eigenvalue exp(2 pi i k / l).
 * Columns are ordered by cycle, then k.
 */
EigenStructure eigenstructure(const Permutation &p);

/// diag(lambda_1, ..., lambda_n) as a float matrix.
ComplexMatrix eigenvalue_matrix(std::span<const RootOfUnity> eigenvalues);

/// Z = P Theta P^dagger Theta^dagger.
ComplexMatrix local_phase_matrix(const Permutation &p, const ComplexMatrix &theta);

/// max|P U - Z U D| with Z from `local_phase_matrix`.
double symmetry_residual(const Permutation &p, const ComplexMatrix &u, const ComplexMatrix &theta,
                         std::span<const RootOfUnity> eigenvalues);

}  // namespace supplaw
