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
#include <optional>
#include <vector>

#include "supplaw/numerics.hpp"
#include "supplaw/permutations.hpp"

namespace supplaw {

/**
 * Recipe for a unitary U = Theta A Sigma that commutes with a mode
 * permutation up to local phases.
 *
 * theta_phases and sigma_phases are angles in radians for the diagonal
 * phase matrices (empty means all zero). When rotation_seed is set, every
 * degenerate eigenspace of the permutation operator gets its basis rotated by
 * a Haar-random unitary. column_order, if present, puts canonical column
 * column_order(k) at position k.
 */
struct UnitarySpec {
    Permutation permutation;
    std::vector<double> theta_phases;
    std::vector<double> sigma_phases;
    std::optional<std::uint64_t> rotation_seed;
    std::optional<Permutation> column_order;

    /// Throws if phase lengths or column_order do not match the mode count.
    void validate() const;
};

struct ConstructedUnitary {
    ComplexMatrix u;
    /// Eigenvalue attached to each column of U, after any reordering.
    std::vector<RootOfUnity> eigenvalues;
    /// The eigenbasis A before the local phases were applied.
    ComplexMatrix eigenbasis;
    ComplexMatrix theta;
    ComplexMatrix sigma;
    UnitarySpec spec;

    /// max|P U - Z U D|.
    double symmetry_residual() const;
};

ConstructedUnitary build_unitary(const UnitarySpec &spec);

/// U_jk = exp(2 pi i (j-1)(k-1) / n) / sqrt(n), 1-based indices.
ComplexMatrix fourier_unitary(std::size_t n);

struct FourierSymmetry {
    Permutation permutation;
    std::vector<RootOfUnity> eigenvalues;
};

/**
 * Cyclic mode shift by n/m (order m) under which the Fourier matrix obeys
 * U_{pi(j),k} = U_{j,k} exp(2 pi i (k-1)/m), together with those per-column
 * eigenvalues. The relation is checked entrywise before returning.
 */
FourierSymmetry fourier_symmetry(std::size_t n, std::size_t m);

}  // namespace supplaw
