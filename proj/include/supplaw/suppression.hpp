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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "supplaw/fock.hpp"
#include "supplaw/permutations.hpp"

namespace supplaw {

/**
 * Multiset of permutation-operator eigenvalues attached to N particles.
 * Stored sorted, so equality is multiset equality.
 */
class EigenvalueDistribution {
  public:
    EigenvalueDistribution() = default;
    explicit EigenvalueDistribution(std::vector<RootOfUnity> values);

    std::size_t size() const { return values_.size(); }
    std::span<const RootOfUnity> values() const { return values_; }
    /// Product of all members, i.e. the sum of their phases modulo one turn.
    RootOfUnity product() const;
    /// Space-separated "k/l" list.
    std::string to_string() const;

    bool operator==(const EigenvalueDistribution &other) const = default;

  private:
    std::vector<RootOfUnity> values_;
};

/// Lambda(s): eigenvalue of each particle's output mode, in assignment order.
std::vector<RootOfUnity> final_eigenvalues(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s);
EigenvalueDistribution final_distribution(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s);

/**
 * Lambda_ini for singly occupied inputs: every populated cycle of length l
 * contributes all l-th roots of unity. Throws if r is not fermionic or not
 * invariant under p; the message names the offending cycle.
 */
EigenvalueDistribution initial_distribution(const Permutation &p, const ModeOccupation &r);

/// Bosonic law: the product of Lambda(s) differs from 1.
bool boson_suppressed(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s);

/// Fermionic law: Lambda(s) differs from Lambda_ini as a multiset.
bool fermion_suppressed(const Permutation &p, const ModeOccupation &r, std::span<const RootOfUnity> eigenvalues,
                        const ModeOccupation &s);

/**
 * Parity count w used by the older Fourier fermion criterion: N minus the
 * number of cycles of p restricted to the occupied modes of r.
 */
std::size_t transposition_count(const Permutation &p, const ModeOccupation &r);

/// Older Fourier fermion criterion: product of Lambda(s) differs from (-1)^w.
bool old_fourier_fermion_suppressed(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s,
                                    std::size_t w);

/// Throws std::invalid_argument naming the first cycle on which r is not constant.
void require_invariant(const Permutation &p, const ModeOccupation &r);

enum class EventClass {
    /// Not suppressed: nonzero probability.
    AllowedIV,
    /// Zero for every particle type but not predicted by the law.
    ClassI,
    /// Predicted, and already zero for distinguishable particles.
    ClassII,
    /// Predicted, zero only through many-particle interference.
    ClassIII,
};

std::string_view to_string(EventClass c);
EventClass parse_event_class(std::string_view text);

/**
 * ClassIII: law-suppressed with p_dist > tol. ClassII: law-suppressed with
 * p_dist <= tol. ClassI: not law-suppressed, but both the indistinguishable
 * and the distinguishable probability are <= tol. AllowedIV otherwise.
 */
EventClass classify_event(bool law_suppressed, double p_indistinguishable, double p_dist,
                          double tol = kProbabilityTol);

struct EventVerdict {
    ModeOccupation s;
    std::vector<RootOfUnity> lambda;
    bool law_suppressed_boson = false;
    std::optional<bool> law_suppressed_fermion;
    std::optional<double> p_boson;
    std::optional<double> p_fermion;
    std::optional<double> p_dist;
    EventClass event_class = EventClass::AllowedIV;

    bool operator==(const EventVerdict &other) const = default;
};

}  // namespace supplaw
