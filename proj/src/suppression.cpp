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

#include "supplaw/suppression.hpp"

#include <algorithm>
#include <stdexcept>

namespace supplaw {

EigenvalueDistribution::EigenvalueDistribution(std::vector<RootOfUnity> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
}

RootOfUnity EigenvalueDistribution::product() const {
    RootOfUnity out = RootOfUnity::one();
    for (const auto &v : values_) {
        out = out * v;
    }
    return out;
}

std::string EigenvalueDistribution::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += values_[i].to_string();
    }
    return out;
}

std::vector<RootOfUnity> final_eigenvalues(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s) {
    if (eigenvalues.size() != s.num_modes()) {
        throw std::invalid_argument("eigenvalue list has " + std::to_string(eigenvalues.size()) +
                                    " entries but output has " + std::to_string(s.num_modes()) + " modes");
    }
    std::vector<RootOfUnity> out;
    out.reserve(s.num_particles());
    const ModeAssignment d = occupation_to_assignment(s);
    for (std::size_t mode : d.modes()) {
        out.push_back(eigenvalues[mode]);
    }
    return out;
}

EigenvalueDistribution final_distribution(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s) {
    return EigenvalueDistribution(final_eigenvalues(eigenvalues, s));
}

void require_invariant(const Permutation &p, const ModeOccupation &r) {
    if (p.size() != r.num_modes()) {
        throw std::invalid_argument("permutation acts on " + std::to_string(p.size()) + " modes but input state has " +
                                    std::to_string(r.num_modes()));
    }
    for (const auto &cycle : cycle_decompose(p).cycles) {
        for (std::size_t mode : cycle) {
            if (r[mode] != r[cycle.front()]) {
                CycleDecomposition offending{{cycle}};
                throw std::invalid_argument("input state " + r.to_string() + " is not invariant: occupations differ on cycle " +
                                            offending.to_string());
            }
        }
    }
}

EigenvalueDistribution initial_distribution(const Permutation &p, const ModeOccupation &r) {
    if (!r.is_fermionic()) {
        throw std::invalid_argument("initial eigenvalue distribution needs a singly occupied input, got " +
                                    r.to_string());
    }
    require_invariant(p, r);
    std::vector<RootOfUnity> values;
    values.reserve(r.num_particles());
    for (const auto &cycle : cycle_decompose(p).cycles) {
        if (r[cycle.front()] == 0) {
            continue;
        }
        const auto len = static_cast<std::int64_t>(cycle.size());
        for (std::int64_t k = 0; k < len; ++k) {
            values.emplace_back(k, len);
        }
    }
    return EigenvalueDistribution(std::move(values));
}

bool boson_suppressed(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s) {
    return !final_distribution(eigenvalues, s).product().is_one();
}

bool fermion_suppressed(const Permutation &p, const ModeOccupation &r, std::span<const RootOfUnity> eigenvalues,
                        const ModeOccupation &s) {
    if (!s.is_fermionic()) {
        throw std::invalid_argument("fermionic output " + s.to_string() + " has a multiply occupied mode");
    }
    if (r.num_particles() != s.num_particles()) {
        throw std::invalid_argument("particle number mismatch between input and output");
    }
    return final_distribution(eigenvalues, s) != initial_distribution(p, r);
}

std::size_t transposition_count(const Permutation &p, const ModeOccupation &r) {
    require_invariant(p, r);
    if (!r.is_fermionic()) {
        throw std::invalid_argument("transposition count needs a singly occupied input");
    }
    std::size_t populated_cycles = 0;
    for (const auto &cycle : cycle_decompose(p).cycles) {
        if (r[cycle.front()] != 0) {
            ++populated_cycles;
        }
    }
    return r.num_particles() - populated_cycles;
}

bool old_fourier_fermion_suppressed(std::span<const RootOfUnity> eigenvalues, const ModeOccupation &s,
                                    std::size_t w) {
    const RootOfUnity sign(static_cast<std::int64_t>(w % 2), 2);
    return final_distribution(eigenvalues, s).product() != sign;
}

std::string_view to_string(EventClass c) {
    switch (c) {
        case EventClass::AllowedIV:
            return "IV";
        case EventClass::ClassI:
            return "I";
        case EventClass::ClassII:
            return "II";
        case EventClass::ClassIII:
            return "III";
    }
    return "?";
}

EventClass parse_event_class(std::string_view text) {
    if (text == "IV") {
        return EventClass::AllowedIV;
    }
    if (text == "I") {
        return EventClass::ClassI;
    }
    if (text == "II") {
        return EventClass::ClassII;
    }
    if (text == "III") {
        return EventClass::ClassIII;
    }
    throw std::invalid_argument("unknown event class '" + std::string(text) + "'");
}

EventClass classify_event(bool law_suppressed, double p_indistinguishable, double p_dist, double tol) {
    if (law_suppressed) {
        return p_dist > tol ? EventClass::ClassIII : EventClass::ClassII;
    }
    if (p_indistinguishable <= tol && p_dist <= tol) {
        return EventClass::ClassI;
    }
    return EventClass::AllowedIV;
}

}  // namespace supplaw
