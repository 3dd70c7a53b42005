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

#include "supplaw/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace supplaw {

std::string_view to_string(ParticleType t) {
    switch (t) {
        case ParticleType::Boson:
            return "boson";
        case ParticleType::Fermion:
            return "fermion";
        case ParticleType::Distinguishable:
            return "dist";
    }
    return "unknown";
}

ModeOccupation::ModeOccupation(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    for (std::size_t j = 0; j < occupations_.size(); ++j) {
        if (occupations_[j] < 0) {
            throw std::invalid_argument("mode occupation of mode " + std::to_string(j + 1) + " is negative");
        }
        total_ += static_cast<std::size_t>(occupations_[j]);
    }
}

int ModeOccupation::max_occupation() const {
    return occupations_.empty() ? 0 : *std::max_element(occupations_.begin(), occupations_.end());
}

double ModeOccupation::factorial_product() const {
    double out = 1.0;
    for (int k : occupations_) {
        for (int f = 2; f <= k; ++f) {
            out *= f;
        }
    }
    return out;
}

std::string ModeOccupation::to_string() const {
    std::string out = "[";
    for (std::size_t j = 0; j < occupations_.size(); ++j) {
        if (j) {
            out += ',';
        }
        out += std::to_string(occupations_[j]);
    }
    out += ']';
    return out;
}

ModeAssignment::ModeAssignment(std::vector<std::size_t> modes) : modes_(std::move(modes)) {
    if (!std::is_sorted(modes_.begin(), modes_.end())) {
        throw std::invalid_argument("mode assignment list must be non-decreasing");
    }
}

ModeAssignment occupation_to_assignment(const ModeOccupation &r) {
    std::vector<std::size_t> modes;
    modes.reserve(r.num_particles());
    for (std::size_t j = 0; j < r.num_modes(); ++j) {
        modes.insert(modes.end(), static_cast<std::size_t>(r[j]), j);
    }
    return ModeAssignment(std::move(modes));
}

ModeOccupation assignment_to_occupation(const ModeAssignment &d, std::size_t num_modes) {
    std::vector<int> occ(num_modes, 0);
    for (std::size_t mode : d.modes()) {
        if (mode >= num_modes) {
            throw std::out_of_range("mode index " + std::to_string(mode + 1) + " outside 1.." +
                                    std::to_string(num_modes));
        }
        ++occ[mode];
    }
    return ModeOccupation(std::move(occ));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

std::uint64_t count_outputs(std::size_t num_modes, std::size_t num_particles, ParticleType t) {
    if (t == ParticleType::Fermion) {
        return binomial(num_modes, num_particles);
    }
    if (num_modes == 0) {
        return num_particles == 0 ? 1 : 0;
    }
    return binomial(num_modes + num_particles - 1, num_particles);
}

OutputConfigurations::iterator::iterator(std::size_t num_modes, std::size_t num_particles, bool exclusive)
    : num_modes_(num_modes), exclusive_(exclusive), done_(false), assignment_(num_particles) {
    if (exclusive_ && num_particles > num_modes) {
        done_ = true;
        return;
    }
    if (num_modes == 0 && num_particles > 0) {
        done_ = true;
        return;
    }
    for (std::size_t a = 0; a < num_particles; ++a) {
        assignment_[a] = exclusive_ ? a : 0;
    }
    refresh();
}

void OutputConfigurations::iterator::refresh() {
    current_ = assignment_to_occupation(ModeAssignment(assignment_), num_modes_);
}

OutputConfigurations::iterator &OutputConfigurations::iterator::operator++() {
    const std::size_t num_particles = assignment_.size();
    // Rightmost position that can still be raised.
    std::size_t pos = num_particles;
    while (pos > 0) {
        std::size_t i = pos - 1;
        std::size_t limit = exclusive_ ? num_modes_ - num_particles + i : num_modes_ - 1;
        if (assignment_[i] < limit) {
            break;
        }
        --pos;
    }
    if (pos == 0) {
        done_ = true;
        assignment_.clear();
        return *this;
    }
    std::size_t i = pos - 1;
    ++assignment_[i];
    for (std::size_t j = i + 1; j < num_particles; ++j) {
        assignment_[j] = exclusive_ ? assignment_[j - 1] + 1 : assignment_[i];
    }
    refresh();
    return *this;
}

OutputConfigurations::OutputConfigurations(std::size_t num_modes, std::size_t num_particles, ParticleType t)
    : num_modes_(num_modes), num_particles_(num_particles), exclusive_(t == ParticleType::Fermion) {
    if (num_modes == 0) {
        throw std::invalid_argument("enumerate_outputs: need at least one mode");
    }
    if (exclusive_ && num_particles > num_modes) {
        throw std::invalid_argument("enumerate_outputs: " + std::to_string(num_particles) + " fermions do not fit into " +
                                    std::to_string(num_modes) + " modes");
    }
}

std::uint64_t OutputConfigurations::size() const {
    return count_outputs(num_modes_, num_particles_, exclusive_ ? ParticleType::Fermion : ParticleType::Boson);
}

OutputConfigurations enumerate_outputs(std::size_t num_modes, std::size_t num_particles, ParticleType t) {
    return OutputConfigurations(num_modes, num_particles, t);
}

}  // namespace supplaw
