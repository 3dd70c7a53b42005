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
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace supplaw {

enum class ParticleType { Boson, Fermion, Distinguishable };

std::string_view to_string(ParticleType t);

/**
 * Particle count per mode. Mode indices are 0-based here; anything printed
 * or parsed for users is 1-based.
 */
class ModeOccupation {
  public:
    ModeOccupation() = default;
    explicit ModeOccupation(std::vector<int> occupations);
    ModeOccupation(std::initializer_list<int> occupations) : ModeOccupation(std::vector<int>(occupations)) {}

    std::size_t num_modes() const { return occupations_.size(); }
    std::size_t num_particles() const { return total_; }
    int operator[](std::size_t mode) const { return occupations_[mode]; }
    std::span<const int> values() const { return occupations_; }

    int max_occupation() const;
    /// Every mode holds at most one particle.
    bool is_fermionic() const { return max_occupation() <= 1; }
    /// prod_j occupations_j!
    double factorial_product() const;

    /// "[1,1,0]"
    std::string to_string() const;

    auto operator<=>(const ModeOccupation &other) const = default;

  private:
    std::vector<int> occupations_;
    std::size_t total_ = 0;
};

/// Non-decreasing list of 0-based modes, one entry per particle.
class ModeAssignment {
  public:
    ModeAssignment() = default;
    explicit ModeAssignment(std::vector<std::size_t> modes);

    std::size_t num_particles() const { return modes_.size(); }
    std::size_t operator[](std::size_t particle) const { return modes_[particle]; }
    std::span<const std::size_t> modes() const { return modes_; }

    bool operator==(const ModeAssignment &other) const = default;

  private:
    std::vector<std::size_t> modes_;
};

ModeAssignment occupation_to_assignment(const ModeOccupation &r);
ModeOccupation assignment_to_occupation(const ModeAssignment &d, std::size_t num_modes);

/// Binomial coefficient; exact for the ranges used here.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Number of configurations enumerate_outputs yields.
std::uint64_t count_outputs(std::size_t num_modes, std::size_t num_particles, ParticleType t);

/**
 * Lazily enumerated output configurations of N particles in n modes.
 *
 * Bosons and distinguishable particles range over all multisets, fermions
 * over 0/1 occupations. Order is lexicographic in the mode assignment list,
 * so for n=2, N=2 bosons: (2,0), (1,1), (0,2).
 */
class OutputConfigurations {
  public:
    class iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = ModeOccupation;
        using difference_type = std::ptrdiff_t;
        using pointer = const ModeOccupation *;
        using reference = const ModeOccupation &;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator &operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator &other) const { return done_ == other.done_ && (done_ || assignment_ == other.assignment_); }

      private:
        friend class OutputConfigurations;
        iterator(std::size_t num_modes, std::size_t num_particles, bool exclusive);
        void refresh();

        std::size_t num_modes_ = 0;
        bool exclusive_ = false;
        bool done_ = true;
        std::vector<std::size_t> assignment_;
        ModeOccupation current_;
    };

    OutputConfigurations(std::size_t num_modes, std::size_t num_particles, ParticleType t);

    iterator begin() const { return iterator(num_modes_, num_particles_, exclusive_); }
    iterator end() const { return iterator(); }
    std::uint64_t size() const;

  private:
    std::size_t num_modes_;
    std::size_t num_particles_;
    bool exclusive_;
};

OutputConfigurations enumerate_outputs(std::size_t num_modes, std::size_t num_particles, ParticleType t);

}  // namespace supplaw
