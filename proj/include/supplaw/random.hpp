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

#include <cstdint>
#include <random>

namespace supplaw {

/// Name reported in run metadata and CLI help.
inline constexpr const char *kRngAlgorithm = "mt19937_64 (uniform: 53-bit mantissa; normal: Box-Muller)";

/// SplitMix64 finalizer; mixes (seed, index) into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/**
 * Seedable generator with distributions implemented here rather than taken
 * from <random>, whose distribution algorithms differ between standard
 * library vendors. Output is bit-identical across builds for a given seed.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal.
    double normal();

  private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace supplaw
