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
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supplaw/fock.hpp"
#include "supplaw/numerics.hpp"
#include "supplaw/permutations.hpp"
#include "supplaw/scattering.hpp"
#include "supplaw/suppression.hpp"
#include "supplaw/unitaries.hpp"

namespace supplaw {

/// Suppressed events must stay below this on the squared-amplitude scale.
inline constexpr double kSuppressedProbabilityTol = 1e-20;
/// Robustness fits ignore deviations below this floor.
inline constexpr double kFitFloor = 1e-18;
/// Robustness fits need at least this many usable grid points.
inline constexpr std::size_t kMinFitPoints = 4;

struct ExperimentConfig {
    Permutation permutation;
    ModeOccupation input;
    std::optional<Permutation> column_order;
    std::vector<double> theta_phases;
    std::vector<double> sigma_phases;
    /// If set, use the n x n Fourier matrix with its order-m shift symmetry
    /// instead of a constructed unitary; `permutation` is then ignored.
    std::optional<std::size_t> fourier_m;
    /// Draw a fresh Haar rotation of each degenerate eigenspace per basis.
    bool rotate_bases = true;
    std::size_t num_bases = 100;
    std::uint64_t seed = 1;
    bool run_boson = true;
    bool run_fermion = true;
    /// 0 means hardware concurrency.
    std::size_t threads = 0;

    std::optional<ModeOccupation> target;
    ParticleType robustness_statistics = ParticleType::Boson;
    std::vector<double> grid;
    std::size_t samples = 10000;
    DeviationDistribution deviation = DeviationDistribution::RandomPhase;
    /// eta_jk is drawn uniformly from [-eta_bound, eta_bound].
    double eta_bound = std::numbers::pi / 20.0;

    std::size_t num_modes() const { return input.num_modes(); }
    std::size_t num_particles() const { return input.num_particles(); }
    /// The permutation whose eigenvalues label the columns.
    Permutation symmetry() const;
    /// Throws std::invalid_argument listing every problem found.
    void validate() const;
};

/// One member of the unitary ensemble an experiment averages over.
struct EnsembleMember {
    ComplexMatrix u;
    std::vector<RootOfUnity> eigenvalues;
    double symmetry_residual = 0.0;
};

/// Member `index` of the ensemble described by `cfg`; deterministic.
EnsembleMember ensemble_member(const ExperimentConfig &cfg, std::size_t index);

struct VerdictTable {
    /// Boson or Fermion; decides which probability drives the class.
    ParticleType statistics = ParticleType::Boson;
    std::vector<EventVerdict> rows;
    /// Largest per-basis probability of each row's own statistics.
    std::vector<double> max_probability;

    std::size_t count(EventClass c) const;
    /// Sum of mean probabilities over AllowedIV rows.
    double allowed_probability_sum() const;
    /// Law-suppressed rows whose probability ever exceeded the tolerance.
    std::vector<std::size_t> soundness_violations() const;
    /// Rows that vanish through interference (p <= tol < p_dist) but are
    /// not predicted by the law.
    std::vector<std::size_t> unpredicted_interference_zeros() const;
};

struct MeanProbabilityResult {
    std::optional<VerdictTable> boson;
    std::optional<VerdictTable> fermion;
    std::size_t num_bases = 0;
    double max_symmetry_residual = 0.0;
};

MeanProbabilityResult run_mean_probabilities(const ExperimentConfig &cfg);

struct FourierComparisonRow {
    ModeOccupation s;
    std::vector<RootOfUnity> lambda;
    bool law_suppressed = false;
    /// Fermion rows only.
    std::optional<bool> old_law_suppressed;
    double probability = 0.0;
};

struct FourierComparison {
    std::size_t n = 0;
    std::size_t m = 0;
    ModeOccupation input;
    Permutation permutation;
    std::vector<RootOfUnity> eigenvalues;
    std::optional<std::size_t> transpositions;

    std::vector<FourierComparisonRow> boson_rows;
    std::vector<FourierComparisonRow> fermion_rows;

    /// Boson rows where the law verdict disagrees with P_B <= 1e-20.
    std::size_t boson_mismatches = 0;
    std::size_t fermion_new_suppressed = 0;
    std::size_t fermion_old_suppressed = 0;
    /// Suppressed by the old criterion but not by the multiset law.
    std::size_t fermion_old_not_new = 0;
    /// Suppressed by the multiset law only.
    std::vector<ModeOccupation> fermion_new_only;
    /// Largest probability among rows the new laws call suppressed.
    double max_suppressed_probability = 0.0;
};

/// Exhaustive law-vs-exact comparison under the n x n Fourier matrix.
FourierComparison run_fourier_comparison(std::size_t n, std::size_t m, const ModeOccupation &r);

struct PowerLawFit {
    double exponent = 0.0;
    double log_intercept = 0.0;
    std::size_t points = 0;
};

/// Least squares of log(y) on log(x), skipping points with y < floor.
std::optional<PowerLawFit> fit_power_law(std::span<const double> x, std::span<const double> y,
                                         double floor = kFitFloor);

struct RobustnessFit {
    std::vector<double> grid;
    std::vector<double> mean_delta_p;
    std::vector<double> std_error;
    double predicted_exponent = 0.0;
    double predicted_prefactor = 0.0;
    /// Free log-log fit; absent when fewer than kMinFitPoints usable points.
    std::optional<double> fitted_exponent;
    /// Geometric mean of delta_p / x^predicted_exponent over usable points.
    std::optional<double> fitted_prefactor;
    std::size_t points_used = 0;
    double mean_p_dist = 0.0;
    std::size_t psd_repairs = 0;
};

/// Deviation of a suppressed event under U_jk (1 + Delta_jk), vs
/// N <|Delta|>^2 (prod s!/prod r!) P_D.
RobustnessFit run_unitary_robustness(const ExperimentConfig &cfg);

/// Deviation of a suppressed event for S_jk = (1 - eps_jk) exp(i eta_jk),
/// vs N <eps> P_D.
RobustnessFit run_distinguishability_robustness(const ExperimentConfig &cfg);

}  // namespace supplaw
