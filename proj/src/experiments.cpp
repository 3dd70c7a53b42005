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

#include "supplaw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace supplaw {

namespace {

// Independent random streams derived from the experiment seed.
constexpr std::uint64_t kBasisStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::size_t index) {
    return derive_seed(derive_seed(seed, stream), index);
}

std::vector<ModeOccupation> materialize(std::size_t n, std::size_t num_particles, ParticleType t) {
    std::vector<ModeOccupation> out;
    out.reserve(count_outputs(n, num_particles, t));
    for (const auto &s : enumerate_outputs(n, num_particles, t)) {
        out.push_back(s);
    }
    return out;
}

void require_target(const ExperimentConfig &cfg) {
    if (!cfg.target) {
        throw std::invalid_argument("robustness run needs a target output state");
    }
    if (cfg.robustness_statistics == ParticleType::Distinguishable) {
        throw std::invalid_argument("robustness statistics must be boson or fermion");
    }
    if (cfg.grid.empty()) {
        throw std::invalid_argument("robustness run needs a non-empty grid");
    }
}

bool target_law_suppressed(const ExperimentConfig &cfg, std::span<const RootOfUnity> eigenvalues) {
    if (cfg.robustness_statistics == ParticleType::Boson) {
        return boson_suppressed(eigenvalues, *cfg.target);
    }
    return fermion_suppressed(cfg.symmetry(), cfg.input, eigenvalues, *cfg.target);
}

RobustnessFit finish_fit(const ExperimentConfig &cfg, const detail::Accumulated &acc, double predicted_exponent,
                         double prediction_scale) {
    const std::size_t g = cfg.grid.size();
    const auto samples = static_cast<double>(cfg.samples);
    RobustnessFit fit;
    fit.grid = cfg.grid;
    fit.predicted_exponent = predicted_exponent;
    for (std::size_t k = 0; k < g; ++k) {
        double mean = acc.sum[k] / samples;
        double var = cfg.samples > 1 ? (acc.sum_sq[k] - samples * mean * mean) / (samples - 1.0) : 0.0;
        fit.mean_delta_p.push_back(mean);
        fit.std_error.push_back(std::sqrt(std::max(var, 0.0) / samples));
    }
    fit.mean_p_dist = acc.sum[g] / samples;
    fit.psd_repairs = static_cast<std::size_t>(std::llround(acc.sum[g + 1]));
    if (fit.mean_p_dist <= kProbabilityTol) {
        throw std::invalid_argument("target has P_D = 0; the first-order prediction is degenerate");
    }
    fit.predicted_prefactor = prediction_scale * fit.mean_p_dist;

    auto free_fit = fit_power_law(fit.grid, fit.mean_delta_p);
    if (!free_fit || free_fit->points < kMinFitPoints) {
        fit.points_used = free_fit ? free_fit->points : 0;
        return fit;
    }
    fit.fitted_exponent = free_fit->exponent;
    fit.points_used = free_fit->points;
    double log_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < g; ++k) {
        if (fit.grid[k] > 0.0 && fit.mean_delta_p[k] >= kFitFloor) {
            log_sum += std::log(fit.mean_delta_p[k]) - predicted_exponent * std::log(fit.grid[k]);
            ++used;
        }
    }
    if (used >= kMinFitPoints) {
        fit.fitted_prefactor = std::exp(log_sum / static_cast<double>(used));
    }
    return fit;
}

}  // namespace

Permutation ExperimentConfig::symmetry() const {
    if (fourier_m) {
        return fourier_symmetry(num_modes(), *fourier_m).permutation;
    }
    return permutation;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    const std::size_t n = num_modes();
    if (n == 0) {
        problems.push_back("input state is empty");
    }
    if (fourier_m) {
        if (n == 0 || *fourier_m < 2 || n % *fourier_m != 0) {
            problems.push_back("fourier m=" + std::to_string(*fourier_m) + " must be >= 2 and divide n=" +
                               std::to_string(n));
        }
    } else if (permutation.size() != n) {
        problems.push_back("permutation acts on " + std::to_string(permutation.size()) + " modes, input has " +
                           std::to_string(n));
    }
    if (column_order && column_order->size() != n) {
        problems.push_back("column order acts on " + std::to_string(column_order->size()) + " columns, expected " +
                           std::to_string(n));
    }
    if (!theta_phases.empty() && theta_phases.size() != n) {
        problems.push_back("theta needs " + std::to_string(n) + " phases");
    }
    if (!sigma_phases.empty() && sigma_phases.size() != n) {
        problems.push_back("sigma needs " + std::to_string(n) + " phases");
    }
    if (num_bases == 0) {
        problems.push_back("num_bases must be at least 1");
    }
    if (samples == 0) {
        problems.push_back("samples must be at least 1");
    }
    if (!run_boson && !run_fermion) {
        problems.push_back("no particle type selected");
    }
    if (run_fermion && n > 0 && !input.is_fermionic()) {
        problems.push_back("fermion runs need a singly occupied input, got " + input.to_string());
    }
    for (double g : grid) {
        if (!std::isfinite(g) || g < 0.0) {
            problems.push_back("grid values must be finite and non-negative");
            break;
        }
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
        problems.push_back("grid must be ascending");
    }
    if (target) {
        if (target->num_modes() != n) {
            problems.push_back("target has " + std::to_string(target->num_modes()) + " modes, expected " +
                               std::to_string(n));
        } else if (target->num_particles() != input.num_particles()) {
            problems.push_back("target has " + std::to_string(target->num_particles()) + " particles, input has " +
                               std::to_string(input.num_particles()));
        }
    }
    if (problems.empty() && n > 0) {
        try {
            require_invariant(symmetry(), input);
        } catch (const std::invalid_argument &e) {
            problems.emplace_back(e.what());
        }
    }
    if (!problems.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto &p : problems) {
            msg += "\n  - " + p;
        }
        throw std::invalid_argument(msg);
    }
}

EnsembleMember ensemble_member(const ExperimentConfig &cfg, std::size_t index) {
    EnsembleMember out;
    if (cfg.fourier_m) {
        FourierSymmetry sym = fourier_symmetry(cfg.num_modes(), *cfg.fourier_m);
        out.u = fourier_unitary(cfg.num_modes());
        out.eigenvalues = sym.eigenvalues;
        out.symmetry_residual =
            symmetry_residual(sym.permutation, out.u, ComplexMatrix::identity(cfg.num_modes()), out.eigenvalues);
        return out;
    }
    UnitarySpec spec;
    spec.permutation = cfg.permutation;
    spec.theta_phases = cfg.theta_phases;
    spec.sigma_phases = cfg.sigma_phases;
    spec.column_order = cfg.column_order;
    if (cfg.rotate_bases) {
        spec.rotation_seed = stream_seed(cfg.seed, kBasisStream, index);
    }
    ConstructedUnitary built = build_unitary(spec);
    out.symmetry_residual = built.symmetry_residual();
    out.u = std::move(built.u);
    out.eigenvalues = std::move(built.eigenvalues);
    return out;
}

std::size_t VerdictTable::count(EventClass c) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [c](const EventVerdict &v) { return v.event_class == c; }));
}

namespace {

double own_probability(const VerdictTable &t, const EventVerdict &v) {
    auto p = t.statistics == ParticleType::Fermion ? v.p_fermion : v.p_boson;
    return p.value_or(0.0);
}

bool own_law(const VerdictTable &t, const EventVerdict &v) {
    return t.statistics == ParticleType::Fermion ? v.law_suppressed_fermion.value_or(false) : v.law_suppressed_boson;
}

}  // namespace

double VerdictTable::allowed_probability_sum() const {
    CompensatedSum total;
    for (const auto &v : rows) {
        if (v.event_class == EventClass::AllowedIV) {
            total.add(own_probability(*this, v));
        }
    }
    return total.value();
}

std::vector<std::size_t> VerdictTable::soundness_violations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (own_law(*this, rows[i]) && max_probability[i] > kSuppressedProbabilityTol) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> VerdictTable::unpredicted_interference_zeros() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &v = rows[i];
        if (!own_law(*this, v) && own_probability(*this, v) <= kProbabilityTol &&
            v.p_dist.value_or(0.0) > kProbabilityTol) {
            out.push_back(i);
        }
    }
    return out;
}

MeanProbabilityResult run_mean_probabilities(const ExperimentConfig &cfg) {
    cfg.validate();
    const std::size_t n = cfg.num_modes();
    const std::size_t num_particles = cfg.num_particles();
    const ModeOccupation &r = cfg.input;
    const Permutation sym = cfg.symmetry();
    const std::vector<RootOfUnity> eigenvalues = ensemble_member(cfg, 0).eigenvalues;
    const bool fermionic_input = r.is_fermionic();

    std::vector<ModeOccupation> boson_outputs;
    std::vector<ModeOccupation> fermion_outputs;
    if (cfg.run_boson) {
        boson_outputs = materialize(n, num_particles, ParticleType::Boson);
    }
    if (cfg.run_fermion) {
        fermion_outputs = materialize(n, num_particles, ParticleType::Fermion);
    }
    const std::size_t nb = boson_outputs.size();
    const std::size_t nf = fermion_outputs.size();

    // Per-sample layout: [pB, pD, pF] per boson row, [pF, pD renormalized,
    // pB] per fermion row, then the symmetry residual.
    const std::size_t width = 3 * nb + 3 * nf + 1;
    auto acc = detail::accumulate(cfg.num_bases, width, cfg.threads, [&](std::size_t basis, std::span<double> out) {
        EnsembleMember member = ensemble_member(cfg, basis);
        if (member.eigenvalues != eigenvalues) {
            throw std::logic_error("eigenvalue assignment changed between bases");
        }
        for (std::size_t i = 0; i < nb; ++i) {
            const auto &s = boson_outputs[i];
            out[3 * i] = prob_boson(member.u, r, s);
            out[3 * i + 1] = prob_distinguishable(member.u, r, s);
            if (cfg.run_fermion && fermionic_input && s.is_fermionic()) {
                out[3 * i + 2] = prob_fermion(member.u, r, s);
            }
        }
        double dist_norm = 0.0;
        const std::size_t base = 3 * nb;
        for (std::size_t j = 0; j < nf; ++j) {
            const auto &s = fermion_outputs[j];
            out[base + 3 * j] = prob_fermion(member.u, r, s);
            out[base + 3 * j + 1] = prob_distinguishable(member.u, r, s);
            dist_norm += out[base + 3 * j + 1];
            if (cfg.run_boson) {
                out[base + 3 * j + 2] = prob_boson(member.u, r, s);
            }
        }
        if (dist_norm > 0.0) {
            for (std::size_t j = 0; j < nf; ++j) {
                out[base + 3 * j + 1] /= dist_norm;
            }
        }
        out[width - 1] = member.symmetry_residual;
    });

    const auto bases = static_cast<double>(cfg.num_bases);
    MeanProbabilityResult result;
    result.num_bases = cfg.num_bases;
    result.max_symmetry_residual = acc.max[width - 1];
    if (result.max_symmetry_residual > kStructuralTol) {
        throw std::runtime_error("constructed unitary violates the mode-exchange symmetry by " +
                                 std::to_string(result.max_symmetry_residual));
    }

    std::optional<EigenvalueDistribution> initial;
    if (fermionic_input) {
        initial = initial_distribution(sym, r);
    }

    if (cfg.run_boson) {
        VerdictTable table;
        table.statistics = ParticleType::Boson;
        for (std::size_t i = 0; i < nb; ++i) {
            EventVerdict v;
            v.s = boson_outputs[i];
            v.lambda = final_eigenvalues(eigenvalues, v.s);
            v.law_suppressed_boson = boson_suppressed(eigenvalues, v.s);
            if (initial && v.s.is_fermionic()) {
                v.law_suppressed_fermion = EigenvalueDistribution(v.lambda) != *initial;
            }
            v.p_boson = acc.sum[3 * i] / bases;
            v.p_dist = acc.sum[3 * i + 1] / bases;
            if (cfg.run_fermion && fermionic_input && v.s.is_fermionic()) {
                v.p_fermion = acc.sum[3 * i + 2] / bases;
            }
            v.event_class = classify_event(v.law_suppressed_boson, *v.p_boson, *v.p_dist);
            table.rows.push_back(std::move(v));
            table.max_probability.push_back(acc.max[3 * i]);
        }
        result.boson = std::move(table);
    }
    if (cfg.run_fermion) {
        VerdictTable table;
        table.statistics = ParticleType::Fermion;
        const std::size_t base = 3 * nb;
        for (std::size_t j = 0; j < nf; ++j) {
            EventVerdict v;
            v.s = fermion_outputs[j];
            v.lambda = final_eigenvalues(eigenvalues, v.s);
            v.law_suppressed_boson = boson_suppressed(eigenvalues, v.s);
            v.law_suppressed_fermion = EigenvalueDistribution(v.lambda) != *initial;
            v.p_fermion = acc.sum[base + 3 * j] / bases;
            v.p_dist = acc.sum[base + 3 * j + 1] / bases;
            if (cfg.run_boson) {
                v.p_boson = acc.sum[base + 3 * j + 2] / bases;
            }
            v.event_class = classify_event(*v.law_suppressed_fermion, *v.p_fermion, *v.p_dist);
            table.rows.push_back(std::move(v));
            table.max_probability.push_back(acc.max[base + 3 * j]);
        }
        result.fermion = std::move(table);
    }
    return result;
}

FourierComparison run_fourier_comparison(std::size_t n, std::size_t m, const ModeOccupation &r) {
    FourierSymmetry sym = fourier_symmetry(n, m);
    if (r.num_modes() != n) {
        throw std::invalid_argument("input state must have " + std::to_string(n) + " modes");
    }
    require_invariant(sym.permutation, r);
    const ComplexMatrix u = fourier_unitary(n);

    FourierComparison out;
    out.n = n;
    out.m = m;
    out.input = r;
    out.permutation = sym.permutation;
    out.eigenvalues = sym.eigenvalues;

    for (const auto &s : enumerate_outputs(n, r.num_particles(), ParticleType::Boson)) {
        FourierComparisonRow row;
        row.s = s;
        row.lambda = final_eigenvalues(out.eigenvalues, s);
        row.law_suppressed = boson_suppressed(out.eigenvalues, s);
        row.probability = prob_boson(u, r, s);
        const bool zero = row.probability <= kSuppressedProbabilityTol;
        if (row.law_suppressed != zero) {
            ++out.boson_mismatches;
        }
        if (row.law_suppressed) {
            out.max_suppressed_probability = std::max(out.max_suppressed_probability, row.probability);
        }
        out.boson_rows.push_back(std::move(row));
    }

    if (r.is_fermionic() && r.num_particles() <= n) {
        const std::size_t w = transposition_count(sym.permutation, r);
        out.transpositions = w;
        for (const auto &s : enumerate_outputs(n, r.num_particles(), ParticleType::Fermion)) {
            FourierComparisonRow row;
            row.s = s;
            row.lambda = final_eigenvalues(out.eigenvalues, s);
            row.law_suppressed = fermion_suppressed(sym.permutation, r, out.eigenvalues, s);
            row.old_law_suppressed = old_fourier_fermion_suppressed(out.eigenvalues, s, w);
            row.probability = prob_fermion(u, r, s);
            if (row.law_suppressed) {
                ++out.fermion_new_suppressed;
                out.max_suppressed_probability = std::max(out.max_suppressed_probability, row.probability);
            }
            if (*row.old_law_suppressed) {
                ++out.fermion_old_suppressed;
                if (!row.law_suppressed) {
                    ++out.fermion_old_not_new;
                }
            }
            if (row.law_suppressed && !*row.old_law_suppressed) {
                out.fermion_new_only.push_back(s);
            }
            out.fermion_rows.push_back(std::move(row));
        }
    }
    return out;
}

std::optional<PowerLawFit> fit_power_law(std::span<const double> x, std::span<const double> y, double floor) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_power_law: x and y differ in length");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] >= floor) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) {
        return std::nullopt;
    }
    const auto k = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        return std::nullopt;
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_intercept = my - fit.exponent * mx;
    fit.points = lx.size();
    return fit;
}

RobustnessFit run_unitary_robustness(const ExperimentConfig &cfg) {
    cfg.validate();
    require_target(cfg);
    const ModeOccupation &r = cfg.input;
    const ModeOccupation &s = *cfg.target;
    const ParticleType stats = cfg.robustness_statistics;
    if (!target_law_suppressed(cfg, ensemble_member(cfg, 0).eigenvalues)) {
        throw std::invalid_argument("target " + s.to_string() + " is not suppressed by the " +
                                    std::string(to_string(stats)) + " law");
    }
    const std::size_t g = cfg.grid.size();

    auto acc = detail::accumulate(cfg.samples, g + 2, cfg.threads, [&](std::size_t i, std::span<double> out) {
        EnsembleMember member = ensemble_member(cfg, i);
        double ideal = transition_probability(stats, member.u, r, s);
        if (ideal > kSuppressedProbabilityTol) {
            throw std::runtime_error("ideal probability of suppressed target is " + std::to_string(ideal));
        }
        for (std::size_t k = 0; k < g; ++k) {
            // Same noise stream at every grid point: only the scale changes.
            Rng rng(stream_seed(cfg.seed, kNoiseStream, i));
            PerturbationModel model{cfg.grid[k], 0, cfg.deviation};
            ComplexMatrix noisy = perturb_unitary(member.u, model, rng);
            out[k] = transition_probability(stats, noisy, r, s);
        }
        out[g] = prob_distinguishable(member.u, r, s);
    });

    const double scale = static_cast<double>(r.num_particles()) * s.factorial_product() / r.factorial_product();
    return finish_fit(cfg, acc, 2.0, scale);
}

RobustnessFit run_distinguishability_robustness(const ExperimentConfig &cfg) {
    cfg.validate();
    require_target(cfg);
    const ModeOccupation &r = cfg.input;
    const ModeOccupation &s = *cfg.target;
    const ParticleType stats = cfg.robustness_statistics;
    if (!target_law_suppressed(cfg, ensemble_member(cfg, 0).eigenvalues)) {
        throw std::invalid_argument("target " + s.to_string() + " is not suppressed by the " +
                                    std::string(to_string(stats)) + " law");
    }
    const std::size_t n = cfg.num_modes();
    const std::size_t g = cfg.grid.size();
    std::vector<std::size_t> occupied;
    for (std::size_t j = 0; j < n; ++j) {
        if (r[j] > 0) {
            occupied.push_back(j);
        }
    }

    auto acc = detail::accumulate(cfg.samples, g + 2, cfg.threads, [&](std::size_t i, std::span<double> out) {
        EnsembleMember member = ensemble_member(cfg, i);
        double ideal = transition_probability(stats, member.u, r, s);
        if (ideal > kSuppressedProbabilityTol) {
            throw std::runtime_error("ideal probability of suppressed target is " + std::to_string(ideal));
        }
        // Only overlaps between populated input modes enter the probability;
        // the rest of S stays the identity.
        Rng rng(stream_seed(cfg.seed, kNoiseStream, i));
        std::vector<double> eps_unit;
        std::vector<double> eta;
        for (std::size_t a = 0; a < occupied.size(); ++a) {
            for (std::size_t b = a + 1; b < occupied.size(); ++b) {
                eps_unit.push_back(rng.uniform());
                eta.push_back(rng.uniform(-cfg.eta_bound, cfg.eta_bound));
            }
        }
        double repairs = 0.0;
        for (std::size_t k = 0; k < g; ++k) {
            ComplexMatrix sm = ComplexMatrix::identity(n);
            std::size_t pair = 0;
            for (std::size_t a = 0; a < occupied.size(); ++a) {
                for (std::size_t b = a + 1; b < occupied.size(); ++b, ++pair) {
                    // Uniform on [0, 2 <eps>], so the mean is the grid value.
                    double eps = 2.0 * cfg.grid[k] * eps_unit[pair];
                    Complex overlap = std::polar(1.0 - eps, eta[pair]);
                    sm(occupied[a], occupied[b]) = overlap;
                    sm(occupied[b], occupied[a]) = std::conj(overlap);
                }
            }
            if (repair_distinguishability(sm)) {
                repairs += 1.0;
            }
            out[k] = prob_partial(member.u, r, s, DistinguishabilityMatrix(std::move(sm)), stats);
        }
        out[g] = prob_distinguishable(member.u, r, s);
        out[g + 1] = repairs;
    });

    const double scale = static_cast<double>(r.num_particles());
    return finish_fit(cfg, acc, 1.0, scale);
}

}  // namespace supplaw
