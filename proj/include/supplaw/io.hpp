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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supplaw/experiments.hpp"

namespace supplaw {

inline constexpr const char *kVersion = "0.1.0";

/// Header line of the verdict table CSV.
inline constexpr const char *kVerdictCsvHeader =
    "s;lambda_phases;boson_suppressed;fermion_suppressed;p_boson;p_fermion;p_dist;class";
inline constexpr const char *kRobustnessCsvHeader = "grid;mean_delta_p;std_error;predicted_delta_p";
inline constexpr const char *kFourierCsvHeader = "statistics;s;lambda_phases;law_suppressed;old_law_suppressed;probability";

/// Shortest decimal that parses back to the same double ("%.17g").
std::string format_double(double x);
double parse_double(std::string_view text);

/// Accepts "1,1,0", "(1,1,0)", "[1, 1, 0]" or "1 1 0".
ModeOccupation parse_occupation(std::string_view text);
ParticleType parse_particle_type(std::string_view text);

/// Space-separated "k/l" list and its inverse.
std::string format_phases(std::span<const RootOfUnity> values);
std::vector<RootOfUnity> parse_phases(std::string_view text);

// JSON encodings. Matrices are {"rows": r, "cols": c, "data": [[re, im], ...]}
// in row-major order.
nlohmann::json to_json(const ComplexMatrix &m);
ComplexMatrix complex_matrix_from_json(const nlohmann::json &j);

/// {"permutation": "(1 2)", "theta": [...], "sigma": [...], "seed": N,
///  "column_order": "[...]"}; phases in radians.
nlohmann::json to_json(const UnitarySpec &spec);
UnitarySpec unitary_spec_from_json(const nlohmann::json &j);

enum class ExperimentKind {
    MeanProbabilities,
    Fourier,
    UnitaryRobustness,
    DistinguishabilityRobustness,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentRequest {
    ExperimentKind kind = ExperimentKind::MeanProbabilities;
    ExperimentConfig config;
};

nlohmann::json to_json(const ExperimentRequest &req);
/// Throws std::invalid_argument listing every schema problem found.
ExperimentRequest experiment_request_from_json(const nlohmann::json &j);

// CSV tables, ';'-separated with a header line. Absent optionals are empty
// fields.
std::string verdict_csv(const VerdictTable &table);
std::vector<EventVerdict> parse_verdict_csv(std::string_view text);

std::string robustness_csv(const RobustnessFit &fit);
/// Restores grid, mean_delta_p and std_error.
RobustnessFit parse_robustness_csv(std::string_view text);
nlohmann::json robustness_summary(const RobustnessFit &fit);

std::string fourier_csv(const FourierComparison &cmp);
std::vector<std::pair<ParticleType, FourierComparisonRow>> parse_fourier_csv(std::string_view text);
nlohmann::json fourier_summary(const FourierComparison &cmp);

nlohmann::json verdict_summary(const VerdictTable &table);

/**
 * Bar chart of a verdict table: one <rect class="bar"> per output, ordered
 * classes I, II, III, then allowed events by increasing probability. A
 * second <rect class="dist"> per output shows P_D.
 */
std::string verdict_svg(const VerdictTable &table, std::string_view title);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view content);

}  // namespace supplaw
