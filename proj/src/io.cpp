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

#include "supplaw/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace supplaw {

using nlohmann::json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("expected a number, got an empty field");
    }
    errno = 0;
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = text.find(sep, start);
        if (at == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

bool parse_bool(std::string_view s) {
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw std::invalid_argument("expected true/false, got '" + std::string(s) + "'");
}

std::string optional_field(const std::optional<double> &v) { return v ? format_double(*v) : ""; }

std::optional<double> parse_optional_double(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_double(s);
}

std::optional<bool> parse_optional_bool(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_bool(s);
}

void expect_header(const std::vector<std::string_view> &rows, const char *header) {
    if (rows.empty() || rows.front() != header) {
        throw std::invalid_argument(std::string("CSV header must be '") + header + "'");
    }
}

std::vector<std::string_view> fields(std::string_view line, std::size_t expected, std::size_t line_no) {
    auto f = split(line, ';');
    if (f.size() != expected) {
        throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                    " fields, got " + std::to_string(f.size()));
    }
    return f;
}

}  // namespace

ModeOccupation parse_occupation(std::string_view text) {
    std::string_view body = trim(text);
    if (!body.empty() && (body.front() == '(' || body.front() == '[')) {
        char close = body.front() == '(' ? ')' : ']';
        if (body.back() != close) {
            throw std::invalid_argument("occupation list '" + std::string(text) + "' is missing '" + close + "'");
        }
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> values;
    std::string token;
    auto flush = [&] {
        if (token.empty()) {
            return;
        }
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size()) {
            throw std::invalid_argument("occupation list '" + std::string(text) + "': bad entry '" + token + "'");
        }
        values.push_back(v);
        token.clear();
    };
    for (char c : body) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    if (values.empty()) {
        throw std::invalid_argument("occupation list '" + std::string(text) + "' is empty");
    }
    return ModeOccupation(std::move(values));
}

ParticleType parse_particle_type(std::string_view text) {
    if (text == "boson") {
        return ParticleType::Boson;
    }
    if (text == "fermion") {
        return ParticleType::Fermion;
    }
    if (text == "dist" || text == "distinguishable") {
        return ParticleType::Distinguishable;
    }
    throw std::invalid_argument("unknown particle type '" + std::string(text) + "' (expected boson, fermion or dist)");
}

std::string format_phases(std::span<const RootOfUnity> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += values[i].to_string();
    }
    return out;
}

std::vector<RootOfUnity> parse_phases(std::string_view text) {
    std::vector<RootOfUnity> out;
    for (auto tok : split(trim(text), ' ')) {
        if (!tok.empty()) {
            out.push_back(RootOfUnity::parse(tok));
        }
    }
    return out;
}

json to_json(const ComplexMatrix &m) {
    json data = json::array();
    for (const Complex &z : m.data()) {
        data.push_back({z.real(), z.imag()});
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix complex_matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw std::invalid_argument("matrix JSON needs \"rows\", \"cols\" and \"data\"");
    }
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() || !j["data"].is_array()) {
        throw std::invalid_argument("matrix JSON: rows/cols must be non-negative integers and data an array");
    }
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    std::vector<Complex> data;
    for (const auto &entry : j["data"]) {
        if (entry.is_number()) {
            data.emplace_back(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
            data.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        } else {
            throw std::invalid_argument("matrix JSON: entry " + std::to_string(data.size()) +
                                        " must be a number or [re, im]");
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

json to_json(const UnitarySpec &spec) {
    json j;
    j["modes"] = spec.permutation.size();
    j["permutation"] = spec.permutation.to_cycle_string();
    j["theta"] = spec.theta_phases;
    j["sigma"] = spec.sigma_phases;
    if (spec.rotation_seed) {
        j["seed"] = *spec.rotation_seed;
    }
    if (spec.column_order) {
        j["column_order"] = spec.column_order->one_line();
    }
    return j;
}

namespace {

/// Collects schema problems so they can be reported together.
class SchemaReader {
  public:
    SchemaReader(const json &j, std::string what) : j_(j), what_(std::move(what)) {
        if (!j_.is_object()) {
            throw std::invalid_argument(what_ + ": expected a JSON object");
        }
    }

    void allow(std::initializer_list<const char *> keys) {
        std::set<std::string> known(keys.begin(), keys.end());
        for (const auto &item : j_.items()) {
            if (!known.count(item.key())) {
                problems_.push_back("unknown key \"" + item.key() + "\"");
            }
        }
    }

    bool has(const char *key) const { return j_.contains(key) && !j_[key].is_null(); }

    template <typename T, typename Check>
    std::optional<T> get(const char *key, Check check, const char *expected) {
        if (!has(key)) {
            return std::nullopt;
        }
        const json &v = j_[key];
        if (!check(v)) {
            problems_.push_back("\"" + std::string(key) + "\" must be " + expected);
            return std::nullopt;
        }
        return v.get<T>();
    }

    std::optional<std::string> string(const char *key) {
        return get<std::string>(key, [](const json &v) { return v.is_string(); }, "a string");
    }
    std::optional<std::uint64_t> unsigned_int(const char *key) {
        return get<std::uint64_t>(key, [](const json &v) { return v.is_number_unsigned(); },
                                  "a non-negative integer");
    }
    std::optional<bool> boolean(const char *key) {
        return get<bool>(key, [](const json &v) { return v.is_boolean(); }, "true or false");
    }
    std::optional<double> number(const char *key) {
        return get<double>(key, [](const json &v) { return v.is_number(); }, "a number");
    }
    std::optional<std::vector<double>> numbers(const char *key) {
        return get<std::vector<double>>(
            key,
            [](const json &v) {
                return v.is_array() && std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number(); });
            },
            "an array of numbers");
    }
    std::optional<std::vector<int>> integers(const char *key) {
        return get<std::vector<int>>(
            key,
            [](const json &v) {
                return v.is_array() &&
                       std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number_integer(); });
            },
            "an array of integers");
    }

    template <typename F>
    auto attempt(const char *key, F parse) -> std::optional<decltype(parse())> {
        try {
            return parse();
        } catch (const std::exception &e) {
            problems_.push_back("\"" + std::string(key) + "\": " + e.what());
            return std::nullopt;
        }
    }

    void problem(std::string msg) { problems_.push_back(std::move(msg)); }

    void finish() const {
        if (problems_.empty()) {
            return;
        }
        std::string msg = what_ + " has " + std::to_string(problems_.size()) + " problem(s):";
        for (const auto &p : problems_) {
            msg += "\n  - " + p;
        }
        throw std::invalid_argument(msg);
    }

  private:
    const json &j_;
    std::string what_;
    std::vector<std::string> problems_;
};

std::optional<Permutation> read_permutation(SchemaReader &r, const json &j, const char *key,
                                            std::optional<std::size_t> n) {
    if (!r.has(key)) {
        return std::nullopt;
    }
    const json &v = j[key];
    if (v.is_string()) {
        return r.attempt(key, [&] { return Permutation::parse(v.get<std::string>(), n); });
    }
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number_unsigned(); })) {
        auto one_line = v.get<std::vector<std::size_t>>();
        return r.attempt(key, [&] { return Permutation::from_one_line(one_line); });
    }
    r.problem("\"" + std::string(key) + "\" must be a cycle/one-line string or a 1-based array");
    return std::nullopt;
}

}  // namespace

UnitarySpec unitary_spec_from_json(const json &j) {
    SchemaReader r(j, "unitary spec");
    r.allow({"modes", "permutation", "theta", "sigma", "seed", "column_order"});
    std::optional<std::size_t> n = r.unsigned_int("modes");
    UnitarySpec spec;
    auto theta = r.numbers("theta");
    auto sigma = r.numbers("sigma");
    if (!n && theta && !theta->empty()) {
        n = theta->size();
    }
    if (!r.has("permutation")) {
        r.problem("missing \"permutation\"");
    }
    auto perm = read_permutation(r, j, "permutation", n);
    auto order = read_permutation(r, j, "column_order", n);
    auto seed = r.unsigned_int("seed");
    r.finish();
    spec.permutation = *perm;
    spec.theta_phases = theta.value_or(std::vector<double>{});
    spec.sigma_phases = sigma.value_or(std::vector<double>{});
    spec.rotation_seed = seed;
    spec.column_order = order;
    spec.validate();
    return spec;
}

std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::MeanProbabilities:
            return "mean_probabilities";
        case ExperimentKind::Fourier:
            return "fourier";
        case ExperimentKind::UnitaryRobustness:
            return "unitary_robustness";
        case ExperimentKind::DistinguishabilityRobustness:
            return "distinguishability_robustness";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (auto k : {ExperimentKind::MeanProbabilities, ExperimentKind::Fourier, ExperimentKind::UnitaryRobustness,
                   ExperimentKind::DistinguishabilityRobustness}) {
        if (text == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown experiment kind '" + std::string(text) +
                                "' (expected mean_probabilities, fourier, unitary_robustness or "
                                "distinguishability_robustness)");
}

json to_json(const ExperimentRequest &req) {
    const ExperimentConfig &c = req.config;
    json j;
    j["kind"] = std::string(to_string(req.kind));
    j["input"] = std::vector<int>(c.input.values().begin(), c.input.values().end());
    if (c.fourier_m) {
        j["fourier_m"] = *c.fourier_m;
    } else {
        j["permutation"] = c.permutation.to_cycle_string();
    }
    if (c.column_order) {
        j["column_order"] = c.column_order->one_line();
    }
    if (!c.theta_phases.empty()) {
        j["theta"] = c.theta_phases;
    }
    if (!c.sigma_phases.empty()) {
        j["sigma"] = c.sigma_phases;
    }
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    if (req.kind == ExperimentKind::MeanProbabilities) {
        j["rotate_bases"] = c.rotate_bases;
        j["num_bases"] = c.num_bases;
        std::vector<std::string> types;
        if (c.run_boson) {
            types.emplace_back("boson");
        }
        if (c.run_fermion) {
            types.emplace_back("fermion");
        }
        j["types"] = types;
    }
    if (req.kind == ExperimentKind::UnitaryRobustness || req.kind == ExperimentKind::DistinguishabilityRobustness) {
        j["rotate_bases"] = c.rotate_bases;
        if (c.target) {
            j["target"] = std::vector<int>(c.target->values().begin(), c.target->values().end());
        }
        j["statistics"] = std::string(to_string(c.robustness_statistics));
        j["grid"] = c.grid;
        j["samples"] = c.samples;
        if (req.kind == ExperimentKind::UnitaryRobustness) {
            j["deviation"] = std::string(to_string(c.deviation));
        } else {
            j["eta_bound"] = c.eta_bound;
        }
    }
    return j;
}

ExperimentRequest experiment_request_from_json(const json &j) {
    SchemaReader r(j, "experiment config");
    r.allow({"kind", "input", "permutation", "fourier_m", "column_order", "theta", "sigma", "seed", "threads",
             "rotate_bases", "num_bases", "types", "target", "statistics", "grid", "samples", "deviation",
             "eta_bound"});
    ExperimentRequest req;
    ExperimentConfig &c = req.config;

    if (!r.has("kind")) {
        r.problem("missing \"kind\"");
    } else if (auto kind = r.string("kind")) {
        if (auto k = r.attempt("kind", [&] { return parse_experiment_kind(*kind); })) {
            req.kind = *k;
        }
    }

    std::optional<std::size_t> n;
    if (!r.has("input")) {
        r.problem("missing \"input\"");
    } else if (auto input = r.integers("input")) {
        if (auto occ = r.attempt("input", [&] { return ModeOccupation(*input); })) {
            c.input = *occ;
            n = c.input.num_modes();
        }
    }

    c.fourier_m = r.unsigned_int("fourier_m");
    if (req.kind == ExperimentKind::Fourier && !c.fourier_m) {
        r.problem("fourier experiments need \"fourier_m\"");
    }
    if (!c.fourier_m) {
        if (!r.has("permutation")) {
            r.problem("missing \"permutation\" (or \"fourier_m\")");
        } else if (auto p = read_permutation(r, j, "permutation", n)) {
            c.permutation = *p;
        }
    } else if (r.has("permutation")) {
        r.problem("\"permutation\" and \"fourier_m\" are mutually exclusive");
    }
    c.column_order = read_permutation(r, j, "column_order", n);
    c.theta_phases = r.numbers("theta").value_or(std::vector<double>{});
    c.sigma_phases = r.numbers("sigma").value_or(std::vector<double>{});
    c.seed = r.unsigned_int("seed").value_or(c.seed);
    c.threads = r.unsigned_int("threads").value_or(c.threads);
    c.rotate_bases = r.boolean("rotate_bases").value_or(c.rotate_bases);
    c.num_bases = r.unsigned_int("num_bases").value_or(c.num_bases);

    if (r.has("types")) {
        const json &t = j["types"];
        if (!t.is_array() || !std::all_of(t.begin(), t.end(), [](const json &x) { return x.is_string(); })) {
            r.problem("\"types\" must be an array of \"boson\"/\"fermion\"");
        } else {
            c.run_boson = false;
            c.run_fermion = false;
            for (const auto &name : t) {
                auto s = name.get<std::string>();
                if (s == "boson") {
                    c.run_boson = true;
                } else if (s == "fermion") {
                    c.run_fermion = true;
                } else {
                    r.problem("\"types\": unknown type \"" + s + "\"");
                }
            }
        }
    } else if (req.kind == ExperimentKind::MeanProbabilities && !c.input.values().empty()) {
        c.run_fermion = c.input.is_fermionic();
    }

    if (auto target = r.integers("target")) {
        c.target = r.attempt("target", [&] { return ModeOccupation(*target); });
    }
    if (auto stats = r.string("statistics")) {
        if (auto t = r.attempt("statistics", [&] { return parse_particle_type(*stats); })) {
            c.robustness_statistics = *t;
        }
    }
    c.grid = r.numbers("grid").value_or(std::vector<double>{});
    c.samples = r.unsigned_int("samples").value_or(c.samples);
    if (auto dev = r.string("deviation")) {
        if (auto d = r.attempt("deviation", [&] { return parse_deviation_distribution(*dev); })) {
            c.deviation = *d;
        }
    }
    c.eta_bound = r.number("eta_bound").value_or(c.eta_bound);

    const bool robustness =
        req.kind == ExperimentKind::UnitaryRobustness || req.kind == ExperimentKind::DistinguishabilityRobustness;
    if (robustness) {
        if (!c.target) {
            r.problem("robustness experiments need \"target\"");
        }
        if (c.grid.empty()) {
            r.problem("robustness experiments need a non-empty \"grid\"");
        }
        // Robustness only uses the statistics under test.
        c.run_boson = c.robustness_statistics == ParticleType::Boson;
        c.run_fermion = c.robustness_statistics == ParticleType::Fermion;
    }
    r.finish();
    if (req.kind != ExperimentKind::Fourier) {
        c.validate();
    }
    return req;
}

std::string verdict_csv(const VerdictTable &table) {
    std::string out = kVerdictCsvHeader;
    out += '\n';
    for (const auto &v : table.rows) {
        out += v.s.to_string();
        out += ';';
        out += format_phases(v.lambda);
        out += ';';
        out += format_bool(v.law_suppressed_boson);
        out += ';';
        out += v.law_suppressed_fermion ? format_bool(*v.law_suppressed_fermion) : "";
        out += ';';
        out += optional_field(v.p_boson);
        out += ';';
        out += optional_field(v.p_fermion);
        out += ';';
        out += optional_field(v.p_dist);
        out += ';';
        out += to_string(v.event_class);
        out += '\n';
    }
    return out;
}

std::vector<EventVerdict> parse_verdict_csv(std::string_view text) {
    auto rows = lines(text);
    expect_header(rows, kVerdictCsvHeader);
    std::vector<EventVerdict> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto f = fields(rows[i], 8, i + 1);
        EventVerdict v;
        v.s = parse_occupation(f[0]);
        v.lambda = parse_phases(f[1]);
        v.law_suppressed_boson = parse_bool(f[2]);
        v.law_suppressed_fermion = parse_optional_bool(f[3]);
        v.p_boson = parse_optional_double(f[4]);
        v.p_fermion = parse_optional_double(f[5]);
        v.p_dist = parse_optional_double(f[6]);
        v.event_class = parse_event_class(f[7]);
        out.push_back(std::move(v));
    }
    return out;
}

std::string robustness_csv(const RobustnessFit &fit) {
    std::string out = kRobustnessCsvHeader;
    out += '\n';
    for (std::size_t k = 0; k < fit.grid.size(); ++k) {
        double predicted = fit.predicted_prefactor * std::pow(fit.grid[k], fit.predicted_exponent);
        out += format_double(fit.grid[k]) + ';' + format_double(fit.mean_delta_p[k]) + ';' +
               format_double(fit.std_error[k]) + ';' + format_double(predicted) + '\n';
    }
    return out;
}

RobustnessFit parse_robustness_csv(std::string_view text) {
    auto rows = lines(text);
    expect_header(rows, kRobustnessCsvHeader);
    RobustnessFit fit;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto f = fields(rows[i], 4, i + 1);
        fit.grid.push_back(parse_double(f[0]));
        fit.mean_delta_p.push_back(parse_double(f[1]));
        fit.std_error.push_back(parse_double(f[2]));
    }
    return fit;
}

json robustness_summary(const RobustnessFit &fit) {
    json j;
    j["predicted_exponent"] = fit.predicted_exponent;
    j["predicted_prefactor"] = fit.predicted_prefactor;
    j["fitted_exponent"] = fit.fitted_exponent ? json(*fit.fitted_exponent) : json(nullptr);
    j["fitted_prefactor"] = fit.fitted_prefactor ? json(*fit.fitted_prefactor) : json(nullptr);
    j["points_used"] = fit.points_used;
    j["mean_p_dist"] = fit.mean_p_dist;
    j["psd_repairs"] = fit.psd_repairs;
    return j;
}

std::string fourier_csv(const FourierComparison &cmp) {
    std::string out = kFourierCsvHeader;
    out += '\n';
    auto emit = [&](const char *stats, const FourierComparisonRow &row) {
        out += stats;
        out += ';' + row.s.to_string() + ';' + format_phases(row.lambda) + ';' + format_bool(row.law_suppressed) + ';';
        out += row.old_law_suppressed ? format_bool(*row.old_law_suppressed) : "";
        out += ';' + format_double(row.probability) + '\n';
    };
    for (const auto &row : cmp.boson_rows) {
        emit("boson", row);
    }
    for (const auto &row : cmp.fermion_rows) {
        emit("fermion", row);
    }
    return out;
}

std::vector<std::pair<ParticleType, FourierComparisonRow>> parse_fourier_csv(std::string_view text) {
    auto rows = lines(text);
    expect_header(rows, kFourierCsvHeader);
    std::vector<std::pair<ParticleType, FourierComparisonRow>> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto f = fields(rows[i], 6, i + 1);
        FourierComparisonRow row;
        row.s = parse_occupation(f[1]);
        row.lambda = parse_phases(f[2]);
        row.law_suppressed = parse_bool(f[3]);
        row.old_law_suppressed = parse_optional_bool(f[4]);
        row.probability = parse_double(f[5]);
        out.emplace_back(parse_particle_type(f[0]), std::move(row));
    }
    return out;
}

json fourier_summary(const FourierComparison &cmp) {
    json j;
    j["n"] = cmp.n;
    j["m"] = cmp.m;
    j["input"] = cmp.input.to_string();
    j["permutation"] = cmp.permutation.to_cycle_string();
    j["eigenvalues"] = format_phases(cmp.eigenvalues);
    j["transpositions"] = cmp.transpositions ? json(*cmp.transpositions) : json(nullptr);
    j["boson_outputs"] = cmp.boson_rows.size();
    j["boson_mismatches"] = cmp.boson_mismatches;
    j["fermion_outputs"] = cmp.fermion_rows.size();
    j["fermion_new_suppressed"] = cmp.fermion_new_suppressed;
    j["fermion_old_suppressed"] = cmp.fermion_old_suppressed;
    j["fermion_old_not_new"] = cmp.fermion_old_not_new;
    std::vector<std::string> witnesses;
    for (const auto &s : cmp.fermion_new_only) {
        witnesses.push_back(s.to_string());
    }
    j["fermion_new_only"] = witnesses;
    j["max_suppressed_probability"] = cmp.max_suppressed_probability;
    return j;
}

json verdict_summary(const VerdictTable &table) {
    json j;
    j["statistics"] = std::string(to_string(table.statistics));
    j["outputs"] = table.rows.size();
    json classes;
    for (auto c : {EventClass::ClassI, EventClass::ClassII, EventClass::ClassIII, EventClass::AllowedIV}) {
        classes[std::string(to_string(c))] = table.count(c);
    }
    j["classes"] = classes;
    j["allowed_probability_sum"] = table.allowed_probability_sum();
    j["soundness_violations"] = table.soundness_violations().size();
    j["unpredicted_interference_zeros"] = table.unpredicted_interference_zeros().size();
    double worst = 0.0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &v = table.rows[i];
        bool law = table.statistics == ParticleType::Fermion ? v.law_suppressed_fermion.value_or(false)
                                                             : v.law_suppressed_boson;
        if (law) {
            worst = std::max(worst, table.max_probability[i]);
        }
    }
    j["max_suppressed_probability"] = worst;
    return j;
}

std::string verdict_svg(const VerdictTable &table, std::string_view title) {
    auto own = [&](const EventVerdict &v) {
        return (table.statistics == ParticleType::Fermion ? v.p_fermion : v.p_boson).value_or(0.0);
    };
    std::vector<std::size_t> order(table.rows.size());
    std::iota(order.begin(), order.end(), 0);
    auto rank = [](EventClass c) {
        switch (c) {
            case EventClass::ClassI:
                return 0;
            case EventClass::ClassII:
                return 1;
            case EventClass::ClassIII:
                return 2;
            case EventClass::AllowedIV:
                return 3;
        }
        return 4;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &va = table.rows[a];
        const auto &vb = table.rows[b];
        if (rank(va.event_class) != rank(vb.event_class)) {
            return rank(va.event_class) < rank(vb.event_class);
        }
        return va.event_class == EventClass::AllowedIV && own(va) < own(vb);
    });

    double top = 0.0;
    for (const auto &v : table.rows) {
        top = std::max({top, own(v), v.p_dist.value_or(0.0)});
    }
    if (top <= 0.0) {
        top = 1.0;
    }
    const double bar = table.rows.size() > 200 ? 1.5 : 6.0;
    const double left = 60.0;
    const double plot_h = 300.0;
    const double base_y = 40.0 + plot_h;
    const double width = left + bar * static_cast<double>(table.rows.size()) + 20.0;
    const double height = base_y + 50.0;

    auto fill = [](EventClass c) {
        switch (c) {
            case EventClass::ClassI:
                return "#9e9e9e";
            case EventClass::ClassII:
                return "#8d6e63";
            case EventClass::ClassIII:
                return "#d62728";
            case EventClass::AllowedIV:
                return "#1f77b4";
        }
        return "#000000";
    };

    std::ostringstream svg;
    char buf[256];
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n",
                  width, height, width, height);
    svg << buf;
    svg << "<title>";
    for (char c : title) {
        switch (c) {
            case '<':
                svg << "&lt;";
                break;
            case '>':
                svg << "&gt;";
                break;
            case '&':
                svg << "&amp;";
                break;
            default:
                svg << c;
        }
    }
    svg << "</title>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left, base_y,
                  width - 10.0, base_y);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"40.0\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left,
                  left, base_y);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"5\" y=\"45\" font-size=\"10\">%.3g</text>\n", top);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"5\" y=\"%.1f\" font-size=\"10\">0</text>\n", base_y);
    svg << buf;

    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto &v = table.rows[order[k]];
        const double x = left + bar * static_cast<double>(k);
        const double h = plot_h * own(v) / top;
        const double hd = plot_h * v.p_dist.value_or(0.0) / top;
        std::snprintf(buf, sizeof buf,
                      "<rect class=\"bar\" data-class=\"%s\" x=\"%.2f\" y=\"%.4f\" width=\"%.2f\" height=\"%.4f\" "
                      "fill=\"%s\"/>\n",
                      std::string(to_string(v.event_class)).c_str(), x, base_y - h, bar, h, fill(v.event_class));
        svg << buf;
        std::snprintf(buf, sizeof buf,
                      "<rect class=\"dist\" x=\"%.2f\" y=\"%.4f\" width=\"%.2f\" height=\"%.4f\" fill=\"#ffbf00\" "
                      "fill-opacity=\"0.5\"/>\n",
                      x, base_y - hd, bar, hd);
        svg << buf;
    }

    const char *labels[] = {"I", "II", "III", "IV"};
    const EventClass classes[] = {EventClass::ClassI, EventClass::ClassII, EventClass::ClassIII, EventClass::AllowedIV};
    double lx = left;
    for (int i = 0; i < 4; ++i) {
        std::snprintf(buf, sizeof buf,
                      "<rect class=\"legend\" x=\"%.1f\" y=\"%.1f\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\">%s (%zu)</text>\n",
                      lx, base_y + 20.0, fill(classes[i]), lx + 14.0, base_y + 29.0, labels[i],
                      table.count(classes[i]));
        svg << buf;
        lx += 70.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::invalid_argument("cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::invalid_argument("failed writing " + path.string());
    }
}

}  // namespace supplaw
