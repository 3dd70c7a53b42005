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

#include "supplaw/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "supplaw/io.hpp"

namespace supplaw {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UnitaryOptions {
    std::string spec_file;
    std::string permutation;
    std::optional<std::size_t> modes;
    std::string theta;
    std::string sigma;
    std::optional<std::uint64_t> seed;
    std::string column_order;

    void add_to(CLI::App &cmd) {
        cmd.add_option("--spec", spec_file, "Unitary spec JSON file");
        cmd.add_option("--permutation,-p", permutation, "Mode permutation, e.g. \"(1 2 3)(4 5)\" or \"[2,3,1,5,4]\"");
        cmd.add_option("--modes,-n", modes, "Number of modes (pads fixed points)");
        cmd.add_option("--theta", theta, "Comma-separated local phases (radians)");
        cmd.add_option("--sigma", sigma, "Comma-separated output phases (radians)");
        cmd.add_option("--seed", seed, "Seed for rotations inside degenerate eigenspaces");
        cmd.add_option("--column-order", column_order, "Column order of the eigenbasis as a permutation");
    }

    bool given() const { return !spec_file.empty() || !permutation.empty(); }

    UnitarySpec spec() const {
        if (!spec_file.empty() && !permutation.empty()) {
            throw std::invalid_argument("--spec and --permutation are mutually exclusive");
        }
        if (!spec_file.empty()) {
            UnitarySpec s = unitary_spec_from_json(json::parse(read_text_file(spec_file)));
            if (seed) {
                s.rotation_seed = seed;
            }
            return s;
        }
        if (permutation.empty()) {
            throw std::invalid_argument("a unitary needs --spec or --permutation");
        }
        UnitarySpec s;
        s.permutation = Permutation::parse(permutation, modes);
        s.theta_phases = parse_list(theta);
        s.sigma_phases = parse_list(sigma);
        s.rotation_seed = seed;
        if (!column_order.empty()) {
            s.column_order = Permutation::parse(column_order, s.permutation.size());
        }
        s.validate();
        return s;
    }

    static std::vector<double> parse_list(const std::string &text) {
        std::vector<double> out;
        if (text.empty()) {
            return out;
        }
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t at = text.find(',', start);
            if (at == std::string::npos) {
                at = text.size();
            }
            std::string tok = text.substr(start, at - start);
            tok.erase(0, tok.find_first_not_of(' '));
            tok.erase(tok.find_last_not_of(' ') + 1);
            out.push_back(parse_double(tok));
            start = at + 1;
        }
        return out;
    }
};

void emit(std::ostream &out, const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_text_file(path, content);
    }
}

int cmd_decompose(const std::string &text, std::optional<std::size_t> modes, const std::string &input,
                  std::ostream &out) {
    Permutation p = Permutation::parse(text, modes);
    CycleDecomposition cd = cycle_decompose(p);
    EigenStructure es = eigenstructure(p);
    std::vector<std::size_t> lengths;
    for (const auto &c : cd.cycles) {
        lengths.push_back(c.size());
    }
    out << "modes: " << p.size() << "\n";
    out << "cycles: " << cd.to_string() << "\n";
    out << "cycle lengths:";
    for (auto l : lengths) {
        out << ' ' << l;
    }
    out << "\norder: " << cd.order() << "\n";
    out << "eigenvalues: " << format_phases(es.eigenvalues) << "\n";
    out << "eigenvalue multiset: " << EigenvalueDistribution(es.eigenvalues).to_string() << "\n";
    if (!input.empty()) {
        ModeOccupation r = parse_occupation(input);
        require_invariant(p, r);
        out << "input " << r.to_string() << ": invariant\n";
        if (r.is_fermionic()) {
            out << "initial eigenvalue distribution: " << initial_distribution(p, r).to_string() << "\n";
            out << "transpositions: " << transposition_count(p, r) << "\n";
        }
    }
    return kExitOk;
}

int cmd_build(const UnitaryOptions &opts, const std::string &out_path, std::ostream &out) {
    ConstructedUnitary built = build_unitary(opts.spec());
    std::string matrix = to_json(built.u).dump(1) + "\n";
    if (out_path.empty() || out_path == "-") {
        out << matrix;
        return kExitOk;
    }
    write_text_file(out_path, matrix);
    out << "permutation: " << built.spec.permutation.to_cycle_string() << "\n";
    out << "eigenvalues: " << format_phases(built.eigenvalues) << "\n";
    out << "unitary: " << (is_unitary(built.u) ? "yes" : "no") << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", built.symmetry_residual());
    out << "symmetry residual: " << buf << "\n";
    return kExitOk;
}

ExperimentConfig config_from_spec(const UnitarySpec &spec, const ModeOccupation &r) {
    ExperimentConfig cfg;
    cfg.permutation = spec.permutation;
    cfg.input = r;
    cfg.column_order = spec.column_order;
    cfg.theta_phases = spec.theta_phases;
    cfg.sigma_phases = spec.sigma_phases;
    cfg.rotate_bases = spec.rotation_seed.has_value();
    cfg.seed = spec.rotation_seed.value_or(cfg.seed);
    return cfg;
}

std::string class_counts(const VerdictTable &t) {
    std::string s = std::string(to_string(t.statistics)) + ": " + std::to_string(t.rows.size()) + " outputs";
    for (auto c : {EventClass::ClassI, EventClass::ClassII, EventClass::ClassIII, EventClass::AllowedIV}) {
        s += ", " + std::string(to_string(c)) + "=" + std::to_string(t.count(c));
    }
    return s;
}

int cmd_verdicts(const UnitaryOptions &opts, const std::string &input, const std::string &type, std::size_t bases,
                 std::size_t threads, const std::string &out_path, const std::string &svg_path, std::ostream &out,
                 std::ostream &err) {
    ParticleType t = parse_particle_type(type);
    if (t == ParticleType::Distinguishable) {
        throw std::invalid_argument("verdicts --type must be boson or fermion");
    }
    ExperimentConfig cfg = config_from_spec(opts.spec(), parse_occupation(input));
    if (bases > 1) {
        cfg.rotate_bases = true;
    }
    cfg.num_bases = bases;
    cfg.threads = threads;
    cfg.run_boson = true;
    cfg.run_fermion = t == ParticleType::Fermion || cfg.input.is_fermionic();
    if (t == ParticleType::Fermion && !cfg.input.is_fermionic()) {
        throw std::invalid_argument("fermionic verdicts need a singly occupied input, got " + cfg.input.to_string());
    }
    MeanProbabilityResult res = run_mean_probabilities(cfg);
    const VerdictTable &table = t == ParticleType::Fermion ? *res.fermion : *res.boson;
    emit(out, out_path, verdict_csv(table));
    if (!svg_path.empty()) {
        write_text_file(svg_path, verdict_svg(table, class_counts(table)));
    }
    std::ostream &report = (out_path.empty() || out_path == "-") ? err : out;
    report << class_counts(table) << "\n";
    return kExitOk;
}

int cmd_prob(const UnitaryOptions &opts, const std::string &unitary_file, const std::string &input,
             const std::string &output, const std::string &type, const std::string &statistics,
             const std::string &dist_file, std::ostream &out) {
    ComplexMatrix u;
    if (!unitary_file.empty()) {
        if (opts.given()) {
            throw std::invalid_argument("--unitary excludes --spec/--permutation");
        }
        json j = json::parse(read_text_file(unitary_file));
        u = complex_matrix_from_json(j.contains("matrix") ? j["matrix"] : j);
    } else {
        u = build_unitary(opts.spec()).u;
    }
    if (!is_unitary(u, 1e-10)) {
        throw std::invalid_argument("matrix is not unitary to 1e-10");
    }
    ModeOccupation r = parse_occupation(input);
    ModeOccupation s = parse_occupation(output);
    double p = 0.0;
    if (type == "partial") {
        ParticleType stats = parse_particle_type(statistics);
        DistinguishabilityMatrix dist = dist_file.empty()
                                            ? DistinguishabilityMatrix::indistinguishable(u.rows())
                                            : DistinguishabilityMatrix(complex_matrix_from_json(
                                                  json::parse(read_text_file(dist_file))));
        p = prob_partial(u, r, s, dist, stats);
    } else {
        if (!dist_file.empty()) {
            throw std::invalid_argument("--dist-matrix requires --type partial");
        }
        p = transition_probability(parse_particle_type(type), u, r, s);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15f\n", p);
    out << buf;
    return kExitOk;
}

struct ExperimentOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> bases;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> samples;
    std::string type;
};

int cmd_experiment(const std::string &config_file, const std::string &out_dir, const std::string &svg_path,
                   const ExperimentOverrides &ov, std::ostream &out) {
    ExperimentRequest req = experiment_request_from_json(json::parse(read_text_file(config_file)));
    ExperimentConfig &cfg = req.config;
    if (ov.seed) {
        cfg.seed = *ov.seed;
    }
    if (ov.bases) {
        cfg.num_bases = *ov.bases;
    }
    if (ov.threads) {
        cfg.threads = *ov.threads;
    }
    if (ov.samples) {
        cfg.samples = *ov.samples;
    }
    if (req.kind != ExperimentKind::Fourier) {
        cfg.validate();
    }
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    json meta;
    meta["tool"] = "supplaw";
    meta["version"] = kVersion;
    meta["kind"] = std::string(to_string(req.kind));
    meta["config"] = to_json(req);
    meta["seed"] = cfg.seed;
    meta["rng"] = kRngAlgorithm;
    json files = json::array();
    json summary;

    const auto start = std::chrono::steady_clock::now();
    switch (req.kind) {
        case ExperimentKind::MeanProbabilities: {
            MeanProbabilityResult res = run_mean_probabilities(cfg);
            for (const auto *table : {res.boson ? &*res.boson : nullptr, res.fermion ? &*res.fermion : nullptr}) {
                if (!table) {
                    continue;
                }
                std::string name = "verdicts_" + std::string(to_string(table->statistics)) + ".csv";
                write_text_file(dir / name, verdict_csv(*table));
                files.push_back(name);
                summary[std::string(to_string(table->statistics))] = verdict_summary(*table);
                out << class_counts(*table) << "\n";
            }
            summary["num_bases"] = res.num_bases;
            summary["max_symmetry_residual"] = res.max_symmetry_residual;
            if (!svg_path.empty()) {
                const bool fermion = ov.type == "fermion";
                const auto &table = fermion ? res.fermion : res.boson;
                if (!table) {
                    throw std::invalid_argument("--svg: no " + ov.type + " table in this run");
                }
                write_text_file(svg_path, verdict_svg(*table, class_counts(*table)));
            }
            break;
        }
        case ExperimentKind::Fourier: {
            FourierComparison cmp = run_fourier_comparison(cfg.num_modes(), *cfg.fourier_m, cfg.input);
            write_text_file(dir / "fourier.csv", fourier_csv(cmp));
            files.push_back("fourier.csv");
            summary = fourier_summary(cmp);
            out << "bosons: " << cmp.boson_rows.size() << " outputs, law/zero mismatches " << cmp.boson_mismatches
                << "\n";
            if (cmp.transpositions) {
                out << "fermions: " << cmp.fermion_rows.size() << " outputs, suppressed new=" << cmp.fermion_new_suppressed
                    << " old=" << cmp.fermion_old_suppressed << " new-only=" << cmp.fermion_new_only.size() << "\n";
                for (const auto &s : cmp.fermion_new_only) {
                    out << "  witness " << s.to_string() << "\n";
                }
            }
            break;
        }
        case ExperimentKind::UnitaryRobustness:
        case ExperimentKind::DistinguishabilityRobustness: {
            RobustnessFit fit = req.kind == ExperimentKind::UnitaryRobustness ? run_unitary_robustness(cfg)
                                                                              : run_distinguishability_robustness(cfg);
            write_text_file(dir / "robustness.csv", robustness_csv(fit));
            files.push_back("robustness.csv");
            summary = robustness_summary(fit);
            char buf[160];
            std::snprintf(buf, sizeof buf, "exponent: fitted %s, predicted %.1f\nprefactor: fitted %s, predicted %.6g\n",
                          fit.fitted_exponent ? format_double(*fit.fitted_exponent).c_str() : "n/a",
                          fit.predicted_exponent,
                          fit.fitted_prefactor ? format_double(*fit.fitted_prefactor).c_str() : "n/a",
                          fit.predicted_prefactor);
            out << buf;
            break;
        }
    }
    meta["files"] = files;
    meta["summary"] = summary;
    meta["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text_file(dir / "metadata.json", meta.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Suppression laws for totally destructive many-particle interference", "supplaw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto *decompose = app.add_subcommand("decompose", "Cycle structure and eigenvalues of a mode permutation");
    std::string dec_perm;
    std::optional<std::size_t> dec_modes;
    std::string dec_input;
    decompose->add_option("permutation,--permutation,-p", dec_perm, "Cycle or one-line notation")->required();
    decompose->add_option("--modes,-n", dec_modes, "Number of modes (pads fixed points)");
    decompose->add_option("--input-state,-r", dec_input, "Check invariance of this occupation list");

    auto *build = app.add_subcommand("build", "Construct a symmetric unitary U = Theta A Sigma");
    UnitaryOptions build_opts;
    std::string build_out;
    build_opts.add_to(*build);
    build->add_option("--out,-o", build_out, "Write the matrix JSON here (default: stdout)");

    auto *verdicts = app.add_subcommand("verdicts", "Suppression verdicts and probabilities for every output");
    UnitaryOptions ver_opts;
    std::string ver_input;
    std::string ver_type = "boson";
    std::size_t ver_bases = 1;
    std::size_t ver_threads = 0;
    std::string ver_out;
    std::string ver_svg;
    ver_opts.add_to(*verdicts);
    verdicts->add_option("--input-state,-r", ver_input, "Input occupation list, e.g. 1,1,0")->required();
    verdicts->add_option("--type,-t", ver_type, "boson or fermion");
    verdicts->add_option("--bases", ver_bases, "Average over this many random eigenbases");
    verdicts->add_option("--threads", ver_threads, "Worker threads (0: all cores)");
    verdicts->add_option("--out,-o", ver_out, "CSV output path (default: stdout)");
    verdicts->add_option("--svg", ver_svg, "Write a histogram SVG here");

    auto *prob = app.add_subcommand("prob", "One transition probability");
    UnitaryOptions prob_opts;
    std::string prob_unitary;
    std::string prob_input;
    std::string prob_output;
    std::string prob_type = "boson";
    std::string prob_stats = "boson";
    std::string prob_dist;
    prob_opts.add_to(*prob);
    prob->add_option("--unitary,-u", prob_unitary, "Matrix JSON file");
    prob->add_option("--input-state,-r", prob_input, "Input occupation list")->required();
    prob->add_option("--output-state,-s", prob_output, "Output occupation list")->required();
    prob->add_option("--type,-t", prob_type, "boson, fermion, dist or partial");
    prob->add_option("--statistics", prob_stats, "Exchange statistics for --type partial (boson or fermion)");
    prob->add_option("--dist-matrix", prob_dist, "Distinguishability matrix JSON for --type partial");

    auto *experiment = app.add_subcommand("experiment", "Run an experiment described by a JSON config");
    std::string exp_config;
    std::string exp_out;
    std::string exp_svg;
    ExperimentOverrides ov;
    ov.type = "boson";
    experiment->add_option("config,--config,-c", exp_config, "Experiment config JSON")->required();
    experiment->add_option("--out,-o", exp_out, "Output directory")->required();
    experiment->add_option("--svg", exp_svg, "Histogram SVG (mean_probabilities only)");
    experiment->add_option("--type,-t", ov.type, "Table drawn by --svg: boson or fermion");
    experiment->add_option("--seed", ov.seed, "Override the config seed");
    experiment->add_option("--bases", ov.bases, "Override num_bases");
    experiment->add_option("--samples", ov.samples, "Override samples per grid point");
    experiment->add_option("--threads", ov.threads, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decompose) {
            return cmd_decompose(dec_perm, dec_modes, dec_input, out);
        }
        if (*build) {
            return cmd_build(build_opts, build_out, out);
        }
        if (*verdicts) {
            return cmd_verdicts(ver_opts, ver_input, ver_type, ver_bases, ver_threads, ver_out, ver_svg, out, err);
        }
        if (*prob) {
            return cmd_prob(prob_opts, prob_unitary, prob_input, prob_output, prob_type, prob_stats, prob_dist, out);
        }
        if (*experiment) {
            return cmd_experiment(exp_config, exp_out, exp_svg, ov, out);
        }
    } catch (const json::parse_error &e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "invariant failure: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace supplaw
