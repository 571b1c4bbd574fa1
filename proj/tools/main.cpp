// Copyright 2026 The qdr developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdr/bounds.hpp"
#include "qdr/compress.hpp"
#include "qdr/experiments.hpp"
#include "qdr/generators.hpp"
#include "qdr/io.hpp"
#include "qdr/metrics.hpp"
#include "qdr/qubo.hpp"
#include "qdr/solvers.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitLimit = 3;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw qdr::parse_error("cannot write file: " + path);
    out << content;
}

void emit(const nlohmann::json& doc, const std::string& format) {
    if (format == "csv") {
        std::string header, row;
        for (const auto& [key, value] : doc.items()) {
            if (!header.empty()) {
                header += ",";
                row += ",";
            }
            header += key;
            row += value.is_string() ? value.get<std::string>() : value.dump();
        }
        std::cout << header << "\n" << row << "\n";
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

qdr::Heuristic parse_heuristic(const std::string& name) {
    if (name == "G" || name == "g") return qdr::Heuristic::kG;
    if (name == "G0" || name == "g0") return qdr::Heuristic::kG0;
    if (name == "M" || name == "m") return qdr::Heuristic::kM;
    throw CLI::ValidationError("heuristic must be one of G, G0, M");
}

qdr::Selection parse_selection(const std::string& name) {
    if (name == "random") return qdr::Selection::kRandom;
    if (name == "sequential") return qdr::Selection::kSequential;
    if (name == "greedy") return qdr::Selection::kGreedyImpact;
    throw CLI::ValidationError("selection must be one of random, sequential, greedy");
}

qdr::BoundMethod parse_bound_method(const std::string& name) {
    if (name == "auto") return qdr::BoundMethod::kAuto;
    if (name == "exhaustive") return qdr::BoundMethod::kExhaustive;
    if (name == "heuristic") return qdr::BoundMethod::kHeuristic;
    if (name == "roofdual") return qdr::BoundMethod::kHeuristicRoofDual;
    throw CLI::ValidationError("bound method must be one of auto, exhaustive, heuristic, roofdual");
}

nlohmann::json stats_json(const qdr::QuboInstance& q) {
    const qdr::DiffStats stats = qdr::diff_stats(q);
    return nlohmann::json{{"n", q.size()},
                          {"min_diff", stats.degenerate ? 0.0 : stats.min_diff},
                          {"max_diff", stats.degenerate ? 0.0 : stats.max_diff},
                          {"dr_bits", stats.degenerate ? 0.0 : stats.dr_bits},
                          {"distinct_values", stats.distinct_values.size()},
                          {"degenerate", stats.degenerate}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO dynamic-range toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "seed for all randomized operations");
    app.add_option("--out", out_path, "output path");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    // Declarative experiment manifests: INI/TOML with [exp.rounding]-style
    // sections; command-line flags win over file values.
    app.set_config("--config", "", "configuration file");

    // info ------------------------------------------------------------------
    std::string info_file;
    CLI::App* info = app.add_subcommand("info", "dynamic-range statistics of an instance");
    info->add_option("file", info_file, "instance file")->required();
    info->callback([&] { emit(stats_json(qdr::read_qubo_file(info_file)), format); });

    // solve -----------------------------------------------------------------
    std::string solve_file;
    int solve_limit = qdr::kDefaultEnumLimit;
    int solve_max_print = 16;
    CLI::App* solve = app.add_subcommand("solve", "exact minimization by enumeration");
    solve->add_option("file", solve_file, "instance file")->required();
    solve->add_option("--limit", solve_limit, "enumeration limit (variables)");
    solve->add_option("--max-print", solve_max_print, "maximum minimizers to print");
    solve->callback([&] {
        const qdr::QuboInstance q = qdr::read_qubo_file(solve_file);
        const qdr::SolveResult result = qdr::brute_force_minima(q, solve_limit);
        nlohmann::json minimizers = nlohmann::json::array();
        for (std::size_t i = 0; i < result.minimizers.size() &&
                                i < static_cast<std::size_t>(solve_max_print); ++i)
            minimizers.push_back(qdr::bits_to_string(result.minimizers[i], q.size()));
        emit(nlohmann::json{{"n", q.size()},
                            {"min_value", result.min_value},
                            {"num_minimizers", result.minimizers.size()},
                            {"minimizers", minimizers}},
             format);
    });

    // spectral-gap ------------------------------------------------------------
    std::string gap_file;
    int gap_limit = qdr::kDefaultEnumLimit;
    CLI::App* gap = app.add_subcommand("spectral-gap", "spectral gap and safe scaling factor");
    gap->add_option("file", gap_file, "instance file")->required();
    gap->add_option("--limit", gap_limit, "enumeration limit (variables)");
    gap->callback([&] {
        const qdr::SpectralGapResult result =
            qdr::spectral_gap(qdr::read_qubo_file(gap_file), gap_limit);
        emit(nlohmann::json{{"y1", result.y1},
                            {"y2", result.y2},
                            {"gamma", result.gamma},
                            {"alpha_star", result.alpha_star}},
             format);
    });

    // compress ----------------------------------------------------------------
    std::string compress_file, compress_trace;
    std::string compress_heuristic = "G0", compress_selection = "random",
                compress_bounds = "auto";
    int compress_iterations = 1000;
    CLI::App* cmd_compress = app.add_subcommand("compress", "reduce the dynamic range");
    cmd_compress->add_option("file", compress_file, "instance file")->required();
    cmd_compress->add_option("-H,--heuristic", compress_heuristic, "G, G0, or M");
    cmd_compress->add_option("--selection", compress_selection, "random, sequential, or greedy");
    cmd_compress->add_option("--iterations", compress_iterations, "iteration budget")
        ->check(CLI::PositiveNumber);
    cmd_compress->add_option("--bound-method", compress_bounds,
                             "auto, exhaustive, heuristic, or roofdual");
    cmd_compress->add_option("--trace", compress_trace, "trace output path");
    cmd_compress->callback([&] {
        const qdr::QuboInstance q = qdr::read_qubo_file(compress_file);
        qdr::CompressionConfig config;
        config.heuristic = parse_heuristic(compress_heuristic);
        config.selection = parse_selection(compress_selection);
        config.bound_method = parse_bound_method(compress_bounds);
        config.max_iterations = compress_iterations;
        config.rng_seed = seed;
        const qdr::CompressionResult result = qdr::compress(q, config);
        if (!out_path.empty()) qdr::write_qubo_file(out_path, result.instance);
        if (!compress_trace.empty())
            write_text_file(compress_trace, format == "csv" ? result.trace.to_csv()
                                                            : result.trace.to_json_lines());
        emit(nlohmann::json{{"initial_dr", result.trace.initial_dr},
                            {"final_dr", result.trace.final_dr},
                            {"applied", result.trace.applied_count},
                            {"skipped", result.trace.skipped_count}},
             "json");
    });

    // gen ----------------------------------------------------------------------
    CLI::App* gen = app.add_subcommand("gen", "generate problem instances");
    gen->require_subcommand(1);

    int gen_n = 10;
    CLI::App* gen_uniform_cmd = gen->add_subcommand("uniform", "uniform random instance");
    gen_uniform_cmd->add_option("-n", gen_n, "dimension")->check(CLI::PositiveNumber);
    gen_uniform_cmd->callback([&] {
        const qdr::QuboInstance q = qdr::gen_uniform(gen_n, seed);
        if (!out_path.empty()) qdr::write_qubo_file(out_path, q);
        emit(stats_json(q), "json");
    });

    int gen_ss_n = 14;
    std::string gen_ss_problem_out;
    CLI::App* gen_ss = gen->add_subcommand("subsetsum", "planted subset-sum instance");
    gen_ss->add_option("-n", gen_ss_n, "number of elements")->check(CLI::PositiveNumber);
    gen_ss->add_option("--problem-out", gen_ss_problem_out, "subset-sum problem JSON path");
    gen_ss->callback([&] {
        const qdr::SubsetSumProblem p = qdr::gen_subsetsum(gen_ss_n, seed);
        const qdr::QuboInstance q = qdr::subsetsum_to_qubo(p);
        if (!out_path.empty()) qdr::write_qubo_file(out_path, q);
        if (!gen_ss_problem_out.empty()) write_text_file(gen_ss_problem_out, p.to_json() + "\n");
        nlohmann::json doc = stats_json(q);
        doc["target"] = p.target;
        emit(doc, "json");
    });

    std::string gen_bc_data_out;
    bool gen_bc_no_outliers = false;
    CLI::App* gen_bc = gen->add_subcommand("binclust", "binary clustering instance (19 variables)");
    gen_bc->add_option("--data-out", gen_bc_data_out, "dataset CSV path");
    gen_bc->add_flag("--no-outliers", gen_bc_no_outliers, "skip the x20 outlier scaling");
    gen_bc->callback([&] {
        const qdr::BinClusteringInstance inst = qdr::gen_binclustering(seed, !gen_bc_no_outliers);
        if (!out_path.empty()) qdr::write_qubo_file(out_path, inst.qubo);
        if (!gen_bc_data_out.empty()) write_text_file(gen_bc_data_out, inst.data.to_csv());
        emit(stats_json(inst.qubo), "json");
    });

    // metrics --------------------------------------------------------------------
    std::string metrics_a, metrics_b;
    int metrics_limit = qdr::kDefaultEnumLimit;
    CLI::App* metrics = app.add_subcommand("metrics", "comparison metrics between two instances");
    metrics->add_option("current", metrics_a, "instance file")->required();
    metrics->add_option("original", metrics_b, "reference instance file")->required();
    metrics->add_option("--limit", metrics_limit, "enumeration limit (variables)");
    metrics->callback([&] {
        const qdr::QuboInstance a = qdr::read_qubo_file(metrics_a);
        const qdr::QuboInstance b = qdr::read_qubo_file(metrics_b);
        nlohmann::json doc{{"weight_ordering_distance", qdr::weight_ordering_distance(a, b)},
                           {"unique_weight_ratio", qdr::unique_weight_ratio(a, b)}};
        if (a.size() <= qdr::kRankingLimit)
            doc["ranking_distance"] =
                qdr::kendall_tau(qdr::induced_ranking(a), qdr::induced_ranking(b));
        if (a.size() <= metrics_limit && a.size() <= qdr::kMaxEnumBits)
            doc["optimum_correctness"] = qdr::optimum_correctness(a, b, metrics_limit);
        emit(doc, format);
    });

    // exp ---------------------------------------------------------------------
    CLI::App* exp = app.add_subcommand("exp", "experiment pipelines");
    exp->require_subcommand(1);

    qdr::RoundingExperimentConfig rounding_config;
    CLI::App* exp_rounding = exp->add_subcommand("rounding", "rounding robustness by DR bin");
    exp_rounding->add_option("-n", rounding_config.n, "subset-sum size");
    exp_rounding->add_option("--instances", rounding_config.instances, "instance count");
    exp_rounding->add_option("--bins", rounding_config.bins, "number of DR bins");
    exp_rounding->add_option("--bits-min", rounding_config.bits_min, "smallest bit width");
    exp_rounding->add_option("--bits-max", rounding_config.bits_max, "largest bit width");
    exp_rounding->callback([&] {
        rounding_config.seed = seed;
        const qdr::RoundingExperimentResult result = qdr::run_rounding_experiment(rounding_config);
        if (!out_path.empty())
            write_text_file(out_path, result.to_csv());
        else
            std::cout << result.to_csv();
    });

    qdr::CompressExperimentConfig compress_exp_config;
    std::vector<std::string> exp_heuristics{"G", "G0", "M"};
    std::vector<std::string> exp_selections{"random", "greedy"};
    CLI::App* exp_compress = exp->add_subcommand("compress", "compression trajectory metrics");
    exp_compress->add_option("--sizes", compress_exp_config.sizes, "instance sizes");
    exp_compress->add_option("--instances", compress_exp_config.instances, "instances per size");
    exp_compress->add_option("--iterations", compress_exp_config.iterations, "iterations per run");
    exp_compress->add_option("--heuristics", exp_heuristics, "heuristics to run");
    exp_compress->add_option("--selections", exp_selections, "selection strategies to run");
    exp_compress->callback([&] {
        compress_exp_config.seed = seed;
        compress_exp_config.heuristics.clear();
        for (const auto& h : exp_heuristics)
            compress_exp_config.heuristics.push_back(parse_heuristic(h));
        compress_exp_config.selections.clear();
        for (const auto& s : exp_selections)
            compress_exp_config.selections.push_back(parse_selection(s));
        const qdr::CompressExperimentResult result =
            qdr::run_compress_experiment(compress_exp_config);
        if (!out_path.empty())
            write_text_file(out_path, result.to_csv());
        else
            std::cout << result.to_csv();
    });

    qdr::NoiseExperimentConfig noise_config;
    std::string noise_family = "subsetsum";
    std::uint64_t noise_seed = 1;
    CLI::App* exp_noise = exp->add_subcommand("noise", "annealing under parameter noise");
    exp_noise->add_option("--family", noise_family, "subsetsum or binclust");
    exp_noise->add_option("-n", noise_config.n, "subset-sum size");
    exp_noise->add_option("--sigma", noise_config.sigma, "noise level relative to maxD");
    exp_noise->add_option("--reads", noise_config.reads, "annealing reads per instance");
    exp_noise->add_option("--sweeps", noise_config.sa_sweeps, "annealing sweeps per read");
    exp_noise->add_option("--iterations", noise_config.compress_iterations,
                          "compression iterations");
    exp_noise->add_option("--noise-seed", noise_seed, "seed for the noise draw");
    exp_noise->callback([&] {
        if (noise_family == "subsetsum")
            noise_config.family = qdr::ProblemFamily::kSubsetSum;
        else if (noise_family == "binclust")
            noise_config.family = qdr::ProblemFamily::kBinClustering;
        else
            throw CLI::ValidationError("family must be subsetsum or binclust");
        noise_config.seed = seed;
        noise_config.noise_seed = noise_seed;
        const qdr::NoisePreparation prep = qdr::prepare_noise_experiment(noise_config);
        const qdr::NoiseTrialResult trial = qdr::run_noise_trial(prep, noise_config);
        if (!out_path.empty())
            write_text_file(out_path, trial.to_csv(prep));
        else
            std::cout << trial.to_csv(prep);
        emit(nlohmann::json{{"dr_original", prep.dr_original},
                            {"dr_compressed", prep.dr_compressed},
                            {"zero_deviation_original", trial.original_zero_dev},
                            {"zero_deviation_compressed", trial.compressed_zero_dev}},
             "json");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const qdr::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const qdr::limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
