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

#include "qdr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qdr/generators.hpp"
#include "qdr/io.hpp"
#include "qdr/metrics.hpp"
#include "qdr/rng.hpp"

namespace qdr {

namespace {

TrajectoryStat summarize(const std::vector<double>& samples) {
    TrajectoryStat stat;
    if (samples.empty()) return stat;
    stat.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - stat.mean) * (v - stat.mean);
        const double sd = std::sqrt(ss / (samples.size() - 1));
        stat.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(samples.size()));
    }
    return stat;
}

}  // namespace

QuboInstance quantize_to_bits(const QuboInstance& q, int bits) {
    if (bits < 1) throw std::invalid_argument("quantize_to_bits: bits must be >= 1");
    const double max_abs = q.max_abs_coeff();
    const double alpha = (std::pow(2.0, bits - 1) - 1.0) / std::max(max_abs, 1e-300);
    if (alpha <= 0.0 || max_abs == 0.0) return QuboInstance::zero(q.size());
    return round_entries(scale(q, alpha));
}

RoundingExperimentResult run_rounding_experiment(const RoundingExperimentConfig& config) {
    if (config.instances < config.bins)
        throw std::invalid_argument("rounding experiment: need at least one instance per bin");
    if (config.bins < 1 || config.bits_min < 1 || config.bits_max < config.bits_min)
        throw std::invalid_argument("rounding experiment: invalid bin/bit configuration");

    RoundingExperimentResult result;
    result.config = config;
    const int bit_count = config.bits_max - config.bits_min + 1;

    std::vector<QuboInstance> instances;
    std::vector<double> drs;
    instances.reserve(config.instances);
    for (int i = 0; i < config.instances; ++i) {
        const SubsetSumProblem p = gen_subsetsum(config.n, mix_seed(config.seed, i));
        instances.push_back(subsetsum_to_qubo(p));
        const DiffStats stats = diff_stats(instances.back());
        drs.push_back(stats.degenerate ? 0.0 : stats.dr_bits);
    }

    // Quantile bins over the empirical DR distribution; rank-based
    // assignment keeps the bins an exact partition under ties.
    std::vector<int> order(config.instances);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return drs[a] < drs[b]; });
    std::vector<int> bin_of(config.instances, 0);
    for (int r = 0; r < config.instances; ++r)
        bin_of[order[r]] = std::min(config.bins - 1,
                                    static_cast<int>(static_cast<long long>(r) * config.bins /
                                                     config.instances));
    for (int e = 0; e <= config.bins; ++e) {
        const int idx = std::min(config.instances - 1,
                                 static_cast<int>(static_cast<long long>(e) *
                                                  (config.instances - 1) / config.bins));
        result.bin_edges.push_back(drs[order[idx]]);
    }

    result.correct.assign(config.bins, std::vector<int>(bit_count, 0));
    result.bin_counts.assign(config.bins, 0);
    for (int i = 0; i < config.instances; ++i) {
        const QuboInstance& q = instances[i];
        const int bin = bin_of[i];
        ++result.bin_counts[bin];
        const double v_star = brute_force_minima(q, config.enum_limit).min_value;
        const double tol = energy_tie_tolerance(v_star);
        for (int b = 0; b < bit_count; ++b) {
            const QuboInstance rounded = quantize_to_bits(q, config.bits_min + b);
            const Bits witness = brute_force_minima(rounded, config.enum_limit).minimizers.front();
            if (std::abs(energy(q, witness) - v_star) <= tol) ++result.correct[bin][b];
        }
    }
    for (int bin = 0; bin < config.bins; ++bin)
        if (result.bin_counts[bin] == 0)
            throw std::runtime_error("rounding experiment: empty DR bin");
    return result;
}

std::string RoundingExperimentResult::to_csv() const {
    std::ostringstream out;
    out << "# schema: qdr.exp_rounding.v1\n";
    out << "# bin_edges:";
    for (double e : bin_edges) out << " " << format_double(e);
    out << "\n";
    out << "bin,bits,instances,correct,rate\n";
    for (std::size_t bin = 0; bin < correct.size(); ++bin)
        for (std::size_t b = 0; b < correct[bin].size(); ++b)
            out << bin + 1 << "," << config.bits_min + static_cast<int>(b) << ","
                << bin_counts[bin] << "," << correct[bin][b] << ","
                << format_double(rate(static_cast<int>(bin), static_cast<int>(b))) << "\n";
    return out.str();
}

CompressExperimentResult run_compress_experiment(const CompressExperimentConfig& config) {
    if (config.instances < 1 || config.iterations < 1)
        throw std::invalid_argument("compress experiment: invalid configuration");
    CompressExperimentResult result;
    result.config = config;

    const int stride = std::max(1, config.iterations / std::max(1, config.ranking_checkpoints));
    for (int n : config.sizes) {
        for (Heuristic heuristic : config.heuristics) {
            for (Selection selection : config.selections) {
                CompressTrajectory traj;
                traj.n = n;
                traj.heuristic = heuristic;
                traj.selection = selection;
                for (int it = stride - 1; it < config.iterations; it += stride)
                    traj.ranking_iterations.push_back(it);

                std::vector<std::vector<double>> dr(config.iterations);
                std::vector<std::vector<double>> wod(config.iterations);
                std::vector<std::vector<double>> uwr(config.iterations);
                std::vector<std::vector<double>> rank_d(traj.ranking_iterations.size());

                for (int inst = 0; inst < config.instances; ++inst) {
                    const QuboInstance original = gen_uniform(n, mix_seed(config.seed, inst));
                    const DiffStats s0 = diff_stats(original);
                    const double dr0 = s0.degenerate ? 1.0 : s0.dr_bits;
                    Ranking ranking0;
                    if (n <= kRankingLimit) ranking0 = induced_ranking(original);

                    CompressionConfig cc;
                    cc.heuristic = heuristic;
                    cc.selection = selection;
                    cc.max_iterations = config.iterations;
                    cc.bound_method = config.bound_method;
                    cc.rng_seed = mix_seed(config.seed, inst);
                    const CompressionResult run = compress(original, cc);

                    // Replay the trace to materialize each iteration's state.
                    QuboInstance current = original;
                    std::size_t record = 0;
                    std::size_t checkpoint = 0;
                    for (int it = 0; it < config.iterations; ++it) {
                        if (record < run.trace.records.size() &&
                            run.trace.records[record].iteration == it) {
                            const TraceRecord& r = run.trace.records[record];
                            if (!r.skipped) current.set_coeff(r.k, r.l, r.value_after);
                            ++record;
                        }
                        const DiffStats s = diff_stats(current);
                        dr[it].push_back((s.degenerate ? 0.0 : s.dr_bits) / dr0);
                        wod[it].push_back(weight_ordering_distance(current, original));
                        uwr[it].push_back(unique_weight_ratio(current, original));
                        if (checkpoint < traj.ranking_iterations.size() &&
                            traj.ranking_iterations[checkpoint] == it) {
                            if (n <= kRankingLimit)
                                rank_d[checkpoint].push_back(
                                    kendall_tau(ranking0, induced_ranking(current)));
                            ++checkpoint;
                        }
                    }
                }
                for (int it = 0; it < config.iterations; ++it) {
                    traj.dr_ratio.push_back(summarize(dr[it]));
                    traj.weight_ordering.push_back(summarize(wod[it]));
                    traj.unique_ratio.push_back(summarize(uwr[it]));
                }
                for (const auto& samples : rank_d) traj.ranking_distance.push_back(summarize(samples));
                result.trajectories.push_back(std::move(traj));
            }
        }
    }
    return result;
}

std::string CompressExperimentResult::to_csv() const {
    std::ostringstream out;
    out << "# schema: qdr.exp_compress.v1\n";
    out << "n,heuristic,selection,iteration,dr_ratio_mean,dr_ratio_ci95,"
           "weight_ordering_mean,weight_ordering_ci95,unique_ratio_mean,unique_ratio_ci95,"
           "ranking_distance_mean,ranking_distance_ci95\n";
    for (const CompressTrajectory& traj : trajectories) {
        std::size_t checkpoint = 0;
        for (std::size_t it = 0; it < traj.dr_ratio.size(); ++it) {
            out << traj.n << "," << to_string(traj.heuristic) << "," << to_string(traj.selection)
                << "," << it << "," << format_double(traj.dr_ratio[it].mean) << ","
                << format_double(traj.dr_ratio[it].ci95) << ","
                << format_double(traj.weight_ordering[it].mean) << ","
                << format_double(traj.weight_ordering[it].ci95) << ","
                << format_double(traj.unique_ratio[it].mean) << ","
                << format_double(traj.unique_ratio[it].ci95);
            if (checkpoint < traj.ranking_iterations.size() &&
                traj.ranking_iterations[checkpoint] == static_cast<int>(it)) {
                out << "," << format_double(traj.ranking_distance[checkpoint].mean) << ","
                    << format_double(traj.ranking_distance[checkpoint].ci95);
                ++checkpoint;
            } else {
                out << ",,";
            }
            out << "\n";
        }
    }
    return out.str();
}

NoisePreparation prepare_noise_experiment(const NoiseExperimentConfig& config) {
    QuboInstance original = [&] {
        if (config.family == ProblemFamily::kSubsetSum)
            return subsetsum_to_qubo(gen_subsetsum(config.n, config.seed));
        return gen_binclustering(config.seed).qubo;
    }();

    CompressionConfig cc;
    cc.heuristic = config.heuristic;
    cc.selection = config.selection;
    cc.max_iterations = config.compress_iterations;
    cc.bound_method = config.bound_method;
    cc.rng_seed = mix_seed(config.seed, 0xc0);
    cc.enum_limit = config.enum_limit;
    QuboInstance compressed = compress(original, cc).instance;

    NoisePreparation prep{std::move(original), std::move(compressed)};
    prep.v_star_original = brute_force_minima(prep.original, config.enum_limit).min_value;
    prep.v_star_compressed = brute_force_minima(prep.compressed, config.enum_limit).min_value;
    const DiffStats so = diff_stats(prep.original);
    const DiffStats sc = diff_stats(prep.compressed);
    prep.dr_original = so.degenerate ? 0.0 : so.dr_bits;
    prep.dr_compressed = sc.degenerate ? 0.0 : sc.dr_bits;
    return prep;
}

NoiseTrialResult run_noise_trial(const NoisePreparation& prep,
                                 const NoiseExperimentConfig& config) {
    NoiseTrialResult trial;
    const auto run_variant = [&](const QuboInstance& instance, double v_star,
                                 std::uint64_t stream) {
        const QuboInstance noisy =
            ice_perturb(instance, config.sigma, mix_seed(config.noise_seed, stream));
        AnnealSchedule schedule = default_schedule(noisy, config.reads);
        schedule.sweeps = config.sa_sweeps;
        const DiffStats noisy_stats = diff_stats(noisy);
        if (!noisy_stats.degenerate)
            schedule.final_temperature =
                std::max(schedule.final_temperature,
                         config.freezeout_noise_factor * config.sigma * noisy_stats.max_diff);
        SampleSet sampled = simulated_annealing(noisy, schedule, mix_seed(config.noise_seed, stream + 1));
        // Energies are reported against the clean instance; the noise only
        // steers the sampler.
        for (Sample& s : sampled.samples) s.energy = energy(instance, s.x);
        std::sort(sampled.samples.begin(), sampled.samples.end(),
                  [](const Sample& a, const Sample& b) {
                      if (a.energy != b.energy) return a.energy < b.energy;
                      return a.x < b.x;
                  });
        int zero_dev = 0;
        const double tol = energy_tie_tolerance(v_star);
        for (const Sample& s : sampled.samples)
            if (std::abs(s.energy - v_star) <= tol) ++zero_dev;
        return std::pair{std::move(sampled), zero_dev};
    };

    auto [original_samples, original_zero] = run_variant(prep.original, prep.v_star_original, 2);
    auto [compressed_samples, compressed_zero] =
        run_variant(prep.compressed, prep.v_star_compressed, 4);
    trial.original_samples = std::move(original_samples);
    trial.compressed_samples = std::move(compressed_samples);
    trial.original_zero_dev = original_zero;
    trial.compressed_zero_dev = compressed_zero;
    return trial;
}

std::string NoiseTrialResult::to_csv(const NoisePreparation& prep) const {
    std::ostringstream out;
    out << "# schema: qdr.exp_noise.v1\n";
    out << "variant,rank,energy,relative_deviation,bitstring\n";
    const auto emit = [&](const char* variant, const SampleSet& set, double v_star) {
        for (std::size_t r = 0; r < set.samples.size(); ++r) {
            const Sample& s = set.samples[r];
            out << variant << "," << r << "," << format_double(s.energy) << ","
                << format_double(v_star == 0.0 ? 0.0 : relative_deviation(s.energy, v_star))
                << ",";
            for (std::uint8_t b : s.x) out << (b ? '1' : '0');
            out << "\n";
        }
    };
    emit("original", original_samples, prep.v_star_original);
    emit("compressed", compressed_samples, prep.v_star_compressed);
    return out.str();
}

std::string to_string(ProblemFamily family) {
    return family == ProblemFamily::kSubsetSum ? "subsetsum" : "binclust";
}

}  // namespace qdr
