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

#ifndef QDR_EXPERIMENTS_HPP_INCLUDED
#define QDR_EXPERIMENTS_HPP_INCLUDED

#include <cstdint>
#include <string>
#include <vector>

#include "qdr/compress.hpp"
#include "qdr/qubo.hpp"
#include "qdr/solvers.hpp"

namespace qdr {

// ---------------------------------------------------------------------------
// Rounding robustness: subset-sum instances binned by dynamic range, scaled
// and rounded to b-bit signed integer coefficients, scored by whether a
// minimizer of the rounded instance still attains the original optimum.

struct RoundingExperimentConfig {
    int n = 10;
    int instances = 2000;
    int bins = 5;
    int bits_min = 1;
    int bits_max = 14;
    std::uint64_t seed = 1;
    int enum_limit = kDefaultEnumLimit;
};

struct RoundingExperimentResult {
    RoundingExperimentConfig config;
    std::vector<double> bin_edges;             // bins + 1 quantile edges
    std::vector<std::vector<int>> correct;     // [bin][bit index]
    std::vector<int> bin_counts;               // instances per bin

    double rate(int bin, int bit_index) const {
        return static_cast<double>(correct[bin][bit_index]) / bin_counts[bin];
    }
    std::string to_csv() const;
};

/// Scales so the largest coefficient magnitude occupies the signed b-bit
/// integer range, then rounds. b == 1 collapses to the zero instance.
QuboInstance quantize_to_bits(const QuboInstance& q, int bits);

RoundingExperimentResult run_rounding_experiment(const RoundingExperimentConfig& config);

// ---------------------------------------------------------------------------
// Compression trajectories on uniform random instances: per-iteration DR
// ratio, weight-ordering distance and unique-weight ratio against the
// original, plus induced-ranking Kendall distance at checkpoints.

struct CompressExperimentConfig {
    std::vector<int> sizes{4, 8, 12};
    int instances = 100;
    int iterations = 200;
    std::vector<Heuristic> heuristics{Heuristic::kG, Heuristic::kG0, Heuristic::kM};
    std::vector<Selection> selections{Selection::kRandom, Selection::kGreedyImpact};
    BoundMethod bound_method = BoundMethod::kAuto;
    std::uint64_t seed = 1;
    int ranking_checkpoints = 25;  // induced-ranking metric cadence
};

struct TrajectoryStat {
    double mean = 0.0;
    double ci95 = 0.0;
};

struct CompressTrajectory {
    int n = 0;
    Heuristic heuristic = Heuristic::kG;
    Selection selection = Selection::kRandom;
    std::vector<TrajectoryStat> dr_ratio;          // per iteration
    std::vector<TrajectoryStat> weight_ordering;   // per iteration
    std::vector<TrajectoryStat> unique_ratio;      // per iteration
    std::vector<int> ranking_iterations;           // checkpoint iterations
    std::vector<TrajectoryStat> ranking_distance;  // per checkpoint (n <= 16)
};

struct CompressExperimentResult {
    CompressExperimentConfig config;
    std::vector<CompressTrajectory> trajectories;

    std::string to_csv() const;
};

CompressExperimentResult run_compress_experiment(const CompressExperimentConfig& config);

// ---------------------------------------------------------------------------
// Noise robustness: simulated annealing on ICE-perturbed original vs
// compressed instances, scored by relative deviation from each instance's
// own ground-truth minimum.

enum class ProblemFamily { kSubsetSum, kBinClustering };

struct NoiseExperimentConfig {
    ProblemFamily family = ProblemFamily::kSubsetSum;
    int n = 14;  // subset-sum only; clustering is fixed at 19 variables
    double sigma = 0.02;
    int reads = 500;
    int sa_sweeps = 1000;
    int compress_iterations = 150;
    Heuristic heuristic = Heuristic::kG0;
    Selection selection = Selection::kGreedyImpact;
    BoundMethod bound_method = BoundMethod::kHeuristicRoofDual;
    std::uint64_t seed = 1;
    std::uint64_t noise_seed = 1;
    int enum_limit = kDefaultEnumLimit;
    /// The sampler stops cooling at this multiple of the injected noise
    /// scale; annealing below the distortion temperature only locks the
    /// chain into noise artifacts.
    double freezeout_noise_factor = 1.5;
};

/// Instance pair shared by all noise trials (compression is deterministic,
/// so it runs once).
struct NoisePreparation {
    QuboInstance original;
    QuboInstance compressed;
    double v_star_original = 0.0;
    double v_star_compressed = 0.0;
    double dr_original = 0.0;
    double dr_compressed = 0.0;
};

struct NoiseTrialResult {
    SampleSet original_samples;
    SampleSet compressed_samples;
    int original_zero_dev = 0;    // samples attaining the original optimum
    int compressed_zero_dev = 0;  // ditto for the compressed instance

    /// 2 * reads rows: variant,rank,energy,relative_deviation,bitstring.
    std::string to_csv(const NoisePreparation& prep) const;
};

NoisePreparation prepare_noise_experiment(const NoiseExperimentConfig& config);
NoiseTrialResult run_noise_trial(const NoisePreparation& prep, const NoiseExperimentConfig& config);

std::string to_string(ProblemFamily family);

}  // namespace qdr

#endif  // QDR_EXPERIMENTS_HPP_INCLUDED
