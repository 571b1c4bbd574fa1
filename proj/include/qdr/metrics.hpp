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

#ifndef QDR_METRICS_HPP_INCLUDED
#define QDR_METRICS_HPP_INCLUDED

#include <cstdint>
#include <vector>

#include "qdr/qubo.hpp"

namespace qdr {

/// Permutation of all 2^n assignments sorted by nondecreasing energy.
/// Entry r is the lexicographic index (x_1 most significant) of the
/// assignment at rank r; energy ties keep lexicographic order.
using Ranking = std::vector<std::uint32_t>;

inline constexpr int kRankingLimit = 16;

Ranking induced_ranking(const QuboInstance& q, int limit = kRankingLimit);

/// Normalized Kendall distance between two permutations of the same
/// universe: fraction of discordant pairs, 0 for identical rankings and 1
/// for exact reversal. O(K log K) via inversion counting.
double kendall_tau(const Ranking& a, const Ranking& b);

/// Kendall distance between the value orderings of all n^2 matrix
/// positions of the two instances (positions as items, value rank as
/// score, stable lexicographic tie-break).
double weight_ordering_distance(const QuboInstance& a, const QuboInstance& b);

/// |distinct values of current| / |distinct values of original|.
double unique_weight_ratio(const QuboInstance& current, const QuboInstance& original);

/// Certificate from the rounding-robustness protocol: true when a
/// deterministic minimizer of `rounded` attains the brute-force minimum of
/// `original` (sufficient for optimum inclusion on that minimizer).
bool optimum_correctness(const QuboInstance& rounded, const QuboInstance& original,
                         int limit = kDefaultEnumLimit);

/// |(v_star - v) / v_star|. Throws std::invalid_argument when v_star == 0.
double relative_deviation(double v, double v_star);

namespace detail {
/// Number of inverted pairs in the sequence (merge-sort based).
std::uint64_t count_inversions(std::vector<std::uint32_t> seq);
}  // namespace detail

}  // namespace qdr

#endif  // QDR_METRICS_HPP_INCLUDED
