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

#ifndef QDR_GENERATORS_HPP_INCLUDED
#define QDR_GENERATORS_HPP_INCLUDED

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qdr/qubo.hpp"

namespace qdr {

/// Upper-triangle entries i.i.d. uniform on [-0.5, 0.5].
QuboInstance gen_uniform(int n, std::uint64_t seed);

/// Subset-sum problem with a planted solution: the indices in `planted`
/// sum exactly to `target`.
struct SubsetSumProblem {
    std::vector<long long> values;
    long long target = 0;
    std::vector<int> planted;

    std::string to_json() const;
    static SubsetSumProblem from_json(const std::string& text);
};

/// Penalty encoding Q_ii = a_i^2 - 2 T a_i, Q_ij = 2 a_i a_j, so that
/// f_Q(x) = (sum_i a_i x_i - T)^2 - T^2.
QuboInstance subsetsum_to_qubo(const SubsetSumProblem& p);

/// Element magnitudes |round(10 Z)| with Z standard Cauchy; the planted
/// subset size follows a triangular distribution on [n/5, 4n/5] with mode
/// n/2, clamped to [1, n-1].
SubsetSumProblem gen_subsetsum(int n, std::uint64_t seed);

/// 2D points for binary clustering: two shifted Gaussian clusters of ten
/// points each; with_outliers scales points 1 and 19 by 20.
struct ClusteringDataset {
    std::vector<std::array<double, 2>> points;
    std::vector<int> outlier_indices;

    std::string to_csv() const;
};

struct BinClusteringInstance {
    ClusteringDataset data;
    QuboInstance qubo;
};

/// Two-cluster instance minimizing the total within-cluster pairwise
/// squared distance (linear kernel); the last point is pinned to class 0,
/// leaving 19 variables.
BinClusteringInstance gen_binclustering(std::uint64_t seed, bool with_outliers = true);

}  // namespace qdr

#endif  // QDR_GENERATORS_HPP_INCLUDED
