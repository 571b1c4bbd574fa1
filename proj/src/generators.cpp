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

#include "qdr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qdr/io.hpp"
#include "qdr/rng.hpp"

namespace qdr {

QuboInstance gen_uniform(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_uniform: n must be positive");
    Rng rng(seed);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = rng.uniform() - 0.5;
    return QuboInstance(std::move(m));
}

std::string SubsetSumProblem::to_json() const {
    nlohmann::json doc{{"values", values}, {"target", target}, {"planted", planted}};
    return doc.dump(2);
}

SubsetSumProblem SubsetSumProblem::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid subset-sum JSON: ") + e.what());
    }
    SubsetSumProblem p;
    p.values = doc.at("values").get<std::vector<long long>>();
    p.target = doc.at("target").get<long long>();
    p.planted = doc.at("planted").get<std::vector<int>>();
    return p;
}

QuboInstance subsetsum_to_qubo(const SubsetSumProblem& p) {
    const int n = static_cast<int>(p.values.size());
    if (n < 1) throw std::invalid_argument("subsetsum_to_qubo: need at least one value");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double a = static_cast<double>(p.values[i]);
        m(i, i) = a * a - 2.0 * static_cast<double>(p.target) * a;
        for (int j = i + 1; j < n; ++j) m(i, j) = 2.0 * a * static_cast<double>(p.values[j]);
    }
    return QuboInstance(std::move(m));
}

SubsetSumProblem gen_subsetsum(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_subsetsum: n must be at least 2");
    Rng rng(seed);
    SubsetSumProblem p;
    p.values.reserve(n);
    for (int i = 0; i < n; ++i)
        p.values.push_back(std::llabs(std::llround(round_half_up(10.0 * rng.cauchy()))));

    const double nd = static_cast<double>(n);
    int k = static_cast<int>(round_half_up(rng.triangular(nd / 5.0, nd / 2.0, 4.0 * nd / 5.0)));
    k = std::clamp(k, 1, n - 1);

    std::vector<int> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(indices[i], indices[j]);
    }
    p.planted.assign(indices.begin(), indices.begin() + k);
    std::sort(p.planted.begin(), p.planted.end());
    p.target = 0;
    for (int i : p.planted) p.target += p.values[i];
    return p;
}

std::string ClusteringDataset::to_csv() const {
    std::ostringstream out;
    out << "x,y,outlier\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const bool outlier =
            std::find(outlier_indices.begin(), outlier_indices.end(), static_cast<int>(i)) !=
            outlier_indices.end();
        out << format_double(points[i][0]) << "," << format_double(points[i][1]) << ","
            << (outlier ? 1 : 0) << "\n";
    }
    return out.str();
}

BinClusteringInstance gen_binclustering(std::uint64_t seed, bool with_outliers) {
    constexpr int kPoints = 20;
    Rng rng(seed);
    ClusteringDataset data;
    data.points.resize(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        data.points[i] = {rng.normal(), rng.normal()};
        data.points[i][0] += i < kPoints / 2 ? -4.0 : 4.0;
    }
    if (with_outliers) {
        for (int i : {0, 18}) {  // points 1 and 19, 1-based
            data.points[i][0] *= 20.0;
            data.points[i][1] *= 20.0;
            data.outlier_indices.push_back(i);
        }
    }

    // Minimize the total within-cluster pairwise squared distance: for the
    // membership bits x, same-cluster pairs contribute d_uv, which expands
    // to the quadratic form below; the pinned last point (class 0) only
    // feeds the linear terms.
    const auto sqdist = [&](int u, int v) {
        const double dx = data.points[u][0] - data.points[v][0];
        const double dy = data.points[u][1] - data.points[v][1];
        return dx * dx + dy * dy;
    };
    const int n = kPoints - 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double linear = 0.0;
        for (int u = 0; u < kPoints; ++u)
            if (u != i) linear -= sqdist(i, u);
        m(i, i) = linear;
        for (int j = i + 1; j < n; ++j) m(i, j) = 2.0 * sqdist(i, j);
    }
    return BinClusteringInstance{std::move(data), QuboInstance(std::move(m))};
}

}  // namespace qdr
