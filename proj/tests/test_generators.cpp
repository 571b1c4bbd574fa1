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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qdr/generators.hpp"
#include "qdr/rng.hpp"

using namespace qdr;

TEST_CASE("uniform generator") {
    const QuboInstance q = gen_uniform(8, 5);
    for (int i = 0; i < 8; ++i)
        for (int j = i; j < 8; ++j) {
            CHECK(q.coeff(i, j) >= -0.5);
            CHECK(q.coeff(i, j) <= 0.5);
        }
    CHECK(gen_uniform(8, 5).coeffs() == q.coeffs());
    CHECK(gen_uniform(8, 6).coeffs() != q.coeffs());

    // Entries average out near zero.
    double sum = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const QuboInstance r = gen_uniform(15, 9000 + seed);
        for (int i = 0; i < 15; ++i)
            for (int j = i; j < 15; ++j) {
                sum += r.coeff(i, j);
                ++count;
            }
    }
    CHECK(count > 100000 / 10);
    CHECK(std::abs(sum / count) < 0.01);
}

TEST_CASE("subset-sum encoding") {
    SUBCASE("hand-checked 2-element problem") {
        SubsetSumProblem p;
        p.values = {3, 5};
        p.target = 8;
        p.planted = {0, 1};
        const QuboInstance q = subsetsum_to_qubo(p);
        CHECK(q.coeff(0, 0) == -39.0);  // 9 - 48
        CHECK(q.coeff(1, 1) == -55.0);  // 25 - 80
        CHECK(q.coeff(0, 1) == 30.0);
        CHECK(energy(q, qdr::testing::bits({1, 1})) == -64.0);
    }
    SUBCASE("all-zero values give the zero matrix") {
        SubsetSumProblem p;
        p.values = {0, 0, 0};
        p.target = 0;
        CHECK(subsetsum_to_qubo(p).coeffs().isZero());
    }
    SUBCASE("energy identity (sum - T)^2 - T^2") {
        Rng rng(4);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SubsetSumProblem p = gen_subsetsum(10, 2000 + seed);
            const QuboInstance q = subsetsum_to_qubo(p);
            for (int trial = 0; trial < 10; ++trial) {
                BitVector x(10);
                long long sum = 0;
                for (int i = 0; i < 10; ++i) {
                    x[i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
                    if (x[i]) sum += p.values[i];
                }
                const double expected = static_cast<double>((sum - p.target) * (sum - p.target) -
                                                            p.target * p.target);
                CHECK(energy(q, x) == expected);
            }
        }
    }
}

TEST_CASE("subset-sum generator") {
    SUBCASE("planted subset is consistent and bounded") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const int n = 12;
            const SubsetSumProblem p = gen_subsetsum(n, seed);
            CHECK(static_cast<int>(p.values.size()) == n);
            long long sum = 0;
            for (int i : p.planted) {
                CHECK(i >= 0);
                CHECK(i < n);
                sum += p.values[i];
            }
            CHECK(sum == p.target);
            const int k = static_cast<int>(p.planted.size());
            CHECK(k >= 1);
            CHECK(k <= n - 1);
            // Triangular support [n/5, 4n/5] plus rounding slack.
            CHECK(k >= static_cast<int>(std::ceil(n / 5.0)) - 1);
            CHECK(k <= static_cast<int>(std::floor(4.0 * n / 5.0)) + 1);
        }
    }
    SUBCASE("reproducible") {
        const SubsetSumProblem a = gen_subsetsum(14, 77);
        const SubsetSumProblem b = gen_subsetsum(14, 77);
        CHECK(a.values == b.values);
        CHECK(a.planted == b.planted);
        CHECK(a.target == b.target);
    }
    SUBCASE("planted vector is a global minimizer") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SubsetSumProblem p = gen_subsetsum(12, 3000 + seed);
            const QuboInstance q = subsetsum_to_qubo(p);
            Bits planted = 0;
            for (int i : p.planted) planted |= Bits{1} << i;
            const SolveResult result = brute_force_minima(q);
            const double planted_energy = energy(q, planted);
            CHECK(planted_energy ==
                  static_cast<double>(-p.target * p.target));
            CHECK(planted_energy == doctest::Approx(result.min_value));
        }
    }
    SUBCASE("JSON round trip") {
        const SubsetSumProblem p = gen_subsetsum(9, 8);
        const SubsetSumProblem back = SubsetSumProblem::from_json(p.to_json());
        CHECK(back.values == p.values);
        CHECK(back.target == p.target);
        CHECK(back.planted == p.planted);
    }
}

TEST_CASE("binary clustering generator") {
    const BinClusteringInstance with = gen_binclustering(11);
    CHECK(with.qubo.size() == 19);
    CHECK(with.data.points.size() == 20);
    CHECK(with.data.outlier_indices == std::vector<int>{0, 18});

    SUBCASE("without outliers the planted split is optimal") {
        const BinClusteringInstance clean = gen_binclustering(11, false);
        CHECK(clean.data.outlier_indices.empty());
        const SolveResult result = brute_force_minima(clean.qubo);
        // Point 20 (pinned to class 0) sits in the right cluster, so the
        // left ten points take class 1.
        Bits planted = 0;
        for (int i = 0; i < 10; ++i) planted |= Bits{1} << i;
        REQUIRE(!result.minimizers.empty());
        CHECK(result.minimizers.front() == planted);
    }
    SUBCASE("outliers inflate the dynamic range") {
        const BinClusteringInstance clean = gen_binclustering(11, false);
        CHECK(diff_stats(with.qubo).dr_bits > diff_stats(clean.qubo).dr_bits);
    }
    SUBCASE("dataset CSV shape") {
        const std::string csv = with.data.to_csv();
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);  // header + 20 points
        CHECK(csv.rfind("x,y,outlier\n", 0) == 0);
    }
}
