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
#include "qdr/qubo.hpp"
#include "qdr/rng.hpp"

using namespace qdr;
using qdr::testing::bits;
using qdr::testing::example3;

TEST_CASE("instance construction validates shape") {
    CHECK_THROWS_AS(QuboInstance{Eigen::MatrixXd::Zero(2, 3)}, std::invalid_argument);
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(2, 2);
    lower(1, 0) = 1.0;
    CHECK_THROWS_AS(QuboInstance{lower}, std::invalid_argument);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(QuboInstance{bad}, std::invalid_argument);
}

TEST_CASE("energy evaluation") {
    const QuboInstance q = example3();
    CHECK(energy(q, bits({0, 1, 1})) == doctest::Approx(-1.9).epsilon(1e-12));
    CHECK(energy(q, bits({0, 0, 0})) == 0.0);
    CHECK(energy(q, Bits{0b110}) == doctest::Approx(-1.9).epsilon(1e-12));
    CHECK(energy(qdr::testing::example2_large(), bits({0, 1})) == -2.0);
    CHECK_THROWS_AS(energy(q, bits({0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(energy(q, bits({0, 1, 2})), std::invalid_argument);
}

TEST_CASE("brute force minima") {
    SUBCASE("two-variable instance") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(0, 0) = -1.0;
        m(0, 1) = 3.0;
        m(1, 1) = -2.0;
        const SolveResult result = brute_force_minima(QuboInstance(m));
        CHECK(result.min_value == -2.0);
        REQUIRE(result.minimizers.size() == 1);
        CHECK(result.minimizers[0] == Bits{0b10});
    }
    SUBCASE("constant objective has every vector minimal") {
        const SolveResult result = brute_force_minima(QuboInstance::zero(3));
        CHECK(result.min_value == 0.0);
        CHECK(result.minimizers.size() == 8);
    }
    SUBCASE("walkthrough instance") {
        const SolveResult result = brute_force_minima(example3());
        CHECK(result.min_value == doctest::Approx(-1.9).epsilon(1e-12));
        REQUIRE(result.minimizers.size() == 1);
        CHECK(result.minimizers[0] == Bits{0b110});
    }
    SUBCASE("limit is enforced") {
        CHECK_THROWS_AS(brute_force_minima(QuboInstance::zero(5), 4), limit_error);
    }
    SUBCASE("matches direct evaluation on random instances") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(7, seed);
            const SolveResult result = brute_force_minima(q);
            double direct = energy(q, Bits{0});
            for (Bits x = 1; x < (1u << 7); ++x) direct = std::min(direct, energy(q, x));
            CHECK(result.min_value == doctest::Approx(direct).epsilon(1e-12));
            for (Bits x : result.minimizers)
                CHECK(energy(q, x) == doctest::Approx(result.min_value).epsilon(1e-9));
        }
    }
}

TEST_CASE("scaling") {
    const QuboInstance q = example3();
    CHECK(scale(q, 1.0).coeffs() == q.coeffs());
    CHECK_THROWS_AS(scale(q, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(q, -2.0), std::invalid_argument);

    const QuboInstance q6 = qdr::testing::random_instance(6, 11);
    CHECK(brute_force_minima(scale(q6, 7.0)).minimizers == brute_force_minima(q6).minimizers);

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector x(6);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        const double alpha = rng.uniform(0.1, 5.0);
        CHECK(energy(scale(q6, alpha), x) ==
              doctest::Approx(alpha * energy(q6, x)).epsilon(1e-12));
    }
}

TEST_CASE("rounding convention: halves up") {
    CHECK(round_half_up(0.5) == 1.0);
    CHECK(round_half_up(-0.5) == 0.0);
    CHECK(round_half_up(1.4) == 1.0);
    CHECK(round_half_up(-1.5) == -1.0);

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = -3.0;
    m(1, 1) = 5.0;
    const QuboInstance q(m);
    CHECK(round_entries(q).coeffs() == q.coeffs());

    const QuboInstance scaled = round_entries(scale(example3(), 10.0));
    CHECK(scaled.coeff(0, 0) == -10.0);
    CHECK(scaled.coeff(0, 1) == 4.0);
    CHECK(scaled.coeff(0, 2) == 10.0);
    CHECK(scaled.coeff(1, 1) == 4.0);
    CHECK(scaled.coeff(1, 2) == -8.0);
    CHECK(scaled.coeff(2, 2) == -15.0);
}

TEST_CASE("rounding error matrix") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = -2.0;
    m(1, 1) = 3.0;
    CHECK(rounding_error_matrix(QuboInstance(m), 1.0).coeffs().isZero());

    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(1, 1);
    f(0, 0) = 0.3;
    CHECK(rounding_error_matrix(QuboInstance(f), 1.0).coeff(0, 0) == doctest::Approx(-0.3));

    // Entries stay in (-1/2, 1/2] and the reconstruction identity holds.
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const QuboInstance q = qdr::testing::random_instance(6, 100 + trial);
        const double alpha = rng.uniform(0.5, 20.0);
        const QuboInstance err = rounding_error_matrix(q, alpha);
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                CHECK(err.coeff(i, j) > -0.5 - 1e-15);
                CHECK(err.coeff(i, j) <= 0.5 + 1e-15);
            }
        const QuboInstance rounded = round_entries(scale(q, alpha));
        BitVector x(6);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        CHECK(energy(rounded, x) ==
              doctest::Approx(alpha * energy(q, x) + energy(err, x)).epsilon(1e-9));
    }
}

TEST_CASE("diff stats") {
    SUBCASE("walkthrough values") {
        const DiffStats stats = diff_stats(example3());
        CHECK(stats.min_diff == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(stats.max_diff == doctest::Approx(2.5).epsilon(1e-12));
        CHECK(stats.dr_bits == doctest::Approx(std::log2(12.5)).epsilon(1e-12));
        CHECK(stats.dr_bits == doctest::Approx(3.64).epsilon(0.01));
    }
    SUBCASE("large coupler instance") {
        const DiffStats stats = diff_stats(qdr::testing::example2_large());
        CHECK(stats.dr_bits == doctest::Approx(std::log2(14382.0)).epsilon(1e-12));
        CHECK(stats.dr_bits == doctest::Approx(13.812).epsilon(1e-4));
    }
    SUBCASE("degenerate instance") {
        const DiffStats stats = diff_stats(QuboInstance::zero(4));
        CHECK(stats.degenerate);
        CHECK(stats.dr_bits == 0.0);
    }
    SUBCASE("scale invariance") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 40 + seed);
            const double base = diff_stats(q).dr_bits;
            for (double alpha : {0.25, 3.0, 1000.0})
                CHECK(diff_stats(scale(q, alpha)).dr_bits == doctest::Approx(base).epsilon(1e-9));
        }
    }
}

TEST_CASE("entry ordering") {
    const EntryOrdering ordering = entry_ordering(example3());
    const std::vector<double> expected{-1.5, -1.0, -0.8, 0.0, 0.0, 0.0, 0.4, 0.4, 1.0};
    REQUIRE(ordering.values.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(ordering.values[i] == doctest::Approx(expected[i]));
    CHECK(ordering.rank_of(1, 2) == 2);

    const EntryOrdering zero = entry_ordering(QuboInstance::zero(2));
    CHECK(zero.values == std::vector<double>{0.0, 0.0, 0.0, 0.0});

    // Exactly n(n-1)/2 structural zeros below the diagonal.
    int structural = 0;
    for (const auto& [i, j] : ordering.positions)
        if (i > j) {
            ++structural;
            CHECK(ordering.values[ordering.rank_of(i, j)] == 0.0);
        }
    CHECK(structural == 3);
}

TEST_CASE("spectral gap") {
    SUBCASE("single variable") {
        Eigen::MatrixXd m(1, 1);
        m(0, 0) = -1.0;
        const SpectralGapResult result = spectral_gap(QuboInstance(m));
        CHECK(result.y1 == -1.0);
        CHECK(result.y2 == 0.0);
        CHECK(result.gamma == 1.0);
        CHECK(result.alpha_star == 0.5);
    }
    SUBCASE("walkthrough instance") {
        const SpectralGapResult result = spectral_gap(example3());
        CHECK(result.y1 == doctest::Approx(-1.9));
        CHECK(result.y2 == doctest::Approx(-1.5));
        CHECK(result.gamma == doctest::Approx(0.4));
        CHECK(result.alpha_star == doctest::Approx(12.0 / 1.6));
    }
    SUBCASE("constant objective throws") {
        CHECK_THROWS_AS(spectral_gap(QuboInstance::zero(3)), std::domain_error);
    }
    SUBCASE("gap scales linearly") {
        const QuboInstance q = qdr::testing::random_instance(6, 5);
        const double gamma = spectral_gap(q).gamma;
        CHECK(spectral_gap(scale(q, 3.0)).gamma == doctest::Approx(3.0 * gamma).epsilon(1e-9));
    }
}

TEST_CASE("optimum inclusion") {
    CHECK(optimum_included(qdr::testing::example2_large(), qdr::testing::example2_small()));
    const QuboInstance q = qdr::testing::random_instance(6, 9);
    CHECK(optimum_included(q, q));

    SUBCASE("transitive on integer instances") {
        int premise_hits = 0;
        for (std::uint64_t seed = 0; seed < 400; ++seed) {
            const QuboInstance a = qdr::testing::random_int_instance(4, 3 * seed, 1);
            const QuboInstance b = qdr::testing::random_int_instance(4, 3 * seed + 1, 1);
            const QuboInstance c = qdr::testing::random_int_instance(4, 3 * seed + 2, 1);
            if (optimum_included(a, b) && optimum_included(b, c)) {
                ++premise_hits;
                CHECK(optimum_included(a, c));
            }
        }
        CHECK(premise_hits > 0);  // the premise must actually fire
    }
}

TEST_CASE("linearity of the objective") {
    const QuboInstance q1 = qdr::testing::random_instance(7, 21);
    const QuboInstance q2 = qdr::testing::random_instance(7, 22);
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = rng.uniform(0.1, 4.0);
        const QuboInstance combined(alpha * q1.coeffs() + q2.coeffs());
        BitVector x(7);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        CHECK(energy(combined, x) ==
              doctest::Approx(alpha * energy(q1, x) + energy(q2, x)).epsilon(1e-12));
    }
}

TEST_CASE("rounding at alpha_star preserves an optimum") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const QuboInstance q = qdr::testing::random_instance(n, 1000 + seed);
        const double alpha_star = spectral_gap(q).alpha_star;
        for (double factor : {1.0, 2.0, 10.0})
            CHECK(optimum_included(round_entries(scale(q, factor * alpha_star)), q));
    }
}

TEST_CASE("rounding bounds the dynamic range growth") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        QuboInstance q = qdr::testing::random_instance(6, 2000 + seed);
        const DiffStats stats = diff_stats(q);
        q = scale(q, 1.0 / stats.max_diff);  // normalize maxD to 1
        for (double alpha : {1.0, 3.0, 10.0, 100.0}) {
            const DiffStats rounded = diff_stats(round_entries(scale(q, alpha)));
            const double dr = rounded.degenerate ? 0.0 : rounded.dr_bits;
            CHECK(dr <= std::log2(1.0 + alpha) + 1e-9);
        }
    }
}
