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
#include "qdr/bounds.hpp"
#include "qdr/detail/maxflow.hpp"
#include "qdr/rng.hpp"

using namespace qdr;
using qdr::testing::example3;

namespace {

// Exact subspace minimum by direct enumeration, independent of the
// reduction path used by the implementation.
double subspace_min(const QuboInstance& q, PinnedPair pair, int assignment) {
    const int n = q.size();
    const int a = pair.diagonal() ? assignment : (assignment >> 1);
    const int b = pair.diagonal() ? assignment : (assignment & 1);
    double best = std::numeric_limits<double>::infinity();
    for (Bits x = 0; x < (Bits{1} << n); ++x) {
        if (((x >> pair.k) & 1) != static_cast<Bits>(a)) continue;
        if (((x >> pair.l) & 1) != static_cast<Bits>(b)) continue;
        best = std::min(best, energy(q, x));
    }
    return best;
}

QuboInstance with_coeff(const QuboInstance& q, int k, int l, double value) {
    QuboInstance out = q;
    out.set_coeff(k, l, value);
    return out;
}

}  // namespace

TEST_CASE("max flow on a small known network") {
    // Two disjoint augmenting paths of widths 3 and 2, one cross edge.
    detail::MaxFlow flow(4);
    flow.add_edge(0, 1, 3);
    flow.add_edge(0, 2, 2);
    flow.add_edge(1, 3, 2);
    flow.add_edge(2, 3, 3);
    flow.add_edge(1, 2, 5);
    CHECK(flow.solve(0, 3) == 5);
}

TEST_CASE("exhaustive subspace bounds on the walkthrough instance") {
    const QuboInstance q = example3();
    const PinnedPair pair{1, 2};
    const SubspaceBounds bounds = subspace_bounds_exhaustive(q, pair);
    // Exact subspace minima; the zero-start evaluations 0 / -1.5 / 0.4 are
    // upper bounds only (see upper_bound_zero_vector below).
    CHECK(bounds.by_assignment[0].lower == doctest::Approx(-1.0));
    CHECK(bounds.by_assignment[1].lower == doctest::Approx(-1.5));
    CHECK(bounds.by_assignment[2].lower == doctest::Approx(-0.2));
    CHECK(bounds.by_assignment[3].lower == doctest::Approx(-1.9));
    for (int a = 0; a < 4; ++a)
        CHECK(bounds.by_assignment[a].lower == bounds.by_assignment[a].upper);
}

TEST_CASE("exhaustive bounds cover the global minimum") {
    const QuboInstance zero = QuboInstance::zero(3);
    const SubspaceBounds zb = subspace_bounds_exhaustive(zero, PinnedPair{0, 2});
    for (int a = 0; a < 4; ++a) CHECK(zb.by_assignment[a].lower == 0.0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const QuboInstance q = qdr::testing::random_instance(6, 300 + seed);
        const double global = brute_force_minima(q).min_value;
        const SubspaceBounds bounds = subspace_bounds_exhaustive(q, PinnedPair{1, 4});
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 4; ++a) best = std::min(best, bounds.by_assignment[a].lower);
        CHECK(best == doctest::Approx(global).epsilon(1e-12));
    }
}

TEST_CASE("zero-vector upper bound") {
    const QuboInstance q = example3();
    CHECK(upper_bound_zero_vector(q, PinnedPair{1, 2}, 0) == 0.0);
    CHECK(upper_bound_zero_vector(q, PinnedPair{1, 2}, 1) == doctest::Approx(-1.5));
    CHECK(upper_bound_zero_vector(q, PinnedPair{1, 2}, 2) == doctest::Approx(0.4));
    CHECK(upper_bound_zero_vector(q, PinnedPair{1, 2}, 3) == doctest::Approx(-1.9));
    CHECK(upper_bound_zero_vector(q, PinnedPair{0, 1}, 2) == doctest::Approx(-1.0));
}

TEST_CASE("local-search upper bound") {
    SUBCASE("no free variables is exact") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(0, 0) = 1.0;
        m(0, 1) = -3.0;
        m(1, 1) = 2.0;
        const QuboInstance q(m);
        for (int a = 0; a < 4; ++a)
            CHECK(upper_bound_local_search(q, PinnedPair{0, 1}, a, 3, 5) ==
                  doctest::Approx(subspace_min(q, PinnedPair{0, 1}, a)));
    }
    SUBCASE("never better than the true minimum, never worse than zero start") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 400 + seed);
            const PinnedPair pair{2, 5};
            for (int a = 0; a < 4; ++a) {
                const double ub = upper_bound_local_search(q, pair, a, 5, seed);
                CHECK(ub >= subspace_min(q, pair, a) - 1e-9);
                CHECK(ub <= upper_bound_zero_vector(q, pair, a) + 1e-9);
            }
        }
    }
    SUBCASE("deterministic given seed and restarts") {
        const QuboInstance q = qdr::testing::random_instance(10, 55);
        const double a = upper_bound_local_search(q, PinnedPair{0, 9}, 3, 7, 123);
        const double b = upper_bound_local_search(q, PinnedPair{0, 9}, 3, 7, 123);
        CHECK(a == b);
    }
}

TEST_CASE("negative-sum lower bound") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(2, 2) = 0.5;
    CHECK(lower_bound_negative_sum(QuboInstance(m), PinnedPair{0, 1}, 0) == 0.0);

    CHECK(lower_bound_negative_sum(example3(), PinnedPair{1, 2}, 3) == doctest::Approx(-3.3));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const QuboInstance q = qdr::testing::random_instance(8, 500 + seed);
        const PinnedPair pair{0, 3};
        for (int a = 0; a < 4; ++a)
            CHECK(lower_bound_negative_sum(q, pair, a) <= subspace_min(q, pair, a) + 1e-9);
    }
}

TEST_CASE("roof-dual lower bound") {
    SUBCASE("all-nonnegative subproblem needs no flow") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
        m(0, 1) = 2.0;
        m(1, 2) = 1.5;
        m(2, 2) = 0.5;
        m(3, 3) = 1.0;
        const QuboInstance q(m);
        CHECK(lower_bound_roof_dual(q, PinnedPair{0, 1}, 0) == doctest::Approx(0.0));
        CHECK(lower_bound_roof_dual(q, PinnedPair{0, 1}, 3) == doctest::Approx(2.0));
    }
    SUBCASE("sandwiched between negative-sum and the true minimum") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 600 + seed);
            const PinnedPair pair{1, 6};
            for (int a = 0; a < 4; ++a) {
                const double neg = lower_bound_negative_sum(q, pair, a);
                const double roof = lower_bound_roof_dual(q, pair, a);
                const double exact = subspace_min(q, pair, a);
                CHECK(roof >= neg - 1e-9);
                CHECK(roof <= exact + 1e-9);
            }
        }
    }
    SUBCASE("exact on submodular subproblems") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            QuboInstance q = qdr::testing::random_instance(8, 700 + seed);
            for (int i = 0; i < 8; ++i)
                for (int j = i + 1; j < 8; ++j)
                    q.set_coeff(i, j, -std::abs(q.coeff(i, j)));
            const PinnedPair pair{3, 4};
            for (int a = 0; a < 4; ++a)
                CHECK(lower_bound_roof_dual(q, pair, a) ==
                      doctest::Approx(subspace_min(q, pair, a)).epsilon(1e-4));
        }
    }
}

TEST_CASE("diagonal pairs") {
    const QuboInstance q = example3();
    const PinnedPair diag{0, 0};
    const SubspaceBounds bounds = subspace_bounds_exhaustive(q, diag);
    CHECK(bounds.num_assignments() == 2);
    CHECK(bounds.by_assignment[0].lower == doctest::Approx(-1.9));  // x_1 = 0
    CHECK(bounds.by_assignment[1].lower == doctest::Approx(-1.5));  // x_1 = 1
    const PreservationInterval interval = preservation_interval(bounds);
    CHECK(interval.lo == doctest::Approx(-0.4));
    CHECK(interval.hi == 0.0);
}

TEST_CASE("preservation interval") {
    SUBCASE("walkthrough value") {
        const SubspaceBounds bounds = subspace_bounds_exhaustive(example3(), PinnedPair{1, 2});
        const PreservationInterval interval = preservation_interval(bounds);
        CHECK(interval.hi == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(interval.lo == 0.0);
    }
    SUBCASE("always contains zero") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(7, 800 + seed);
            for (int k = 0; k < 7; ++k)
                for (int l = k; l < 7; ++l) {
                    const PreservationInterval interval =
                        preservation_interval(subspace_bounds_exhaustive(q, PinnedPair{k, l}));
                    CHECK(interval.lo <= 0.0);
                    CHECK(interval.hi >= 0.0);
                }
        }
    }
    SUBCASE("interior changes keep every optimum, endpoints keep at least one") {
        Rng rng(31);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 900 + seed);
            const int k = static_cast<int>(rng.below(8));
            const int l = k + static_cast<int>(rng.below(8 - k));
            const PinnedPair pair{k, l};
            const PreservationInterval interval =
                preservation_interval(subspace_bounds_exhaustive(q, pair));
            const SolveResult before = brute_force_minima(q);
            for (double t : {0.25, 0.5, 0.9}) {
                const double w = interval.lo + t * (interval.hi - interval.lo);
                if (!(w > interval.lo && w < interval.hi)) continue;
                const QuboInstance changed = with_coeff(q, k, l, q.coeff(k, l) + w);
                CHECK(optimum_included(changed, q));
            }
            for (double w : {interval.lo, interval.hi}) {
                const QuboInstance changed = with_coeff(q, k, l, q.coeff(k, l) + w);
                const SolveResult after = brute_force_minima(changed);
                bool shared = false;
                for (Bits x : after.minimizers)
                    if (std::abs(energy(q, x) - before.min_value) <=
                        energy_tie_tolerance(before.min_value))
                        shared = true;
                CHECK(shared);
            }
        }
    }
    SUBCASE("heuristic-bound intervals sit inside exact intervals") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 950 + seed);
            const PinnedPair pair{2, 6};
            const PreservationInterval exact =
                preservation_interval(subspace_bounds_exhaustive(q, pair));
            const PreservationInterval loose = preservation_interval(
                compute_bounds(q, pair, BoundMethod::kHeuristicRoofDual, seed));
            CHECK(loose.lo >= exact.lo - 1e-9);
            CHECK(loose.hi <= exact.hi + 1e-9);
        }
    }
}

TEST_CASE("variable fixing") {
    SUBCASE("walkthrough instance certifies the optimal assignment") {
        const SubspaceBounds bounds = subspace_bounds_exhaustive(example3(), PinnedPair{1, 2});
        const FixingResult fix = variable_fixing_check(bounds);
        REQUIRE(fix.optimal_assignment.has_value());
        CHECK(*fix.optimal_assignment == 3);  // x_2 = 1, x_3 = 1
        CHECK(fix.certified_non_optimal[2]);  // the 10 subspace cannot win
    }
    SUBCASE("overlapping bounds are inconclusive") {
        SubspaceBounds bounds;
        bounds.pair = PinnedPair{0, 1};
        for (int a = 0; a < 4; ++a) bounds.by_assignment[a] = AssignmentBounds{-1.0, 1.0, "test"};
        const FixingResult fix = variable_fixing_check(bounds);
        CHECK_FALSE(fix.optimal_assignment.has_value());
        for (bool flag : fix.certified_non_optimal) CHECK_FALSE(flag);
    }
    SUBCASE("certified fixings agree with enumeration") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const QuboInstance q = qdr::testing::random_instance(8, 1000 + seed);
            const PinnedPair pair{1, 5};
            const FixingResult fix =
                variable_fixing_check(subspace_bounds_exhaustive(q, pair));
            if (!fix.optimal_assignment) continue;
            const int a = *fix.optimal_assignment;
            for (Bits x : brute_force_minima(q).minimizers) {
                CHECK(((x >> pair.k) & 1) == static_cast<Bits>(a >> 1));
                CHECK(((x >> pair.l) & 1) == static_cast<Bits>(a & 1));
            }
        }
    }
}

TEST_CASE("bound set serializes to json") {
    const SubspaceBounds bounds = subspace_bounds_exhaustive(example3(), PinnedPair{1, 2});
    const std::string json = bounds.to_json();
    CHECK(json.find("\"pair\":[1,2]") != std::string::npos);
    CHECK(json.find("exhaustive") != std::string::npos);
}

TEST_CASE("auto bound method switches on size") {
    const QuboInstance small = qdr::testing::random_instance(6, 1);
    CHECK(compute_bounds(small, PinnedPair{0, 1}, BoundMethod::kAuto, 1)
              .by_assignment[0]
              .method == "exhaustive");
    const QuboInstance large = qdr::testing::random_instance(14, 1);
    CHECK(compute_bounds(large, PinnedPair{0, 1}, BoundMethod::kAuto, 1)
              .by_assignment[0]
              .method == "local_search+roof_dual");
}
