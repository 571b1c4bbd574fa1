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

#ifndef QDR_BOUNDS_HPP_INCLUDED
#define QDR_BOUNDS_HPP_INCLUDED

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdr/qubo.hpp"

namespace qdr {

/// Indices of the coefficient under modification, 0-based, k <= l.
/// k == l selects a diagonal coefficient (one pinned variable).
struct PinnedPair {
    int k = 0;
    int l = 0;

    bool diagonal() const { return k == l; }
};

enum class BoundMethod {
    kAuto,             // exhaustive when n <= 12, otherwise local search + roof dual
    kExhaustive,       // exact subspace minima by enumeration
    kHeuristic,        // local-search upper + negative-sum lower
    kHeuristicRoofDual // local-search upper + roof-dual lower
};

/// Lower/upper bounds on the constrained-subspace minimum for one pinned
/// assignment, plus a tag recording how they were produced.
struct AssignmentBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
};

/// Bounds for every assignment of the pinned pair: four assignments
/// (a*2+b) off-diagonal, two on the diagonal.
struct SubspaceBounds {
    PinnedPair pair;
    std::array<AssignmentBounds, 4> by_assignment;

    int num_assignments() const { return pair.diagonal() ? 2 : 4; }
    std::string to_json() const;
};

/// Admissible additive-change interval for the pinned coefficient; always
/// contains 0.
struct PreservationInterval {
    double lo = 0.0;  // y-
    double hi = 0.0;  // y+
};

/// Outcome of the bound-based optimality tests.
struct FixingResult {
    /// Assignment certified optimal (x_k, x_l may be fixed to it), if any.
    std::optional<int> optimal_assignment;
    /// Per-assignment flags for the dual test: certified non-optimal.
    std::array<bool, 4> certified_non_optimal{};
};

/// The reduced objective over the free variables after pinning, plus the
/// constant carried out of the reduction. Empty reductions (n matches the
/// number of pinned variables) are signaled by a missing instance.
struct ReducedQubo {
    std::optional<QuboInstance> instance;
    double offset = 0.0;
    std::vector<int> free_to_original;
};

ReducedQubo pin_variables(const QuboInstance& q, PinnedPair pair, int assignment);

/// Exact subspace minima by enumeration: lower == upper for every
/// assignment.
SubspaceBounds subspace_bounds_exhaustive(const QuboInstance& q, PinnedPair pair,
                                          int limit = kDefaultEnumLimit);

/// f_Q evaluated at the all-zeros vector with the pinned bits applied.
double upper_bound_zero_vector(const QuboInstance& q, PinnedPair pair, int assignment);

/// Best energy over restart-based single-flip descents in the pinned
/// subspace. The zero-start is always included, so the result never
/// exceeds upper_bound_zero_vector.
double upper_bound_local_search(const QuboInstance& q, PinnedPair pair, int assignment,
                                int restarts, std::uint64_t seed);

/// f at the all-ones vector (pins applied) of the matrix keeping only
/// negative coefficients; never exceeds the true subspace minimum.
double lower_bound_negative_sum(const QuboInstance& q, PinnedPair pair, int assignment);

/// Roof-dual lower bound of the pinned subproblem: posiform implication
/// network plus exact integer max flow. At least as tight as the
/// negative-sum bound and never above the true subspace minimum; exact on
/// submodular subproblems (up to the integer-scaling quantum).
double lower_bound_roof_dual(const QuboInstance& q, PinnedPair pair, int assignment,
                             double precision = 1e6);

/// Computes the full bound set with the requested method (kAuto resolves
/// by instance size). seed drives the local-search restarts.
SubspaceBounds compute_bounds(const QuboInstance& q, PinnedPair pair, BoundMethod method,
                              std::uint64_t seed, int restarts = 10, double precision = 1e6,
                              int limit = kDefaultEnumLimit);

/// Change interval [y-, y+] for the pinned coefficient derived from the
/// bound set; any strictly interior change keeps at least one global
/// optimum (all of them, with exact bounds).
PreservationInterval preservation_interval(const SubspaceBounds& bounds);

/// Bound-based optimality certificates for the pinned assignments.
FixingResult variable_fixing_check(const SubspaceBounds& bounds);

}  // namespace qdr

#endif  // QDR_BOUNDS_HPP_INCLUDED
