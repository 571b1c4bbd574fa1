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

#ifndef QDR_COMPRESS_HPP_INCLUDED
#define QDR_COMPRESS_HPP_INCLUDED

#include <cstdint>
#include <string>
#include <vector>

#include "qdr/bounds.hpp"
#include "qdr/qubo.hpp"
#include "qdr/rng.hpp"

namespace qdr {

enum class Heuristic { kG, kG0, kM };
enum class Selection { kRandom, kSequential, kGreedyImpact };

/// Bounds on the additive change at one rank such that the dynamic range
/// cannot increase, provided the change also keeps the minimal parameter
/// distance or lands on an existing value.
struct DrChangeBounds {
    double d_minus = 0.0;
    double d_plus = 0.0;
    double delta_ell = 0.0;               // slack term from removing the entry
    std::vector<double> landing_targets;  // existing values reachable in [d-, d+]
};

/// Nearest existing values around one rank; absent sides are signaled by
/// infinities (-inf below, +inf above).
struct OrderNeighborBounds {
    double upper_plus = 0.0;   // smallest value strictly above
    double lower_plus = 0.0;   // largest value <= q_(l), excluding the entry itself
    double upper_minus = 0.0;  // smallest value >= q_(l), excluding the entry itself
    double lower_minus = 0.0;  // largest value strictly below
};

struct CompressionConfig {
    Heuristic heuristic = Heuristic::kG0;
    Selection selection = Selection::kRandom;
    int max_iterations = 1000;
    BoundMethod bound_method = BoundMethod::kAuto;
    std::uint64_t rng_seed = 1;
    double merge_tolerance = kRelTol;
    int local_search_restarts = 10;
    double roof_dual_precision = 1e6;
    int enum_limit = kDefaultEnumLimit;
};

struct TraceRecord {
    int iteration = 0;
    int k = 0;
    int l = 0;
    int rank = 0;
    double w_proposed = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;
    double w_applied = 0.0;
    double dr_before = 0.0;
    double dr_after = 0.0;
    bool skipped = false;
    double value_after = 0.0;  // coefficient value once the change is applied
};

struct CompressionTrace {
    std::vector<TraceRecord> records;
    double initial_dr = 0.0;
    double final_dr = 0.0;
    int applied_count = 0;
    int skipped_count = 0;

    std::string to_csv() const;
    std::string to_json_lines() const;
};

struct CompressionResult {
    QuboInstance instance;
    CompressionTrace trace;
};

/// Safe change bounds for the entry at the given rank. Requires a
/// modifiable (upper-triangle) position and non-degenerate stats.
DrChangeBounds dr_change_bounds(const EntryOrdering& ordering, const DiffStats& stats, int rank);

/// True when q_(rank) + w keeps distance >= minD to every other entry or
/// lands on an existing value (within the merge tolerance).
bool admissible(const EntryOrdering& ordering, const DiffStats& stats, int rank, double w,
                double merge_tolerance = kRelTol);

/// Greedy proposal: move as far as the DR bounds allow (increase when the
/// value is negative, decrease otherwise) while keeping the minimal
/// distance; falls back to landing on the farthest reachable value.
double heuristic_g(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                   const DrChangeBounds& bounds);

/// Like heuristic_g, but proposes setting the entry exactly to 0 whenever
/// 0 is reachable within the DR bounds.
double heuristic_g0(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                    const DrChangeBounds& bounds);

OrderNeighborBounds order_neighbor_bounds(const EntryOrdering& ordering, int rank);

/// Order-maintaining proposal: moves the entry to the midpoint between its
/// order neighbors (dedicated formulas at the extremes).
double heuristic_m(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                   const OrderNeighborBounds& neighbors);

/// min{max{w, y-}, y+}.
double clamp_final(double w, const PreservationInterval& interval);

/// Positions whose values realize minD or maxD; the candidate set for
/// greedy-impact selection.
std::vector<PinnedPair> active_positions(const EntryOrdering& ordering, const DiffStats& stats);

/// Iterative dynamic-range reduction. With exhaustive bounds, every global
/// minimizer of the result is a global minimizer of the input.
CompressionResult compress(const QuboInstance& q, const CompressionConfig& config);

std::string to_string(Heuristic h);
std::string to_string(Selection s);

}  // namespace qdr

#endif  // QDR_COMPRESS_HPP_INCLUDED
