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

#include "qdr/compress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "qdr/io.hpp"

namespace qdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distinct values with multiplicities, shared by the heuristics.
struct ValueTable {
    const std::vector<double>* distinct;
    std::vector<int> counts;

    int size() const { return static_cast<int>(distinct->size()); }
    double value(int vi) const { return (*distinct)[vi]; }
    bool unique_at(int vi) const { return counts[vi] == 1; }

    // Index of the merged value containing v, -1 when none is close.
    int index_of(double v, double rel = kRelTol) const {
        const auto& vals = *distinct;
        auto it = std::lower_bound(vals.begin(), vals.end(), v);
        int best = -1;
        double best_dist = kInf;
        for (int offset : {0, -1}) {
            const auto cand = it + offset;
            if (cand < vals.begin() || cand >= vals.end()) continue;
            if (!close(*cand, v, rel)) continue;
            const double dist = std::abs(*cand - v);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(cand - vals.begin());
            }
        }
        return best;
    }

    // Minimal pairwise distance after removing one occurrence of value vi;
    // +inf when fewer than two distinct values remain.
    double min_diff_without(int vi, double min_diff) const {
        if (counts[vi] > 1) return min_diff;
        const auto& vals = *distinct;
        const int k = size();
        if (k - 1 < 2) return kInf;
        double best = kInf;
        int prev = vi == 0 ? 1 : 0;
        for (int i = prev + 1; i < k; ++i) {
            if (i == vi) continue;
            best = std::min(best, vals[i] - vals[prev]);
            prev = i;
        }
        return best;
    }
};

ValueTable make_table(const EntryOrdering& ordering, const DiffStats& stats) {
    ValueTable table;
    table.distinct = &stats.distinct_values;
    table.counts.assign(stats.distinct_values.size(), 0);
    for (double v : ordering.values) {
        const int vi = table.index_of(v);
        if (vi >= 0) ++table.counts[vi];
    }
    return table;
}

void check_modifiable(const EntryOrdering& ordering, const DiffStats& stats, int rank) {
    if (rank < 0 || rank >= ordering.size())
        throw std::invalid_argument("rank out of range");
    const auto [i, j] = ordering.positions[rank];
    if (i > j)
        throw std::invalid_argument("structural lower-triangle zeros cannot be modified");
    if (stats.degenerate)
        throw std::domain_error("instance has fewer than two distinct values");
}

// Distance rule: the target keeps distance >= minD to every other entry.
bool distance_kept(const ValueTable& table, int own_vi, double min_diff, double target) {
    for (int vi = 0; vi < table.size(); ++vi) {
        if (vi == own_vi && table.unique_at(vi)) continue;
        if (!approx_geq(std::abs(target - table.value(vi)), min_diff)) return false;
    }
    return true;
}

// Farthest distance-admissible target: the largest one at most cap when
// increasing, the smallest one at least cap when decreasing. Walks the
// distinct values once, jumping past each blocking exclusion zone.
double extreme_distance_target(const ValueTable& table, int own_vi, double min_diff, double cap,
                               bool increase) {
    double t = cap;
    if (increase) {
        for (int vi = table.size() - 1; vi >= 0; --vi) {
            if (vi == own_vi && table.unique_at(vi)) continue;
            const double v = table.value(vi);
            if (!approx_geq(std::abs(t - v), min_diff) && t >= v - min_diff) t = v - min_diff;
        }
    } else {
        for (int vi = 0; vi < table.size(); ++vi) {
            if (vi == own_vi && table.unique_at(vi)) continue;
            const double v = table.value(vi);
            if (!approx_geq(std::abs(t - v), min_diff) && t <= v + min_diff) t = v + min_diff;
        }
    }
    return t;
}

}  // namespace

DrChangeBounds dr_change_bounds(const EntryOrdering& ordering, const DiffStats& stats, int rank) {
    check_modifiable(ordering, stats, rank);
    const ValueTable table = make_table(ordering, stats);
    const int m = ordering.size();
    const std::vector<double>& q = ordering.values;
    const double ql = q[rank];

    const int vi = table.index_of(ql);
    const double min_diff_wo = table.min_diff_without(vi, stats.min_diff);
    const double delta = std::isinf(min_diff_wo)
                             ? kInf
                             : stats.max_diff * (min_diff_wo / stats.min_diff - 1.0);

    DrChangeBounds bounds;
    bounds.delta_ell = delta;
    bounds.d_minus = q[0] - ql - delta;
    if (rank == m - 1) bounds.d_minus += q[m - 2] - q[m - 1];
    bounds.d_plus = q[m - 1] - ql + delta;
    if (rank == 0) bounds.d_plus += q[1] - q[0];

    for (double v : stats.distinct_values)
        if (approx_geq(v, ql + bounds.d_minus) && approx_leq(v, ql + bounds.d_plus))
            bounds.landing_targets.push_back(v);
    return bounds;
}

bool admissible(const EntryOrdering& ordering, const DiffStats& stats, int rank, double w,
                double merge_tolerance) {
    if (rank < 0 || rank >= ordering.size()) throw std::invalid_argument("rank out of range");
    const double target = ordering.values[rank] + w;
    const ValueTable table = make_table(ordering, stats);
    if (table.index_of(target, merge_tolerance) >= 0) return true;  // lands on an existing value
    if (stats.degenerate) return false;
    const int own_vi = table.index_of(ordering.values[rank]);
    return distance_kept(table, own_vi, stats.min_diff, target);
}

double heuristic_g(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                   const DrChangeBounds&) {
    check_modifiable(ordering, stats, rank);
    const ValueTable table = make_table(ordering, stats);
    const int m = ordering.size();
    const std::vector<double>& q = ordering.values;
    const double ql = q[rank];
    const bool increase = ql < 0.0;

    // Cap the move at the current extreme (plus the edge-rank correction);
    // overshooting never helps the greedy objective.
    double cap_w;
    if (increase) {
        cap_w = q[m - 1] - ql + (rank == 0 ? q[1] - q[0] : 0.0);
    } else {
        cap_w = q[0] - ql + (rank == m - 1 ? q[m - 2] - q[m - 1] : 0.0);
    }

    const int own_vi = table.index_of(ql);
    const double t = extreme_distance_target(table, own_vi, stats.min_diff, ql + cap_w, increase);
    const double band = std::max(kAbsTol, kRelTol * std::abs(ql));
    if (increase ? t > ql + band : t < ql - band) return t - ql;

    // No room while keeping the distance: land on the farthest existing
    // value in the move direction instead.
    if (increase) {
        for (int vi = table.size() - 1; vi >= 0; --vi) {
            const double v = table.value(vi);
            if (approx_leq(v, ql + cap_w) && v > ql + band) return v - ql;
        }
    } else {
        for (int vi = 0; vi < table.size(); ++vi) {
            const double v = table.value(vi);
            if (approx_geq(v, ql + cap_w) && v < ql - band) return v - ql;
        }
    }
    return 0.0;
}

double heuristic_g0(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                    const DrChangeBounds& bounds) {
    check_modifiable(ordering, stats, rank);
    const double ql = ordering.values[rank];
    if (close(ql, 0.0)) return 0.0;
    const bool increase = ql < 0.0;
    const bool reachable = increase ? approx_leq(0.0, ql + bounds.d_plus)
                                    : approx_geq(0.0, ql + bounds.d_minus);
    if (reachable) return -ql;
    return heuristic_g(ordering, stats, rank, bounds);
}

OrderNeighborBounds order_neighbor_bounds(const EntryOrdering& ordering, int rank) {
    if (rank < 0 || rank >= ordering.size()) throw std::invalid_argument("rank out of range");
    const DiffStats stats = [&] {
        DiffStats s;
        for (double v : ordering.values)
            if (s.distinct_values.empty() || !close(s.distinct_values.back(), v))
                s.distinct_values.push_back(v);
        return s;
    }();
    ValueTable table;
    table.distinct = &stats.distinct_values;
    table.counts.assign(stats.distinct_values.size(), 0);
    for (double v : ordering.values) {
        const int vi = table.index_of(v);
        if (vi >= 0) ++table.counts[vi];
    }

    const double ql = ordering.values[rank];
    const int vi = table.index_of(ql);
    const bool unique = table.unique_at(vi);
    OrderNeighborBounds onb;
    onb.upper_plus = vi + 1 < table.size() ? table.value(vi + 1) : kInf;
    onb.lower_minus = vi > 0 ? table.value(vi - 1) : -kInf;
    onb.upper_minus = unique ? onb.upper_plus : table.value(vi);
    onb.lower_plus = unique ? onb.lower_minus : table.value(vi);
    return onb;
}

double heuristic_m(const EntryOrdering& ordering, const DiffStats& stats, int rank,
                   const OrderNeighborBounds& neighbors) {
    check_modifiable(ordering, stats, rank);
    const ValueTable table = make_table(ordering, stats);
    const double ql = ordering.values[rank];
    const double vmin = stats.distinct_values.front();
    const double vmax = stats.distinct_values.back();
    const double min_diff = stats.min_diff;
    const int vi = table.index_of(ql);
    const double min_diff_wo = table.min_diff_without(vi, min_diff);

    if (close(ql, vmax)) {
        if (std::isinf(min_diff_wo)) return 0.0;
        if (close(min_diff_wo, min_diff)) return neighbors.lower_minus - ql + min_diff;
        return min_diff_wo - min_diff;
    }
    if (close(ql, vmin)) {
        if (std::isinf(min_diff_wo)) return 0.0;
        if (close(min_diff_wo, min_diff)) return neighbors.upper_plus - ql - min_diff;
        return min_diff - min_diff_wo;
    }

    const double down = ql - neighbors.lower_minus;
    const double up = neighbors.upper_plus - ql;
    if (down < up || close(down, up)) {
        return (neighbors.upper_plus - neighbors.lower_plus) / 2.0 -
               std::min(neighbors.upper_plus - ql, ql - neighbors.lower_plus);
    }
    return (neighbors.lower_minus - neighbors.upper_minus) / 2.0 +
           std::min(neighbors.upper_minus - ql, ql - neighbors.lower_minus);
}

double clamp_final(double w, const PreservationInterval& interval) {
    if (interval.lo > kAbsTol || interval.hi < -kAbsTol)
        throw std::invalid_argument("clamp_final: interval must contain 0");
    return std::min(std::max(w, interval.lo), interval.hi);
}

std::vector<PinnedPair> active_positions(const EntryOrdering& ordering, const DiffStats& stats) {
    std::vector<PinnedPair> positions;
    if (stats.degenerate) return positions;
    const ValueTable table = make_table(ordering, stats);
    std::vector<bool> active(table.size(), false);
    active.front() = active.back() = true;  // the maxD pair
    for (int vi = 0; vi + 1 < table.size(); ++vi) {
        if (close(table.value(vi + 1) - table.value(vi), stats.min_diff)) {
            active[vi] = true;
            active[vi + 1] = true;
        }
    }
    const int n = ordering.n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const int vi = table.index_of(ordering.values[ordering.rank_of(i, j)]);
            if (vi >= 0 && active[vi]) positions.push_back(PinnedPair{i, j});
        }
    return positions;
}

namespace {

int upper_triangle_count(int n) { return n * (n + 1) / 2; }

PinnedPair nth_upper_pair(int n, int index) {
    for (int k = 0; k < n; ++k) {
        const int row = n - k;
        if (index < row) return PinnedPair{k, k + index};
        index -= row;
    }
    throw std::logic_error("nth_upper_pair: index out of range");
}

struct MoveEval {
    int rank = 0;
    double proposed = 0.0;
    PreservationInterval interval;
    bool skipped = true;
    double applied = 0.0;
    bool landed = false;
    double landing_value = 0.0;
    double dr_after = 0.0;
};

// Resolves one candidate move end to end: bounds, interval, heuristic
// proposal, clamp, and the admissibility/backoff decision. An applied
// change always sits strictly inside the preservation interval, so new
// energy ties with other subspaces cannot appear; landings snap the
// coefficient bit-exactly onto the target value.
MoveEval evaluate_move(const QuboInstance& q, const EntryOrdering& ordering,
                       const DiffStats& stats, PinnedPair pair, const CompressionConfig& config,
                       int iteration) {
    MoveEval eval;
    eval.rank = ordering.rank_of(pair.k, pair.l);
    const std::uint64_t seed =
        mix_seed(mix_seed(config.rng_seed, static_cast<std::uint64_t>(iteration) + 1),
                 static_cast<std::uint64_t>(pair.k) * ordering.n + pair.l + 1);
    const SubspaceBounds bounds =
        compute_bounds(q, pair, config.bound_method, seed, config.local_search_restarts,
                       config.roof_dual_precision, config.enum_limit);
    eval.interval = preservation_interval(bounds);

    // Only the all-ones assignment of the pinned pair feels the change.
    // When the bound tests settle where the optimum lives relative to that
    // subspace, one side of the interval becomes unconstrained: raising an
    // excluded subspace or lowering a certainly-optimal one cannot lose
    // any optimum.
    const FixingResult fixing = variable_fixing_check(bounds);
    const int affected = pair.diagonal() ? 1 : 3;
    if (fixing.certified_non_optimal[affected]) eval.interval.hi = kInf;
    if (fixing.optimal_assignment && *fixing.optimal_assignment == affected)
        eval.interval.lo = -kInf;

    const DrChangeBounds dcb = dr_change_bounds(ordering, stats, eval.rank);
    switch (config.heuristic) {
        case Heuristic::kG:
            eval.proposed = heuristic_g(ordering, stats, eval.rank, dcb);
            break;
        case Heuristic::kG0:
            eval.proposed = heuristic_g0(ordering, stats, eval.rank, dcb);
            break;
        case Heuristic::kM:
            eval.proposed =
                heuristic_m(ordering, stats, eval.rank, order_neighbor_bounds(ordering, eval.rank));
            break;
    }

    const double w = clamp_final(eval.proposed, eval.interval);
    eval.dr_after = stats.dr_bits;
    if (std::abs(w) <= kAbsTol) return eval;  // nothing to apply

    double escale = 1.0;
    for (int a = 0; a < bounds.num_assignments(); ++a) {
        escale = std::max(escale, std::abs(bounds.by_assignment[a].lower));
        escale = std::max(escale, std::abs(bounds.by_assignment[a].upper));
    }
    const double backoff = std::max(1e-7 * std::abs(w), 1e-8 * escale);

    const ValueTable table = make_table(ordering, stats);
    const double ql = ordering.values[eval.rank];
    const int own_vi = table.index_of(ql);
    const int land_vi = table.index_of(ql + w, config.merge_tolerance);

    if (land_vi >= 0) {
        const double w_land = table.value(land_vi) - ql;
        if (std::abs(w_land) <= kAbsTol) return eval;  // landing on its own value
        // A landing on the interval edge would create a new tied optimum;
        // it cannot be backed off without losing the landing, so skip.
        if (w_land < eval.interval.lo + backoff || w_land > eval.interval.hi - backoff)
            return eval;
        eval.skipped = false;
        eval.landed = true;
        eval.landing_value = table.value(land_vi);
        eval.applied = w_land;
    } else {
        double w_final = w;
        const bool at_hi = eval.interval.hi > 0.0 && close(w, eval.interval.hi);
        const bool at_lo = eval.interval.lo < 0.0 && close(w, eval.interval.lo);
        if (at_hi || at_lo) {
            w_final = w - (w > 0.0 ? backoff : -backoff);
            if (w_final == 0.0 || (w > 0.0) != (w_final > 0.0)) return eval;
        }
        if (!distance_kept(table, own_vi, stats.min_diff, ql + w_final)) return eval;
        eval.skipped = false;
        eval.applied = w_final;
    }

    QuboInstance scratch = q;
    scratch.set_coeff(pair.k, pair.l, eval.landed ? eval.landing_value : ql + eval.applied);
    const DiffStats after = diff_stats(scratch);
    eval.dr_after = after.degenerate ? 0.0 : after.dr_bits;
    return eval;
}

}  // namespace

CompressionResult compress(const QuboInstance& q0, const CompressionConfig& config) {
    if (config.max_iterations < 1)
        throw std::invalid_argument("compress: max_iterations must be >= 1");
    if (!(config.merge_tolerance > 0.0))
        throw std::invalid_argument("compress: merge_tolerance must be positive");
    if (config.local_search_restarts < 1)
        throw std::invalid_argument("compress: local_search_restarts must be >= 1");

    QuboInstance q = q0;
    Rng rng(config.rng_seed);
    int cursor = 0;
    CompressionTrace trace;
    {
        const DiffStats s0 = diff_stats(q);
        trace.initial_dr = s0.degenerate ? 0.0 : s0.dr_bits;
    }

    const int n = q.size();
    for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
        const DiffStats stats = diff_stats(q);
        if (stats.degenerate) break;  // no gradations left to encode
        const EntryOrdering ordering = entry_ordering(q);

        PinnedPair pair{0, 0};
        std::optional<MoveEval> eval;
        switch (config.selection) {
            case Selection::kRandom:
                pair = nth_upper_pair(n, static_cast<int>(rng.below(upper_triangle_count(n))));
                break;
            case Selection::kSequential:
                pair = nth_upper_pair(n, cursor);
                cursor = (cursor + 1) % upper_triangle_count(n);
                break;
            case Selection::kGreedyImpact: {
                std::vector<PinnedPair> candidates = active_positions(ordering, stats);
                if (candidates.empty()) {
                    pair = nth_upper_pair(n, static_cast<int>(rng.below(upper_triangle_count(n))));
                    break;
                }
                std::vector<MoveEval> evals;
                evals.reserve(candidates.size());
                double best = -kInf;
                for (const PinnedPair& candidate : candidates) {
                    evals.push_back(evaluate_move(q, ordering, stats, candidate, config, iteration));
                    best = std::max(best, stats.dr_bits - evals.back().dr_after);
                }
                std::vector<int> tied;
                for (std::size_t c = 0; c < candidates.size(); ++c)
                    if (close(stats.dr_bits - evals[c].dr_after, best, kRelTol, kAbsTol))
                        tied.push_back(static_cast<int>(c));
                const int pick = tied[static_cast<std::size_t>(rng.below(tied.size()))];
                pair = candidates[pick];
                eval = evals[pick];
                if (best <= kAbsTol) {
                    // No candidate improves the DR; applying one anyway
                    // would only spend optimum-separation margin.
                    eval->skipped = true;
                    eval->applied = 0.0;
                    eval->landed = false;
                    eval->dr_after = stats.dr_bits;
                }
                break;
            }
        }
        if (!eval) eval = evaluate_move(q, ordering, stats, pair, config, iteration);

        const double ql = ordering.values[eval->rank];
        double value_after = ql;
        if (!eval->skipped) {
            value_after = eval->landed ? eval->landing_value : ql + eval->applied;
            q.set_coeff(pair.k, pair.l, value_after);
            ++trace.applied_count;
        } else {
            ++trace.skipped_count;
        }
        trace.records.push_back(TraceRecord{iteration, pair.k, pair.l, eval->rank, eval->proposed,
                                            eval->interval.lo, eval->interval.hi,
                                            eval->skipped ? 0.0 : eval->applied, stats.dr_bits,
                                            eval->dr_after, eval->skipped, value_after});
    }

    const DiffStats sf = diff_stats(q);
    trace.final_dr = sf.degenerate ? 0.0 : sf.dr_bits;
    return CompressionResult{std::move(q), std::move(trace)};
}

std::string CompressionTrace::to_csv() const {
    std::ostringstream out;
    out << "iter,k,l,rank,w_proposed,y_lo,y_hi,w_applied,dr_before,dr_after,skipped\n";
    for (const TraceRecord& r : records) {
        out << r.iteration << "," << r.k << "," << r.l << "," << r.rank << ","
            << format_double(r.w_proposed) << "," << format_double(r.y_lo) << ","
            << format_double(r.y_hi) << "," << format_double(r.w_applied) << ","
            << format_double(r.dr_before) << "," << format_double(r.dr_after) << ","
            << (r.skipped ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string CompressionTrace::to_json_lines() const {
    std::ostringstream out;
    for (const TraceRecord& r : records) {
        nlohmann::json record{{"iter", r.iteration},        {"k", r.k},
                              {"l", r.l},                   {"rank", r.rank},
                              {"w_proposed", r.w_proposed}, {"y_lo", r.y_lo},
                              {"y_hi", r.y_hi},             {"w_applied", r.w_applied},
                              {"dr_before", r.dr_before},   {"dr_after", r.dr_after},
                              {"skipped", r.skipped},       {"value_after", r.value_after}};
        out << record.dump() << "\n";
    }
    return out.str();
}

std::string to_string(Heuristic h) {
    switch (h) {
        case Heuristic::kG: return "G";
        case Heuristic::kG0: return "G0";
        case Heuristic::kM: return "M";
    }
    return "?";
}

std::string to_string(Selection s) {
    switch (s) {
        case Selection::kRandom: return "random";
        case Selection::kSequential: return "sequential";
        case Selection::kGreedyImpact: return "greedy";
    }
    return "?";
}

}  // namespace qdr
