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

#include "qdr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qdr/detail/maxflow.hpp"
#include "qdr/io.hpp"
#include "qdr/rng.hpp"
#include "qdr/solvers.hpp"

namespace qdr {

namespace {

void validate_pair(const QuboInstance& q, PinnedPair pair) {
    if (pair.k < 0 || pair.l >= q.size() || pair.k > pair.l)
        throw std::invalid_argument("pinned pair: need 0 <= k <= l < n");
}

void validate_assignment(PinnedPair pair, int assignment) {
    const int count = pair.diagonal() ? 2 : 4;
    if (assignment < 0 || assignment >= count)
        throw std::invalid_argument("assignment out of range for pinned pair");
}

int bit_k(PinnedPair pair, int assignment) {
    return pair.diagonal() ? assignment : (assignment >> 1);
}

int bit_l(PinnedPair pair, int assignment) {
    return pair.diagonal() ? assignment : (assignment & 1);
}

std::string assignment_label(PinnedPair pair, int assignment) {
    if (pair.diagonal()) return assignment ? "1" : "0";
    return std::string(1, '0' + bit_k(pair, assignment)) + std::string(1, '0' + bit_l(pair, assignment));
}

double min_other_lower(const SubspaceBounds& bounds, int assignment) {
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < bounds.num_assignments(); ++a)
        if (a != assignment) best = std::min(best, bounds.by_assignment[a].lower);
    return best;
}

double min_other_upper(const SubspaceBounds& bounds, int assignment) {
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < bounds.num_assignments(); ++a)
        if (a != assignment) best = std::min(best, bounds.by_assignment[a].upper);
    return best;
}

}  // namespace

ReducedQubo pin_variables(const QuboInstance& q, PinnedPair pair, int assignment) {
    validate_pair(q, pair);
    validate_assignment(pair, assignment);
    const int n = q.size();
    const int a = bit_k(pair, assignment);
    const int b = bit_l(pair, assignment);

    ReducedQubo reduced;
    reduced.offset = q.coeff(pair.k, pair.k) * a;
    if (!pair.diagonal())
        reduced.offset += q.coeff(pair.l, pair.l) * b + q.coeff(pair.k, pair.l) * a * b;

    for (int i = 0; i < n; ++i)
        if (i != pair.k && i != pair.l) reduced.free_to_original.push_back(i);
    const int r = static_cast<int>(reduced.free_to_original.size());
    if (r == 0) return reduced;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
    for (int fi = 0; fi < r; ++fi) {
        const int i = reduced.free_to_original[fi];
        double diag = q.coeff(i, i);
        diag += a * q.coeff(std::min(i, pair.k), std::max(i, pair.k));
        if (!pair.diagonal()) diag += b * q.coeff(std::min(i, pair.l), std::max(i, pair.l));
        m(fi, fi) = diag;
        for (int fj = fi + 1; fj < r; ++fj) {
            const int j = reduced.free_to_original[fj];
            m(fi, fj) = q.coeff(std::min(i, j), std::max(i, j));
        }
    }
    reduced.instance = QuboInstance(std::move(m));
    return reduced;
}

SubspaceBounds subspace_bounds_exhaustive(const QuboInstance& q, PinnedPair pair, int limit) {
    validate_pair(q, pair);
    SubspaceBounds bounds;
    bounds.pair = pair;
    for (int a = 0; a < bounds.num_assignments(); ++a) {
        const ReducedQubo reduced = pin_variables(q, pair, a);
        double value = reduced.offset;
        if (reduced.instance) value += brute_force_minima(*reduced.instance, limit).min_value;
        bounds.by_assignment[a] = AssignmentBounds{value, value, "exhaustive"};
    }
    return bounds;
}

double upper_bound_zero_vector(const QuboInstance& q, PinnedPair pair, int assignment) {
    validate_pair(q, pair);
    validate_assignment(pair, assignment);
    const int a = bit_k(pair, assignment);
    const int b = bit_l(pair, assignment);
    if (pair.diagonal()) return q.coeff(pair.k, pair.k) * a;
    return q.coeff(pair.k, pair.k) * a + q.coeff(pair.l, pair.l) * b + q.coeff(pair.k, pair.l) * a * b;
}

double upper_bound_local_search(const QuboInstance& q, PinnedPair pair, int assignment,
                                int restarts, std::uint64_t seed) {
    validate_pair(q, pair);
    validate_assignment(pair, assignment);
    if (restarts < 1) throw std::invalid_argument("upper_bound_local_search: restarts must be >= 1");
    const int n = q.size();
    const PinnedAssignment pins{pair.k, pair.l, assignment};

    BitVector start(n, 0);
    start[pair.k] = static_cast<std::uint8_t>(pins.bit_k());
    start[pair.l] = static_cast<std::uint8_t>(pins.bit_l());
    double best = energy(q, local_search(q, start, pins));

    Rng rng(seed);
    for (int restart = 1; restart < restarts; ++restart) {
        BitVector x(n);
        for (int i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>(rng.next_u64() & 1u);
        x[pair.k] = static_cast<std::uint8_t>(pins.bit_k());
        x[pair.l] = static_cast<std::uint8_t>(pins.bit_l());
        best = std::min(best, energy(q, local_search(q, x, pins)));
    }
    return best;
}

double lower_bound_negative_sum(const QuboInstance& q, PinnedPair pair, int assignment) {
    validate_pair(q, pair);
    validate_assignment(pair, assignment);
    const int n = q.size();
    const auto bit = [&](int i) -> int {
        if (i == pair.k) return bit_k(pair, assignment);
        if (i == pair.l) return bit_l(pair, assignment);
        return 1;
    };
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!bit(i)) continue;
        for (int j = i; j < n; ++j)
            if (bit(j)) acc += std::min(0.0, q.coeff(i, j));
    }
    return acc;
}

double lower_bound_roof_dual(const QuboInstance& q, PinnedPair pair, int assignment,
                             double precision) {
    validate_pair(q, pair);
    validate_assignment(pair, assignment);
    if (!(precision > 0.0)) throw std::invalid_argument("lower_bound_roof_dual: precision must be positive");
    const double floor_bound = lower_bound_negative_sum(q, pair, assignment);

    const ReducedQubo reduced = pin_variables(q, pair, assignment);
    if (!reduced.instance) return std::max(reduced.offset, floor_bound);
    const QuboInstance& g = *reduced.instance;
    const int r = g.size();

    // Effective linear coefficients: every negative quadratic c * x_i x_j
    // is rewritten as c * x_i + |c| * x_i (1 - x_j), folding c into x_i.
    std::vector<double> linear(r);
    for (int i = 0; i < r; ++i) {
        linear[i] = g.coeff(i, i);
        for (int j = i + 1; j < r; ++j) linear[i] += std::min(0.0, g.coeff(i, j));
    }

    double sum_abs = 0.0;
    int terms = 0;
    for (int i = 0; i < r; ++i) {
        if (linear[i] != 0.0) {
            sum_abs += std::abs(linear[i]);
            ++terms;
        }
        for (int j = i + 1; j < r; ++j)
            if (g.coeff(i, j) != 0.0) {
                sum_abs += std::abs(g.coeff(i, j));
                ++terms;
            }
    }
    if (terms == 0) return std::max(reduced.offset, floor_bound);

    // Integer scaling; the factor is capped so total capacity cannot
    // overflow the flow arithmetic.
    const double factor = std::min(precision, static_cast<double>(1ll << 61) / std::max(1.0, sum_abs));
    const auto cap_of = [&](double coeff) { return std::llround(std::abs(coeff) * factor); };

    // Implication network: literal x_i is node i, its complement i + r;
    // node 2r is the source (the constant-1 literal), 2r + 1 the sink.
    const int source = 2 * r;
    const int sink = 2 * r + 1;
    const auto complement = [&](int v) {
        if (v == source) return sink;
        if (v == sink) return source;
        return v < r ? v + r : v - r;
    };
    detail::MaxFlow flow(2 * r + 2);
    const auto add_term = [&](int alpha, int beta, long long capacity) {
        if (capacity == 0) return;
        flow.add_edge(alpha, complement(beta), capacity);
        flow.add_edge(beta, complement(alpha), capacity);
    };

    long long constant = 0;
    for (int i = 0; i < r; ++i) {
        const long long cap = cap_of(linear[i]);
        if (linear[i] > 0.0) {
            add_term(i, source, cap);  // ell * x_i
        } else if (linear[i] < 0.0) {
            constant -= cap;           // ell * x_i = ell + |ell| * (1 - x_i)
            add_term(i + r, source, cap);
        }
        for (int j = i + 1; j < r; ++j) {
            const double c = g.coeff(i, j);
            const long long qcap = cap_of(c);
            if (c > 0.0) {
                add_term(i, j, qcap);      // c * x_i x_j
            } else if (c < 0.0) {
                add_term(i, j + r, qcap);  // |c| * x_i (1 - x_j); c sits in linear[i]
            }
        }
    }

    const long long max_flow = flow.solve(source, sink);
    // Every arc carries the full term weight, so the flow counts each unit
    // of improvement twice. The slack covers the per-coefficient rounding.
    const double bound = reduced.offset +
                         (static_cast<double>(constant) + 0.5 * static_cast<double>(max_flow)) / factor -
                         0.5 * static_cast<double>(terms) / factor;
    return std::max(bound, floor_bound);
}

SubspaceBounds compute_bounds(const QuboInstance& q, PinnedPair pair, BoundMethod method,
                              std::uint64_t seed, int restarts, double precision, int limit) {
    validate_pair(q, pair);
    if (method == BoundMethod::kAuto)
        method = q.size() <= 12 ? BoundMethod::kExhaustive : BoundMethod::kHeuristicRoofDual;
    if (method == BoundMethod::kExhaustive) return subspace_bounds_exhaustive(q, pair, limit);

    const bool roof = method == BoundMethod::kHeuristicRoofDual;
    SubspaceBounds bounds;
    bounds.pair = pair;
    for (int a = 0; a < bounds.num_assignments(); ++a) {
        AssignmentBounds ab;
        ab.upper = upper_bound_local_search(q, pair, a, restarts, mix_seed(seed, a));
        ab.lower = roof ? lower_bound_roof_dual(q, pair, a, precision)
                        : lower_bound_negative_sum(q, pair, a);
        ab.method = roof ? "local_search+roof_dual" : "local_search+negative_sum";
        bounds.by_assignment[a] = ab;
    }
    return bounds;
}

PreservationInterval preservation_interval(const SubspaceBounds& bounds) {
    PreservationInterval interval;
    if (bounds.pair.diagonal()) {
        const AssignmentBounds& zero = bounds.by_assignment[0];
        const AssignmentBounds& one = bounds.by_assignment[1];
        interval.lo = std::min(0.0, zero.upper - one.lower);
        interval.hi = std::max(0.0, zero.lower - one.upper);
        return interval;
    }
    double min_upper = std::numeric_limits<double>::infinity();
    double min_lower = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {  // assignments 00, 01, 10
        min_upper = std::min(min_upper, bounds.by_assignment[a].upper);
        min_lower = std::min(min_lower, bounds.by_assignment[a].lower);
    }
    const AssignmentBounds& both = bounds.by_assignment[3];
    interval.lo = std::min(0.0, min_upper - both.lower);
    interval.hi = std::max(0.0, min_lower - both.upper);
    return interval;
}

FixingResult variable_fixing_check(const SubspaceBounds& bounds) {
    FixingResult result;
    for (int a = 0; a < bounds.num_assignments(); ++a) {
        const AssignmentBounds& ab = bounds.by_assignment[a];
        if (ab.upper < min_other_lower(bounds, a)) result.optimal_assignment = a;
        if (ab.lower > min_other_upper(bounds, a)) result.certified_non_optimal[a] = true;
    }
    return result;
}

std::string SubspaceBounds::to_json() const {
    nlohmann::json assignments = nlohmann::json::array();
    for (int a = 0; a < num_assignments(); ++a) {
        assignments.push_back({{"assignment", assignment_label(pair, a)},
                               {"lower", by_assignment[a].lower},
                               {"upper", by_assignment[a].upper},
                               {"method", by_assignment[a].method}});
    }
    nlohmann::json doc{{"pair", {pair.k, pair.l}}, {"bounds", assignments}};
    return doc.dump();
}

}  // namespace qdr
