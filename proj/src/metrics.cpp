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

#include "qdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdr {

namespace detail {

std::uint64_t count_inversions(std::vector<std::uint32_t> seq) {
    std::vector<std::uint32_t> buffer(seq.size());
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < seq.size(); width *= 2) {
        for (std::size_t lo = 0; lo + width < seq.size(); lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, seq.size());
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (seq[a] <= seq[b]) {
                    buffer[out++] = seq[a++];
                } else {
                    inversions += mid - a;
                    buffer[out++] = seq[b++];
                }
            }
            while (a < mid) buffer[out++] = seq[a++];
            while (b < hi) buffer[out++] = seq[b++];
            std::copy(buffer.begin() + lo, buffer.begin() + hi, seq.begin() + lo);
        }
    }
    return inversions;
}

}  // namespace detail

namespace {

std::uint32_t reverse_bits(std::uint32_t mask, int n) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) out |= std::uint32_t{1} << (n - 1 - i);
    return out;
}

double normalized_inversions(const std::vector<std::uint32_t>& seq) {
    const std::uint64_t k = seq.size();
    const std::uint64_t pairs = k * (k - 1) / 2;
    return static_cast<double>(detail::count_inversions(seq)) / static_cast<double>(pairs);
}

}  // namespace

Ranking induced_ranking(const QuboInstance& q, int limit) {
    const int n = q.size();
    if (n > limit) throw limit_error("induced_ranking: instance exceeds ranking limit");
    const std::vector<double> energies = all_energies(q, limit);
    // Items are lexicographic indices (x_1 most significant).
    Ranking ranking(energies.size());
    for (std::uint32_t lex = 0; lex < ranking.size(); ++lex) ranking[lex] = lex;
    std::sort(ranking.begin(), ranking.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double ea = energies[reverse_bits(a, n)];
        const double eb = energies[reverse_bits(b, n)];
        if (ea != eb) return ea < eb;
        return a < b;
    });
    return ranking;
}

double kendall_tau(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) throw std::invalid_argument("kendall_tau: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("kendall_tau: need at least two items");
    std::vector<std::uint32_t> rank_in_b(b.size());
    for (std::uint32_t r = 0; r < b.size(); ++r) {
        if (b[r] >= b.size()) throw std::invalid_argument("kendall_tau: not a permutation");
        rank_in_b[b[r]] = r;
    }
    std::vector<std::uint32_t> seq(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r] >= a.size()) throw std::invalid_argument("kendall_tau: not a permutation");
        seq[r] = rank_in_b[a[r]];
    }
    return normalized_inversions(seq);
}

double weight_ordering_distance(const QuboInstance& a, const QuboInstance& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("weight_ordering_distance: instances must have equal size");
    const EntryOrdering oa = entry_ordering(a);
    const EntryOrdering ob = entry_ordering(b);
    std::vector<std::uint32_t> seq(oa.values.size());
    for (int r = 0; r < oa.size(); ++r) {
        const auto [i, j] = oa.positions[r];
        seq[r] = static_cast<std::uint32_t>(ob.rank_of(i, j));
    }
    return normalized_inversions(seq);
}

double unique_weight_ratio(const QuboInstance& current, const QuboInstance& original) {
    if (current.size() != original.size())
        throw std::invalid_argument("unique_weight_ratio: instances must have equal size");
    const auto count = [](const QuboInstance& q) {
        const DiffStats stats = diff_stats(q);
        return std::max<std::size_t>(stats.distinct_values.size(), 1);
    };
    return static_cast<double>(count(current)) / static_cast<double>(count(original));
}

bool optimum_correctness(const QuboInstance& rounded, const QuboInstance& original, int limit) {
    if (rounded.size() != original.size())
        throw std::invalid_argument("optimum_correctness: instances must have equal size");
    const double v_star = brute_force_minima(original, limit).min_value;
    const SolveResult rounded_result = brute_force_minima(rounded, limit);
    const Bits witness = rounded_result.minimizers.front();
    const double v = energy(original, witness);
    return std::abs(v - v_star) <= energy_tie_tolerance(v_star);
}

double relative_deviation(double v, double v_star) {
    if (v_star == 0.0)
        throw std::invalid_argument("relative_deviation: undefined for v_star == 0");
    return std::abs((v_star - v) / v_star);
}

}  // namespace qdr
