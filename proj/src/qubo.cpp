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

#include "qdr/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace qdr {

namespace {

void check_enumerable(const QuboInstance& q, int limit) {
    if (q.size() > limit || q.size() > kMaxEnumBits)
        throw limit_error("enumeration over " + std::to_string(q.size()) +
                          " variables exceeds the limit of " +
                          std::to_string(std::min(limit, kMaxEnumBits)));
}

// Visits every assignment exactly once in Gray-code order, maintaining the
// energy and the per-variable flip gains incrementally (O(n) per step).
template <class Visit>
void gray_walk(const QuboInstance& q, Visit&& visit) {
    const int n = q.size();
    const Eigen::MatrixXd s = q.symmetrized();
    Eigen::VectorXd gain = s.diagonal();  // flip gains at x = 0
    double value = 0.0;
    Bits mask = 0;
    visit(mask, value);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int k = std::countr_zero(step);
        const bool was_set = (mask >> k) & 1u;
        value += was_set ? -gain[k] : gain[k];
        mask ^= Bits{1} << k;
        const double sign = was_set ? -1.0 : 1.0;
        gain += sign * s.col(k);
        gain[k] -= sign * s(k, k);  // a variable's gain excludes its own bit
        visit(mask, value);
    }
}

}  // namespace

QuboInstance::QuboInstance(Eigen::MatrixXd coeffs) : n_(static_cast<int>(coeffs.rows())), q_(std::move(coeffs)) {
    if (n_ < 1 || q_.cols() != n_)
        throw std::invalid_argument("QuboInstance: matrix must be square and nonempty");
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (!std::isfinite(q_(i, j)))
                throw std::invalid_argument("QuboInstance: coefficients must be finite");
            if (i > j && q_(i, j) != 0.0)
                throw std::invalid_argument("QuboInstance: strict lower triangle must be zero");
        }
    }
}

QuboInstance QuboInstance::zero(int n) {
    if (n < 1) throw std::invalid_argument("QuboInstance::zero: n must be positive");
    return QuboInstance(Eigen::MatrixXd::Zero(n, n));
}

void QuboInstance::set_coeff(int i, int j, double value) {
    if (i < 0 || j >= n_ || i > j)
        throw std::invalid_argument("QuboInstance::set_coeff: need 0 <= i <= j < n");
    if (!std::isfinite(value)) throw std::invalid_argument("QuboInstance::set_coeff: value must be finite");
    q_(i, j) = value;
}

double QuboInstance::max_abs_coeff() const { return q_.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd QuboInstance::symmetrized() const {
    Eigen::MatrixXd s = q_ + q_.transpose();
    s.diagonal() = q_.diagonal();
    return s;
}

double energy(const QuboInstance& q, const BitVector& x) {
    const int n = q.size();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("energy: bit vector length does not match instance size");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (x[i] > 1) throw std::invalid_argument("energy: entries must be 0 or 1");
        if (!x[i]) continue;
        acc += q.coeff(i, i);
        for (int j = i + 1; j < n; ++j)
            if (x[j]) acc += q.coeff(i, j);
    }
    return acc;
}

double energy(const QuboInstance& q, Bits x) {
    const int n = q.size();
    if (n > kMaxEnumBits) throw limit_error("energy(Bits): instance too large for packed assignments");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!((x >> i) & 1u)) continue;
        acc += q.coeff(i, i);
        for (int j = i + 1; j < n; ++j)
            if ((x >> j) & 1u) acc += q.coeff(i, j);
    }
    return acc;
}

BitVector unpack_bits(Bits mask, int n) {
    BitVector x(n);
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    return x;
}

Bits pack_bits(const BitVector& x) {
    if (x.size() > static_cast<std::size_t>(kMaxEnumBits))
        throw limit_error("pack_bits: vector too long for packed assignments");
    Bits mask = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) mask |= Bits{1} << i;
    return mask;
}

std::string bits_to_string(Bits mask, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s[i] = '1';
    return s;
}

SolveResult brute_force_minima(const QuboInstance& q, int limit) {
    check_enumerable(q, limit);
    double best = std::numeric_limits<double>::infinity();
    gray_walk(q, [&](Bits, double value) { best = std::min(best, value); });
    const double tol = energy_tie_tolerance(best);
    SolveResult result;
    result.min_value = best;
    gray_walk(q, [&](Bits mask, double value) {
        if (value <= best + tol) result.minimizers.push_back(mask);
    });
    std::sort(result.minimizers.begin(), result.minimizers.end());
    return result;
}

std::vector<double> all_energies(const QuboInstance& q, int limit) {
    check_enumerable(q, limit);
    std::vector<double> energies(std::size_t{1} << q.size());
    gray_walk(q, [&](Bits mask, double value) { energies[mask] = value; });
    return energies;
}

QuboInstance scale(const QuboInstance& q, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("scale: alpha must be positive");
    return QuboInstance(alpha * q.coeffs());
}

double round_half_up(double v) { return std::floor(v + 0.5); }

QuboInstance round_entries(const QuboInstance& q) {
    Eigen::MatrixXd m = q.coeffs();
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = round_half_up(m(i, j));
    return QuboInstance(std::move(m));
}

QuboInstance rounding_error_matrix(const QuboInstance& q, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("rounding_error_matrix: alpha must be positive");
    const int n = q.size();
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double scaled = alpha * q.coeff(i, j);
            e(i, j) = round_half_up(scaled) - scaled;
        }
    return QuboInstance(std::move(e));
}

DiffStats diff_stats(const QuboInstance& q) {
    const int n = q.size();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) values.push_back(q.coeff(i, j));
    std::sort(values.begin(), values.end());

    DiffStats stats;
    for (double v : values) {
        if (stats.distinct_values.empty() || !close(stats.distinct_values.back(), v))
            stats.distinct_values.push_back(v);
    }
    const std::size_t k = stats.distinct_values.size();
    if (k < 2) {
        stats.degenerate = true;
        return stats;
    }
    stats.max_diff = stats.distinct_values.back() - stats.distinct_values.front();
    stats.min_diff = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < k; ++i)
        stats.min_diff = std::min(stats.min_diff, stats.distinct_values[i + 1] - stats.distinct_values[i]);
    stats.dr_bits = std::log2(stats.max_diff / stats.min_diff);
    return stats;
}

EntryOrdering entry_ordering(const QuboInstance& q) {
    const int n = q.size();
    EntryOrdering ordering;
    ordering.n = n;
    ordering.positions.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ordering.positions.emplace_back(i, j);
    std::sort(ordering.positions.begin(), ordering.positions.end(),
              [&](const auto& a, const auto& b) {
                  const double va = q.coeff(a.first, a.second);
                  const double vb = q.coeff(b.first, b.second);
                  if (va != vb) return va < vb;
                  return a < b;
              });
    ordering.values.reserve(ordering.positions.size());
    ordering.rank_by_position.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t r = 0; r < ordering.positions.size(); ++r) {
        const auto [i, j] = ordering.positions[r];
        ordering.values.push_back(q.coeff(i, j));
        ordering.rank_by_position[i * n + j] = static_cast<int>(r);
    }
    return ordering;
}

SpectralGapResult spectral_gap(const QuboInstance& q, int limit) {
    check_enumerable(q, limit);
    double y1 = std::numeric_limits<double>::infinity();
    gray_walk(q, [&](Bits, double value) { y1 = std::min(y1, value); });
    const double tol = energy_tie_tolerance(y1);
    double y2 = std::numeric_limits<double>::infinity();
    gray_walk(q, [&](Bits, double value) {
        if (value > y1 + tol) y2 = std::min(y2, value);
    });
    if (!std::isfinite(y2))
        throw std::domain_error("spectral_gap: objective is constant, no gap exists");
    SpectralGapResult result;
    result.y1 = y1;
    result.y2 = y2;
    result.gamma = y2 - y1;
    const double n = static_cast<double>(q.size());
    result.alpha_star = (n * n + n) / (4.0 * result.gamma);
    return result;
}

bool optimum_included(const QuboInstance& candidate, const QuboInstance& reference, int limit) {
    if (candidate.size() != reference.size())
        throw std::invalid_argument("optimum_included: instances must have equal size");
    check_enumerable(candidate, limit);
    const SolveResult cand = brute_force_minima(candidate, limit);
    double ref_min = std::numeric_limits<double>::infinity();
    gray_walk(reference, [&](Bits, double value) { ref_min = std::min(ref_min, value); });
    const double tol = energy_tie_tolerance(ref_min);
    for (Bits x : cand.minimizers)
        if (energy(reference, x) > ref_min + tol) return false;
    return true;
}

}  // namespace qdr
