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

#include "qdr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdr/io.hpp"
#include "qdr/metrics.hpp"
#include "qdr/rng.hpp"

namespace qdr {

namespace {

// Flip gains: gain[k] = S_kk + sum_{i != k} x_i S_ik, so flipping bit k
// changes the energy by (1 - 2 x_k) * gain[k].
Eigen::VectorXd initial_gains(const Eigen::MatrixXd& s, const BitVector& x) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd xd(n);
    for (int i = 0; i < n; ++i) xd[i] = x[i] ? 1.0 : 0.0;
    Eigen::VectorXd gain = s * xd;
    for (int k = 0; k < n; ++k)
        if (!x[k]) gain[k] += s(k, k);
    return gain;
}

void apply_flip(const Eigen::MatrixXd& s, BitVector& x, Eigen::VectorXd& gain, int k) {
    const double sign = x[k] ? -1.0 : 1.0;
    x[k] ^= 1u;
    gain += sign * s.col(k);
    gain[k] -= sign * s(k, k);
}

}  // namespace

BitVector local_search(const QuboInstance& q, BitVector start,
                       const std::optional<PinnedAssignment>& pins) {
    const int n = q.size();
    if (static_cast<int>(start.size()) != n)
        throw std::invalid_argument("local_search: start length does not match instance size");
    if (pins) {
        if (pins->k < 0 || pins->l >= n || pins->k > pins->l)
            throw std::invalid_argument("local_search: invalid pinned pair");
        if (start[pins->k] != pins->bit_k() || start[pins->l] != pins->bit_l())
            throw std::invalid_argument("local_search: start does not respect pins");
    }
    const Eigen::MatrixXd s = q.symmetrized();
    Eigen::VectorXd gain = initial_gains(s, start);
    for (;;) {
        int best_k = -1;
        double best_delta = 0.0;
        for (int k = 0; k < n; ++k) {
            if (pins && (k == pins->k || k == pins->l)) continue;
            const double delta = start[k] ? -gain[k] : gain[k];
            if (delta < best_delta) {
                best_delta = delta;
                best_k = k;
            }
        }
        if (best_k < 0) break;
        apply_flip(s, start, gain, best_k);
    }
    return start;
}

AnnealSchedule default_schedule(const QuboInstance& q, int reads) {
    const DiffStats stats = diff_stats(q);
    AnnealSchedule schedule;
    schedule.reads = reads;
    if (!stats.degenerate) {
        schedule.initial_temperature = stats.max_diff;
        schedule.final_temperature = std::max(stats.min_diff / 10.0, 1e-12 * stats.max_diff);
    }
    if (schedule.final_temperature > schedule.initial_temperature)
        schedule.final_temperature = schedule.initial_temperature;
    return schedule;
}

std::string SampleSet::to_csv(double v_star) const {
    std::ostringstream out;
    out << "rank,energy,relative_deviation,bitstring\n";
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const Sample& s = samples[r];
        out << r << "," << format_double(s.energy) << ","
            << format_double(relative_deviation(s.energy, v_star)) << ",";
        for (std::uint8_t b : s.x) out << (b ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

SampleSet simulated_annealing(const QuboInstance& q, const AnnealSchedule& schedule,
                              std::uint64_t seed) {
    if (!(schedule.initial_temperature >= schedule.final_temperature) ||
        !(schedule.final_temperature > 0.0))
        throw std::invalid_argument("simulated_annealing: need T_init >= T_final > 0");
    if (schedule.sweeps < 1 || schedule.reads < 1)
        throw std::invalid_argument("simulated_annealing: sweeps and reads must be >= 1");

    const int n = q.size();
    const Eigen::MatrixXd s = q.symmetrized();
    const double t0 = schedule.initial_temperature;
    const double decay = schedule.sweeps > 1
                             ? std::pow(schedule.final_temperature / t0,
                                        1.0 / static_cast<double>(schedule.sweeps - 1))
                             : 1.0;

    SampleSet set;
    set.samples.reserve(schedule.reads);
    for (int read = 0; read < schedule.reads; ++read) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(read)));
        BitVector x(n);
        for (int i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>(rng.next_u64() & 1u);
        Eigen::VectorXd gain = initial_gains(s, x);
        double temperature = t0;
        for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
            for (int k = 0; k < n; ++k) {
                const double delta = x[k] ? -gain[k] : gain[k];
                if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature))
                    apply_flip(s, x, gain, k);
            }
            temperature *= decay;
        }
        set.samples.push_back(Sample{x, energy(q, x)});
    }
    std::sort(set.samples.begin(), set.samples.end(), [](const Sample& a, const Sample& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.x < b.x;
    });
    return set;
}

QuboInstance ice_perturb(const QuboInstance& q, double sigma, std::uint64_t seed,
                         bool perturb_zeros) {
    if (sigma < 0.0) throw std::invalid_argument("ice_perturb: sigma must be nonnegative");
    if (sigma == 0.0) return q;
    const DiffStats stats = diff_stats(q);
    const double scale = sigma * (stats.degenerate ? 0.0 : stats.max_diff);
    Rng rng(seed);
    QuboInstance out = q;
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (q.coeff(i, j) == 0.0 && !perturb_zeros) continue;
            out.set_coeff(i, j, q.coeff(i, j) + scale * rng.normal());
        }
    return out;
}

}  // namespace qdr
