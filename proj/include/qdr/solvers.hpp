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

#ifndef QDR_SOLVERS_HPP_INCLUDED
#define QDR_SOLVERS_HPP_INCLUDED

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdr/qubo.hpp"

namespace qdr {

/// A pair of variable indices held fixed during constrained search.
/// k == l pins a single variable; assignment packs (x_k, x_l) as a*2+b for
/// the off-diagonal case and a single bit for the diagonal case.
struct PinnedAssignment {
    int k = 0;
    int l = 0;
    int assignment = 0;

    int bit_k() const { return k == l ? assignment : (assignment >> 1); }
    int bit_l() const { return k == l ? assignment : (assignment & 1); }
};

/// Best-improvement single-bit-flip descent; pinned variables never flip.
/// Ties go to the lowest index, so the result is a pure function of the
/// start vector. The returned vector is 1-flip locally optimal.
BitVector local_search(const QuboInstance& q, BitVector start,
                       const std::optional<PinnedAssignment>& pins = std::nullopt);

/// Geometric cooling schedule for simulated annealing.
struct AnnealSchedule {
    double initial_temperature = 1.0;
    double final_temperature = 1e-3;
    int sweeps = 1000;
    int reads = 1000;
};

/// Schedule scaled to the instance: T0 = maxD, Tf = minD / 10 (with safe
/// fallbacks for degenerate instances).
AnnealSchedule default_schedule(const QuboInstance& q, int reads = 1000);

struct Sample {
    BitVector x;
    double energy = 0.0;
};

/// Samples sorted ascending by energy, ties by bit string.
struct SampleSet {
    std::vector<Sample> samples;

    /// CSV rows "rank,energy,relative_deviation,bitstring"; deviations are
    /// computed against the supplied ground-truth minimum.
    std::string to_csv(double v_star) const;
};

/// Independent Metropolis chains (one per read) with geometric temperature
/// decay; each read derives its own rng stream from seed + read index, so
/// results do not depend on execution order.
SampleSet simulated_annealing(const QuboInstance& q, const AnnealSchedule& schedule,
                              std::uint64_t seed);

/// Adds i.i.d. Gaussian noise with standard deviation sigma * maxD(q) to
/// every nonzero upper-triangle coefficient (optionally to explicit zeros
/// as well), modeling analog parameter distortion.
QuboInstance ice_perturb(const QuboInstance& q, double sigma, std::uint64_t seed,
                         bool perturb_zeros = false);

}  // namespace qdr

#endif  // QDR_SOLVERS_HPP_INCLUDED
