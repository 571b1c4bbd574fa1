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

#ifndef QDR_QUBO_HPP_INCLUDED
#define QDR_QUBO_HPP_INCLUDED

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdr/approx.hpp"

namespace qdr {

/// Packed assignment of up to kMaxEnumBits binary variables; bit i holds x_i.
using Bits = std::uint32_t;

/// General-length binary vector, entries 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// Thrown when an operation would enumerate more states than allowed.
class limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed instance files. line is 1-based, -1 when unknown.
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Default cap on exhaustive enumeration (2^24 states with incremental
/// updates complete in seconds).
inline constexpr int kDefaultEnumLimit = 24;

/// Hard cap implied by the packed Bits representation.
inline constexpr int kMaxEnumBits = 30;

/// Upper-triangular real coefficient matrix defining the quadratic
/// pseudo-boolean objective x^T Q x over binary vectors x.
///
/// Instances are plain values: copy freely, never shared mutable state.
class QuboInstance {
  public:
    /// Validates that coeffs is square, finite, and has a zero strict lower
    /// triangle.
    explicit QuboInstance(Eigen::MatrixXd coeffs);

    static QuboInstance zero(int n);

    int size() const { return n_; }
    const Eigen::MatrixXd& coeffs() const { return q_; }

    double coeff(int i, int j) const { return q_(i, j); }

    /// Overwrites coefficient (i, j); requires i <= j and a finite value.
    void set_coeff(int i, int j, double value);

    double max_abs_coeff() const;

    /// Q + Q^T with the original diagonal; used for O(n) flip-gain updates.
    Eigen::MatrixXd symmetrized() const;

  private:
    int n_;
    Eigen::MatrixXd q_;
};

/// Global minimum value together with every attaining assignment.
struct SolveResult {
    double min_value = 0.0;
    std::vector<Bits> minimizers;
};

/// Dynamic-range statistics over the distinct coefficient values of an
/// instance (all n^2 positions, so 0 participates whenever n >= 2).
struct DiffStats {
    std::vector<double> distinct_values;  // sorted ascending
    double min_diff = 0.0;                // smallest pairwise difference
    double max_diff = 0.0;                // largest pairwise difference
    double dr_bits = 0.0;                 // log2(max_diff / min_diff)
    bool degenerate = false;              // fewer than two distinct values
};

/// All n^2 matrix positions sorted by value (ties by lexicographic
/// position). Structural lower-triangle zeros participate with value 0.
struct EntryOrdering {
    int n = 0;
    std::vector<std::pair<int, int>> positions;  // rank -> (i, j)
    std::vector<double> values;                  // rank -> value, nondecreasing
    std::vector<int> rank_by_position;           // i * n + j -> rank

    int size() const { return static_cast<int>(values.size()); }
    int rank_of(int i, int j) const { return rank_by_position[i * n + j]; }
};

/// Lowest and second-lowest distinct energies, their gap, and the safe
/// scaling factor alpha* = (n^2 + n) / (4 gamma).
struct SpectralGapResult {
    double y1 = 0.0;
    double y2 = 0.0;
    double gamma = 0.0;
    double alpha_star = 0.0;
};

/// f_Q(x) for a general-length bit vector. Throws on dimension mismatch or
/// non-binary entries.
double energy(const QuboInstance& q, const BitVector& x);

/// f_Q(x) for a packed assignment (requires n <= kMaxEnumBits).
double energy(const QuboInstance& q, Bits x);

BitVector unpack_bits(Bits mask, int n);
Bits pack_bits(const BitVector& x);
std::string bits_to_string(Bits mask, int n);

/// Exhaustive minimization over all 2^n assignments via a Gray-code walk
/// with O(n) incremental energy updates. Energies within
/// energy_tie_tolerance of the minimum count as minimizers.
SolveResult brute_force_minima(const QuboInstance& q, int limit = kDefaultEnumLimit);

/// Energies of all 2^n assignments, indexed by packed mask.
std::vector<double> all_energies(const QuboInstance& q, int limit = kDefaultEnumLimit);

/// alpha * Q. Requires alpha > 0; the minimizer set is unchanged.
QuboInstance scale(const QuboInstance& q, double alpha);

/// Nearest integer, halves rounding up (toward +infinity).
double round_half_up(double v);

/// Element-wise nearest-integer rounding, halves up.
QuboInstance round_entries(const QuboInstance& q);

/// E = round(alpha Q) - alpha Q, entries in (-1/2, 1/2]. The identity
/// round(alpha Q) = alpha Q + E holds by construction.
QuboInstance rounding_error_matrix(const QuboInstance& q, double alpha);

DiffStats diff_stats(const QuboInstance& q);

EntryOrdering entry_ordering(const QuboInstance& q);

/// Requires at least two distinct energies; throws std::domain_error for
/// constant objectives.
SpectralGapResult spectral_gap(const QuboInstance& q, int limit = kDefaultEnumLimit);

/// True iff every global minimizer of candidate is a global minimizer of
/// reference (candidate's optima are included in reference's).
bool optimum_included(const QuboInstance& candidate, const QuboInstance& reference,
                      int limit = kDefaultEnumLimit);

}  // namespace qdr

#endif  // QDR_QUBO_HPP_INCLUDED
