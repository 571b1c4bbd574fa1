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

#ifndef QDR_APPROX_HPP_INCLUDED
#define QDR_APPROX_HPP_INCLUDED

#include <algorithm>
#include <cmath>

namespace qdr {

/// Relative tolerance used to merge nearly equal coefficient values.
/// The compression loop intentionally sets values exactly equal; the
/// tolerance only has to absorb accumulated floating-point error.
inline constexpr double kRelTol = 1e-9;

/// Absolute tolerance floor for comparisons near zero.
inline constexpr double kAbsTol = 1e-12;

/// True when a and b agree within the combined relative/absolute tolerance.
inline bool close(double a, double b, double rel = kRelTol, double abs = kAbsTol) {
    return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

/// a >= b, allowing b's tolerance band.
inline bool approx_geq(double a, double b, double rel = kRelTol, double abs = kAbsTol) {
    return a >= b - std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

/// a <= b, allowing b's tolerance band.
inline bool approx_leq(double a, double b, double rel = kRelTol, double abs = kAbsTol) {
    return approx_geq(b, a, rel, abs);
}

/// Tolerance used when deciding whether two energies tie. Kept relative to
/// the smaller of the magnitudes involved and 1 so that integer-valued
/// instances with huge optima (e.g. subset-sum penalties) are not
/// over-merged.
inline double energy_tie_tolerance(double value) {
    return std::max(kAbsTol, kRelTol * std::max(1.0, std::abs(value)));
}

}  // namespace qdr

#endif  // QDR_APPROX_HPP_INCLUDED
