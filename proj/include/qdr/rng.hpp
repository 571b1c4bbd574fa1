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

#ifndef QDR_RNG_HPP_INCLUDED
#define QDR_RNG_HPP_INCLUDED

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qdr {

/// One splitmix64 step; used both as a standalone mixer and to derive
/// independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic combination of a base seed with a stream index. Used so
/// that parallel or reordered execution cannot change results.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
}

/// Seeded random generator with the handful of distributions the project
/// needs. All transforms are hand-rolled on top of mt19937_64 so output is
/// bit-identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        return engine_() % bound;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Standard Cauchy via the inverse CDF tan(pi*(u - 1/2)).
    double cauchy() { return std::tan(std::numbers::pi * (uniform() - 0.5)); }

    /// Triangular distribution with support [lo, hi] and the given mode.
    double triangular(double lo, double mode, double hi) {
        if (!(lo <= mode && mode <= hi && lo < hi))
            throw std::invalid_argument("Rng::triangular: need lo <= mode <= hi, lo < hi");
        const double u = uniform();
        const double cut = (mode - lo) / (hi - lo);
        if (u < cut) return lo + std::sqrt(u * (hi - lo) * (mode - lo));
        return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - mode));
    }

    /// Derives an independent generator for the given stream index.
    Rng fork(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qdr

#endif  // QDR_RNG_HPP_INCLUDED
