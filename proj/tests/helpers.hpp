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

#ifndef QDR_TESTS_HELPERS_HPP_INCLUDED
#define QDR_TESTS_HELPERS_HPP_INCLUDED

#include <vector>

#include "qdr/generators.hpp"
#include "qdr/qubo.hpp"

namespace qdr::testing {

// The 3x3 walkthrough instance used across the docs and tests:
//   [-1   0.4  1  ]
//   [     0.4 -0.8]
//   [         -1.5]
inline QuboInstance example3() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = -1.0;
    m(0, 1) = 0.4;
    m(0, 2) = 1.0;
    m(1, 1) = 0.4;
    m(1, 2) = -0.8;
    m(2, 2) = -1.5;
    return QuboInstance(m);
}

// The 2x2 penalty-weight instance with a huge coupler, and its small twin.
inline QuboInstance example2_large() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = -1.0;
    m(0, 1) = 14380.0;
    m(1, 1) = -2.0;
    return QuboInstance(m);
}

inline QuboInstance example2_small() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = -1.0;
    m(0, 1) = 3.0;
    m(1, 1) = -2.0;
    return QuboInstance(m);
}

inline QuboInstance random_instance(int n, std::uint64_t seed) { return gen_uniform(n, seed); }

// Small-integer instances produce frequent ties and optimum coincidences.
inline QuboInstance random_int_instance(int n, std::uint64_t seed, int span = 2) {
    QuboInstance q = gen_uniform(n, seed);
    QuboInstance out = QuboInstance::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.set_coeff(i, j, std::floor(q.coeff(i, j) * (2 * span + 1) + 0.5));
    return out;
}

inline BitVector bits(std::initializer_list<int> values) {
    BitVector x;
    for (int v : values) x.push_back(static_cast<std::uint8_t>(v));
    return x;
}

}  // namespace qdr::testing

#endif  // QDR_TESTS_HELPERS_HPP_INCLUDED
