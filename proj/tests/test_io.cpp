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

#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "qdr/io.hpp"

using namespace qdr;

TEST_CASE("text format round trip") {
    const QuboInstance q = qdr::testing::random_instance(6, 77);
    std::ostringstream out;
    write_qubo_text(out, q);
    std::istringstream in(out.str());
    const QuboInstance back = read_qubo_text(in);
    CHECK(back.coeffs() == q.coeffs());
}

TEST_CASE("text format parsing") {
    SUBCASE("comments and omitted entries") {
        std::istringstream in("# header\n2\n# middle\n0 1 2.5\n");
        const QuboInstance q = read_qubo_text(in);
        CHECK(q.size() == 2);
        CHECK(q.coeff(0, 1) == 2.5);
        CHECK(q.coeff(0, 0) == 0.0);
    }
    SUBCASE("errors carry line numbers") {
        std::istringstream in("2\n0 0 1\n1 0 2\n");
        try {
            read_qubo_text(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("rejects duplicates, bad indices, trailing junk") {
        std::istringstream dup("2\n0 1 1\n0 1 2\n");
        CHECK_THROWS_AS(read_qubo_text(dup), parse_error);
        std::istringstream range("2\n0 5 1\n");
        CHECK_THROWS_AS(read_qubo_text(range), parse_error);
        std::istringstream junk("2\n0 1 1 9\n");
        CHECK_THROWS_AS(read_qubo_text(junk), parse_error);
        std::istringstream empty("");
        CHECK_THROWS_AS(read_qubo_text(empty), parse_error);
    }
}

TEST_CASE("json format round trip") {
    const QuboInstance q = qdr::testing::example3();
    std::ostringstream out;
    write_qubo_json(out, q);
    std::istringstream in(out.str());
    CHECK(read_qubo_json(in).coeffs() == q.coeffs());

    std::istringstream bad("{\"n\": 2}");
    CHECK_THROWS_AS(read_qubo_json(bad), parse_error);
}

TEST_CASE("full-precision doubles survive the text format") {
    QuboInstance q = QuboInstance::zero(2);
    q.set_coeff(0, 0, 0.1 + 0.2);  // = 0.30000000000000004
    q.set_coeff(0, 1, -1.0 / 3.0);
    std::ostringstream out;
    write_qubo_text(out, q);
    std::istringstream in(out.str());
    const QuboInstance back = read_qubo_text(in);
    CHECK(back.coeff(0, 0) == q.coeff(0, 0));
    CHECK(back.coeff(0, 1) == q.coeff(0, 1));
}
