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

#ifndef QDR_IO_HPP_INCLUDED
#define QDR_IO_HPP_INCLUDED

#include <iosfwd>
#include <string>

#include "qdr/qubo.hpp"

namespace qdr {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// Text format: '#' comment lines, first data line is n, then "i j v" with
// 0-based indices, i <= j. Omitted entries are zero.
QuboInstance read_qubo_text(std::istream& in);
void write_qubo_text(std::ostream& out, const QuboInstance& q);

// JSON format: {"n": <int>, "entries": [[i, j, v], ...]}.
QuboInstance read_qubo_json(std::istream& in);
void write_qubo_json(std::ostream& out, const QuboInstance& q);

/// Reads a file, dispatching on the ".json" extension.
QuboInstance read_qubo_file(const std::string& path);

/// Writes a file, dispatching on the ".json" extension.
void write_qubo_file(const std::string& path, const QuboInstance& q);

}  // namespace qdr

#endif  // QDR_IO_HPP_INCLUDED
