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

#include "qdr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qdr {

namespace {

constexpr int kMaxDimension = 1 << 20;

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

QuboInstance build_instance(int n, const std::vector<std::tuple<int, int, double>>& entries,
                            const std::vector<int>& lines) {
    if (n < 1 || n > kMaxDimension) throw parse_error("dimension out of range");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        const auto [i, j, v] = entries[idx];
        const int line = idx < lines.size() ? lines[idx] : -1;
        if (i < 0 || j < 0 || i >= n || j >= n) throw parse_error("index out of range", line);
        if (i > j) throw parse_error("entry below the diagonal (need i <= j)", line);
        if (!std::isfinite(v)) throw parse_error("coefficient must be finite", line);
        if (seen(i, j)) throw parse_error("duplicate entry", line);
        seen(i, j) = true;
        m(i, j) = v;
    }
    return QuboInstance(std::move(m));
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer the shorter representation when it round-trips.
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.15g", v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    return back == v ? shorter : buf;
}

QuboInstance read_qubo_text(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::tuple<int, int, double>> entries;
    std::vector<int> entry_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n)) throw parse_error("expected dimension n", line_no);
            std::string rest;
            if (fields >> rest) throw parse_error("unexpected trailing data after n", line_no);
            continue;
        }
        int i = 0, j = 0;
        double v = 0.0;
        if (!(fields >> i >> j >> v)) throw parse_error("expected entry 'i j v'", line_no);
        std::string rest;
        if (fields >> rest) throw parse_error("unexpected trailing data in entry", line_no);
        entries.emplace_back(i, j, v);
        entry_lines.push_back(line_no);
    }
    if (n < 0) throw parse_error("missing dimension line");
    return build_instance(n, entries, entry_lines);
}

void write_qubo_text(std::ostream& out, const QuboInstance& q) {
    const int n = q.size();
    out << "# qubo: n then 'i j v' entries, 0-based, i <= j, omitted = 0\n";
    out << n << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (q.coeff(i, j) != 0.0)
                out << i << " " << j << " " << format_double(q.coeff(i, j)) << "\n";
}

QuboInstance read_qubo_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
        throw parse_error("JSON instance requires fields 'n' and 'entries'");
    if (!doc["n"].is_number_integer()) throw parse_error("'n' must be an integer");
    const int n = doc["n"].get<int>();
    std::vector<std::tuple<int, int, double>> entries;
    for (const auto& e : doc["entries"]) {
        if (!e.is_array() || e.size() != 3) throw parse_error("each entry must be [i, j, v]");
        entries.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    return build_instance(n, entries, {});
}

void write_qubo_json(std::ostream& out, const QuboInstance& q) {
    nlohmann::json entries = nlohmann::json::array();
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (q.coeff(i, j) != 0.0) entries.push_back({i, j, q.coeff(i, j)});
    nlohmann::json doc{{"n", n}, {"entries", entries}};
    out << doc.dump(2) << "\n";
}

namespace {

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

}  // namespace

QuboInstance read_qubo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return has_json_extension(path) ? read_qubo_json(in) : read_qubo_text(in);
}

void write_qubo_file(const std::string& path, const QuboInstance& q) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file: " + path);
    if (has_json_extension(path))
        write_qubo_json(out, q);
    else
        write_qubo_text(out, q);
}

}  // namespace qdr
