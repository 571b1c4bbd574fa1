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

#ifndef QDR_DETAIL_MAXFLOW_HPP_INCLUDED
#define QDR_DETAIL_MAXFLOW_HPP_INCLUDED

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace qdr::detail {

/// Dinic max flow on integer capacities. Exact by construction, which the
/// roof-dual bound relies on.
class MaxFlow {
  public:
    explicit MaxFlow(int num_nodes) : graph_(num_nodes) {}

    void add_edge(int from, int to, long long capacity) {
        graph_[from].push_back({to, capacity, static_cast<int>(graph_[to].size())});
        graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
    }

    long long solve(int source, int sink) {
        long long flow = 0;
        while (build_levels(source, sink)) {
            iter_.assign(graph_.size(), 0);
            long long pushed;
            while ((pushed = augment(source, sink, std::numeric_limits<long long>::max())) > 0)
                flow += pushed;
        }
        return flow;
    }

  private:
    struct Edge {
        int to;
        long long capacity;
        int reverse;
    };

    bool build_levels(int source, int sink) {
        level_.assign(graph_.size(), -1);
        std::queue<int> queue;
        level_[source] = 0;
        queue.push(source);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (const Edge& e : graph_[v]) {
                if (e.capacity > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[v] + 1;
                    queue.push(e.to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    long long augment(int v, int sink, long long limit) {
        if (v == sink) return limit;
        for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
            Edge& e = graph_[v][i];
            if (e.capacity <= 0 || level_[e.to] != level_[v] + 1) continue;
            const long long pushed = augment(e.to, sink, std::min(limit, e.capacity));
            if (pushed > 0) {
                e.capacity -= pushed;
                graph_[e.to][e.reverse].capacity += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<std::vector<Edge>> graph_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace qdr::detail

#endif  // QDR_DETAIL_MAXFLOW_HPP_INCLUDED
