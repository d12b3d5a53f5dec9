// Copyright 2026 The evigame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact max-flow (Edmonds-Karp) on rational capacities.

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <vector>

#include "evigame/rational.hpp"

namespace evigame {

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes) {}

  /// Returns the edge id. `unbounded` edges never saturate.
  std::size_t add_edge(std::size_t from, std::size_t to, Rational capacity,
                       bool unbounded = false) {
    std::size_t id = edges_.size();
    edges_.push_back({from, to, std::move(capacity), 0, unbounded});
    edges_.push_back({to, from, 0, 0, false});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  Rational max_flow(std::size_t source, std::size_t sink) {
    Rational total = 0;
    while (true) {
      std::vector<std::ptrdiff_t> via(adjacency_.size(), -1);
      std::deque<std::size_t> queue{source};
      std::vector<bool> seen(adjacency_.size(), false);
      seen[source] = true;
      while (!queue.empty() && !seen[sink]) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t id : adjacency_[u]) {
          const Edge& e = edges_[id];
          if (seen[e.to] || !has_residual(id)) continue;
          seen[e.to] = true;
          via[e.to] = static_cast<std::ptrdiff_t>(id);
          queue.push_back(e.to);
        }
      }
      if (!seen[sink]) return total;
      bool bounded = false;
      Rational push;
      for (std::size_t v = sink; v != source; v = edges_[static_cast<std::size_t>(via[v])].from) {
        std::size_t id = static_cast<std::size_t>(via[v]);
        if (edges_[id].unbounded) continue;
        Rational r = residual(id);
        if (!bounded || r < push) {
          push = r;
          bounded = true;
        }
      }
      if (!bounded) throw std::logic_error("unbounded augmenting path");
      for (std::size_t v = sink; v != source; v = edges_[static_cast<std::size_t>(via[v])].from) {
        std::size_t id = static_cast<std::size_t>(via[v]);
        edges_[id].flow += push;
        edges_[id ^ 1].flow -= push;
      }
      total += push;
    }
  }

  const Rational& flow(std::size_t edge) const { return edges_[edge].flow; }

  /// Nodes reachable from `source` in the residual graph.
  std::vector<bool> reachable_from(std::size_t source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t id : adjacency_[u]) {
        if (seen[edges_[id].to] || !has_residual(id)) continue;
        seen[edges_[id].to] = true;
        queue.push_back(edges_[id].to);
      }
    }
    return seen;
  }

  /// Nodes that can still reach `sink` in the residual graph.
  std::vector<bool> reaching(std::size_t sink) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::deque<std::size_t> queue{sink};
    seen[sink] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t id : adjacency_[v]) {
        // id leaves v; its twin enters v from edges_[id].to.
        std::size_t twin = id ^ 1;
        std::size_t u = edges_[twin].from;
        if (seen[u] || !has_residual(twin)) continue;
        seen[u] = true;
        queue.push_back(u);
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t from, to;
    Rational capacity;
    Rational flow;
    bool unbounded;
  };

  bool has_residual(std::size_t id) const {
    return edges_[id].unbounded || edges_[id].flow < edges_[id].capacity;
  }
  Rational residual(std::size_t id) const { return edges_[id].capacity - edges_[id].flow; }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

}  // namespace evigame
