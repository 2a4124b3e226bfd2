#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "fairmsr/instance.hpp"

namespace fairmsr {

// Directed network with integer capacities and a designated source and sink.
class FlowNetwork {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::int64_t capacity;
  };

  FlowNetwork(std::size_t num_nodes, std::size_t source, std::size_t sink)
      : num_nodes_(num_nodes), source_(source), sink_(sink) {
    if (source >= num_nodes || sink >= num_nodes || source == sink) {
      throw ContractViolation("flow network needs distinct source and sink nodes");
    }
  }

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
    if (from >= num_nodes_ || to >= num_nodes_) throw ContractViolation("edge endpoint out of range");
    if (capacity < 0) throw ContractViolation("negative capacity");
    edges_.push_back({from, to, capacity});
    return edges_.size() - 1;
  }

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t num_nodes_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<Edge> edges_;
};

struct FlowResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> edge_flow;  // indexed like FlowNetwork::edges()
};

// Maximum flow by Dinic's algorithm: blocking flows along BFS shortest-path
// layers. Integral on integral capacities.
inline FlowResult max_flow(const FlowNetwork& net) {
  struct Arc {
    std::size_t to;
    std::size_t rev;
    std::int64_t residual;
  };
  const std::size_t n = net.num_nodes();
  std::vector<std::vector<Arc>> adj(n);
  std::vector<std::pair<std::size_t, std::size_t>> where;  // edge -> (node, arc)
  where.reserve(net.edges().size());
  for (const auto& e : net.edges()) {
    where.emplace_back(e.from, adj[e.from].size());
    adj[e.from].push_back({e.to, adj[e.to].size() + (e.from == e.to ? 1 : 0), e.capacity});
    adj[e.to].push_back({e.from, adj[e.from].size() - 1, 0});
  }

  const std::size_t s = net.source();
  const std::size_t t = net.sink();
  std::vector<int> level(n);
  std::vector<std::size_t> next(n);

  const auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<std::size_t> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (const auto& a : adj[u]) {
        if (a.residual > 0 && level[a.to] < 0) {
          level[a.to] = level[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  };

  const auto dfs = [&](auto&& self, std::size_t u, std::int64_t pushed) -> std::int64_t {
    if (u == t) return pushed;
    for (std::size_t& i = next[u]; i < adj[u].size(); ++i) {
      Arc& a = adj[u][i];
      if (a.residual <= 0 || level[a.to] != level[u] + 1) continue;
      const std::int64_t got = self(self, a.to, std::min(pushed, a.residual));
      if (got > 0) {
        a.residual -= got;
        adj[a.to][a.rev].residual += got;
        return got;
      }
    }
    return 0;
  };

  FlowResult result;
  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    while (const std::int64_t f = dfs(dfs, s, std::numeric_limits<std::int64_t>::max())) {
      result.value += f;
    }
  }
  result.edge_flow.reserve(net.edges().size());
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const auto [u, a] = where[i];
    result.edge_flow.push_back(net.edges()[i].capacity - adj[u][a].residual);
  }
  return result;
}

}  // namespace fairmsr
