#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "flatreach/flatnorm.hpp"

namespace flatreach {

namespace {

// Dinic with paired residual edges and current-arc pruning.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

  void add_edge(int from, int to, double cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = int(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0.0});
    head_[to] = int(edges_.size()) - 1;
    max_cap_ = std::max(max_cap_, cap);
  }

  double run(int s, int t) {
    const double eps = 1e-12 * std::max(max_cap_, 1.0);
    double total = 0.0;
    while (bfs(s, t, eps)) {
      cur_ = head_;
      for (;;) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity(), eps);
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Residual reachability from s after run().
  std::vector<char> source_side(int s) const {
    const double eps = 1e-12 * std::max(max_cap_, 1.0);
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].residual > eps && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          q.push(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    int next;
    double residual;
  };

  bool bfs(int s, int t, double eps) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].residual > eps && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double limit, double eps) {
    if (u == t) return limit;
    for (int& e = cur_[u]; e != -1; e = edges_[e].next) {
      Edge& fwd = edges_[e];
      if (fwd.residual > eps && level_[fwd.to] == level_[u] + 1) {
        const double pushed = dfs(fwd.to, t, std::min(limit, fwd.residual), eps);
        if (pushed > 0.0) {
          fwd.residual -= pushed;
          edges_[e ^ 1].residual += pushed;
          return pushed;
        }
      }
    }
    level_[u] = -1;
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<int> cur_;
  std::vector<int> level_;
  std::vector<Edge> edges_;
  double max_cap_ = 0.0;
};

}  // namespace

MaxflowResult maxflow_mincut(const CutGraph& graph) {
  FlowNetwork net(graph.num_nodes());
  for (const CutGraph::Arc& a : graph.arcs) net.add_edge(a.from, a.to, a.capacity);
  net.run(graph.source(), graph.sink());
  const std::vector<char> in_source = net.source_side(graph.source());

  MaxflowResult result;
  result.partition = GridMask(graph.width, graph.height, graph.spacing);
  for (int y = 0; y < graph.height; ++y)
    for (int x = 0; x < graph.width; ++x)
      result.partition.set(x, y, in_source[std::size_t(y) * graph.width + x] != 0);

  // Report the cut capacity of the partition, summed in arc order, so
  // max-flow/min-cut duality holds exactly for the returned pair.
  double cut = 0.0;
  for (const CutGraph::Arc& a : graph.arcs)
    if (in_source[a.from] && !in_source[a.to]) cut += a.capacity;
  result.flow_value = cut;
  return result;
}

}  // namespace flatreach
