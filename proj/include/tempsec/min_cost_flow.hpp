#ifndef TEMPSEC_MIN_COST_FLOW_HPP
#define TEMPSEC_MIN_COST_FLOW_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace tempsec {

/// Successive-shortest-paths min-cost flow with potentials.  Edge costs may
/// be negative as long as the input graph is acyclic; initial potentials
/// come from one pass over nodes in increasing index order, so callers must
/// number nodes topologically (natural here: nodes are sorted event times).
class MinCostFlow {
 public:
  explicit MinCostFlow(std::int32_t nodes) : head_(nodes, -1) {}

  // Returns the edge id; the reverse edge is id ^ 1.
  std::int32_t add_edge(std::int32_t from, std::int32_t to, double cap,
                        double cost) {
    assert(from < to);
    edges_.push_back({to, head_[from], cap, cost});
    head_[from] = static_cast<std::int32_t>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0.0, -cost});
    head_[to] = static_cast<std::int32_t>(edges_.size()) - 1;
    return static_cast<std::int32_t>(edges_.size()) - 2;
  }

  double flow_on(std::int32_t edge_id) const { return edges_[edge_id ^ 1].cap; }

  /// Sends up to `limit` units from s to t, stopping once the shortest
  /// path cost turns nonnegative; returns (flow, cost).
  std::pair<double, double> min_cost_flow(std::int32_t s, std::int32_t t,
                                          double limit) {
    const double inf = std::numeric_limits<double>::infinity();
    const std::int32_t n = static_cast<std::int32_t>(head_.size());
    std::vector<double> pot(n, inf);
    pot[s] = 0.0;
    for (std::int32_t u = 0; u < n; ++u) {
      if (pot[u] == inf) continue;
      for (std::int32_t e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap <= 0.0 || edges_[e].to < u) continue;
        pot[edges_[e].to] = std::min(pot[edges_[e].to], pot[u] + edges_[e].cost);
      }
    }
    if (pot[t] == inf) return {0.0, 0.0};

    double flow = 0.0, cost = 0.0;
    std::vector<double> dist(n);
    std::vector<std::int32_t> par_edge(n);
    while (flow < limit) {
      dist.assign(n, inf);
      dist[s] = 0.0;
      using QE = std::pair<double, std::int32_t>;
      std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::int32_t e = head_[u]; e != -1; e = edges_[e].next) {
          if (edges_[e].cap <= 0.0) continue;
          const std::int32_t v = edges_[e].to;
          const double nd = d + edges_[e].cost + pot[u] - pot[v];
          if (nd < dist[v] - 1e-15) {
            dist[v] = nd;
            par_edge[v] = e;
            pq.push({nd, v});
          }
        }
      }
      if (dist[t] == inf) break;
      const double true_dist = dist[t] + pot[t] - pot[s];
      if (true_dist >= 0.0) break;  // idle routing is free, stop here
      double push = limit - flow;
      for (std::int32_t v = t; v != s; v = edges_[par_edge[v] ^ 1].to)
        push = std::min(push, edges_[par_edge[v]].cap);
      for (std::int32_t v = t; v != s; v = edges_[par_edge[v] ^ 1].to) {
        edges_[par_edge[v]].cap -= push;
        edges_[par_edge[v] ^ 1].cap += push;
      }
      flow += push;
      cost += push * true_dist;
      for (std::int32_t u = 0; u < n; ++u)
        if (pot[u] < inf) pot[u] += std::min(dist[u], dist[t]);
    }
    return {flow, cost};
  }

 private:
  struct Edge {
    std::int32_t to;
    std::int32_t next;
    double cap;
    double cost;
  };
  std::vector<std::int32_t> head_;
  std::vector<Edge> edges_;
};

}  // namespace tempsec

#endif
