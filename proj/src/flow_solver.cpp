#include "cubebm/flow_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cubebm::detail {

FlowSolution solve_transportation(std::span<const std::int64_t> supply, std::span<const std::int64_t> demand,
                                  std::span<const double> cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (cost.size() != m * n) throw std::invalid_argument("solve_transportation: cost matrix has wrong size");
  if (std::accumulate(supply.begin(), supply.end(), std::int64_t{0}) !=
      std::accumulate(demand.begin(), demand.end(), std::int64_t{0})) {
    throw std::invalid_argument("solve_transportation: supply and demand totals differ");
  }
  for (auto s : supply) {
    if (s < 0) throw std::invalid_argument("solve_transportation: negative supply");
  }
  for (auto d : demand) {
    if (d < 0) throw std::invalid_argument("solve_transportation: negative demand");
  }

  FlowSolution sol;
  sol.rows = m;
  sol.cols = n;
  sol.flow.assign(m * n, 0);

  // Node v < m is row v, node m + j is column j.
  const std::size_t nodes = m + n;
  std::vector<double> pot(nodes, 0.0);
  std::vector<std::int64_t> excess(supply.begin(), supply.end());
  std::vector<std::int64_t> deficit(demand.begin(), demand.end());

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes);
  std::vector<std::ptrdiff_t> parent(nodes);
  std::vector<char> done(nodes);

  auto reduced = [&](std::size_t from, std::size_t to, double c) {
    return std::max(0.0, c + pot[from] - pot[to]);
  };

  for (;;) {
    bool any = false;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (excess[i] > 0) {
        dist[i] = 0.0;
        any = true;
      }
    }
    if (!any) break;

    std::ptrdiff_t target = -1;
    for (;;) {
      std::ptrdiff_t u = -1;
      for (std::size_t v = 0; v < nodes; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[static_cast<std::size_t>(u)])) {
          u = static_cast<std::ptrdiff_t>(v);
        }
      }
      if (u < 0) break;
      const auto uu = static_cast<std::size_t>(u);
      done[uu] = 1;
      if (uu >= m) {
        if (deficit[uu - m] > 0) {
          target = u;
          break;
        }
        const std::size_t j = uu - m;
        for (std::size_t i = 0; i < m; ++i) {
          if (done[i] || sol.flow[i * n + j] <= 0) continue;
          const double nd = dist[uu] + reduced(uu, i, -cost[i * n + j]);
          if (nd < dist[i]) {
            dist[i] = nd;
            parent[i] = u;
          }
        }
      } else {
        const std::size_t i = uu;
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t v = m + j;
          if (done[v]) continue;
          const double nd = dist[i] + reduced(i, v, cost[i * n + j]);
          if (nd < dist[v]) {
            dist[v] = nd;
            parent[v] = u;
          }
        }
      }
    }
    if (target < 0) throw std::logic_error("solve_transportation: no augmenting path (inconsistent totals)");

    const double reach = dist[static_cast<std::size_t>(target)];
    for (std::size_t v = 0; v < nodes; ++v) pot[v] += std::min(dist[v], reach);

    std::int64_t delta = deficit[static_cast<std::size_t>(target) - m];
    std::size_t v = static_cast<std::size_t>(target);
    while (parent[v] >= 0) {
      const auto p = static_cast<std::size_t>(parent[v]);
      if (v < m) delta = std::min(delta, sol.flow[v * n + (p - m)]);  // backward arc col p -> row v
      v = p;
    }
    delta = std::min(delta, excess[v]);

    const std::size_t source = v;
    v = static_cast<std::size_t>(target);
    while (parent[v] >= 0) {
      const auto p = static_cast<std::size_t>(parent[v]);
      if (v >= m) {
        sol.flow[p * n + (v - m)] += delta;
      } else {
        sol.flow[v * n + (p - m)] -= delta;
      }
      v = p;
    }
    excess[source] -= delta;
    deficit[static_cast<std::size_t>(target) - m] -= delta;
    ++sol.augmentations;
  }

  sol.row_potential.assign(pot.begin(), pot.begin() + static_cast<std::ptrdiff_t>(m));
  sol.col_potential.assign(pot.begin() + static_cast<std::ptrdiff_t>(m), pot.end());
  return sol;
}

}  // namespace cubebm::detail
