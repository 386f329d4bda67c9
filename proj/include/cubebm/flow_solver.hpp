#pragma once

// Exact transportation-problem solver on a complete bipartite graph:
// successive shortest paths with Dijkstra on reduced costs.
//
// Supplies and demands are integers with equal totals; arc costs are
// nonnegative. The returned node potentials satisfy
//   cost(i, j) + row_potential[i] - col_potential[j] >= 0   for all (i, j)
// with equality wherever flow(i, j) > 0.

#include <cstdint>
#include <span>
#include <vector>

namespace cubebm::detail {

struct FlowSolution {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> flow;  // row-major rows x cols
  std::vector<double> row_potential;
  std::vector<double> col_potential;
  std::size_t augmentations = 0;

  std::int64_t at(std::size_t i, std::size_t j) const { return flow[i * cols + j]; }
};

FlowSolution solve_transportation(std::span<const std::int64_t> supply, std::span<const std::int64_t> demand,
                                  std::span<const double> cost);

}  // namespace cubebm::detail
