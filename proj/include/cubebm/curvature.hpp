#pragma once

// Coarse Ricci curvature of finite graphs: kappa(x, y) = 1 - W1(mu_x, mu_y) / d(x, y)
// where mu_x is the ambient measure restricted to the closed ball B(x, eps)
// and renormalized, and d is the graph (shortest path) metric.

#include <algorithm>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubebm/measure.hpp"
#include "cubebm/transport.hpp"

namespace cubebm {

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Simple undirected graph on vertices 0..n-1. Construction rejects
/// self-loops, duplicate edges and out-of-range endpoints; connectivity is
/// checked by the operations that need it.
class Graph {
 public:
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  /// Edge list, one "u v" per line, '#' comments and blank lines ignored.
  /// Ids must be dense: every id in 0..max appears in some edge.
  static Graph parse_edge_list(std::istream& in);
  static Graph load(const std::string& path);
  static Graph hypercube(int dimension);
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph complete(int n);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const;
  const std::vector<int>& neighbors(int v) const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
  bool connected() const;

  /// Nonnegative weights, one per vertex; the default is uniform.
  void set_ambient(std::vector<Rational> weights);
  const std::optional<std::vector<Rational>>& ambient() const { return ambient_; }

  /// Same graph with vertex v renamed perm[v].
  Graph relabeled(const std::vector<int>& perm) const;

  std::vector<int> bfs(int source) const;  // -1 for unreachable

 private:
  void check_vertex(int v) const;

  std::vector<std::vector<int>> adjacency_;
  std::optional<std::vector<Rational>> ambient_;
};

/// Breadth-first distances, one row per source, computed on demand.
class GraphMetric {
 public:
  explicit GraphMetric(const Graph& g) : graph_(&g) {}
  int operator()(int u, int v) const;

 private:
  const Graph* graph_;
  mutable std::unordered_map<int, std::vector<int>> rows_;
};

template <class M = double>
DiscreteMeasure<int, M> ball_measure(const Graph& g, int x, int eps = 1, const GraphMetric* metric = nullptr) {
  if (x < 0 || x >= g.vertex_count()) throw std::invalid_argument("ball_measure: vertex out of range");
  if (eps < 0) throw std::invalid_argument("ball_measure: negative radius");
  std::vector<int> ball;
  if (eps == 1) {
    ball = g.neighbors(x);
    ball.push_back(x);
  } else {
    const std::vector<int> dist = metric ? std::vector<int>{} : g.bfs(x);
    for (int v = 0; v < g.vertex_count(); ++v) {
      const int d = metric ? (*metric)(x, v) : dist[static_cast<std::size_t>(v)];
      if (d >= 0 && d <= eps) ball.push_back(v);
    }
  }
  std::map<int, M> weights;
  bool any = false;
  for (int v : ball) {
    M w(1);
    if (g.ambient()) {
      if constexpr (MassTraits<M>::exact) {
        w = (*g.ambient())[static_cast<std::size_t>(v)];
      } else {
        w = to_double((*g.ambient())[static_cast<std::size_t>(v)]);
      }
    }
    if (w > M(0)) {
      weights[v] = w;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("ball_measure: ball has zero ambient mass");
  return DiscreteMeasure<int, M>::from_weight_map(std::move(weights));
}

template <class M = double>
struct CurvatureRecord {
  int x = 0;
  int y = 0;
  int distance = 0;
  M w1{};
  M kappa{};
};

template <class M = double>
struct CurvatureReport {
  std::vector<CurvatureRecord<M>> edges;
  std::vector<CurvatureRecord<M>> pairs;  // distance 2..cap, when requested
  M min_edge_kappa{};
  std::optional<M> min_pair_kappa;
  bool locality_holds = true;
};

template <class M = double>
CurvatureRecord<M> curvature_record(const Graph& g, int x, int y, const GraphMetric& metric, int eps = 1) {
  if (x == y) throw std::invalid_argument("kappa: x and y must differ");
  const int d = metric(x, y);
  if (d < 0) throw std::invalid_argument("kappa: vertices are in different components");
  const auto mx = ball_measure<M>(g, x, eps, &metric);
  const auto my = ball_measure<M>(g, y, eps, &metric);
  const Metric<int> ground = [&metric](const int& u, const int& v) {
    const int duv = metric(u, v);
    if (duv < 0) throw std::invalid_argument("kappa: ball straddles components");
    return static_cast<double>(duv);
  };
  const auto w = w1(mx, my, ground, false);
  CurvatureRecord<M> rec{x, y, d, w.value, M(1) - w.value / M(d)};
  return rec;
}

template <class M = double>
M kappa(const Graph& g, int x, int y, int eps = 1) {
  GraphMetric metric(g);
  return curvature_record<M>(g, x, y, metric, eps).kappa;
}

/// Curvature of every edge and, with distance_cap >= 2, of every pair at
/// distance 2..cap. Locality: the pair minimum must not undercut the edge
/// minimum by more than 1e-9.
template <class M = double>
CurvatureReport<M> edge_curvature_sweep(const Graph& g, int distance_cap = 1, int eps = 1) {
  if (!g.connected()) throw std::invalid_argument("edge_curvature_sweep: graph is not connected");
  GraphMetric metric(g);
  CurvatureReport<M> report;
  for (const auto& [x, y] : g.edges()) {
    report.edges.push_back(curvature_record<M>(g, x, y, metric, eps));
    if (report.edges.size() == 1 || report.edges.back().kappa < report.min_edge_kappa) {
      report.min_edge_kappa = report.edges.back().kappa;
    }
  }
  if (distance_cap >= 2) {
    for (int x = 0; x < g.vertex_count(); ++x) {
      for (int y = x + 1; y < g.vertex_count(); ++y) {
        const int d = metric(x, y);
        if (d < 2 || d > distance_cap) continue;
        report.pairs.push_back(curvature_record<M>(g, x, y, metric, eps));
        const M& k = report.pairs.back().kappa;
        if (!report.min_pair_kappa || k < *report.min_pair_kappa) report.min_pair_kappa = k;
      }
    }
    if (report.min_pair_kappa && !report.edges.empty()) {
      report.locality_holds = to_double(*report.min_pair_kappa) >= to_double(report.min_edge_kappa) - 1e-9;
    }
  }
  return report;
}

}  // namespace cubebm
