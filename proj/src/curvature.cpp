#include "cubebm/curvature.hpp"

#include <deque>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "cubebm/hypercube.hpp"

namespace cubebm {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count < 1) throw std::invalid_argument("Graph: need at least one vertex");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw std::invalid_argument("Graph: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

Graph Graph::parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  std::string line;
  int lineno = 0;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v)) throw GraphFormatError(lineno, "expected two integer vertex ids");
    if (fields >> extra) throw GraphFormatError(lineno, "unexpected trailing field '" + extra + "'");
    if (u < 0 || v < 0) throw GraphFormatError(lineno, "vertex ids must be nonnegative");
    if (u > 10'000'000 || v > 10'000'000) throw GraphFormatError(lineno, "vertex id too large");
    if (u == v) throw GraphFormatError(lineno, "self-loop at " + std::to_string(u));
    const std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
    if (!seen.insert(key).second) {
      throw GraphFormatError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, key.second);
  }
  if (edges.empty()) throw GraphFormatError(lineno, "no edges");
  std::vector<bool> present(static_cast<std::size_t>(max_id) + 1, false);
  for (auto [u, v] : edges) present[static_cast<std::size_t>(u)] = present[static_cast<std::size_t>(v)] = true;
  for (int id = 0; id <= max_id; ++id) {
    if (!present[static_cast<std::size_t>(id)]) {
      throw GraphFormatError(lineno, "vertex ids are not dense: " + std::to_string(id) + " never appears");
    }
  }
  return Graph(max_id + 1, edges);
}

Graph Graph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return parse_edge_list(in);
}

Graph Graph::hypercube(int dimension) {
  check_dimension(dimension);
  if (dimension > 16) throw std::invalid_argument("Graph::hypercube: dimension above 16");
  const int n = 1 << dimension;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < dimension; ++i) {
      const int w = v ^ (1 << i);
      if (v < w) edges.emplace_back(v, w);
    }
  }
  return Graph(n, edges);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph Graph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("Graph::cycle: need n >= 3");
  auto edges = path(n).edges();
  edges.emplace_back(0, n - 1);
  return Graph(n, edges);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adjacency_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adjacency_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::connected() const {
  const auto dist = bfs(0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

void Graph::set_ambient(std::vector<Rational> weights) {
  if (weights.size() != adjacency_.size()) throw std::invalid_argument("Graph: ambient weights need one entry per vertex");
  for (const auto& w : weights) {
    if (w < 0) throw std::invalid_argument("Graph: negative ambient weight");
  }
  ambient_ = std::move(weights);
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  if (perm.size() != adjacency_.size()) throw std::invalid_argument("Graph::relabeled: size mismatch");
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : edges()) out.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  Graph g(vertex_count(), out);
  if (ambient_) {
    std::vector<Rational> w(adjacency_.size());
    for (std::size_t v = 0; v < w.size(); ++v) w[static_cast<std::size_t>(perm[v])] = (*ambient_)[v];
    g.set_ambient(std::move(w));
  }
  return g;
}

std::vector<int> Graph::bfs(int source) const {
  check_vertex(source);
  std::vector<int> dist(adjacency_.size(), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adjacency_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) throw std::invalid_argument("Graph: vertex " + std::to_string(v) + " out of range");
}

int GraphMetric::operator()(int u, int v) const {
  auto it = rows_.find(u);
  if (it == rows_.end()) {
    auto jt = rows_.find(v);
    if (jt != rows_.end()) return jt->second[static_cast<std::size_t>(u)];
    it = rows_.emplace(u, graph_->bfs(u)).first;
  }
  return it->second[static_cast<std::size_t>(v)];
}

}  // namespace cubebm
