#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cubebm/curvature.hpp"
#include "oracles.hpp"

using namespace cubebm;

namespace {

// Floyd-Warshall, independent of the BFS metric under test.
std::vector<std::vector<int>> all_pairs(const Graph& g) {
  const int n = g.vertex_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

// kappa from the closed-ball definition and the dual-enumeration W1 oracle.
Rational oracle_kappa(const Graph& g, int x, int y) {
  const auto d = all_pairs(g);
  std::vector<int> bx, by;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (d[x][v] <= 1) bx.push_back(v);
    if (d[y][v] <= 1) by.push_back(v);
  }
  std::vector<Rational> px(bx.size(), Rational(1, static_cast<long long>(bx.size())));
  std::vector<Rational> py(by.size(), Rational(1, static_cast<long long>(by.size())));
  std::vector<std::vector<int>> cost;
  for (int u : bx) {
    cost.emplace_back();
    for (int v : by) cost.back().push_back(d[u][v]);
  }
  return Rational(1) - oracle::w1_by_dual_enumeration(px, py, cost) / d[x][y];
}

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return Graph::parse_edge_list(in);
}

}  // namespace

TEST(Graph, ParsesEdgeListsWithComments) {
  const Graph g = parse("# square\n0 1\n1 2\n\n  2 3\n3 0\n");
  EXPECT_EQ(g.vertex_count(), 4);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.neighbors(0), (std::vector<int>{1, 3}));
  EXPECT_TRUE(g.connected());
}

TEST(Graph, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const GraphFormatError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("0 1\n1 x\n"), 2);
  EXPECT_EQ(line_of("0 1\n# c\n1 1\n"), 3);
  EXPECT_EQ(line_of("0 1\n1 0\n"), 2);
  EXPECT_EQ(line_of("0 1\n1 2 3\n"), 2);
  EXPECT_EQ(line_of("0 -1\n"), 1);
  EXPECT_NE(line_of("0 1\n2 4\n"), 0);  // id 3 missing
  EXPECT_THROW(parse("# only comments\n"), GraphFormatError);
}

TEST(Graph, RejectsInvalidConstruction) {
  EXPECT_THROW(Graph(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 2}}), std::invalid_argument);
  EXPECT_FALSE(Graph(3, {{0, 1}}).connected());
}

TEST(BallMeasure, Examples) {
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto mu = ball_measure<Rational>(star, 0);
  EXPECT_EQ(mu.size(), 4u);
  for (const auto& [v, m] : mu) EXPECT_EQ(m, Rational(1, 4));

  const Graph cube = Graph::hypercube(4);
  for (int x : {0, 5, 15}) {
    const auto b = ball_measure<Rational>(cube, x);
    EXPECT_EQ(b.size(), 5u);
    for (const auto& [v, m] : b) EXPECT_EQ(m, Rational(1, 5));
  }

  Graph weighted = Graph::path(4);
  weighted.set_ambient({Rational(0), Rational(1), Rational(0), Rational(0)});
  EXPECT_EQ(ball_measure<Rational>(weighted, 1, 1), dirac<Rational>(1));
  EXPECT_EQ(ball_measure<Rational>(weighted, 1, 3), dirac<Rational>(1));
  EXPECT_THROW(ball_measure<Rational>(weighted, 3, 1), std::invalid_argument);

  const auto wide = ball_measure<Rational>(Graph::path(5), 0, 2);
  EXPECT_EQ(wide.support(), (std::vector<int>{0, 1, 2}));
}

TEST(Kappa, HypercubeClosedForm) {
  EXPECT_EQ(kappa<Rational>(Graph::hypercube(7), 0, 1), Rational(1, 4));
  EXPECT_NEAR(kappa(Graph::hypercube(7), 0, 64), 0.25, 1e-12);
  for (int n = 2; n <= 6; ++n) {
    const Graph g = Graph::hypercube(n);
    EXPECT_EQ(kappa<Rational>(g, 3 % (1 << n), (3 % (1 << n)) ^ 1), Rational(2, n + 1));
    EXPECT_EQ(oracle_kappa(g, 0, 1), Rational(2, n + 1));
  }
}

TEST(Kappa, SmallGraphsMatchOracle) {
  const Graph c6 = Graph::cycle(6);
  EXPECT_EQ(kappa<Rational>(c6, 0, 1), Rational(0));
  EXPECT_EQ(oracle_kappa(c6, 0, 1), Rational(0));

  const Graph p4 = Graph::path(4);
  EXPECT_EQ(kappa<Rational>(p4, 0, 1), Rational(1, 2));
  EXPECT_EQ(kappa<Rational>(p4, 1, 2), Rational(0));
  for (auto [x, y] : p4.edges()) EXPECT_EQ(kappa<Rational>(p4, x, y), oracle_kappa(p4, x, y));

  for (int n = 2; n <= 6; ++n) {
    const Graph k = Graph::complete(n);
    const Rational got = kappa<Rational>(k, 0, 1);
    EXPECT_GE(got, 0);
    EXPECT_EQ(got, oracle_kappa(k, 0, 1));
  }

  const Graph c5 = Graph::cycle(5);
  EXPECT_EQ(kappa<Rational>(c5, 0, 2), oracle_kappa(c5, 0, 2));
  EXPECT_THROW(kappa(c5, 1, 1), std::invalid_argument);
  EXPECT_THROW(kappa(Graph(3, {{0, 1}}), 0, 2), std::invalid_argument);
}

TEST(EdgeCurvatureSweep, HypercubeEdgesAndLocality) {
  const auto five = edge_curvature_sweep<Rational>(Graph::hypercube(5));
  EXPECT_EQ(five.edges.size(), 80u);
  for (const auto& rec : five.edges) EXPECT_EQ(rec.kappa, Rational(1, 3));
  EXPECT_EQ(five.min_edge_kappa, Rational(1, 3));

  const auto four = edge_curvature_sweep<Rational>(Graph::hypercube(4), 2);
  EXPECT_EQ(four.pairs.size(), 16u * 6 / 2);
  ASSERT_TRUE(four.min_pair_kappa.has_value());
  for (const auto& rec : four.pairs) {
    EXPECT_EQ(rec.distance, 2);
    EXPECT_GE(rec.kappa, four.min_edge_kappa);
  }
  EXPECT_TRUE(four.locality_holds);
}

TEST(EdgeCurvatureSweep, PathReportIsWellFormed) {
  const auto report = edge_curvature_sweep<Rational>(Graph::path(4), 3);
  ASSERT_EQ(report.edges.size(), 3u);
  EXPECT_EQ(report.edges.front().kappa, report.edges.back().kappa);
  EXPECT_EQ(report.min_edge_kappa, Rational(0));
  for (const auto& rec : report.edges) EXPECT_EQ(rec.kappa, Rational(1) - rec.w1 / rec.distance);
  EXPECT_EQ(report.pairs.size(), 3u);
  EXPECT_TRUE(report.locality_holds);
  EXPECT_THROW(edge_curvature_sweep(Graph(3, {{0, 1}})), std::invalid_argument);
}

TEST(EdgeCurvatureSweep, InvariantUnderRelabeling) {
  Rng rng(12);
  const std::vector<Graph> graphs{Graph::hypercube(3), Graph::cycle(7), Graph::path(6), Graph::complete(5),
                                  parse("0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n1 4\n")};
  for (const auto& g : graphs) {
    auto base = edge_curvature_sweep<Rational>(g);
    std::vector<Rational> want;
    for (const auto& rec : base.edges) want.push_back(rec.kappa);
    std::sort(want.begin(), want.end());
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Rational> got;
      for (const auto& rec : edge_curvature_sweep<Rational>(g.relabeled(perm)).edges) got.push_back(rec.kappa);
      std::sort(got.begin(), got.end());
      ASSERT_EQ(got, want);
    }
  }
}

TEST(EdgeCurvatureSweep, RandomGraphsMatchOracle) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 4;
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng() % v), v);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() % 4 == 0 && std::find(edges.begin(), edges.end(), std::make_pair(u, v)) == edges.end()) {
          edges.emplace_back(u, v);
        }
      }
    }
    const Graph g(n, edges);
    for (const auto& rec : edge_curvature_sweep<Rational>(g).edges) {
      ASSERT_EQ(rec.kappa, oracle_kappa(g, rec.x, rec.y));
      ASSERT_LE(rec.kappa, 1);
    }
  }
}
