#include <gtest/gtest.h>

#include "cubebm/joint_law.hpp"
#include "cubebm/transport.hpp"
#include "oracles.hpp"

using namespace cubebm;

namespace {

Vertex V(const char* s) { return Vertex::parse(s); }

DiscreteMeasure<Vertex, Rational> ball(int n, const Vertex& x) {
  std::vector<Vertex> pts{x};
  for (int i = 0; i < n; ++i) pts.emplace_back(n, x.bits() ^ (1u << i));
  return uniform_on<Rational>(pts);
}

// Random measure with masses k/den, den <= 6, on {0,1}^n.
DiscreteMeasure<Vertex, Rational> small_rational_measure(int n, Rng& rng) {
  const int den = 1 + static_cast<int>(rng() % 6);
  const int atoms = 1 + static_cast<int>(rng() % std::min({6, den, 1 << n}));
  std::vector<int> units(static_cast<std::size_t>(atoms), 1);
  for (int left = den - atoms; left > 0; --left) ++units[rng() % units.size()];
  std::map<Vertex, Rational> out;
  std::uniform_int_distribution<std::uint32_t> pick(0, full_mask(n));
  while (out.size() < units.size()) out.emplace(Vertex(n, pick(rng)), Rational(0));
  std::size_t k = 0;
  for (auto& [v, m] : out) m = Rational(units[k++], den);
  return DiscreteMeasure<Vertex, Rational>::from_masses(out);
}

template <class M>
Rational oracle_value(const DiscreteMeasure<Vertex, M>& mu, const DiscreteMeasure<Vertex, M>& nu) {
  std::vector<Rational> pm, pn;
  for (const auto& [v, m] : mu) pm.push_back(Rational(m));
  for (const auto& [v, m] : nu) pn.push_back(Rational(m));
  std::vector<std::vector<int>> cost;
  for (const auto& [x, mx] : mu) {
    cost.emplace_back();
    for (const auto& [y, my] : nu) cost.back().push_back(hamming(x, y));
  }
  return oracle::w1_by_dual_enumeration(pm, pn, cost);
}

}  // namespace

TEST(W1, IdenticalMeasuresCostNothing) {
  Rng rng(1);
  const auto mu = random_vertex_measure(5, 10, rng);
  const auto r = w1(mu, mu, hamming_metric());
  EXPECT_EQ(r.value, 0.0);
  for (const auto& [key, m] : r.coupling.joint) EXPECT_EQ(key.first, key.second);
}

TEST(W1, DiracsGiveTheGroundDistance) {
  const auto r = w1(dirac<Rational>(V("00110")), dirac<Rational>(V("11100")), hamming_metric());
  EXPECT_EQ(r.value, Rational(3));
}

TEST(W1, NeighborBallsOnTheCube) {
  for (int n = 2; n <= 8; ++n) {
    const Vertex x = Vertex::zeros(n), y(n, 1u);
    const auto r = w1(ball(n, x), ball(n, y), hamming_metric());
    EXPECT_EQ(r.value, Rational(1) - Rational(2, n + 1)) << "n=" << n;
  }
  EXPECT_EQ(w1(ball(3, Vertex::zeros(3)), ball(3, V("001")), hamming_metric()).value, Rational(1, 2));
}

TEST(W1, RejectsBadMetricsAndNonIntegerExactCosts) {
  const auto a = dirac(V("01")), b = dirac(V("10"));
  Metric<Vertex> nan_metric = [](const Vertex&, const Vertex&) { return std::nan(""); };
  Metric<Vertex> neg_metric = [](const Vertex&, const Vertex&) { return -1.0; };
  EXPECT_THROW(w1(a, b, nan_metric), std::invalid_argument);
  EXPECT_THROW(w1(a, b, neg_metric), std::invalid_argument);
  Metric<Vertex> half = [](const Vertex& x, const Vertex& y) { return 0.5 * hamming(x, y); };
  EXPECT_THROW(w1(dirac<Rational>(V("00")), dirac<Rational>(V("01")), half), std::invalid_argument);
  EXPECT_NEAR(w1(a, b, half).value, 1.0, 1e-12);
  EXPECT_NEAR(w1(dirac(V("00")), dirac(V("01")), half).value, 0.5, 1e-12);
}

TEST(W1, MatchesDualEnumerationOracleExactly) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const auto mu = small_rational_measure(n, rng);
    const auto nu = small_rational_measure(n, rng);
    const auto r = w1(mu, nu, hamming_metric());
    ASSERT_EQ(r.value, oracle_value(mu, nu)) << "trial " << trial;
    ASSERT_TRUE(validate_coupling(r.coupling, mu, nu).ok);
    ASSERT_EQ(coupling_cost(r.coupling, hamming_metric()), r.value);
  }
}

TEST(W1, MatchesAssignmentOracleForUniformSets) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6, k = 1 + trial % 6;
    std::set<Vertex> a, b;
    std::uniform_int_distribution<std::uint32_t> pick(0, full_mask(n));
    while (static_cast<int>(a.size()) < k) a.emplace(n, pick(rng));
    while (static_cast<int>(b.size()) < k) b.emplace(n, pick(rng));
    std::vector<std::vector<int>> cost;
    for (const auto& x : a) {
      cost.emplace_back();
      for (const auto& y : b) cost.back().push_back(hamming(x, y));
    }
    const auto r = w1(uniform_on<Rational>(a), uniform_on<Rational>(b), hamming_metric());
    ASSERT_EQ(r.value, Rational(oracle::assignment_by_permutations(cost), k));
  }
}

TEST(W1, DualCertificateInFloatingMode) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 5;
    const auto mu = random_vertex_measure(n, 20, rng);
    const auto nu = random_vertex_measure(n, 20, rng);
    const auto r = w1(mu, nu, hamming_metric());
    ASSERT_TRUE(r.duals.has_value());
    const auto [violation, gap] = audit_certificate(*r.duals, mu, nu, hamming_metric(), r.value);
    ASSERT_LE(violation, kCertificateTolerance);
    ASSERT_LE(gap, kCertificateTolerance);
    ASSERT_LE(r.quantization_error, 1e-9);
    ASSERT_TRUE(validate_coupling(r.coupling, mu, nu).ok);
  }
}

TEST(W1, ExactModeCertificateHasNoGap) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mu = random_vertex_measure<Rational>(4, 8, rng);
    const auto nu = random_vertex_measure<Rational>(4, 8, rng);
    const auto r = w1(mu, nu, hamming_metric());
    ASSERT_LE(r.duals->max_violation, 0.0);
    // Potentials are integral, so the dual objective can be rebuilt exactly.
    Rational dual = 0;
    for (const auto& [x, fx] : r.duals->f) {
      ASSERT_EQ(fx, std::floor(fx));
      dual += mu.mass(x) * static_cast<long long>(fx);
    }
    for (const auto& [y, gy] : r.duals->g) dual -= nu.mass(y) * static_cast<long long>(gy);
    ASSERT_EQ(dual, r.value);
  }
}

TEST(W1, MetricPropertiesOnRandomTriples) {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + trial % 4;
    const auto a = random_vertex_measure(n, 20, rng);
    const auto b = random_vertex_measure(n, 20, rng);
    const auto c = random_vertex_measure(n, 20, rng);
    const double ab = w1(a, b, hamming_metric()).value;
    const double ba = w1(b, a, hamming_metric()).value;
    const double ac = w1(a, c, hamming_metric()).value;
    const double bc = w1(b, c, hamming_metric()).value;
    ASSERT_NEAR(ab, ba, 1e-9);
    ASSERT_LE(ac, ab + bc + 1e-9);
    const VertexSet sa(n, a.support()), sb(n, b.support());
    ASSERT_GE(ab, set_distance(sa, sb) - 1e-9);
  }
}

TEST(W1, UniformSetsBoundedByLargestPairDistance) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const VertexSet a = random_subset(6, 0.1, rng()), b = random_subset(6, 0.1, rng());
    int widest = 0;
    for (const auto& x : a) {
      for (const auto& y : b) widest = std::max(widest, hamming(x, y));
    }
    EXPECT_LE(w1(uniform_on(a.members()), uniform_on(b.members()), hamming_metric()).value, widest + 1e-9);
  }
}

TEST(ValidateCoupling, AcceptsProductAndRejectsPerturbation) {
  Rng rng(3);
  const auto mu = random_vertex_measure(4, 5, rng);
  const auto nu = random_vertex_measure(4, 5, rng);
  Coupling<Vertex> product;
  for (const auto& [x, px] : mu) {
    for (const auto& [y, py] : nu) product.joint[{x, y}] = px * py;
  }
  EXPECT_TRUE(validate_coupling(product, mu, nu).ok);

  const auto opt = w1(mu, nu, hamming_metric());
  EXPECT_TRUE(validate_coupling(opt.coupling, mu, nu).ok);

  if (mu.size() >= 2) {
    Coupling<Vertex> moved = product;
    const auto xs = mu.support();
    const Vertex y = nu.support().front();
    const double shift = 0.5 * product.joint[{xs[0], y}];
    moved.joint[{xs[0], y}] -= shift;
    moved.joint[{xs[1], y}] += shift;
    const auto check = validate_coupling(moved, mu, nu);
    EXPECT_FALSE(check.ok);
    EXPECT_NEAR(check.worst_violation, shift, 1e-12);
    EXPECT_FALSE(check.detail.empty());
  }
}

TEST(CouplingTransfer, IdentityOnDiracIsFree) {
  const MidpointPair pair{V("1100"), V("0011")};
  const Crossover c = Crossover::from_elements(4, {1, 3});
  Coupling<Crossover> xi;
  xi.joint[{c, c}] = 1.0;
  const auto t = coupling_transfer(xi, pair);
  ASSERT_EQ(t.joint.size(), 1u);
  EXPECT_EQ(t.cost, 0.0);
  EXPECT_EQ(t.joint.begin()->first.first, decode(c, pair));
}

TEST(CouplingTransfer, PreservesCostAndBoundsVertexTransport) {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 2 + trial % 5;
    const auto cs = enumerate_crossovers(r);
    std::map<Crossover, double> w;
    for (int k = 0; k < 4; ++k) w[cs[rng() % cs.size()]] += 1.0 + static_cast<double>(rng() % 5);
    const auto e = DiscreteMeasure<Crossover>::from_weight_map(w);
    const auto ebar = e.pushforward([](const Crossover& c) { return complement(c); });
    const auto opt = w1(e, ebar, crossover_metric());

    const int n = r + 2;
    std::uniform_int_distribution<std::uint32_t> pick(0, full_mask(n));
    Vertex m(n, pick(rng)), mp = m;
    for (int bit = 0; bit < r; ++bit) mp = Vertex(n, mp.bits() ^ (1u << bit));
    const MidpointPair pair{m, mp};

    const auto moved = coupling_transfer(opt.coupling, pair);
    ASSERT_NEAR(moved.cost, opt.value, 1e-12);
    const auto a_law = e.pushforward([&](const Crossover& c) { return decode(c, pair); });
    const auto b_law = ebar.pushforward([&](const Crossover& c) { return decode(c, pair); });
    ASSERT_TRUE(validate_coupling(moved, a_law, b_law).ok);
    ASSERT_LE(w1(a_law, b_law, hamming_metric()).value, moved.cost + 1e-9);
  }
  EXPECT_THROW(coupling_transfer(Coupling<Crossover>{{{{Crossover(2, 1), Crossover(2, 2)}, 1.0}}, 2.0},
                                 MidpointPair{V("000"), V("111")}),
               std::invalid_argument);
}
