#include <gtest/gtest.h>

#include <cmath>

#include "cubebm/joint_law.hpp"
#include "oracles.hpp"

using namespace cubebm;

namespace {

Vertex V(const char* s) { return Vertex::parse(s); }

}  // namespace

TEST(DiscreteMeasure, RejectsInvalidTotals) {
  using VM = DiscreteMeasure<Vertex>;
  EXPECT_THROW(VM::from_masses({{V("00"), 0.5}}), std::invalid_argument);
  EXPECT_THROW(VM::from_masses({}), std::invalid_argument);
  EXPECT_THROW(VM::from_masses({{V("00"), 1.5}, {V("01"), -0.5}}), std::invalid_argument);
  EXPECT_THROW((DiscreteMeasure<Vertex, Rational>::from_masses({{V("00"), Rational(1, 3)}})), std::invalid_argument);
  const auto mu = VM::from_masses({{V("00"), 0.5}, {V("01"), 0.5}, {V("10"), 0.0}});
  EXPECT_EQ(mu.size(), 2u);
}

TEST(DiscreteMeasure, PrunesNegligibleAtomsAndRenormalizes) {
  const auto mu = DiscreteMeasure<Vertex>::from_weights({{V("00"), 1.0}, {V("01"), 1e-17}});
  EXPECT_EQ(mu.size(), 1u);
  EXPECT_DOUBLE_EQ(mu.mass(V("00")), 1.0);
}

TEST(Dirac, Basics) {
  const auto d = dirac(V("0110"));
  EXPECT_EQ(shannon_entropy(d), 0.0);
  EXPECT_DOUBLE_EQ(d.total(), 1.0);
  EXPECT_EQ(d.size(), 1u);
}

TEST(UniformOn, Basics) {
  const std::vector<Vertex> one{V("010")};
  EXPECT_EQ(uniform_on(one), dirac(V("010")));
  std::vector<int> six{1, 2, 3, 4, 5, 6};
  EXPECT_NEAR(shannon_entropy(uniform_on(six)), std::log(6.0), 1e-15);
  const auto cube = uniform_on<Rational>(enumerate_vertices(3));
  for (const auto& [v, m] : cube) EXPECT_EQ(m, Rational(1, 8));
  EXPECT_THROW(uniform_on(std::vector<int>{}), std::invalid_argument);
}

TEST(ShannonEntropy, Examples) {
  EXPECT_EQ(shannon_entropy(dirac(3)), 0.0);
  EXPECT_NEAR(shannon_entropy(uniform_on(enumerate_vertices(5))), 5 * std::log(2.0), 1e-14);
  const auto mu = DiscreteMeasure<int>::from_masses({{0, 0.5}, {1, 0.25}, {2, 0.25}});
  EXPECT_NEAR(shannon_entropy(mu), 1.5 * std::log(2.0), 1e-15);
}

TEST(ShannonEntropy, BoundedByLogSupportWithEqualityForUniform) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = random_vertex_measure(6, 20, rng);
    const double s = shannon_entropy(mu);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log(static_cast<double>(mu.size())) + 1e-12);
    EXPECT_EQ(s == 0.0, mu.size() == 1);
  }
}

TEST(RelativeEntropy, Examples) {
  const auto nu = uniform_on(enumerate_vertices(3));
  EXPECT_NEAR(relative_entropy(nu, nu), 0.0, 1e-15);
  EXPECT_NEAR(relative_entropy(dirac(V("101")), nu), std::log(8.0), 1e-14);
  const auto partial = uniform_on(std::vector<Vertex>{V("000"), V("001")});
  EXPECT_TRUE(std::isinf(relative_entropy(uniform_on(std::vector<Vertex>{V("111")}), partial)));
}

TEST(RelativeEntropy, UniformReferenceIdentity) {
  Rng rng(9);
  const auto nu = uniform_on(enumerate_vertices(5));
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = random_vertex_measure(5, 32, rng);
    const double h = relative_entropy(mu, nu);
    EXPECT_GE(h, -1e-15);
    EXPECT_NEAR(h + shannon_entropy(mu), 5 * std::log(2.0), 1e-12);
    EXPECT_NEAR(relative_entropy_to_uniform(mu, 32.0L), h, 1e-12);
  }
}

TEST(MidMeasure, Examples) {
  const Vertex a = V("0101");
  EXPECT_EQ(mid_measure(a, a), dirac(a));
  const auto two = mid_measure<Rational>(V("0000"), V("0011"));
  EXPECT_EQ(two.size(), 2u);
  for (const auto& [v, m] : two) EXPECT_EQ(m, Rational(1, 2));
  EXPECT_NEAR(shannon_entropy(two), std::log(2.0), 1e-15);
  const auto four = mid_measure<Rational>(V("0000"), V("1111"));
  EXPECT_EQ(four.size(), 6u);
  for (const auto& [v, m] : four) EXPECT_EQ(m, Rational(1, 6));
}

TEST(MidOfMeasures, Examples) {
  const Vertex a = V("010"), b = V("100");
  EXPECT_EQ(mid_of_measures(dirac(a), dirac(b)), mid_measure(a, b));
  EXPECT_EQ(mid_of_measures(dirac(a), dirac(a)), dirac(a));

  const auto mu0 = dirac<Rational>(V("000"));
  const auto mu1 = uniform_on<Rational>(std::vector<Vertex>{V("100"), V("111")});
  const auto mid = mid_of_measures(mu0, mu1);
  // Brute force: mix the definition-based midpoint sets directly.
  std::map<Vertex, Rational> expected;
  for (const auto& [b1, p] : mu1) {
    const auto mids = oracle::midpoints_by_definition(3, 0u, b1.bits());
    for (auto m : mids) expected[Vertex(3, m)] += p / static_cast<long long>(mids.size());
  }
  EXPECT_EQ(mid.atoms(), expected);
  EXPECT_EQ(mid.mass(V("000")), Rational(1, 4));
  EXPECT_EQ(mid.mass(V("100")), Rational(1, 3));
  EXPECT_EQ(mid.mass(V("010")), Rational(1, 12));
  EXPECT_EQ(mid.mass(V("011")), Rational(1, 12));
}

TEST(BuildJoint, Examples) {
  const auto joint = build_joint(dirac<Rational>(V("0000")), dirac<Rational>(V("0011")));
  ASSERT_EQ(joint.size(), 2u);
  for (const auto& [atom, m] : joint) EXPECT_EQ(m, Rational(1, 2));
  validate_joint(joint);

  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto mu0 = random_vertex_measure(5, 6, rng);
    const auto mu1 = random_vertex_measure(5, 6, rng);
    const auto j = build_joint(mu0, mu1);
    double expected_log_count = 0;
    for (const auto& [a, pa] : mu0) {
      for (const auto& [b, pb] : mu1) {
        expected_log_count += pa * pb * std::log(static_cast<double>(crossover_count(hamming(a, b))));
      }
    }
    EXPECT_NEAR(shannon_entropy(j), shannon_entropy(mu0) + shannon_entropy(mu1) + expected_log_count, 1e-10);
    const auto marginal = j.pushforward([](const JointAtom& t) { return std::make_pair(t.a, t.b); });
    for (const auto& [ab, m] : marginal) EXPECT_NEAR(m, mu0.mass(ab.first) * mu1.mass(ab.second), 1e-15);
  }
}

TEST(ConditionalLaws, DiracFibersAreDeterministic) {
  const auto joint = build_joint(dirac(V("00000")), dirac(V("10111")));
  const auto fibers = conditional_laws(joint);
  EXPECT_EQ(fibers.size(), crossover_count(4));
  double weight = 0;
  for (const auto& [pair, fiber] : fibers) {
    EXPECT_EQ(fiber.e.size(), 1u);
    EXPECT_EQ(shannon_entropy(fiber.y), 0.0);
    weight += fiber.weight;
  }
  EXPECT_NEAR(weight, 1.0, 1e-15);
}

TEST(ConditionalLaws, ChainRulePushforwardAndCrudeBound) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const auto mu0 = random_vertex_measure(n, 8, rng);
    const auto mu1 = random_vertex_measure(n, 8, rng);
    const auto joint = build_joint(mu0, mu1);
    const auto fibers = conditional_laws(joint);
    const auto pairs = pair_law(joint);

    double weight = 0, mean_fiber_entropy = 0;
    for (const auto& [pair, fiber] : fibers) {
      weight += fiber.weight;
      const double sy = shannon_entropy(fiber.y);
      ASSERT_NEAR(sy, shannon_entropy(fiber.e), 1e-12);
      ASSERT_LE(shannon_entropy(fiber.e),
                std::log(static_cast<double>(crossover_count(hamming(pair.m, pair.m_prime)))) + 1e-12);
      mean_fiber_entropy += fiber.weight * sy;
    }
    ASSERT_NEAR(weight, 1.0, 1e-12);
    ASSERT_NEAR(shannon_entropy(joint), shannon_entropy(pairs) + mean_fiber_entropy, 1e-10);

    const auto mid = mid_of_measures(mu0, mu1);
    const auto image = joint.pushforward([](const JointAtom& t) { return midpoint(t.c, t.a, t.b); });
    ASSERT_EQ(image.size(), mid.size());
    for (const auto& [v, m] : mid) ASSERT_NEAR(image.mass(v), m, 1e-12);
    ASSERT_LE(shannon_entropy(pairs), 2 * shannon_entropy(mid) + 1e-12);
  }
}

TEST(ConditionalLaws, ExactModeWeightsSumToOne) {
  Rng rng(29);
  const auto mu0 = random_vertex_measure<Rational>(4, 4, rng);
  const auto mu1 = random_vertex_measure<Rational>(4, 4, rng);
  Rational total = 0;
  for (const auto& [pair, fiber] : conditional_laws(build_joint(mu0, mu1))) total += fiber.weight;
  EXPECT_EQ(total, Rational(1));
}
