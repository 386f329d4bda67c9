#pragma once

// Verification engines for the curved Brunn-Minkowski inequalities on the
// hypercube: the set form, the entropic form, the K = 0 injection, the
// fiber bound of the set proof and every link of the entropic proof.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubebm/concentration.hpp"
#include "cubebm/crossover.hpp"
#include "cubebm/hypercube.hpp"
#include "cubebm/joint_law.hpp"
#include "cubebm/transport.hpp"

namespace cubebm {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kInequalitySlack = 1e-12;

inline double default_curvature(int dimension) { return 1.0 / (2.0 * dimension); }

/// Distinct midpoints of all pairs in A x B.
VertexSet midpoint_set(const VertexSet& a, const VertexSet& b);

struct BMSetReport {
  int dimension = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t size_m = 0;
  int distance = 0;  // d(A, B)
  double k_used = 0;
  double lhs = 0;    // ln #M
  double rhs = 0;    // (ln #A + ln #B) / 2 + K d^2 / 8
  double margin = 0;
  bool holds = true;
};

BMSetReport bm_set_check(const VertexSet& a, const VertexSet& b, std::optional<double> k = std::nullopt);

struct InjectionReport {
  std::size_t pairs = 0;
  std::size_t distinct_images = 0;
  std::size_t collisions = 0;
  bool images_in_m = true;
  std::size_t size_m = 0;
  bool sqrt_bound = true;  // #M^2 >= #A #B
  bool holds = true;
};

/// (a, b) -> Phi_{c_d(a,b)}(a, b) with the canonical crossover.
InjectionReport injection_check(const VertexSet& a, const VertexSet& b);

struct FiberReport {
  MidpointPair pair;
  int r = 0;
  std::vector<Crossover> e;        // c with Phi_c^{-1}(m, m') in A x B
  std::vector<Crossover> e_prime;  // c with Phi_c^{-1}(m, m') in B x A
  bool e_prime_is_complement = true;
  std::optional<int> separation;   // d(E, E'), when both are nonempty
  int set_distance = 0;            // d(A, B)
  double bound = 0;                // #C_r exp(-d(A,B)^2 / 8r)
  bool holds = true;
};

FiberReport fiber_analysis(const VertexSet& a, const VertexSet& b, const MidpointPair& pair);

struct FiberLayer {
  int r = 0;
  std::uint64_t pairs_ab = 0;     // #(A x B)_r
  std::uint64_t y_size = 0;       // #Y_r, counted by summing fiber sizes
  std::uint64_t images = 0;       // distinct (m, m') hit at distance r
  std::uint64_t pairs_mm = 0;     // #(M x M)_r
  double bound = 0;               // exp(d(A,B)^2 / 8r) #(A x B)_r
  bool holds = true;
};

struct FiberSummary {
  int set_distance = 0;
  std::vector<FiberLayer> layers;  // r with #(A x B)_r > 0
  std::uint64_t total_mm = 0;
  std::uint64_t total_ab = 0;
  double total_bound = 0;           // exp(d(A,B)^2 / 8N) #(A x B)
  std::size_t fibers_scanned = 0;
  std::size_t fiber_failures = 0;
  bool holds = true;
};

/// Enumerates Y = {(a, b, c)}, runs fiber_analysis on every image pair and
/// aggregates per distance r. Refuses inputs with more than 1e7 triples.
FiberSummary fiber_summary(const VertexSet& a, const VertexSet& b);

/// Largest K for which the set inequality still holds on this instance.
double empirical_k_star(const VertexSet& a, const VertexSet& b);

struct KStarPoint {
  int dimension = 0;
  double k_star = 0;
  double predicted = 0;  // 8 ln C(N, N/2) / N^2
};

struct KStarSweep {
  std::vector<KStarPoint> points;
  double slope = 0;  // least squares of ln K* on ln N
};

/// Antipodal singletons for even N in [n_min, n_max].
KStarSweep k_star_sweep(int n_min, int n_max);

inline const std::array<double, 4> kStratifiedDensities{0, 0.1, 0.25, 0.5};

/// Density of stratum `index % 4`; stratum 0 is 4 / 2^N.
double stratified_density(int dimension, std::size_t index);

/// Instance `index` of a seeded sweep: A and B drawn from stream seed ^ index.
std::pair<VertexSet, VertexSet> random_instance(int dimension, std::uint64_t seed, std::size_t index);

// ---------------------------------------------------------------------------
// Entropic form

template <class M = double>
struct BMEntropyReport {
  int dimension = 0;
  double s0 = 0;
  double s1 = 0;
  double s_half = 0;
  M w1{};
  double k_used = 0;
  double margin = 0;    // S-form: S_half - (S0 + S1)/2 - K W1^2 / 8
  double h0 = 0;        // H(mu0 | uniform)
  double h1 = 0;
  double h_half = 0;
  double margin_h = 0;  // H-form: (H0 + H1)/2 - K W1^2 / 8 - H_half
  double slack = 0;
  bool forms_agree = true;
  bool holds = true;
};

namespace detail {

template <class M>
int measure_dimension(const DiscreteMeasure<Vertex, M>& mu0, const DiscreteMeasure<Vertex, M>& mu1) {
  if (mu0.empty() || mu1.empty()) throw std::invalid_argument("measure has no atoms");
  const int n = mu0.begin()->first.dimension();
  for (const auto* mu : {&mu0, &mu1}) {
    for (const auto& [v, m] : *mu) {
      if (v.dimension() != n) throw std::invalid_argument("measures live on different hypercubes");
    }
  }
  return n;
}

}  // namespace detail

template <class M>
BMEntropyReport<M> bm_entropy_check(const DiscreteMeasure<Vertex, M>& mu0, const DiscreteMeasure<Vertex, M>& mu1,
                                    std::optional<double> k = std::nullopt) {
  BMEntropyReport<M> r;
  r.dimension = detail::measure_dimension(mu0, mu1);
  r.k_used = k.value_or(default_curvature(r.dimension));
  const auto half = mid_of_measures(mu0, mu1);
  const auto t = w1(mu0, mu1, hamming_metric(), false);
  r.w1 = t.value;
  const double w = to_double(t.value);
  r.s0 = shannon_entropy(mu0);
  r.s1 = shannon_entropy(mu1);
  r.s_half = shannon_entropy(half);
  const long double cube = std::ldexp(1.0L, r.dimension);
  r.h0 = relative_entropy_to_uniform(mu0, cube);
  r.h1 = relative_entropy_to_uniform(mu1, cube);
  r.h_half = relative_entropy_to_uniform(half, cube);
  const double curvature_term = r.k_used / 8 * w * w;
  r.margin = r.s_half - 0.5 * (r.s0 + r.s1) - curvature_term;
  r.margin_h = 0.5 * (r.h0 + r.h1) - curvature_term - r.h_half;
  const double q = t.quantization_error;
  r.slack = kInequalitySlack + r.k_used / 8 * (2 * w * q + q * q);
  r.forms_agree = std::abs(r.margin - r.margin_h) <= kIdentityTolerance;
  r.holds = r.margin >= -r.slack && r.margin_h >= -r.slack;
  return r;
}

// ---------------------------------------------------------------------------
// Links of the entropic proof

struct ChainLink {
  std::string name;
  bool holds = true;
  double worst = INFINITY;  // smallest margin seen; identities report -|error|
  std::size_t checks = 0;
};

struct ProofChainReport {
  int dimension = 0;
  std::size_t fibers = 0;
  std::size_t crossover_evaluations = 0;
  std::array<ChainLink, 7> links;
  bool holds = true;
};

inline constexpr std::size_t kProofChainBudget = 10'000'000;

namespace detail {

inline void record(ChainLink& link, double margin, double tolerance) {
  ++link.checks;
  link.worst = std::min(link.worst, margin);
  if (margin < -tolerance) link.holds = false;
}

}  // namespace detail

template <class M>
ProofChainReport proof_chain_check(const DiscreteMeasure<Vertex, M>& mu0, const DiscreteMeasure<Vertex, M>& mu1) {
  ProofChainReport report;
  const int n = detail::measure_dimension(mu0, mu1);
  report.dimension = n;
  for (const auto& [a, pa] : mu0) {
    for (const auto& [b, pb] : mu1) report.crossover_evaluations += crossover_count(hamming(a, b));
  }
  if (report.crossover_evaluations > kProofChainBudget) {
    throw std::length_error("proof_chain_check: " + std::to_string(report.crossover_evaluations) +
                            " crossover evaluations exceed the 1e7 budget");
  }
  const char* names[7] = {"joint-entropy",    "fiber-entropy", "fiber-transfer",  "w1-average",
                          "fiber-separation", "pair-entropy",  "midpoint-entropy"};
  for (std::size_t i = 0; i < 7; ++i) report.links[i].name = names[i];
  auto& [l1, l2, l3, l4, l5, l6, l7] = report.links;

  const auto joint = build_joint(mu0, mu1);
  const auto pairs = pair_law(joint);
  const auto fibers = conditional_laws(joint);
  report.fibers = fibers.size();
  const double s0 = shannon_entropy(mu0), s1 = shannon_entropy(mu1);
  const double s_joint = shannon_entropy(joint), s_pairs = shannon_entropy(pairs);

  // (1) S((a,b,c)) = S(mu0) + S(mu1) + E ln #C_d(a,b)
  double mean_log_count = 0;
  for (const auto& [a, pa] : mu0) {
    for (const auto& [b, pb] : mu1) {
      mean_log_count += to_double(pa) * to_double(pb) * std::log(static_cast<double>(crossover_count(hamming(a, b))));
    }
  }
  detail::record(l1, -std::abs(s_joint - (s0 + s1 + mean_log_count)), kIdentityTolerance);

  const auto w_total = w1(mu0, mu1, hamming_metric(), false);
  const double w = to_double(w_total.value);
  double mean_fiber_entropy = 0, mean_w1 = 0, mean_w1_sq = 0;
  // Per-fiber W1 values carry quantization error in floating mode.
  double mean_q = 0;
  for (const auto& [pair, fiber] : fibers) {
    const int r = hamming(pair.m, pair.m_prime);
    const double weight = to_double(fiber.weight);
    // (2) S(Y) = S(E) per fiber
    const double sy = shannon_entropy(fiber.y), se = shannon_entropy(fiber.e);
    detail::record(l2, -std::abs(sy - se), kIdentityTolerance);
    mean_fiber_entropy += weight * sy;

    // (3) W1(A_cond, B_cond) <= cost of the transferred optimal coupling = W1(E, Ebar)
    const auto ebar = fiber.e.pushforward([](const Crossover& c) { return complement(c); });
    const auto opt = w1(fiber.e, ebar, crossover_metric(), false);
    const auto moved = coupling_transfer(opt.coupling, pair);
    const bool marginals = validate_coupling(moved, fiber.a_cond, fiber.b_cond).ok;
    const auto direct = w1(fiber.a_cond, fiber.b_cond, hamming_metric(), false);
    const double we = to_double(opt.value);
    const double q = opt.quantization_error + direct.quantization_error;
    detail::record(l3, marginals ? we - to_double(direct.value) : -INFINITY, kInequalitySlack + q);
    detail::record(l3, -std::abs(to_double(moved.cost) - we), kIdentityTolerance);
    mean_w1 += weight * we;
    mean_w1_sq += weight * we * we;
    mean_q += weight * opt.quantization_error;

    // (5) S(E) <= ln #C_r - W1(E, Ebar)^2 / 8r
    if (r > 0) {
      const double bound = std::log(static_cast<double>(crossover_count(r))) - we * we / (8.0 * r);
      detail::record(l5, bound - se, kInequalitySlack + (2 * we + 1) * opt.quantization_error / (8.0 * r));
    } else {
      detail::record(l5, -se, kInequalitySlack);
    }
  }
  // The chain rule S((m,m')) = S((a,b,c)) - E S(Y) belongs with the fiber identity.
  detail::record(l2, -std::abs(s_pairs - (s_joint - mean_fiber_entropy)), kIdentityTolerance);

  // (4) W1(mu0, mu1) <= E W1(E, Ebar), and the squared form
  const double q_all = w_total.quantization_error + mean_q;
  detail::record(l4, mean_w1 - w, kInequalitySlack + q_all);
  detail::record(l4, mean_w1_sq - w * w, kInequalitySlack + (2 * n + 1) * q_all);

  // (6) S((m,m')) >= S(mu0) + S(mu1) + W1^2 / 8N
  detail::record(l6, s_pairs - (s0 + s1 + w * w / (8.0 * n)),
                 kInequalitySlack + (2 * w + 1) * w_total.quantization_error / (8.0 * n));

  // (7) S(mu_half) >= S((m,m')) / 2
  detail::record(l7, shannon_entropy(mid_of_measures(mu0, mu1)) - 0.5 * s_pairs, kInequalitySlack);

  for (const auto& link : report.links) report.holds = report.holds && link.holds;
  return report;
}

}  // namespace cubebm
