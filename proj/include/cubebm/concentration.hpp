#pragma once

// Concentration on the symmetric group S_n, on the crossover set C_n and on
// the auxiliary space S*_n = S_n x {0,1}, plus the separation and
// transport-entropy consequences for crossover sets and laws.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cubebm/crossover.hpp"
#include "cubebm/measure.hpp"
#include "cubebm/transport.hpp"

namespace cubebm {

class Permutation {
 public:
  /// `images[i-1]` is sigma(i); values must be a bijection onto 1..n.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

int perm_distance(const Permutation& s, const Permutation& t);

/// All n! permutations in lexicographic order of their image sequences; n <= 10.
std::vector<Permutation> all_permutations(int n);

/// sigma(c0) with c0 = {1, ..., n/2}; n even.
Crossover project_even(const Permutation& s);
/// sigma(c_i) with c0 = {1..floor(n/2)}, c1 = {1..ceil(n/2)}; n odd.
Crossover project_star(const Permutation& s, int i);

struct ProjectionReport {
  int n = 0;
  std::map<Crossover, std::uint64_t> fiber_sizes;
  std::uint64_t expected_fiber = 0;
  bool fibers_equal = false;
  bool surjective = false;
  bool lipschitz = false;
  int worst_excess = 0;  // max of d(pi x, pi y) - d(x, y) over checked pairs
};

/// Exhaustive fiber count and pair-by-pair Lipschitz check of the quotient
/// map S_n -> C_n (even n) or S*_n -> C_n (odd n). Pairs are only checked
/// when `check_pairs` is set.
ProjectionReport analyze_projection(int n, bool check_pairs = true);

/// Uniformly weighted finite metric space with integer distances and the
/// variance constant v of its Laplace estimate exp(lambda E f + v lambda^2 / 2).
struct FiniteMetricSpace {
  enum class Kind { kSymmetric, kCrossover, kStar };
  Kind kind = Kind::kCrossover;
  int n = 0;
  std::size_t size = 0;
  double variance = 0;
  std::function<int(std::size_t, std::size_t)> distance;
  std::function<std::string(std::size_t)> label;

  std::string name() const;
};

inline constexpr std::size_t kExhaustivePairLimit = 10'000;
inline constexpr std::size_t kSampledPairs = 1'000'000;

/// S_n with v = n - 1; n <= 7 for exhaustive work (caller's responsibility above).
FiniteMetricSpace symmetric_group_space(int n);
/// C_n with v = n.
FiniteMetricSpace crossover_space(int n);
/// S*_n with the metric |i - j| + d(sigma, tau) and v = n; n odd.
FiniteMetricSpace star_space(int n);

struct LipschitzFunction {
  std::vector<double> values;
  double certified_constant = 1;
  bool exhaustive = true;  // false when certified on sampled pairs

  /// Certifies |f(x) - f(y)| <= constant * d(x, y) (slack 1e-12) on every
  /// pair when the space has at most 1e4 points, else on 1e6 random pairs.
  /// Throws std::domain_error on a violation.
  static LipschitzFunction certify(const FiniteMetricSpace& space, std::vector<double> values,
                                   double constant = 1, std::uint64_t seed = 0);
};

/// f(x) = min_j (values_j + d(x, anchors_j)).
LipschitzFunction sample_lipschitz(const FiniteMetricSpace& space, const std::vector<std::size_t>& anchors,
                                   const std::vector<double>& values);
/// Between 1 and max_anchors random anchors with values uniform in [0, n].
LipschitzFunction random_lipschitz(const FiniteMetricSpace& space, std::uint64_t seed, int max_anchors = 5);

struct LaplaceRow {
  double lambda = 0;
  double log_lhs = 0;
  double log_rhs = 0;
  double margin = 0;  // log_lhs - log_rhs, must be <= 1e-12
};

struct TailRow {
  double t = 0;
  double tail = 0;
  double bound = 0;
  bool holds = true;
};

struct LaplaceReport {
  double mean = 0;
  std::vector<LaplaceRow> rows;
  double max_margin = -INFINITY;
  int violations = 0;
};

struct TailReport {
  double mean = 0;
  std::vector<TailRow> rows;
  int violations = 0;
};

inline constexpr double kLaplaceSlack = 1e-12;

LaplaceReport check_laplace(const FiniteMetricSpace& space, const LipschitzFunction& f,
                            const std::vector<double>& lambdas);
TailReport check_tail(const FiniteMetricSpace& space, const LipschitzFunction& f, const std::vector<double>& ts);

struct Corollary4Report {
  int n = 0;
  std::size_t size_a = 0;
  std::uint64_t count = 0;  // #C_n
  int k = 0;                // d(A, complement A)
  double bound = 0;         // exp(-k^2 / 8n) #C_n
  bool holds = true;
  std::vector<double> separator;  // f(c) = (d(c, Abar) - d(c, A)) / 2 over enumerate_crossovers(n)
  bool separator_lipschitz = true;
  bool separator_mean_zero = true;  // checked exactly on the integer numerators
  bool separator_large_on_a = true;  // f >= k/2 on A
};

Corollary4Report corollary4_check(int n, const std::vector<Crossover>& a);

/// Precomputed tables for exhaustive sweeps over subsets of C_n, #C_n <= 64,
/// with subsets as bitmasks over enumerate_crossovers(n).
class Corollary4Context {
 public:
  explicit Corollary4Context(int n);
  int n() const { return n_; }
  std::size_t count() const { return points_.size(); }
  const std::vector<Crossover>& points() const { return points_; }
  std::uint64_t complement_mask(std::uint64_t a) const;
  Corollary4Report check(std::uint64_t a, bool with_separator = true) const;

 private:
  int distance_to(std::size_t c, std::uint64_t set) const;

  int n_;
  std::vector<Crossover> points_;
  std::vector<std::size_t> complement_;
  std::vector<std::vector<std::uint64_t>> rings_;  // rings_[c][d]: points at distance d from c
  std::vector<std::vector<int>> dist_;
};

inline double laplace_bound_exponent(double variance, double lambda, double mean) {
  return lambda * mean + variance * lambda * lambda / 2;
}

template <class M = double>
DiscreteMeasure<Crossover, M> uniform_crossovers(int n) {
  return uniform_on<M>(enumerate_crossovers(n));
}

/// Dirichlet(alpha, ..., alpha) law over C_n.
DiscreteMeasure<Crossover> dirichlet_crossover_measure(int n, double alpha, std::mt19937_64& rng);

inline constexpr double kConcentrationSlack = 1e-9;

template <class M = double>
struct W1HReport {
  int n = 0;
  M w1{};                 // W1(xi, uniform)
  double relative = 0;    // H(xi | uniform)
  double margin = 0;      // 2 n H - W1^2
  double slack = 0;       // tolerance used, including quantization
  bool holds = true;
};

template <class M = double>
struct Corollary5Report {
  int n = 0;
  double entropy = 0;     // S(xi)
  M w1_bar{};             // W1(xi, xi_bar)
  M w1_uniform{};         // W1(xi, uniform)
  double bound = 0;       // ln #C_n - W1(xi, xi_bar)^2 / 8n
  double margin = 0;      // bound - S(xi)
  bool holds = true;
  bool symmetry_step = true;  // W1(xi, xi_bar) <= 2 W1(xi, uniform)
};

namespace detail {

template <class P, class M>
void require_arity(const DiscreteMeasure<P, M>& xi, int n) {
  if (xi.empty()) throw std::invalid_argument("crossover law is empty");
  for (const auto& [c, m] : xi) {
    if (c.arity() != n) throw std::invalid_argument("crossover law has atoms outside C_n");
  }
}

}  // namespace detail

template <class M>
W1HReport<M> w1h_check(int n, const DiscreteMeasure<Crossover, M>& xi) {
  detail::require_arity(xi, n);
  const auto uniform = uniform_crossovers<M>(n);
  const auto t = w1(xi, uniform, crossover_metric(), false);
  W1HReport<M> r;
  r.n = n;
  r.w1 = t.value;
  r.relative = relative_entropy_to_uniform(xi, static_cast<long double>(crossover_count(n)));
  const double w = to_double(t.value);
  r.margin = 2.0 * n * r.relative - w * w;
  r.slack = kConcentrationSlack + 2 * w * t.quantization_error + t.quantization_error * t.quantization_error;
  r.holds = r.margin >= -r.slack;
  return r;
}

template <class M>
Corollary5Report<M> corollary5_check(int n, const DiscreteMeasure<Crossover, M>& xi) {
  detail::require_arity(xi, n);
  const auto bar = xi.pushforward([](const Crossover& c) { return complement(c); });
  const auto to_bar = w1(xi, bar, crossover_metric(), false);
  const auto to_uniform = w1(xi, uniform_crossovers<M>(n), crossover_metric(), false);
  Corollary5Report<M> r;
  r.n = n;
  r.entropy = shannon_entropy(xi);
  r.w1_bar = to_bar.value;
  r.w1_uniform = to_uniform.value;
  const double w = to_double(to_bar.value);
  r.bound = std::log(static_cast<double>(crossover_count(n))) - w * w / (8.0 * n);
  r.margin = r.bound - r.entropy;
  const double q = to_bar.quantization_error;
  r.holds = r.margin >= -(kConcentrationSlack + (2 * w * q + q * q) / (8.0 * n));
  if constexpr (MassTraits<M>::exact) {
    r.symmetry_step = to_bar.value <= 2 * to_uniform.value;
  } else {
    r.symmetry_step = w <= 2 * to_double(to_uniform.value) + kConcentrationSlack + q +
                                2 * to_uniform.quantization_error;
  }
  return r;
}

/// For each lambda, the tilted law xi_lambda proportional to exp(lambda f)
/// times uniform must satisfy the W1H bound; returns the smallest margin
/// 2nH - W1^2, which must be >= -1e-9.
double bobkov_gotze_spot_check(int n, const LipschitzFunction& f, const std::vector<double>& lambdas);

}  // namespace cubebm
