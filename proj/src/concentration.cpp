#include "cubebm/concentration.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cubebm {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("Permutation: images are not a bijection of 1..n");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out + ")";
}

int perm_distance(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw std::invalid_argument("perm_distance: size mismatch");
  int d = 0;
  for (std::size_t i = 0; i < s.images().size(); ++i) d += s.images()[i] != t.images()[i];
  return d;
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("all_permutations: need 1 <= n <= 10");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

namespace {

Crossover image_of_initial_segment(const Permutation& s, int k) {
  std::uint32_t picks = 0;
  for (int i = 1; i <= k; ++i) picks |= 1u << (s(i) - 1);
  return Crossover(s.size(), picks);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

Crossover project_even(const Permutation& s) {
  if (s.size() % 2 != 0) throw std::invalid_argument("project_even: n is odd, use project_star");
  return image_of_initial_segment(s, s.size() / 2);
}

Crossover project_star(const Permutation& s, int i) {
  if (s.size() % 2 == 0) throw std::invalid_argument("project_star: n is even, use project_even");
  if (i != 0 && i != 1) throw std::invalid_argument("project_star: i must be 0 or 1");
  return image_of_initial_segment(s, s.size() / 2 + i);
}

ProjectionReport analyze_projection(int n, bool check_pairs) {
  const auto perms = all_permutations(n);
  const bool even = n % 2 == 0;
  std::vector<Crossover> image;
  std::vector<std::pair<std::size_t, int>> source;  // (permutation index, i)
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (int i = 0; i < (even ? 1 : 2); ++i) {
      image.push_back(even ? project_even(perms[p]) : project_star(perms[p], i));
      source.emplace_back(p, i);
    }
  }
  ProjectionReport r;
  r.n = n;
  r.expected_fiber = even ? factorial(n / 2) * factorial(n / 2) : factorial(n / 2) * factorial(n - n / 2);
  for (const auto& c : image) ++r.fiber_sizes[c];
  r.surjective = r.fiber_sizes.size() == crossover_count(n);
  r.fibers_equal = std::all_of(r.fiber_sizes.begin(), r.fiber_sizes.end(),
                               [&](const auto& kv) { return kv.second == r.expected_fiber; });
  if (check_pairs) {
    r.worst_excess = -n - 1;
    for (std::size_t x = 0; x < image.size(); ++x) {
      for (std::size_t y = x; y < image.size(); ++y) {
        const int d = std::abs(source[x].second - source[y].second) +
                      perm_distance(perms[source[x].first], perms[source[y].first]);
        r.worst_excess = std::max(r.worst_excess, crossover_distance(image[x], image[y]) - d);
      }
    }
    r.lipschitz = r.worst_excess <= 0;
  }
  return r;
}

std::string FiniteMetricSpace::name() const {
  switch (kind) {
    case Kind::kSymmetric: return "S_" + std::to_string(n);
    case Kind::kCrossover: return "C_" + std::to_string(n);
    case Kind::kStar: return "S*_" + std::to_string(n);
  }
  return "?";
}

namespace {

// Dense distance table when the space is small enough, else on-the-fly.
template <class F>
std::function<int(std::size_t, std::size_t)> tabulate(std::size_t size, F&& raw) {
  if (size > kExhaustivePairLimit) return std::forward<F>(raw);
  auto table = std::make_shared<std::vector<std::uint8_t>>(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = x; y < size; ++y) {
      const auto d = static_cast<std::uint8_t>(raw(x, y));
      (*table)[x * size + y] = d;
      (*table)[y * size + x] = d;
    }
  }
  return [table, size](std::size_t x, std::size_t y) { return static_cast<int>((*table)[x * size + y]); };
}

}  // namespace

FiniteMetricSpace symmetric_group_space(int n) {
  auto perms = std::make_shared<const std::vector<Permutation>>(all_permutations(n));
  FiniteMetricSpace s;
  s.kind = FiniteMetricSpace::Kind::kSymmetric;
  s.n = n;
  s.size = perms->size();
  s.variance = n - 1;
  s.distance = tabulate(s.size, [perms](std::size_t x, std::size_t y) { return perm_distance((*perms)[x], (*perms)[y]); });
  s.label = [perms](std::size_t x) { return (*perms)[x].to_string(); };
  return s;
}

FiniteMetricSpace crossover_space(int n) {
  auto points = std::make_shared<const std::vector<Crossover>>(enumerate_crossovers(n));
  FiniteMetricSpace s;
  s.kind = FiniteMetricSpace::Kind::kCrossover;
  s.n = n;
  s.size = points->size();
  s.variance = n;
  s.distance = tabulate(s.size, [points](std::size_t x, std::size_t y) {
    return std::popcount((*points)[x].picks() ^ (*points)[y].picks());
  });
  s.label = [points](std::size_t x) { return (*points)[x].to_string(); };
  return s;
}

FiniteMetricSpace star_space(int n) {
  if (n % 2 == 0) throw std::invalid_argument("star_space: n must be odd");
  auto perms = std::make_shared<const std::vector<Permutation>>(all_permutations(n));
  FiniteMetricSpace s;
  s.kind = FiniteMetricSpace::Kind::kStar;
  s.n = n;
  s.size = 2 * perms->size();
  s.variance = n;
  s.distance = tabulate(s.size, [perms](std::size_t x, std::size_t y) {
    return static_cast<int>((x & 1) != (y & 1)) + perm_distance((*perms)[x / 2], (*perms)[y / 2]);
  });
  s.label = [perms](std::size_t x) { return (*perms)[x / 2].to_string() + "/" + std::to_string(x & 1); };
  return s;
}

namespace {

// Largest |f(x) - f(y)| - constant * d(x, y) over the checked pairs.
double lipschitz_excess(const FiniteMetricSpace& space, const std::vector<double>& values, double constant,
                        std::uint64_t seed, bool& exhaustive) {
  double worst = -INFINITY;
  exhaustive = space.size <= kExhaustivePairLimit;
  if (exhaustive) {
    for (std::size_t x = 0; x < space.size; ++x) {
      for (std::size_t y = x + 1; y < space.size; ++y) {
        worst = std::max(worst, std::abs(values[x] - values[y]) - constant * space.distance(x, y));
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, space.size - 1);
    for (std::size_t k = 0; k < kSampledPairs; ++k) {
      const std::size_t x = pick(rng), y = pick(rng);
      worst = std::max(worst, std::abs(values[x] - values[y]) - constant * space.distance(x, y));
    }
  }
  return worst;
}

}  // namespace

LipschitzFunction LipschitzFunction::certify(const FiniteMetricSpace& space, std::vector<double> values,
                                             double constant, std::uint64_t seed) {
  if (values.size() != space.size) throw std::invalid_argument("LipschitzFunction: one value per point required");
  bool exhaustive = true;
  const double excess = lipschitz_excess(space, values, constant, seed, exhaustive);
  if (excess > 1e-12) {
    throw std::domain_error("LipschitzFunction: not " + std::to_string(constant) + "-Lipschitz on " + space.name() +
                            " (excess " + std::to_string(excess) + ")");
  }
  LipschitzFunction f;
  f.values = std::move(values);
  f.certified_constant = constant;
  f.exhaustive = exhaustive;
  return f;
}

LipschitzFunction sample_lipschitz(const FiniteMetricSpace& space, const std::vector<std::size_t>& anchors,
                                   const std::vector<double>& values) {
  if (anchors.empty() || anchors.size() != values.size()) {
    throw std::invalid_argument("sample_lipschitz: need k >= 1 anchors with one value each");
  }
  std::vector<double> f(space.size, INFINITY);
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    if (anchors[j] >= space.size) throw std::invalid_argument("sample_lipschitz: anchor out of range");
    for (std::size_t x = 0; x < space.size; ++x) f[x] = std::min(f[x], values[j] + space.distance(x, anchors[j]));
  }
  return LipschitzFunction::certify(space, std::move(f));
}

LipschitzFunction random_lipschitz(const FiniteMetricSpace& space, std::uint64_t seed, int max_anchors) {
  std::mt19937_64 rng(seed);
  const int k = std::uniform_int_distribution<int>(1, std::max(1, max_anchors))(rng);
  std::uniform_int_distribution<std::size_t> pick(0, space.size - 1);
  std::uniform_real_distribution<double> value(0.0, static_cast<double>(space.n));
  std::vector<std::size_t> anchors;
  std::vector<double> values;
  for (int j = 0; j < k; ++j) {
    anchors.push_back(pick(rng));
    values.push_back(value(rng));
  }
  return sample_lipschitz(space, anchors, values);
}

namespace {

void require_certified(const FiniteMetricSpace& space, const LipschitzFunction& f) {
  if (f.values.size() != space.size) throw std::invalid_argument("function domain does not match " + space.name());
  if (!(f.certified_constant <= 1.0)) throw std::domain_error("function is not certified 1-Lipschitz");
}

long double mean_of(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / static_cast<long double>(v.size());
}

}  // namespace

LaplaceReport check_laplace(const FiniteMetricSpace& space, const LipschitzFunction& f,
                            const std::vector<double>& lambdas) {
  require_certified(space, f);
  LaplaceReport report;
  report.mean = static_cast<double>(mean_of(f.values));
  for (double lambda : lambdas) {
    long double top = -INFINITY;
    for (double v : f.values) top = std::max<long double>(top, lambda * v);
    long double sum = 0;
    for (double v : f.values) sum += std::exp(static_cast<long double>(lambda) * v - top);
    LaplaceRow row;
    row.lambda = lambda;
    row.log_lhs = static_cast<double>(top + std::log(sum) - std::log(static_cast<long double>(space.size)));
    row.log_rhs = laplace_bound_exponent(space.variance, lambda, report.mean);
    row.margin = row.log_lhs - row.log_rhs;
    report.max_margin = std::max(report.max_margin, row.margin);
    if (row.margin > kLaplaceSlack) ++report.violations;
    report.rows.push_back(row);
  }
  return report;
}

TailReport check_tail(const FiniteMetricSpace& space, const LipschitzFunction& f, const std::vector<double>& ts) {
  require_certified(space, f);
  TailReport report;
  report.mean = static_cast<double>(mean_of(f.values));
  for (double t : ts) {
    if (t < 0) throw std::invalid_argument("check_tail: t must be nonnegative");
    std::size_t above = 0;
    for (double v : f.values) above += v >= report.mean + t - 1e-12;
    TailRow row;
    row.t = t;
    row.tail = static_cast<double>(above) / static_cast<double>(space.size);
    row.bound = std::exp(-t * t / (2 * space.variance));
    row.holds = row.tail <= row.bound + 1e-12;
    if (!row.holds) ++report.violations;
    report.rows.push_back(row);
  }
  return report;
}

namespace {

void finish_corollary4(Corollary4Report& r, const std::vector<std::uint8_t>& in_a, const std::vector<int>& to_a,
                       const std::vector<int>& to_abar, const std::function<int(std::size_t, std::size_t)>& dist,
                       bool with_separator) {
  r.bound = std::exp(-static_cast<double>(r.k) * r.k / (8.0 * r.n)) * static_cast<double>(r.count);
  r.holds = static_cast<double>(r.size_a) <= r.bound * (1 + 1e-12);
  if (!with_separator) return;
  const std::size_t size = to_a.size();
  r.separator.resize(size);
  long long numerator_sum = 0;
  for (std::size_t c = 0; c < size; ++c) {
    const int twice = to_abar[c] - to_a[c];
    numerator_sum += twice;
    r.separator[c] = 0.5 * twice;
    if (in_a[c] && twice < r.k) r.separator_large_on_a = false;
  }
  r.separator_mean_zero = numerator_sum == 0;
  for (std::size_t x = 0; x < size && r.separator_lipschitz; ++x) {
    for (std::size_t y = x + 1; y < size; ++y) {
      // |f(x) - f(y)| <= d(x, y), compared on doubled integers.
      if (std::abs((to_abar[x] - to_a[x]) - (to_abar[y] - to_a[y])) > 2 * dist(x, y)) {
        r.separator_lipschitz = false;
        break;
      }
    }
  }
}

}  // namespace

Corollary4Report corollary4_check(int n, const std::vector<Crossover>& a) {
  if (a.empty()) throw std::invalid_argument("corollary4_check: A is empty");
  const auto space = crossover_space(n);
  const auto points = enumerate_crossovers(n);
  std::map<Crossover, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  std::vector<std::uint8_t> in_a(points.size(), 0), in_abar(points.size(), 0);
  for (const auto& c : a) {
    if (c.arity() != n) throw std::invalid_argument("corollary4_check: A is not a subset of C_n");
    in_a[index.at(c)] = 1;
    in_abar[index.at(complement(c))] = 1;
  }
  std::vector<int> to_a(points.size(), n + 1), to_abar(points.size(), n + 1);
  for (std::size_t c = 0; c < points.size(); ++c) {
    for (std::size_t x = 0; x < points.size(); ++x) {
      if (in_a[x]) to_a[c] = std::min(to_a[c], space.distance(c, x));
      if (in_abar[x]) to_abar[c] = std::min(to_abar[c], space.distance(c, x));
    }
  }
  Corollary4Report r;
  r.n = n;
  r.count = points.size();
  r.size_a = static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), 1));
  r.k = n + 1;
  for (std::size_t c = 0; c < points.size(); ++c) {
    if (in_a[c]) r.k = std::min(r.k, to_abar[c]);
  }
  finish_corollary4(r, in_a, to_a, to_abar, space.distance, true);
  return r;
}

Corollary4Context::Corollary4Context(int n) : n_(n), points_(enumerate_crossovers(n)) {
  if (points_.size() > 64) throw std::invalid_argument("Corollary4Context: #C_n above 64");
  const std::size_t size = points_.size();
  complement_.resize(size);
  rings_.assign(size, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  dist_.assign(size, std::vector<int>(size, 0));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      const int d = crossover_distance(points_[x], points_[y]);
      dist_[x][y] = d;
      rings_[x][static_cast<std::size_t>(d)] |= std::uint64_t{1} << y;
      if (points_[y] == complement(points_[x])) complement_[x] = y;
    }
  }
}

std::uint64_t Corollary4Context::complement_mask(std::uint64_t a) const {
  std::uint64_t out = 0;
  for (std::uint64_t rest = a; rest; rest &= rest - 1) out |= std::uint64_t{1} << complement_[std::countr_zero(rest)];
  return out;
}

int Corollary4Context::distance_to(std::size_t c, std::uint64_t set) const {
  for (std::size_t d = 0; d < rings_[c].size(); ++d) {
    if (rings_[c][d] & set) return static_cast<int>(d);
  }
  return n_ + 1;
}

Corollary4Report Corollary4Context::check(std::uint64_t a, bool with_separator) const {
  if (a == 0) throw std::invalid_argument("corollary4_check: A is empty");
  const std::size_t size = points_.size();
  if (size < 64 && (a >> size) != 0) throw std::invalid_argument("corollary4_check: mask outside C_n");
  const std::uint64_t abar = complement_mask(a);
  Corollary4Report r;
  r.n = n_;
  r.count = size;
  r.size_a = static_cast<std::size_t>(std::popcount(a));
  r.k = n_ + 1;
  for (std::uint64_t rest = a; rest; rest &= rest - 1) {
    r.k = std::min(r.k, distance_to(static_cast<std::size_t>(std::countr_zero(rest)), abar));
  }
  if (!with_separator) {
    finish_corollary4(r, {}, {}, {}, nullptr, false);
    return r;
  }
  std::vector<std::uint8_t> in_a(size);
  std::vector<int> to_a(size), to_abar(size);
  for (std::size_t c = 0; c < size; ++c) {
    in_a[c] = (a >> c) & 1;
    to_a[c] = distance_to(c, a);
    to_abar[c] = distance_to(c, abar);
  }
  const auto& table = dist_;
  finish_corollary4(r, in_a, to_a, to_abar, [&table](std::size_t x, std::size_t y) { return table[x][y]; }, true);
  return r;
}

DiscreteMeasure<Crossover> dirichlet_crossover_measure(int n, double alpha, std::mt19937_64& rng) {
  if (!(alpha > 0)) throw std::invalid_argument("dirichlet_crossover_measure: alpha must be positive");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::map<Crossover, double> weights;
  for (const auto& c : enumerate_crossovers(n)) weights[c] = gamma(rng);
  return DiscreteMeasure<Crossover>::from_weight_map(std::move(weights));
}

double bobkov_gotze_spot_check(int n, const LipschitzFunction& f, const std::vector<double>& lambdas) {
  const auto points = enumerate_crossovers(n);
  if (f.values.size() != points.size()) throw std::invalid_argument("bobkov_gotze_spot_check: f is not on C_n");
  const double top = *std::max_element(f.values.begin(), f.values.end());
  const double bottom = *std::min_element(f.values.begin(), f.values.end());
  double worst = INFINITY;
  for (double lambda : lambdas) {
    std::map<Crossover, double> weights;
    const double shift = lambda >= 0 ? top : bottom;
    for (std::size_t i = 0; i < points.size(); ++i) weights[points[i]] = std::exp(lambda * (f.values[i] - shift));
    const auto xi = DiscreteMeasure<Crossover>::from_weight_map(std::move(weights));
    const auto r = w1h_check(n, xi);
    worst = std::min(worst, r.margin);
  }
  return worst;
}

}  // namespace cubebm
