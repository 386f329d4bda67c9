#include "cubebm/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace cubebm {

namespace {

constexpr int kBitsetMaxDimension = 13;

using Bitset = std::vector<std::uint64_t>;

// half[D] holds the midpoints of 0 and D: subsets of D with |D|/2 rounded either way.
const std::vector<Bitset>& half_tables(int n) {
  static std::map<int, std::vector<Bitset>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const std::size_t count = std::size_t{1} << n;
  const std::size_t words = (count + 63) / 64;
  std::vector<Bitset> half(count, Bitset(words, 0));
  for (std::uint32_t d = 0; d < count; ++d) {
    const int r = std::popcount(d);
    // Enumerate submasks of d.
    for (std::uint32_t s = d;; s = (s - 1) & d) {
      const int k = std::popcount(s);
      if (2 * k == r || 2 * k == r - 1 || 2 * k == r + 1) half[d][s / 64] |= std::uint64_t{1} << (s % 64);
      if (s == 0) break;
    }
  }
  return cache.emplace(n, std::move(half)).first->second;
}

VertexSet midpoint_set_bitset(const VertexSet& a, const VertexSet& b) {
  const int n = a.dimension();
  const auto& half = half_tables(n);
  const std::size_t count = std::size_t{1} << n;
  const std::size_t words = (count + 63) / 64;
  const std::uint64_t last = count % 64 ? (std::uint64_t{1} << (count % 64)) - 1 : ~std::uint64_t{0};
  Bitset m(words, 0), local(words);
  auto full = [&](const Bitset& s) {
    for (std::size_t w = 0; w + 1 < words; ++w) {
      if (~s[w]) return false;
    }
    return s[words - 1] == last;
  };
  for (const auto& x : a) {
    std::fill(local.begin(), local.end(), 0);
    for (const auto& y : b) {
      const auto& h = half[x.bits() ^ y.bits()];
      for (std::size_t w = 0; w < words; ++w) local[w] |= h[w];
      if (full(local)) break;
    }
    // Translate by x: midpoints of (x, y) are x ^ s for s in half(x ^ y).
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t bits = local[w]; bits; bits &= bits - 1) {
        const std::size_t s = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const std::size_t v = s ^ x.bits();
        m[v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
    if (full(m)) break;
  }
  std::vector<Vertex> members;
  for (std::size_t w = 0; w < words; ++w) {
    for (std::uint64_t bits = m[w]; bits; bits &= bits - 1) {
      members.emplace_back(n, static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
    }
  }
  return VertexSet(n, std::move(members));
}

void require_nonempty(const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("A and B must be nonempty");
  if (a.dimension() != b.dimension()) throw std::invalid_argument("A and B live on different hypercubes");
}

std::uint64_t pair_key(const MidpointPair& p) {
  return (static_cast<std::uint64_t>(p.m.bits()) << 32) | p.m_prime.bits();
}

}  // namespace

VertexSet midpoint_set(const VertexSet& a, const VertexSet& b) {
  require_nonempty(a, b);
  if (a.dimension() <= kBitsetMaxDimension) return midpoint_set_bitset(a, b);
  std::unordered_set<std::uint32_t> seen;
  for (const auto& x : a) {
    for (const auto& y : b) {
      for (const auto& c : enumerate_crossovers(hamming(x, y))) seen.insert(midpoint(c, x, y).bits());
    }
  }
  std::vector<Vertex> members;
  for (auto bits : seen) members.emplace_back(a.dimension(), bits);
  return VertexSet(a.dimension(), std::move(members));
}

BMSetReport bm_set_check(const VertexSet& a, const VertexSet& b, std::optional<double> k) {
  require_nonempty(a, b);
  BMSetReport r;
  r.dimension = a.dimension();
  r.k_used = k.value_or(default_curvature(r.dimension));
  r.size_a = a.size();
  r.size_b = b.size();
  r.size_m = midpoint_set(a, b).size();
  r.distance = set_distance(a, b);
  r.lhs = std::log(static_cast<double>(r.size_m));
  r.rhs = 0.5 * std::log(static_cast<double>(r.size_a)) + 0.5 * std::log(static_cast<double>(r.size_b)) +
          r.k_used / 8 * r.distance * r.distance;
  r.margin = r.lhs - r.rhs;
  r.holds = r.margin >= -kInequalitySlack;
  return r;
}

InjectionReport injection_check(const VertexSet& a, const VertexSet& b) {
  require_nonempty(a, b);
  const VertexSet m = midpoint_set(a, b);
  InjectionReport r;
  r.size_m = m.size();
  std::unordered_set<std::uint64_t> images;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const auto image = encode(canonical_crossover(hamming(x, y)), x, y);
      ++r.pairs;
      if (!images.insert(pair_key(image)).second) ++r.collisions;
      if (!m.contains(image.m) || !m.contains(image.m_prime)) r.images_in_m = false;
    }
  }
  r.distinct_images = images.size();
  r.sqrt_bound = std::uint64_t{r.size_m} * r.size_m >= std::uint64_t{a.size()} * b.size();
  r.holds = r.collisions == 0 && r.images_in_m && r.sqrt_bound;
  return r;
}

FiberReport fiber_analysis(const VertexSet& a, const VertexSet& b, const MidpointPair& pair) {
  require_nonempty(a, b);
  if (pair.m.dimension() != a.dimension() || pair.m_prime.dimension() != a.dimension()) {
    throw std::invalid_argument("fiber_analysis: pair lives on a different hypercube");
  }
  FiberReport rep;
  rep.pair = pair;
  rep.r = hamming(pair.m, pair.m_prime);
  rep.set_distance = set_distance(a, b);
  for (const auto& c : enumerate_crossovers(rep.r)) {
    const Vertex first = decode(c, pair), second = decode(complement(c), pair);
    if (a.contains(first) && b.contains(second)) rep.e.push_back(c);
    if (b.contains(first) && a.contains(second)) rep.e_prime.push_back(c);
  }
  std::vector<Crossover> flipped;
  for (const auto& c : rep.e) flipped.push_back(complement(c));
  std::sort(flipped.begin(), flipped.end());
  rep.e_prime_is_complement = flipped == rep.e_prime;
  if (!rep.e.empty() && !rep.e_prime.empty()) {
    int best = rep.r + 1;
    for (const auto& c : rep.e) {
      for (const auto& c2 : rep.e_prime) best = std::min(best, crossover_distance(c, c2));
    }
    rep.separation = best;
  }
  const double d = rep.set_distance;
  const double exponent = d == 0 ? 0.0 : (rep.r == 0 ? -INFINITY : -d * d / (8.0 * rep.r));
  rep.bound = static_cast<double>(crossover_count(rep.r)) * std::exp(exponent);
  rep.holds = rep.e_prime_is_complement && static_cast<double>(rep.e.size()) <= rep.bound * (1 + 1e-12) &&
              (!rep.separation || *rep.separation >= rep.set_distance);
  return rep;
}

FiberSummary fiber_summary(const VertexSet& a, const VertexSet& b) {
  require_nonempty(a, b);
  const int n = a.dimension();
  std::uint64_t triples = 0;
  for (const auto& x : a) {
    for (const auto& y : b) triples += crossover_count(hamming(x, y));
  }
  if (triples > kProofChainBudget) {
    throw std::length_error("fiber_summary: " + std::to_string(triples) + " triples exceed the 1e7 budget");
  }
  FiberSummary s;
  s.set_distance = set_distance(a, b);
  std::vector<std::uint64_t> ab(static_cast<std::size_t>(n) + 1, 0);
  std::unordered_map<std::uint64_t, std::uint64_t> fiber_sizes;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const int r = hamming(x, y);
      ++ab[static_cast<std::size_t>(r)];
      for (const auto& c : enumerate_crossovers(r)) ++fiber_sizes[pair_key(encode(c, x, y))];
    }
  }
  std::vector<std::uint64_t> y_sizes(ab.size(), 0), images(ab.size(), 0);
  for (const auto& [key, size] : fiber_sizes) {
    const MidpointPair pair{Vertex(n, static_cast<std::uint32_t>(key >> 32)),
                            Vertex(n, static_cast<std::uint32_t>(key & 0xffffffffu))};
    const auto rep = fiber_analysis(a, b, pair);
    ++s.fibers_scanned;
    if (!rep.holds || rep.e.size() != size) ++s.fiber_failures;
    y_sizes[static_cast<std::size_t>(rep.r)] += rep.e.size();
    ++images[static_cast<std::size_t>(rep.r)];
  }
  const VertexSet m = midpoint_set(a, b);
  std::vector<std::uint64_t> mm(ab.size(), 0);
  for (const auto& x : m) {
    for (const auto& y : m) ++mm[static_cast<std::size_t>(hamming(x, y))];
  }
  const double d2 = static_cast<double>(s.set_distance) * s.set_distance;
  for (int r = 0; r <= n; ++r) {
    const auto ri = static_cast<std::size_t>(r);
    s.total_ab += ab[ri];
    s.total_mm += mm[ri];
    if (ab[ri] == 0) continue;
    FiberLayer layer;
    layer.r = r;
    layer.pairs_ab = ab[ri];
    layer.y_size = y_sizes[ri];
    layer.images = images[ri];
    layer.pairs_mm = mm[ri];
    // r = 0 forces a = b, so d(A, B) = 0 there.
    layer.bound = std::exp(r == 0 ? 0.0 : d2 / (8.0 * r)) * static_cast<double>(ab[ri]);
    layer.holds = layer.y_size == layer.pairs_ab * crossover_count(r) &&
                  static_cast<double>(layer.pairs_mm) >= layer.bound * (1 - 1e-12);
    s.holds = s.holds && layer.holds;
    s.layers.push_back(layer);
  }
  s.total_bound = std::exp(d2 / (8.0 * n)) * static_cast<double>(s.total_ab);
  s.holds = s.holds && s.fiber_failures == 0 && static_cast<double>(s.total_mm) >= s.total_bound * (1 - 1e-12);
  return s;
}

double empirical_k_star(const VertexSet& a, const VertexSet& b) {
  require_nonempty(a, b);
  const int d = set_distance(a, b);
  if (d == 0) throw std::invalid_argument("empirical_k_star: d(A, B) must be at least 1");
  const double gain = std::log(static_cast<double>(midpoint_set(a, b).size())) -
                      0.5 * std::log(static_cast<double>(a.size())) - 0.5 * std::log(static_cast<double>(b.size()));
  return 8 * gain / (static_cast<double>(d) * d);
}

KStarSweep k_star_sweep(int n_min, int n_max) {
  KStarSweep sweep;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = n_min + (n_min % 2); n <= n_max; n += 2) {
    const VertexSet a(n, {Vertex::zeros(n)}), b(n, {Vertex::ones(n)});
    KStarPoint p;
    p.dimension = n;
    p.k_star = empirical_k_star(a, b);
    p.predicted = 8 * std::log(static_cast<double>(binomial(n, n / 2))) / (static_cast<double>(n) * n);
    sweep.points.push_back(p);
    const double x = std::log(static_cast<double>(n)), y = std::log(p.k_star);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(sweep.points.size());
  if (k >= 2) sweep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return sweep;
}

double stratified_density(int dimension, std::size_t index) {
  const std::size_t stratum = index % kStratifiedDensities.size();
  if (stratum == 0) return std::min(1.0, std::ldexp(4.0, -dimension));
  return kStratifiedDensities[stratum];
}

std::pair<VertexSet, VertexSet> random_instance(int dimension, std::uint64_t seed, std::size_t index) {
  Rng rng = trial_rng(seed, index);
  const double density = stratified_density(dimension, index);
  VertexSet a = random_subset(dimension, density, rng());
  VertexSet b = random_subset(dimension, density, rng());
  return {std::move(a), std::move(b)};
}

}  // namespace cubebm
