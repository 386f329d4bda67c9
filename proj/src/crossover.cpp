#include "cubebm/crossover.hpp"

#include <bit>
#include <stdexcept>

namespace cubebm {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

namespace {

void check_arity(int arity) {
  if (arity < 0 || arity > kMaxArity) {
    throw std::invalid_argument("crossover arity " + std::to_string(arity) +
                                " out of range: r must satisfy 0 <= r <= " + std::to_string(kMaxArity));
  }
}

bool admissible_cardinality(int arity, int cardinality) {
  return cardinality == arity / 2 || cardinality == (arity + 1) / 2;
}

// Lexicographic successor among k-subsets of {0..r-1} stored as index lists.
bool next_combination(std::vector<int>& idx, int r) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == r - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

void append_subsets(int arity, int k, std::vector<Crossover>& out) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  do {
    std::uint32_t picks = 0;
    for (int i : idx) picks |= 1u << i;
    out.emplace_back(arity, picks);
  } while (next_combination(idx, arity));
}

}  // namespace

Crossover::Crossover(int arity, std::uint32_t picks) : picks_(picks), arity_(arity) {
  check_arity(arity);
  if ((picks & ~full_mask(arity)) != 0) {
    throw std::invalid_argument("crossover picks outside {1.." + std::to_string(arity) + "}");
  }
  if (!admissible_cardinality(arity, std::popcount(picks))) {
    throw std::invalid_argument("crossover of arity " + std::to_string(arity) + " cannot have " +
                                std::to_string(std::popcount(picks)) + " picks");
  }
}

Crossover Crossover::from_elements(int arity, const std::vector<int>& elements) {
  std::uint32_t picks = 0;
  for (int e : elements) {
    if (e < 1 || e > arity) throw std::invalid_argument("crossover element out of range");
    picks |= 1u << (e - 1);
  }
  return Crossover(arity, picks);
}

int Crossover::cardinality() const { return std::popcount(picks_); }

bool Crossover::contains(int element) const {
  return element >= 1 && element <= arity_ && ((picks_ >> (element - 1)) & 1u);
}

std::vector<int> Crossover::elements() const {
  std::vector<int> out;
  for (int i = 1; i <= arity_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string Crossover::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int e : elements()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::strong_ordering Crossover::operator<=>(const Crossover& other) const {
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  if (auto c = cardinality() <=> other.cardinality(); c != 0) return c;
  const std::uint32_t diff = picks_ ^ other.picks_;
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint32_t lowest = diff & (~diff + 1u);
  return (picks_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::uint64_t crossover_count(int arity) {
  check_arity(arity);
  if (arity % 2 == 0) return binomial(arity, arity / 2);
  return 2 * binomial(arity, (arity - 1) / 2);
}

std::vector<Crossover> enumerate_crossovers(int arity) {
  check_arity(arity);
  std::vector<Crossover> out;
  out.reserve(crossover_count(arity));
  append_subsets(arity, arity / 2, out);
  if (arity % 2 == 1) append_subsets(arity, (arity + 1) / 2, out);
  return out;
}

int crossover_distance(const Crossover& c1, const Crossover& c2) {
  if (c1.arity() != c2.arity()) {
    throw std::invalid_argument("crossover_distance: arity mismatch (" + std::to_string(c1.arity()) +
                                " vs " + std::to_string(c2.arity()) + ")");
  }
  return std::popcount(c1.picks() ^ c2.picks());
}

Crossover complement(const Crossover& c) {
  return Crossover(c.arity(), ~c.picks() & full_mask(c.arity()));
}

Crossover canonical_crossover(int arity) {
  check_arity(arity);
  return Crossover(arity, full_mask(arity / 2));
}

std::uint32_t scatter_picks(std::uint32_t picks, std::uint32_t diff) {
  std::uint32_t selected = 0;
  int index = 0;
  for (int bit = 31; bit >= 0; --bit) {
    const std::uint32_t mask = 1u << bit;
    if (!(diff & mask)) continue;
    if ((picks >> index) & 1u) selected |= mask;
    ++index;
  }
  return selected;
}

namespace {

void check_codec_arity(const Crossover& c, int distance, const char* where) {
  if (c.arity() != distance) {
    throw std::invalid_argument(std::string(where) + ": crossover arity " + std::to_string(c.arity()) +
                                " does not match distance " + std::to_string(distance));
  }
}

}  // namespace

Vertex midpoint(const Crossover& c, const Vertex& a, const Vertex& b) {
  check_codec_arity(c, hamming(a, b), "midpoint");
  const std::uint32_t diff = a.bits() ^ b.bits();
  const std::uint32_t from_a = scatter_picks(c.picks(), diff);
  return Vertex(a.dimension(), a.bits() ^ (diff & ~from_a));
}

MidpointPair encode(const Crossover& c, const Vertex& a, const Vertex& b) {
  check_codec_arity(c, hamming(a, b), "encode");
  const std::uint32_t diff = a.bits() ^ b.bits();
  const std::uint32_t from_a = scatter_picks(c.picks(), diff);
  return {Vertex(a.dimension(), a.bits() ^ (diff & ~from_a)), Vertex(a.dimension(), a.bits() ^ (diff & from_a))};
}

Vertex decode(const Crossover& c, const MidpointPair& pair) {
  check_codec_arity(c, hamming(pair.m, pair.m_prime), "decode");
  const std::uint32_t diff = pair.m.bits() ^ pair.m_prime.bits();
  const std::uint32_t from_m = scatter_picks(c.picks(), diff);
  return Vertex(pair.m.dimension(), pair.m.bits() ^ (diff & ~from_m));
}

VertexSet midpoints(const Vertex& a, const Vertex& b) {
  const int r = hamming(a, b);
  const std::uint32_t diff = a.bits() ^ b.bits();
  std::vector<Vertex> out;
  for (const auto& c : enumerate_crossovers(r)) {
    out.emplace_back(a.dimension(), a.bits() ^ (diff & ~scatter_picks(c.picks(), diff)));
  }
  return VertexSet(a.dimension(), std::move(out));
}

std::uint64_t midpoint_count_at_distance(int distance) { return crossover_count(distance); }

std::uint64_t midpoint_count(const Vertex& a, const Vertex& b) {
  return midpoint_count_at_distance(hamming(a, b));
}

}  // namespace cubebm
