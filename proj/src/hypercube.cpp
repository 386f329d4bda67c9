#include "cubebm/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace cubebm {

void check_dimension(int dimension) {
  if (dimension < 0 || dimension > kMaxDimension) {
    throw std::invalid_argument("dimension " + std::to_string(dimension) +
                                " out of range: N must satisfy 0 <= N <= " +
                                std::to_string(kMaxDimension));
  }
}

Vertex::Vertex(int dimension, std::uint32_t bits) : bits_(bits), dimension_(dimension) {
  check_dimension(dimension);
  if ((bits & ~full_mask(dimension)) != 0) {
    throw std::invalid_argument("vertex bits exceed dimension " + std::to_string(dimension));
  }
}

Vertex Vertex::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_dimension(n);
  std::uint32_t bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("invalid bit string '" + std::string(text) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint32_t>(ch == '1');
  }
  return Vertex(n, bits);
}

Vertex Vertex::ones(int dimension) {
  check_dimension(dimension);
  return Vertex(dimension, full_mask(dimension));
}

int Vertex::coordinate(int i) const {
  if (i < 1 || i > dimension_) throw std::out_of_range("coordinate index out of range");
  return static_cast<int>((bits_ >> (dimension_ - i)) & 1u);
}

std::string Vertex::to_string() const {
  std::string out(static_cast<std::size_t>(dimension_), '0');
  for (int i = 1; i <= dimension_; ++i) {
    if (coordinate(i)) out[static_cast<std::size_t>(i - 1)] = '1';
  }
  return out;
}

int hamming(const Vertex& a, const Vertex& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("hamming: dimension mismatch (" + std::to_string(a.dimension()) +
                                " vs " + std::to_string(b.dimension()) + ")");
  }
  return std::popcount(a.bits() ^ b.bits());
}

VertexSet::VertexSet(int dimension, std::vector<Vertex> members)
    : dimension_(dimension), members_(std::move(members)) {
  check_dimension(dimension);
  for (const auto& v : members_) {
    if (v.dimension() != dimension) {
      throw std::invalid_argument("VertexSet: member dimension mismatch");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::parse(std::string_view text) {
  std::vector<Vertex> members;
  int dimension = -1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(',', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view token = text.substr(start, stop - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw std::invalid_argument("empty vertex in list '" + std::string(text) + "'");
    Vertex v = Vertex::parse(token);
    if (dimension < 0) dimension = v.dimension();
    if (v.dimension() != dimension) {
      throw std::invalid_argument("vertex list mixes dimensions: '" + std::string(text) + "'");
    }
    members.push_back(v);
    start = stop + 1;
  }
  return VertexSet(std::max(dimension, 0), std::move(members));
}

VertexSet VertexSet::full(int dimension) {
  return VertexSet(dimension, enumerate_vertices(dimension));
}

bool VertexSet::contains(const Vertex& v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::string VertexSet::to_string() const {
  std::string out;
  for (const auto& v : members_) {
    if (!out.empty()) out += ',';
    out += v.to_string();
  }
  return out;
}

int set_distance(const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("set_distance: empty set");
  if (a.dimension() != b.dimension()) throw std::invalid_argument("set_distance: dimension mismatch");
  int best = std::numeric_limits<int>::max();
  for (const auto& x : a) {
    for (const auto& y : b) {
      best = std::min(best, std::popcount(x.bits() ^ y.bits()));
      if (best == 0) return 0;
    }
  }
  return best;
}

std::vector<Vertex> enumerate_vertices(int dimension) {
  check_dimension(dimension);
  const std::uint32_t count = 1u << dimension;
  std::vector<Vertex> out;
  out.reserve(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) out.emplace_back(dimension, bits);
  return out;
}

VertexSet random_subset(int dimension, double density, std::uint64_t seed) {
  check_dimension(dimension);
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("random_subset: density must lie in (0, 1]");
  }
  Rng rng(seed);
  std::bernoulli_distribution keep(density);
  const std::uint32_t count = 1u << dimension;
  std::vector<Vertex> members;
  while (members.empty()) {
    for (std::uint32_t bits = 0; bits < count; ++bits) {
      if (density >= 1.0 || keep(rng)) members.emplace_back(dimension, bits);
    }
  }
  return VertexSet(dimension, std::move(members));
}

}  // namespace cubebm
