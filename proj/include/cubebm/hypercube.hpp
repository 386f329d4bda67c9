#pragma once

// Vertices of the discrete hypercube {0,1}^N with the Hamming metric.
//
// A vertex is a bitmask plus a dimension tag. Coordinate 1 is the most
// significant bit, so integer order on `bits` is lexicographic order on the
// bit string. Dimensions are capped at kMaxDimension.

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubebm {

inline constexpr int kMaxDimension = 24;

class Vertex {
 public:
  Vertex() = default;
  Vertex(int dimension, std::uint32_t bits);

  /// Parses a bit string such as "0110"; its length is the dimension.
  static Vertex parse(std::string_view text);
  static Vertex zeros(int dimension) { return Vertex(dimension, 0); }
  static Vertex ones(int dimension);

  int dimension() const { return dimension_; }
  std::uint32_t bits() const { return bits_; }

  /// Coordinate `i` in 1..N.
  int coordinate(int i) const;

  std::string to_string() const;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  std::uint32_t bits_ = 0;
  int dimension_ = 0;
};

/// Mask of the N low bits.
inline std::uint32_t full_mask(int dimension) {
  return dimension >= 32 ? ~0u : ((1u << dimension) - 1u);
}

/// Number of differing coordinates. Throws on dimension mismatch.
int hamming(const Vertex& a, const Vertex& b);

/// Sorted, duplicate-free set of vertices of a common dimension.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates; throws if the members disagree on dimension.
  VertexSet(int dimension, std::vector<Vertex> members);

  /// Parses a comma-separated list of bit strings, e.g. "0000,1100".
  static VertexSet parse(std::string_view text);
  static VertexSet full(int dimension);

  int dimension() const { return dimension_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Vertex& v) const;

  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::string to_string() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int dimension_ = 0;
  std::vector<Vertex> members_;
};

/// Minimum pairwise Hamming distance. Throws if either set is empty or the
/// dimensions differ.
int set_distance(const VertexSet& a, const VertexSet& b);

/// All 2^N vertices in lexicographic order. Throws if N > kMaxDimension.
std::vector<Vertex> enumerate_vertices(int dimension);

/// Seeded generator used everywhere in the library (64-bit Mersenne twister).
using Rng = std::mt19937_64;

/// Stream for trial `index` derived from a base seed as seed XOR index.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(seed ^ index);
}

/// Each vertex kept independently with probability `density`; redrawn until
/// nonempty. Deterministic for fixed (dimension, density, seed).
VertexSet random_subset(int dimension, double density, std::uint64_t seed);

void check_dimension(int dimension);

}  // namespace cubebm
