#pragma once

// Crossovers and the midpoint codec on the hypercube.
//
// An r-crossover is a subset c of {1,...,r} with #c in {floor(r/2), ceil(r/2)}.
// Given two vertices a, b at distance r, their differing coordinates are
// indexed 1..r in ascending coordinate order; the midpoint phi_c(a, b) takes
// a's bit at the indices in c and b's bit at the others. The pair
// (phi_c(a,b), phi_{c-bar}(a,b)) determines a and b once c is known.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cubebm/hypercube.hpp"

namespace cubebm {

inline constexpr int kMaxArity = kMaxDimension;

std::uint64_t binomial(int n, int k);

class Crossover {
 public:
  Crossover() = default;
  /// `picks` uses bit (i-1) for element i. Throws unless the cardinality is
  /// floor(r/2) or ceil(r/2) and picks is a subset of {1..r}.
  Crossover(int arity, std::uint32_t picks);

  /// Builds from 1-based elements, e.g. from_elements(4, {1, 2}).
  static Crossover from_elements(int arity, const std::vector<int>& elements);

  int arity() const { return arity_; }
  std::uint32_t picks() const { return picks_; }
  int cardinality() const;
  bool contains(int element) const;
  std::vector<int> elements() const;

  /// "{1,3}" style rendering.
  std::string to_string() const;

  bool operator==(const Crossover&) const = default;
  /// Canonical order: arity, then cardinality, then lexicographic on the
  /// sorted element list.
  std::strong_ordering operator<=>(const Crossover& other) const;

 private:
  std::uint32_t picks_ = 0;
  int arity_ = 0;
};

struct MidpointPair {
  Vertex m;
  Vertex m_prime;

  friend auto operator<=>(const MidpointPair&, const MidpointPair&) = default;
};

/// #C_r: C(r, r/2) for even r, 2 C(r, (r-1)/2) for odd r.
std::uint64_t crossover_count(int arity);

/// All r-crossovers in canonical order. Throws if r > kMaxArity.
std::vector<Crossover> enumerate_crossovers(int arity);

/// Size of the symmetric difference. Throws on arity mismatch.
int crossover_distance(const Crossover& c1, const Crossover& c2);

Crossover complement(const Crossover& c);

/// c_r = {1, ..., floor(r/2)}.
Crossover canonical_crossover(int arity);

/// (phi_c(a,b), phi_{c-bar}(a,b)). Throws unless c.arity() == hamming(a, b).
MidpointPair encode(const Crossover& c, const Vertex& a, const Vertex& b);

/// The vertex a with encode(c, a, b) == pair for b = decode(complement(c), pair).
Vertex decode(const Crossover& c, const MidpointPair& pair);

/// phi_c(a, b) alone.
Vertex midpoint(const Crossover& c, const Vertex& a, const Vertex& b);

VertexSet midpoints(const Vertex& a, const Vertex& b);

std::uint64_t midpoint_count(const Vertex& a, const Vertex& b);

/// Midpoint count as a function of the distance alone.
std::uint64_t midpoint_count_at_distance(int distance);

/// Lays the low r bits of `picks` onto the set bits of `diff`, element 1 on
/// the most significant set bit of `diff`.
std::uint32_t scatter_picks(std::uint32_t picks, std::uint32_t diff);

}  // namespace cubebm
