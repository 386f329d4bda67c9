#pragma once

// Midpoint measures on the hypercube and the joint law of (a, b, c) used to
// track entropy through the crossover codec.

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>

#include "cubebm/crossover.hpp"
#include "cubebm/hypercube.hpp"
#include "cubebm/measure.hpp"

namespace cubebm {

/// Uniform measure on the midpoints of a and b.
template <class M = double>
DiscreteMeasure<Vertex, M> mid_measure(const Vertex& a, const Vertex& b) {
  return uniform_on<M>(midpoints(a, b).members());
}

namespace detail {

inline void require_same_dimension(const std::vector<Vertex>& xs, const std::vector<Vertex>& ys) {
  int dim = -1;
  for (const auto* list : {&xs, &ys}) {
    for (const auto& v : *list) {
      if (dim < 0) dim = v.dimension();
      if (v.dimension() != dim) throw std::invalid_argument("measures live on hypercubes of different dimension");
    }
  }
}

}  // namespace detail

/// The mixture of mid_measure(a, b) under mu0(a) mu1(b).
template <class M>
DiscreteMeasure<Vertex, M> mid_of_measures(const DiscreteMeasure<Vertex, M>& mu0,
                                           const DiscreteMeasure<Vertex, M>& mu1) {
  detail::require_same_dimension(mu0.support(), mu1.support());
  std::map<Vertex, M> mixture;
  for (const auto& [a, pa] : mu0) {
    for (const auto& [b, pb] : mu1) {
      const int r = hamming(a, b);
      const M share = pa * pb / M(static_cast<std::int64_t>(crossover_count(r)));
      const std::uint32_t diff = a.bits() ^ b.bits();
      for (const auto& c : enumerate_crossovers(r)) {
        mixture[Vertex(a.dimension(), a.bits() ^ (diff & ~scatter_picks(c.picks(), diff)))] += share;
      }
    }
  }
  return DiscreteMeasure<Vertex, M>::from_weight_map(std::move(mixture));
}

/// One atom (a, b, c) of the joint law; c has arity hamming(a, b).
struct JointAtom {
  Vertex a;
  Vertex b;
  Crossover c;

  friend auto operator<=>(const JointAtom&, const JointAtom&) = default;
};

template <class M = double>
using JointLaw = DiscreteMeasure<JointAtom, M>;

/// a ~ mu0 and b ~ mu1 independent, c uniform on C_{d(a,b)} given (a, b).
template <class M>
JointLaw<M> build_joint(const DiscreteMeasure<Vertex, M>& mu0, const DiscreteMeasure<Vertex, M>& mu1) {
  detail::require_same_dimension(mu0.support(), mu1.support());
  std::map<JointAtom, M> atoms;
  for (const auto& [a, pa] : mu0) {
    for (const auto& [b, pb] : mu1) {
      const int r = hamming(a, b);
      const M share = pa * pb / M(static_cast<std::int64_t>(crossover_count(r)));
      for (const auto& c : enumerate_crossovers(r)) atoms.emplace(JointAtom{a, b, c}, share);
    }
  }
  return JointLaw<M>::from_weight_map(std::move(atoms));
}

/// Throws unless every atom satisfies arity(c) == hamming(a, b).
template <class M>
void validate_joint(const JointLaw<M>& joint) {
  for (const auto& [atom, mass] : joint) {
    if (atom.c.arity() != hamming(atom.a, atom.b)) {
      throw std::invalid_argument("joint law atom with crossover arity != d(a,b)");
    }
  }
}

/// Law of Phi_c(a, b) = (m, m').
template <class M>
DiscreteMeasure<MidpointPair, M> pair_law(const JointLaw<M>& joint) {
  return joint.pushforward([](const JointAtom& t) { return encode(t.c, t.a, t.b); });
}

/// Conditional laws given one value (m, m') of Phi_c(a, b).
template <class M>
struct Fiber {
  M weight{};
  DiscreteMeasure<JointAtom, M> y;     // (a, b, c) given (m, m')
  DiscreteMeasure<Crossover, M> e;     // c given (m, m')
  DiscreteMeasure<Vertex, M> a_cond;   // a given (m, m')
  DiscreteMeasure<Vertex, M> b_cond;   // b given (m, m')
};

/// Disintegration of the joint law over ordered pairs (m, m').
template <class M>
std::map<MidpointPair, Fiber<M>> conditional_laws(const JointLaw<M>& joint) {
  std::map<MidpointPair, std::map<JointAtom, M>> grouped;
  for (const auto& [atom, mass] : joint) grouped[encode(atom.c, atom.a, atom.b)][atom] = mass;

  std::map<MidpointPair, Fiber<M>> out;
  for (auto& [pair, atoms] : grouped) {
    Fiber<M> fiber;
    for (const auto& [atom, mass] : atoms) fiber.weight += mass;
    fiber.y = DiscreteMeasure<JointAtom, M>::from_weight_map(std::move(atoms));
    fiber.e = fiber.y.pushforward([](const JointAtom& t) { return t.c; });
    fiber.a_cond = fiber.y.pushforward([](const JointAtom& t) { return t.a; });
    fiber.b_cond = fiber.y.pushforward([](const JointAtom& t) { return t.b; });
    out.emplace(pair, std::move(fiber));
  }
  return out;
}

/// Random measure on {0,1}^N: support size uniform in [1, max_support]
/// (capped at 2^N), distinct uniform vertices, integer weights in
/// [1, max_weight]. Exact in Rational mode.
template <class M = double>
DiscreteMeasure<Vertex, M> random_vertex_measure(int dimension, std::size_t max_support, Rng& rng,
                                                 int max_weight = 10) {
  check_dimension(dimension);
  const std::uint64_t cube = std::uint64_t{1} << dimension;
  const std::uint64_t cap = std::min<std::uint64_t>(std::max<std::size_t>(max_support, 1), cube);
  const std::uint64_t support = std::uniform_int_distribution<std::uint64_t>(1, cap)(rng);
  std::uniform_int_distribution<std::uint32_t> vertex(0, full_mask(dimension));
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::map<Vertex, M> atoms;
  while (atoms.size() < support) atoms.emplace(Vertex(dimension, vertex(rng)), M(weight(rng)));
  return DiscreteMeasure<Vertex, M>::from_weight_map(std::move(atoms));
}

}  // namespace cubebm
