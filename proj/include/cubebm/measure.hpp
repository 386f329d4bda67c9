#pragma once

// Finitely supported probability measures over an ordered point type.
//
// The mass type is either `double` (floating mode) or `Rational` (exact
// mode). In floating mode atoms lighter than 1e-15 are pruned and the rest
// renormalized; total mass must be within 1e-12 of one. In exact mode the
// total must be exactly one.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubebm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class M>
struct MassTraits;

template <>
struct MassTraits<double> {
  static constexpr bool exact = false;
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kPruneBelow = 1e-15;
  static double to_double(double m) { return m; }
  static double ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static std::string to_string(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", m);
    return buf;
  }
};

template <>
struct MassTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& m) { return m.convert_to<double>(); }
  static Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }
  static std::string to_string(const Rational& m) { return m.str(); }
};

template <class M>
double to_double(const M& m) {
  return MassTraits<M>::to_double(m);
}

template <class M>
M mass_ratio(std::int64_t num, std::int64_t den) {
  return MassTraits<M>::ratio(num, den);
}

template <class P, class M = double>
class DiscreteMeasure {
 public:
  using point_type = P;
  using mass_type = M;
  using Atoms = std::map<P, M>;

  /// Empty (not a probability measure); exists so measures fit in containers.
  DiscreteMeasure() = default;

  /// Validates positive masses summing to one. Zero atoms are dropped.
  static DiscreteMeasure from_masses(Atoms atoms) {
    DiscreteMeasure out;
    out.atoms_ = std::move(atoms);
    out.finish(/*normalize=*/false);
    return out;
  }

  /// Accumulates nonnegative weights (duplicates add up) and normalizes.
  static DiscreteMeasure from_weights(const std::vector<std::pair<P, M>>& weights) {
    DiscreteMeasure out;
    for (const auto& [p, w] : weights) {
      if (w < M(0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
      out.atoms_[p] += w;
    }
    out.finish(/*normalize=*/true);
    return out;
  }

  static DiscreteMeasure from_weight_map(Atoms weights) {
    DiscreteMeasure out;
    out.atoms_ = std::move(weights);
    for (const auto& [p, w] : out.atoms_) {
      if (w < M(0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
    }
    out.finish(/*normalize=*/true);
    return out;
  }

  const Atoms& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

  M mass(const P& p) const {
    auto it = atoms_.find(p);
    return it == atoms_.end() ? M(0) : it->second;
  }
  bool contains(const P& p) const { return atoms_.count(p) != 0; }

  std::vector<P> support() const {
    std::vector<P> out;
    out.reserve(atoms_.size());
    for (const auto& [p, m] : atoms_) out.push_back(p);
    return out;
  }

  M total() const {
    M sum(0);
    for (const auto& [p, m] : atoms_) sum += m;
    return sum;
  }

  /// Image measure under `f`.
  template <class F>
  auto pushforward(F&& f) const {
    using Q = std::decay_t<decltype(f(std::declval<const P&>()))>;
    std::map<Q, M> image;
    for (const auto& [p, m] : atoms_) image[f(p)] += m;
    return DiscreteMeasure<Q, M>::from_masses(std::move(image));
  }

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  void finish(bool normalize) {
    for (auto it = atoms_.begin(); it != atoms_.end();) {
      if (it->second < M(0)) throw std::invalid_argument("DiscreteMeasure: negative mass");
      if (it->second == M(0)) {
        it = atoms_.erase(it);
      } else {
        ++it;
      }
    }
    if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: no positive mass");
    if constexpr (!MassTraits<M>::exact) {
      if (!normalize && std::abs(total() - 1.0) > MassTraits<M>::kSumTolerance) {
        throw std::invalid_argument("DiscreteMeasure: total mass " + std::to_string(total()) + " differs from 1");
      }
      for (auto it = atoms_.begin(); it != atoms_.end();) {
        if (!std::isfinite(it->second)) throw std::invalid_argument("DiscreteMeasure: non-finite mass");
        if (it->second < MassTraits<M>::kPruneBelow * (normalize ? total() : 1.0)) {
          it = atoms_.erase(it);
        } else {
          ++it;
        }
      }
      if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: no positive mass");
      const double sum = total();
      for (auto& [p, m] : atoms_) m /= sum;
    } else {
      if (normalize) {
        const M sum = total();
        for (auto& [p, m] : atoms_) m /= sum;
      } else if (total() != M(1)) {
        throw std::invalid_argument("DiscreteMeasure: total mass " + total().str() + " differs from 1");
      }
    }
  }

  Atoms atoms_;
};

template <class M = double, class P>
DiscreteMeasure<P, M> dirac(const P& x) {
  return DiscreteMeasure<P, M>::from_masses({{x, M(1)}});
}

/// Uniform measure on the distinct elements of `points`. Throws if empty.
template <class M = double, class Range>
auto uniform_on(const Range& points) {
  using P = std::decay_t<decltype(*std::begin(points))>;
  std::map<P, M> atoms;
  for (const auto& p : points) atoms[p] = M(1);
  if (atoms.empty()) throw std::invalid_argument("uniform_on: empty set");
  const auto n = static_cast<std::int64_t>(atoms.size());
  for (auto& [p, m] : atoms) m = mass_ratio<M>(1, n);
  return DiscreteMeasure<P, M>::from_masses(std::move(atoms));
}

/// Shannon entropy in nats, with 0 ln 0 = 0.
template <class P, class M>
double shannon_entropy(const DiscreteMeasure<P, M>& mu) {
  long double sum = 0;
  for (const auto& [p, m] : mu) {
    const long double x = to_double(m);
    sum -= x * std::log(x);
  }
  return static_cast<double>(sum);
}

/// H(mu | nu) in nats; +infinity when mu charges a point nu does not.
template <class P, class M>
double relative_entropy(const DiscreteMeasure<P, M>& mu, const DiscreteMeasure<P, M>& nu) {
  long double sum = 0;
  for (const auto& [p, m] : mu) {
    const M q = nu.mass(p);
    if (q == M(0)) return std::numeric_limits<double>::infinity();
    const long double x = to_double(m);
    sum += x * std::log(x / static_cast<long double>(to_double(q)));
  }
  return static_cast<double>(sum);
}

/// H(mu | uniform on a set of `cardinality` points containing supp mu),
/// evaluated as sum mu(x) ln(mu(x) * cardinality).
template <class P, class M>
double relative_entropy_to_uniform(const DiscreteMeasure<P, M>& mu, long double cardinality) {
  if (static_cast<long double>(mu.size()) > cardinality) {
    throw std::invalid_argument("relative_entropy_to_uniform: support larger than reference set");
  }
  long double sum = 0;
  for (const auto& [p, m] : mu) {
    const long double x = to_double(m);
    sum += x * std::log(x * cardinality);
  }
  return static_cast<double>(sum);
}

}  // namespace cubebm
