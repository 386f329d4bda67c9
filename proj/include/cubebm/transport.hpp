#pragma once

// Exact Wasserstein-1 distance between finitely supported measures.
//
// The problem is solved as a min-cost flow on the bipartite support graph.
// Exact mode (Rational masses) scales masses by the common denominator and
// requires integer ground costs; the returned value is then an exact
// rational. Floating mode rounds masses to multiples of 1e-12 (largest
// remainder) and reports the resulting error bound on the value.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubebm/crossover.hpp"
#include "cubebm/flow_solver.hpp"
#include "cubebm/measure.hpp"

namespace cubebm {

template <class P>
using Metric = std::function<double(const P&, const P&)>;

template <class P, class M = double>
struct Coupling {
  std::map<std::pair<P, P>, M> joint;
  M cost{};
};

template <class P>
struct DualCertificate {
  std::map<P, double> f;  // potential on the first measure's support
  std::map<P, double> g;  // potential on the second measure's support
  double dual_value = 0;
  double max_violation = 0;  // max over support pairs of f(x) - g(y) - d(x,y)
  double gap = 0;            // |dual_value - primal value|
};

template <class P, class M = double>
struct TransportResult {
  M value{};
  Coupling<P, M> coupling;
  std::optional<DualCertificate<P>> duals;
  double quantization_error = 0;  // bound on |value - W1(mu, nu)|; zero in exact mode

  double value_double() const { return to_double(value); }
};

struct CouplingCheck {
  bool ok = true;
  double worst_violation = 0;
  std::string detail;
};

inline constexpr double kCouplingTolerance = 1e-10;
inline constexpr double kCertificateTolerance = 1e-9;
inline constexpr std::int64_t kFloatMassDenominator = 1'000'000'000'000;

/// Checks both marginals of `xi` against mu and nu: within 1e-10 in floating
/// mode, exactly in exact mode.
template <class P, class M>
CouplingCheck validate_coupling(const Coupling<P, M>& xi, const DiscreteMeasure<P, M>& mu,
                                const DiscreteMeasure<P, M>& nu) {
  std::map<P, M> rows, cols;
  CouplingCheck check;
  for (const auto& [key, mass] : xi.joint) {
    if (!(mass > M(0))) {
      check.ok = false;
      check.detail = "nonpositive coupling mass";
      check.worst_violation = std::max(check.worst_violation, std::abs(to_double(mass)));
    }
    rows[key.first] += mass;
    cols[key.second] += mass;
  }
  auto compare = [&](const std::map<P, M>& sums, const DiscreteMeasure<P, M>& target, const char* side) {
    std::map<P, M> all = sums;
    for (const auto& [p, m] : target) all.emplace(p, M(0));
    for (const auto& [p, ignored] : all) {
      auto it = sums.find(p);
      const M have = it == sums.end() ? M(0) : it->second;
      const M want = target.mass(p);
      const double gap = std::abs(to_double(have) - to_double(want));
      const bool bad = MassTraits<M>::exact ? (have != want) : (gap > kCouplingTolerance);
      if (gap > check.worst_violation || (bad && check.ok)) {
        check.worst_violation = std::max(check.worst_violation, gap);
        if (bad) check.detail = std::string(side) + " marginal off by " + std::to_string(gap);
      }
      if (bad) check.ok = false;
    }
  };
  compare(rows, mu, "row");
  compare(cols, nu, "column");
  return check;
}

template <class P, class M>
M coupling_cost(const Coupling<P, M>& xi, const Metric<P>& metric);

namespace detail {

template <class M>
M cost_as_mass(double c) {
  if constexpr (MassTraits<M>::exact) {
    return M(static_cast<long long>(c));
  } else {
    return c;
  }
}

// Largest-remainder rounding of masses to integers summing to `scale`.
inline std::vector<std::int64_t> quantize(const std::vector<double>& masses, std::int64_t scale) {
  std::vector<std::int64_t> out(masses.size());
  std::vector<std::pair<long double, std::size_t>> remainders;
  std::int64_t used = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const long double x = static_cast<long double>(masses[i]) * static_cast<long double>(scale);
    const long double fl = std::floor(x);
    out[i] = static_cast<std::int64_t>(fl);
    used += out[i];
    remainders.emplace_back(x - fl, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  std::int64_t left = scale - used;
  for (std::size_t k = 0; left > 0; k = (k + 1) % remainders.size(), --left) ++out[remainders[k].second];
  for (std::size_t k = remainders.size(); left < 0; --left) {
    // Only reachable through rounding noise when masses overshoot one.
    k = (k == 0 ? remainders.size() : k) - 1;
    while (out[remainders[k].second] == 0) k = (k == 0 ? remainders.size() : k) - 1;
    --out[remainders[k].second];
  }
  return out;
}

inline std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > BigInt(std::numeric_limits<std::int64_t>::max()) || v < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw std::overflow_error(std::string("w1: ") + what + " does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace detail

/// Exact W1(mu, nu) with optimal coupling and (optionally) a Kantorovich
/// duality certificate. Throws on non-finite or negative metric values, on
/// non-integer costs in exact mode, and if the solver's coupling fails
/// marginal validation.
template <class P, class M>
TransportResult<P, M> w1(const DiscreteMeasure<P, M>& mu, const DiscreteMeasure<P, M>& nu, const Metric<P>& metric,
                         bool with_certificate = true) {
  if (mu.empty() || nu.empty()) throw std::invalid_argument("w1: empty measure");
  const std::vector<P> xs = mu.support();
  const std::vector<P> ys = nu.support();
  const std::size_t m = xs.size();
  const std::size_t n = ys.size();

  std::vector<double> cost(m * n);
  double max_cost = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = metric(xs[i], ys[j]);
      if (!std::isfinite(c)) throw std::invalid_argument("w1: non-finite metric value");
      if (c < 0) throw std::invalid_argument("w1: negative metric value");
      if constexpr (MassTraits<M>::exact) {
        if (c != std::floor(c) || c > 2147483647.0) {
          throw std::invalid_argument("w1: exact mode needs integer ground costs");
        }
      }
      cost[i * n + j] = c;
      max_cost = std::max(max_cost, c);
    }
  }

  std::vector<std::int64_t> supply(m), demand(n);
  TransportResult<P, M> result;
  M scale_mass;
  if constexpr (MassTraits<M>::exact) {
    BigInt lcm = 1;
    for (const auto* measure : {&mu, &nu}) {
      for (const auto& [p, mass] : *measure) {
        const BigInt den = boost::multiprecision::denominator(mass);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
      }
    }
    const std::int64_t scale = detail::to_int64(lcm, "common mass denominator");
    if (static_cast<long double>(scale) * (max_cost + 1.0L) > 9.0e18L) {
      throw std::overflow_error("w1: scaled problem too large for exact mode");
    }
    for (std::size_t i = 0; i < m; ++i) {
      supply[i] = detail::to_int64(boost::multiprecision::numerator(mu.mass(xs[i]) * M(scale)), "supply");
    }
    for (std::size_t j = 0; j < n; ++j) {
      demand[j] = detail::to_int64(boost::multiprecision::numerator(nu.mass(ys[j]) * M(scale)), "demand");
    }
    scale_mass = M(scale);
  } else {
    std::vector<double> pm(m), pn(n);
    for (std::size_t i = 0; i < m; ++i) pm[i] = mu.mass(xs[i]);
    for (std::size_t j = 0; j < n; ++j) pn[j] = nu.mass(ys[j]);
    supply = detail::quantize(pm, kFloatMassDenominator);
    demand = detail::quantize(pn, kFloatMassDenominator);
    const double scale = static_cast<double>(kFloatMassDenominator);
    double tv = 0;
    for (std::size_t i = 0; i < m; ++i) tv += std::abs(pm[i] - static_cast<double>(supply[i]) / scale);
    for (std::size_t j = 0; j < n; ++j) tv += std::abs(pn[j] - static_cast<double>(demand[j]) / scale);
    result.quantization_error = 0.5 * tv * max_cost;
    scale_mass = scale;
  }

  const detail::FlowSolution sol = detail::solve_transportation(supply, demand, cost);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t f = sol.at(i, j);
      if (f <= 0) continue;
      M mass;
      if constexpr (MassTraits<M>::exact) {
        mass = M(f) / scale_mass;
      } else {
        mass = static_cast<double>(f) / scale_mass;
      }
      result.coupling.joint.emplace(std::make_pair(xs[i], ys[j]), mass);
    }
  }
  if constexpr (MassTraits<M>::exact) {
    BigInt total = 0;
    for (std::size_t k = 0; k < m * n; ++k) total += BigInt(sol.flow[k]) * static_cast<long long>(cost[k]);
    result.value = M(total) / scale_mass;
  } else {
    long double total = 0;
    for (std::size_t k = 0; k < m * n; ++k) total += static_cast<long double>(sol.flow[k]) * cost[k];
    result.value = static_cast<double>(total / static_cast<long double>(scale_mass));
  }
  result.coupling.cost = result.value;

  const CouplingCheck check = validate_coupling(result.coupling, mu, nu);
  if (!check.ok) throw std::logic_error("w1: solver coupling failed validation: " + check.detail);

  if (with_certificate) {
    DualCertificate<P> cert;
    long double dual = 0;
    for (std::size_t i = 0; i < m; ++i) {
      cert.f[xs[i]] = -sol.row_potential[i];
      dual += static_cast<long double>(to_double(mu.mass(xs[i]))) * -sol.row_potential[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      cert.g[ys[j]] = -sol.col_potential[j];
      dual -= static_cast<long double>(to_double(nu.mass(ys[j]))) * -sol.col_potential[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cert.max_violation =
            std::max(cert.max_violation, sol.col_potential[j] - sol.row_potential[i] - cost[i * n + j]);
      }
    }
    cert.dual_value = static_cast<double>(dual);
    cert.gap = std::abs(cert.dual_value - result.value_double());
    result.duals = std::move(cert);
  }
  return result;
}

/// Sum of mass * d(x, y) over the coupling.
template <class P, class M>
M coupling_cost(const Coupling<P, M>& xi, const Metric<P>& metric) {
  M total(0);
  for (const auto& [key, mass] : xi.joint) total += mass * detail::cost_as_mass<M>(metric(key.first, key.second));
  return total;
}

/// Checks a duality certificate independently of the solver: feasibility
/// f(x) - g(y) <= d(x, y) on all support pairs, and the dual objective
/// against `value`. Returns (max violation, gap).
template <class P, class M>
std::pair<double, double> audit_certificate(const DualCertificate<P>& cert, const DiscreteMeasure<P, M>& mu,
                                            const DiscreteMeasure<P, M>& nu, const Metric<P>& metric,
                                            double value) {
  double violation = 0;
  long double dual = 0;
  for (const auto& [x, fx] : cert.f) {
    dual += static_cast<long double>(to_double(mu.mass(x))) * fx;
    for (const auto& [y, gy] : cert.g) violation = std::max(violation, fx - gy - metric(x, y));
  }
  for (const auto& [y, gy] : cert.g) dual -= static_cast<long double>(to_double(nu.mass(y))) * gy;
  return {violation, std::abs(static_cast<double>(dual) - value)};
}

/// Pushes a coupling of crossover laws to a coupling of vertex laws through
/// decoding against `pair`. Costs agree because decoding is isometric.
template <class M>
Coupling<Vertex, M> coupling_transfer(const Coupling<Crossover, M>& xi, const MidpointPair& pair) {
  const int r = hamming(pair.m, pair.m_prime);
  Coupling<Vertex, M> out;
  for (const auto& [key, mass] : xi.joint) {
    if (key.first.arity() != r || key.second.arity() != r) {
      throw std::invalid_argument("coupling_transfer: crossover arity does not match d(m, m')");
    }
    out.joint[{decode(key.first, pair), decode(key.second, pair)}] += mass;
  }
  out.cost = coupling_cost<Vertex, M>(out, Metric<Vertex>([](const Vertex& a, const Vertex& b) {
                                        return static_cast<double>(hamming(a, b));
                                      }));
  return out;
}

inline const Metric<Vertex>& hamming_metric() {
  static const Metric<Vertex> metric = [](const Vertex& a, const Vertex& b) {
    return static_cast<double>(hamming(a, b));
  };
  return metric;
}

inline const Metric<Crossover>& crossover_metric() {
  static const Metric<Crossover> metric = [](const Crossover& a, const Crossover& b) {
    return static_cast<double>(crossover_distance(a, b));
  };
  return metric;
}

}  // namespace cubebm
