#include "cubebm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "cubebm/concentration.hpp"
#include "cubebm/curvature.hpp"
#include "cubebm/joint_law.hpp"
#include "cubebm/verify.hpp"

namespace cubebm::cli {
namespace {

using Record = nlohmann::ordered_json;

constexpr int kDefaultTrials = 10;
constexpr int kRicciCap = 16;
constexpr int kConcCCap = 10;
constexpr int kConcSCap = 7;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_cell(const Record& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return v.dump();
}

// Streams records and keeps the running summary.
class Writer {
 public:
  Writer(Format format, std::ostream& out) : format_(format), out_(out) {}

  void emit(const Record& rec, double margin, bool violation) {
    if (format_ == Format::kCsv) {
      if (count_ == 0) write_row(rec, true);
      write_row(rec, false);
    } else {
      out_ << rec.dump() << '\n';
    }
    ++count_;
    if (violation) ++violations_;
    if (std::isnan(min_margin_) || margin < min_margin_) min_margin_ = margin;
  }

  void finish() {
    if (format_ == Format::kCsv) {
      out_ << "# summary records=" << count_ << " min_margin=" << format_double(min_margin_)
           << " violations=" << violations_ << '\n';
    } else {
      Record s;
      s["records"] = count_;
      s["min_margin"] = min_margin_;
      s["violations"] = violations_;
      out_ << Record{{"summary", s}}.dump() << '\n';
    }
    out_.flush();
  }

  int status() const { return violations_ == 0 ? kExitOk : kExitViolation; }

 private:
  void write_row(const Record& rec, bool header) {
    bool first = true;
    for (const auto& [key, value] : rec.items()) {
      if (!first) out_ << ',';
      first = false;
      out_ << (header ? key : csv_cell(value));
    }
    out_ << '\n';
  }

  Format format_;
  std::ostream& out_;
  std::size_t count_ = 0;
  std::size_t violations_ = 0;
  double min_margin_ = std::numeric_limits<double>::quiet_NaN();
};

template <class M>
std::string exact_string(const M& m) {
  if constexpr (MassTraits<M>::exact) {
    return m.str();
  } else {
    return format_double(m);
  }
}

std::optional<VertexSet> parse_set(const std::optional<std::string>& text, const char* flag) {
  if (!text) return std::nullopt;
  try {
    return VertexSet::parse(*text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

struct Explicit {
  std::optional<VertexSet> a, b;
  bool given() const { return a.has_value(); }
};

Explicit explicit_sets(const RunConfig& cfg) {
  if (cfg.a.has_value() != cfg.b.has_value()) throw UsageError("--a and --b must be given together");
  Explicit ex{parse_set(cfg.a, "--a"), parse_set(cfg.b, "--b")};
  if (ex.given() && ex.a->dimension() != ex.b->dimension()) {
    throw UsageError("--a and --b have different dimensions");
  }
  return ex;
}

// Resolves N against the global cap and a subcommand cap.
int resolve_n(const RunConfig& cfg, const Explicit& ex, int fallback, int lo, int hi, const std::string& what) {
  if (cfg.n != 0 && (cfg.n < 1 || cfg.n > kMaxDimension)) {
    throw UsageError("N = " + std::to_string(cfg.n) + " is out of range: N <= " + std::to_string(kMaxDimension) +
                     " is the cap");
  }
  int n = cfg.n;
  if (ex.given()) {
    if (n != 0 && n != ex.a->dimension()) throw UsageError("--n disagrees with the length of --a / --b");
    n = ex.a->dimension();
  }
  if (n == 0) n = fallback;
  if (n == 0) throw UsageError("--n is required");
  if (n < lo || n > hi) {
    throw UsageError(what + " needs " + std::to_string(lo) + " <= N <= " + std::to_string(hi) + ", got " +
                     std::to_string(n));
  }
  return n;
}

int trials(const RunConfig& cfg) { return cfg.trials == 0 ? kDefaultTrials : cfg.trials; }

double effective_density(int n, double d) { return d > 0 ? d : std::min(1.0, std::ldexp(4.0, -n)); }

std::pair<VertexSet, VertexSet> sets_for(const RunConfig& cfg, const Explicit& ex, int n, std::size_t idx) {
  if (ex.given()) return {*ex.a, *ex.b};
  if (cfg.densities.empty()) return random_instance(n, cfg.seed, idx);
  Rng rng = trial_rng(cfg.seed, idx);
  const double d = effective_density(n, cfg.densities[idx % cfg.densities.size()]);
  VertexSet a = random_subset(n, d, rng());
  VertexSet b = random_subset(n, d, rng());
  return {std::move(a), std::move(b)};
}

std::size_t instance_count(const RunConfig& cfg, const Explicit& ex) {
  return ex.given() ? 1 : static_cast<std::size_t>(trials(cfg));
}

template <class M>
std::pair<DiscreteMeasure<Vertex, M>, DiscreteMeasure<Vertex, M>> measures_for(const RunConfig& cfg,
                                                                               const Explicit& ex, int n,
                                                                               std::size_t idx, int support) {
  if (ex.given()) return {uniform_on<M>(ex.a->members()), uniform_on<M>(ex.b->members())};
  Rng rng = trial_rng(cfg.seed, idx);
  auto mu0 = random_vertex_measure<M>(n, static_cast<std::size_t>(support), rng);
  auto mu1 = random_vertex_measure<M>(n, static_cast<std::size_t>(support), rng);
  return {std::move(mu0), std::move(mu1)};
}

void run_bm_set(const RunConfig& cfg, Writer& w) {
  const auto ex = explicit_sets(cfg);
  const int n = resolve_n(cfg, ex, 0, 1, kMaxDimension, "bm-set");
  for (std::size_t i = 0; i < instance_count(cfg, ex); ++i) {
    const auto [a, b] = sets_for(cfg, ex, n, i);
    const auto r = bm_set_check(a, b, cfg.k);
    Record rec;
    rec["instance"] = i;
    rec["dimension"] = r.dimension;
    rec["size_a"] = r.size_a;
    rec["size_b"] = r.size_b;
    rec["size_m"] = r.size_m;
    rec["distance"] = r.distance;
    rec["k"] = r.k_used;
    rec["lhs"] = r.lhs;
    rec["rhs"] = r.rhs;
    rec["margin"] = r.margin;
    rec["holds"] = r.holds;
    w.emit(rec, r.margin, !r.holds);
  }
}

void run_inject(const RunConfig& cfg, Writer& w) {
  const auto ex = explicit_sets(cfg);
  const int n = resolve_n(cfg, ex, 0, 1, kMaxDimension, "inject");
  for (std::size_t i = 0; i < instance_count(cfg, ex); ++i) {
    const auto [a, b] = sets_for(cfg, ex, n, i);
    const auto r = injection_check(a, b);
    const double margin = std::log(static_cast<double>(r.size_m)) -
                          (std::log(static_cast<double>(a.size())) + std::log(static_cast<double>(b.size()))) / 2;
    Record rec;
    rec["instance"] = i;
    rec["dimension"] = n;
    rec["size_a"] = a.size();
    rec["size_b"] = b.size();
    rec["pairs"] = r.pairs;
    rec["distinct_images"] = r.distinct_images;
    rec["collisions"] = r.collisions;
    rec["images_in_m"] = r.images_in_m;
    rec["size_m"] = r.size_m;
    rec["sqrt_bound"] = r.sqrt_bound;
    rec["margin"] = margin;
    rec["holds"] = r.holds;
    w.emit(rec, margin, !r.holds);
  }
}

void run_fiber(const RunConfig& cfg, Writer& w) {
  const auto ex = explicit_sets(cfg);
  const int n = resolve_n(cfg, ex, 0, 1, kMaxDimension, "fiber");
  for (std::size_t i = 0; i < instance_count(cfg, ex); ++i) {
    const auto [a, b] = sets_for(cfg, ex, n, i);
    const auto s = fiber_summary(a, b);
    const double margin = std::log(static_cast<double>(s.total_mm)) - std::log(s.total_bound);
    Record rec;
    rec["instance"] = i;
    rec["dimension"] = n;
    rec["size_a"] = a.size();
    rec["size_b"] = b.size();
    rec["set_distance"] = s.set_distance;
    rec["layers"] = s.layers.size();
    rec["total_ab"] = s.total_ab;
    rec["total_mm"] = s.total_mm;
    rec["total_bound"] = s.total_bound;
    rec["fibers_scanned"] = s.fibers_scanned;
    rec["fiber_failures"] = s.fiber_failures;
    rec["margin"] = margin;
    rec["holds"] = s.holds;
    w.emit(rec, margin, !s.holds);
  }
}

template <class M>
void run_bm_entropy(const RunConfig& cfg, Writer& w) {
  const auto ex = explicit_sets(cfg);
  const int n = resolve_n(cfg, ex, 0, 1, kMaxDimension, "bm-entropy");
  const int support = cfg.support == 0 ? 8 : cfg.support;
  for (std::size_t i = 0; i < instance_count(cfg, ex); ++i) {
    const auto [mu0, mu1] = measures_for<M>(cfg, ex, n, i, support);
    const auto r = bm_entropy_check(mu0, mu1, cfg.k);
    Record rec;
    rec["instance"] = i;
    rec["dimension"] = r.dimension;
    rec["support0"] = mu0.size();
    rec["support1"] = mu1.size();
    rec["s0"] = r.s0;
    rec["s1"] = r.s1;
    rec["s_half"] = r.s_half;
    rec["w1"] = to_double(r.w1);
    if constexpr (MassTraits<M>::exact) rec["w1_exact"] = exact_string(r.w1);
    rec["k"] = r.k_used;
    rec["margin"] = r.margin;
    rec["h0"] = r.h0;
    rec["h1"] = r.h1;
    rec["h_half"] = r.h_half;
    rec["margin_h"] = r.margin_h;
    rec["forms_agree"] = r.forms_agree;
    rec["holds"] = r.holds;
    w.emit(rec, r.margin, !(r.holds && r.forms_agree));
  }
}

std::string column_name(std::string name) {
  for (char& ch : name) {
    if (ch == '-' || ch == ' ') ch = '_';
  }
  return name;
}

template <class M>
void run_proof_chain(const RunConfig& cfg, Writer& w) {
  const auto ex = explicit_sets(cfg);
  const int n = resolve_n(cfg, ex, 5, 1, kMaxDimension, "proof-chain");
  const int support = cfg.support == 0 ? 4 : cfg.support;
  for (std::size_t i = 0; i < instance_count(cfg, ex); ++i) {
    const auto [mu0, mu1] = measures_for<M>(cfg, ex, n, i, support);
    const auto r = proof_chain_check(mu0, mu1);
    Record rec;
    rec["instance"] = i;
    rec["dimension"] = r.dimension;
    rec["support0"] = mu0.size();
    rec["support1"] = mu1.size();
    rec["fibers"] = r.fibers;
    rec["crossover_evaluations"] = r.crossover_evaluations;
    double margin = INFINITY;
    for (const auto& link : r.links) {
      const auto col = column_name(link.name);
      rec[col] = link.worst;
      rec[col + "_holds"] = link.holds;
      margin = std::min(margin, link.worst);
    }
    rec["margin"] = margin;
    rec["holds"] = r.holds;
    w.emit(rec, margin, !r.holds);
  }
}

template <class M>
void run_ricci(const RunConfig& cfg, Writer& w) {
  if (cfg.a || cfg.b) throw UsageError("ricci does not take --a / --b");
  std::optional<Graph> loaded;
  int n = 0;
  if (cfg.graph) {
    if (cfg.n != 0) throw UsageError("ricci takes either --n or --graph, not both");
    loaded = Graph::load(*cfg.graph);
  } else {
    n = resolve_n(cfg, Explicit{}, 0, 1, kRicciCap, "ricci on the hypercube");
  }
  const Graph g = loaded ? *loaded : Graph::hypercube(n);
  const auto report = edge_curvature_sweep<M>(g);
  const M expected = M(2) / M(n + 1);
  auto label = [&](int v) -> Record {
    if (loaded) return v;
    return Vertex(n, static_cast<std::uint32_t>(v)).to_string();
  };
  for (const auto& e : report.edges) {
    Record rec;
    rec["x"] = label(e.x);
    rec["y"] = label(e.y);
    rec["distance"] = e.distance;
    rec["w1"] = to_double(e.w1);
    rec["kappa"] = to_double(e.kappa);
    if constexpr (MassTraits<M>::exact) rec["kappa_exact"] = exact_string(e.kappa);
    double margin = to_double(e.kappa);
    bool violation = false;
    if (!loaded) {
      rec["expected"] = to_double(expected);
      if constexpr (MassTraits<M>::exact) {
        violation = e.kappa != expected;
        margin = violation ? -to_double(Rational(abs(e.kappa - expected))) : 0.0;
      } else {
        margin = -std::abs(e.kappa - expected) + 0.0;
        violation = margin < -kIdentityTolerance;
      }
      rec["holds"] = !violation;
    }
    w.emit(rec, margin, violation);
  }
}

DiscreteMeasure<Crossover, Rational> rationalize(const DiscreteMeasure<Crossover>& xi) {
  std::map<Crossover, Rational> weights;
  for (const auto& [c, m] : xi) weights[c] = Rational(static_cast<std::int64_t>(std::llround(m * 1e6)));
  return DiscreteMeasure<Crossover, Rational>::from_weight_map(std::move(weights));
}

const std::vector<double> kLambdas{-2, -1, -0.5, 0.5, 1, 2};
const std::vector<double> kTailTs{1, 2, 3};

Record conc_record(std::size_t i, int n, const char* check, double statistic, double bound, double margin, bool holds) {
  Record rec;
  rec["instance"] = i;
  rec["n"] = n;
  rec["check"] = check;
  rec["statistic"] = statistic;
  rec["bound"] = bound;
  rec["margin"] = margin;
  rec["holds"] = holds;
  return rec;
}

template <class M>
void emit_transport_checks(std::size_t i, int n, const DiscreteMeasure<Crossover, M>& xi, Writer& w) {
  const auto wh = w1h_check(n, xi);
  w.emit(conc_record(i, n, "w1h", to_double(wh.w1), std::sqrt(2.0 * n * wh.relative), wh.margin, wh.holds),
         wh.margin, !wh.holds);
  const auto c5 = corollary5_check(n, xi);
  const bool ok = c5.holds && c5.symmetry_step;
  w.emit(conc_record(i, n, "entropy_bound", c5.entropy, c5.bound, c5.margin, ok), c5.margin, !ok);
}

void run_conc_c(const RunConfig& cfg, Writer& w) {
  if (cfg.a || cfg.b) throw UsageError("conc-c does not take --a / --b");
  const int n = resolve_n(cfg, Explicit{}, 0, 1, kConcCCap, "conc-c");
  const auto space = crossover_space(n);
  const auto points = enumerate_crossovers(n);
  for (std::size_t i = 0; i < static_cast<std::size_t>(trials(cfg)); ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    const double density = cfg.densities.empty() ? stratified_density(n, i)
                                                 : effective_density(n, cfg.densities[i % cfg.densities.size()]);
    std::vector<Crossover> a;
    std::bernoulli_distribution keep(std::max(density, 1.0 / static_cast<double>(points.size())));
    for (const auto& c : points) {
      if (keep(rng)) a.push_back(c);
    }
    if (a.empty()) a.push_back(points[rng() % points.size()]);
    const auto c4 = corollary4_check(n, a);
    const double c4_margin = std::log(c4.bound) - std::log(static_cast<double>(c4.size_a));
    w.emit(conc_record(i, n, "separation", static_cast<double>(c4.size_a), c4.bound, c4_margin, c4.holds), c4_margin,
           !c4.holds);

    const auto xi = dirichlet_crossover_measure(n, 1.0, rng);
    if (cfg.mode == Mode::kExact) {
      emit_transport_checks(i, n, rationalize(xi), w);
    } else {
      emit_transport_checks(i, n, xi, w);
    }

    const auto f = random_lipschitz(space, cfg.seed ^ i);
    const auto lap = check_laplace(space, f, kLambdas);
    w.emit(conc_record(i, n, "laplace", lap.max_margin, kLaplaceSlack, -lap.max_margin, lap.violations == 0),
           -lap.max_margin, lap.violations != 0);
    const auto tail = check_tail(space, f, kTailTs);
    double tail_margin = INFINITY, worst_tail = 0, worst_bound = 0;
    for (const auto& row : tail.rows) {
      if (row.bound - row.tail < tail_margin) {
        tail_margin = row.bound - row.tail;
        worst_tail = row.tail;
        worst_bound = row.bound;
      }
    }
    w.emit(conc_record(i, n, "tail", worst_tail, worst_bound, tail_margin, tail.violations == 0), tail_margin,
           tail.violations != 0);
  }
}

void run_conc_s(const RunConfig& cfg, Writer& w) {
  if (cfg.a || cfg.b) throw UsageError("conc-s does not take --a / --b");
  const int n = resolve_n(cfg, Explicit{}, 0, 2, kConcSCap, "conc-s");
  const auto space = symmetric_group_space(n);
  for (std::size_t i = 0; i < static_cast<std::size_t>(trials(cfg)); ++i) {
    const auto f = random_lipschitz(space, cfg.seed ^ i);
    const auto lap = check_laplace(space, f, kLambdas);
    const auto tail = check_tail(space, f, kTailTs);
    double tail_margin = INFINITY, tail_max = 0;
    for (const auto& row : tail.rows) {
      tail_margin = std::min(tail_margin, row.bound - row.tail);
      tail_max = std::max(tail_max, row.tail);
    }
    const double margin = std::min(-lap.max_margin, tail_margin);
    const bool ok = lap.violations == 0 && tail.violations == 0;
    Record rec;
    rec["instance"] = i;
    rec["n"] = n;
    rec["size"] = space.size;
    rec["variance"] = space.variance;
    rec["mean"] = lap.mean;
    rec["laplace_excess"] = lap.max_margin;
    rec["laplace_violations"] = lap.violations;
    rec["tail_max"] = tail_max;
    rec["tail_violations"] = tail.violations;
    rec["margin"] = margin;
    rec["holds"] = ok;
    w.emit(rec, margin, !ok);
  }
}

void run_ksweep(const RunConfig& cfg, Writer& w) {
  if (cfg.a || cfg.b) throw UsageError("ksweep does not take --a / --b");
  const int n = resolve_n(cfg, Explicit{}, 16, 6, kMaxDimension, "ksweep");
  const auto sweep = k_star_sweep(4, n);
  for (const auto& p : sweep.points) {
    const double error = p.k_star - p.predicted;
    const double margin = p.k_star - default_curvature(p.dimension);
    const bool ok = std::abs(error) <= 1e-9 && margin >= -kInequalitySlack;
    Record rec;
    rec["dimension"] = p.dimension;
    rec["k_star"] = p.k_star;
    rec["predicted"] = p.predicted;
    rec["error"] = error;
    rec["k_default"] = default_curvature(p.dimension);
    rec["slope"] = sweep.slope;
    rec["margin"] = margin;
    rec["holds"] = ok;
    w.emit(rec, margin, !ok);
  }
}

template <class Float, class Exact>
void by_mode(const RunConfig& cfg, Float&& f, Exact&& e) {
  if (cfg.mode == Mode::kExact) {
    e();
  } else {
    f();
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.trials < 0) throw UsageError("--trials must be >= 1");
  if (cfg.support < 0) throw UsageError("--support must be >= 1");
  for (double d : cfg.densities) {
    if (!(d >= 0 && d <= 1)) throw UsageError("--densities entries must lie in [0, 1]");
  }
  if (cfg.k && !std::isfinite(*cfg.k)) throw UsageError("--k must be finite");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Writer w(cfg.format, out);
  try {
    validate(cfg);
    const auto& s = cfg.subcommand;
    if (s == "ricci") {
      by_mode(cfg, [&] { run_ricci<double>(cfg, w); }, [&] { run_ricci<Rational>(cfg, w); });
    } else if (s == "bm-set") {
      run_bm_set(cfg, w);
    } else if (s == "bm-entropy") {
      by_mode(cfg, [&] { run_bm_entropy<double>(cfg, w); }, [&] { run_bm_entropy<Rational>(cfg, w); });
    } else if (s == "inject") {
      run_inject(cfg, w);
    } else if (s == "fiber") {
      run_fiber(cfg, w);
    } else if (s == "proof-chain") {
      by_mode(cfg, [&] { run_proof_chain<double>(cfg, w); }, [&] { run_proof_chain<Rational>(cfg, w); });
    } else if (s == "conc-c") {
      run_conc_c(cfg, w);
    } else if (s == "conc-s") {
      run_conc_s(cfg, w);
    } else if (s == "ksweep") {
      run_ksweep(cfg, w);
    } else {
      throw UsageError("unknown subcommand '" + s + "'");
    }
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  w.finish();
  return w.status();
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Brunn-Minkowski, curvature and concentration checks on the discrete hypercube", "cubebm"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode = "float", format = "csv";
  const std::vector<std::pair<std::string, std::string>> commands{
      {"ricci", "coarse Ricci curvature of every edge of {0,1}^N or of an edge-list graph"},
      {"bm-set", "curved Brunn-Minkowski inequality for sets"},
      {"bm-entropy", "entropic Brunn-Minkowski inequality for measures"},
      {"inject", "injectivity of the midpoint-pair map on A x B"},
      {"fiber", "fiber sizes and midpoint-pair counts per crossover arity"},
      {"proof-chain", "every intermediate step of the entropic argument"},
      {"conc-c", "separation, transport-entropy and Laplace/tail bounds on C_n"},
      {"conc-s", "Laplace and tail bounds on S_n"},
      {"ksweep", "best constant K* for antipodal singletons, even N from 4 to --n"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--n", cfg.n, "dimension N, or n for conc-c / conc-s");
    sub->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "number of random instances (default 10)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--densities", cfg.densities, "comma-separated densities; 0 means 4/2^N")->delimiter(',');
    sub->add_option("--k", cfg.k, "curvature constant override (default 1/(2N))");
    sub->add_option("--mode", mode, "float or exact")->check(CLI::IsMember({"float", "exact"}));
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--graph", cfg.graph, "edge-list file (ricci)");
    sub->add_option("--a", cfg.a, "comma-separated bitstrings");
    sub->add_option("--b", cfg.b, "comma-separated bitstrings");
    sub->add_option("--support", cfg.support, "max atoms per random measure")->check(CLI::PositiveNumber);
    sub->callback([&cfg, name = name] { cfg.subcommand = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run '" << argv[0] << " " << sub->get_name() << " --help' for usage\n";
    } else {
      err << "run '" << argv[0] << " --help' for usage\n";
    }
    return kExitUsage;
  }
  cfg.mode = mode == "exact" ? Mode::kExact : Mode::kFloat;
  cfg.format = format == "json" ? Format::kJson : Format::kCsv;
  return run(cfg, out, err);
}

}  // namespace cubebm::cli
