#include "vcut/vc_framework.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>
#include <unordered_set>

#include "vcut/error.hpp"
#include "vcut/generators.hpp"
#include "vcut/local_flow.hpp"
#include "vcut/pair_vc.hpp"
#include "vcut/sparsify.hpp"
#include "framework_detail.hpp"

namespace vcut {

const char* to_string(SamplingMode mode) { return mode == SamplingMode::kVertex ? "vertex" : "edge"; }
const char* to_string(SolveMode mode) { return mode == SolveMode::kExact ? "exact" : "approx"; }

namespace detail {

std::size_t sample_count(double boost, std::size_t n, double target) {
  const double log_n = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  return static_cast<std::size_t>(std::ceil(boost * log_n * std::max(target, 1.0)));
}

// floor((1+eps) k), the largest cut size approximate mode may return.
std::size_t approx_bound(std::size_t k, const Rational& eps) {
  const Rational bound = Rational(static_cast<std::int64_t>(k)) * (Rational(1) + eps);
  return static_cast<std::size_t>(bound.num() / bound.den());
}

void note(FrameworkLog* log, const std::string& event) {
  if (log != nullptr) log->events.push_back(event);
}

VcAnswer cut_answer(const DiGraph& g, std::vector<Vertex> separator, Edge witness, std::string origin) {
  VcAnswer ans;
  ans.kind = VcAnswer::Kind::kCut;
  ans.triple = triple_from_separator(g, witness.first, separator);
  if (!ans.triple || !is_separation_triple(g, *ans.triple)) throw InternalError("returned cut does not separate");
  ans.separator = std::move(separator);
  ans.witness = witness;
  ans.origin = std::move(origin);
  return ans;
}

VcAnswer at_least(std::size_t bound, std::string origin) {
  VcAnswer ans;
  ans.bound = bound;
  ans.origin = std::move(origin);
  return ans;
}

// N^out(v) as a cut, witnessed by v and some vertex outside N^out[v].
std::optional<VcAnswer> out_degree_cut(const DiGraph& g, Vertex v) {
  std::vector<bool> closed(g.num_vertices(), false);
  closed[v] = true;
  for (Vertex w : g.out_neighbors(v)) closed[w] = true;
  for (Vertex y = 0; y < g.num_vertices(); ++y) {
    if (!closed[y]) {
      const auto nb = g.out_neighbors(v);
      return cut_answer(g, std::vector<Vertex>(nb.begin(), nb.end()), {v, y}, "degree");
    }
  }
  return std::nullopt;
}

std::optional<VcAnswer> in_degree_cut(const DiGraph& g, Vertex v) {
  std::vector<bool> closed(g.num_vertices(), false);
  closed[v] = true;
  for (Vertex w : g.in_neighbors(v)) closed[w] = true;
  for (Vertex y = 0; y < g.num_vertices(); ++y) {
    if (!closed[y]) {
      const auto nb = g.in_neighbors(v);
      // Removing N^in(v) leaves y unable to reach v.
      std::vector<Vertex> sep(nb.begin(), nb.end());
      VcAnswer ans;
      ans.kind = VcAnswer::Kind::kCut;
      ans.triple = triple_from_separator(g, y, sep);
      if (!ans.triple) throw InternalError("in-degree cut does not separate");
      ans.separator = std::move(sep);
      ans.witness = Edge{y, v};
      ans.origin = "degree";
      return ans;
    }
  }
  return std::nullopt;
}

// The smaller of the two degree cuts, or nullopt for a complete graph.
std::optional<VcAnswer> best_degree_cut(const DiGraph& g) {
  const DegreeStats d = degree_stats(g);
  if (d.d_min_out <= d.d_min_in) {
    if (auto c = out_degree_cut(g, d.v_min_out)) return c;
  } else {
    if (auto c = in_degree_cut(g, d.v_min_in)) return c;
  }
  return std::nullopt;
}

VcAnswer disconnected_answer(const DiGraph& g) {
  const auto pair = unreachable_pair(g);
  if (!pair) throw InternalError("expected an unreachable pair");
  return cut_answer(g, {}, *pair, "unreachable");
}

}  // namespace detail

using namespace detail;

namespace {

class Search {
 public:
  Search(const DiGraph& original, const FrameworkConfig& cfg, FrameworkLog* log)
      : original_(original), cfg_(cfg), log_(log), rng_(cfg.seed) {
    k_ = *cfg.k;
    bound_ = cfg.mode == SolveMode::kExact ? k_ : approx_bound(k_, cfg.eps);
    if (cfg.sparsify && !original.is_directed()) {
      sparse_ = certificate(original, bound_);
      note(log_, "sparsified to " + std::to_string(sparse_->num_edges()) + " arcs");
    }
    reversed_ = reverse(graph());
    solver_.emplace(graph());
  }

  VcAnswer run() {
    const auto scales = plan_scales();
    if (auto c = phase_one()) return *c;
    if (cfg_.use_local_vc) {
      for (const auto& [s, valid_g, valid_r] : scales) {
        if (auto c = phase_two(s, valid_g, valid_r)) return *c;
      }
    }
    return at_least(k_ + 1, "sampling");
  }

 private:
  struct Scale {
    std::uint64_t s;
    bool valid_g;
    bool valid_r;
  };

  const DiGraph& graph() const { return sparse_ ? *sparse_ : original_; }
  std::size_t m() const { return graph().num_edges(); }
  std::size_t n() const { return graph().num_vertices(); }

  std::uint64_t nu_for(std::uint64_t s) const {
    return cfg_.sampling == SamplingMode::kVertex ? s * s + s * k_ : s;
  }

  LocalVcParams params_for(Vertex x, std::uint64_t s) const {
    if (cfg_.mode == SolveMode::kExact) return exact_local_params(x, nu_for(s), k_);
    return LocalVcParams{x, nu_for(s), k_, cfg_.eps};
  }

  // Validity does not depend on x, so it is decided once per scale. The
  // sampling target shrinks to the largest s below which every scale runs
  // in both directions.
  std::vector<Scale> plan_scales() {
    std::vector<Scale> out;
    a_eff_ = 1;
    if (!cfg_.use_local_vc) {
      a_eff_ = std::max(1.0, cfg_.a);
    } else {
      bool prefix = true;
      for (const std::uint64_t s : scale_list(cfg_.a)) {
        bool vg = false;
        bool vr = false;
        try {
          vg = validate_params(graph(), params_for(0, s)) != ParamRegime::kInvalid;
          vr = validate_params(reversed_, params_for(0, s)) != ParamRegime::kInvalid;
        } catch (const UsageError&) {
        }
        if (!vg || !vr) {
          note(log_, "scale " + std::to_string(s) + " skipped" + (vg ? " on G^R" : vr ? " on G" : ""));
        }
        if (vg && vr && prefix) {
          a_eff_ = std::min(static_cast<double>(s), std::max(cfg_.a, 1.0));
        } else {
          prefix = false;
        }
        if (vg || vr) {
          out.push_back({s, vg, vr});
          if (log_ != nullptr) log_->nu_schedule.push_back(nu_for(s));
        }
      }
    }
    if (log_ != nullptr) {
      log_->a_requested = cfg_.a;
      log_->a_effective = a_eff_;
    }
    return out;
  }

  // Pair query on the searched graph; cuts found on a certificate are
  // re-derived on the original graph.
  std::optional<VcAnswer> try_pair(Vertex x, Vertex y) {
    if (x == y || graph().has_edge(x, y)) return std::nullopt;
    // Answers are deterministic, so a repeated sample reuses the first one.
    if (!seen_pairs_.insert((std::uint64_t{x} << 32) | y).second) return std::nullopt;
    if (log_ != nullptr) ++log_->pair_queries;
    const PairAnswer p = solver_->query(x, y, bound_);
    if (!p.has_cut) return std::nullopt;
    return lift(x, y, p.separator, "pair");
  }

  // Pairs adjacent in the input graph are never separated there, so a cut
  // the certificate shows between them is dropped.
  std::optional<VcAnswer> lift(Vertex x, Vertex y, const std::vector<Vertex>& separator, const char* origin) {
    if (!sparse_) return cut_answer(original_, separator, {x, y}, origin);
    if (original_.has_edge(x, y)) return std::nullopt;
    const PairAnswer q = pair_vertex_connectivity(original_, x, y, separator.size());
    if (!q.has_cut) throw InternalError("certificate cut not confirmed on the input graph");
    return cut_answer(original_, q.separator, {x, y}, origin);
  }

  std::optional<VcAnswer> phase_one() {
    const double eps = cfg_.mode == SolveMode::kExact ? 1.0 : cfg_.eps.to_double();
    std::size_t trial = 0;
    if (cfg_.sampling == SamplingMode::kVertex) {
      const std::size_t count = sample_count(cfg_.boost, n(), static_cast<double>(n()) / (eps * a_eff_));
      std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n() - 1));
      for (; trial < count; ++trial) {
        const Vertex x = pick(rng_);
        const Vertex y = pick(rng_);
        if (auto c = try_pair(x, y)) return c;
      }
    } else {
      const auto arcs = graph().edges();
      if (arcs.empty()) return std::nullopt;
      const std::size_t count = sample_count(cfg_.boost, n(), static_cast<double>(m()) / (eps * a_eff_));
      std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
      for (; trial < count; ++trial) {
        const auto [x1, y1] = arcs[pick(rng_)];
        const auto [x2, y2] = arcs[pick(rng_)];
        for (const Edge& e : {Edge{x1, y2}, Edge{x1, x2}, Edge{y1, x2}, Edge{y1, y2}}) {
          if (auto c = try_pair(e.first, e.second)) return c;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<VcAnswer> probe(Vertex z, std::uint64_t s, bool on_reverse) {
    if (!seen_probes_.insert({z, s, on_reverse}).second) return std::nullopt;
    if (log_ != nullptr) ++log_->local_calls;
    const DiGraph& h = on_reverse ? reversed_ : graph();
    const TripleAnswer t = local_vc(h, params_for(z, s));
    if (!t.triple) return std::nullopt;
    const SeparationTriple triple = on_reverse ? mirror(*t.triple) : *t.triple;
    if (!sparse_) return lift(triple.left.front(), triple.right.front(), triple.separator, "local");
    for (Vertex l : triple.left) {
      for (Vertex r : triple.right) {
        if (!original_.has_edge(l, r)) return lift(l, r, triple.separator, "local");
      }
    }
    note(log_, "certificate triple has no non-adjacent pair in the input graph");
    return std::nullopt;
  }

  std::optional<VcAnswer> phase_two(std::uint64_t s, bool valid_g, bool valid_r) {
    if (cfg_.sampling == SamplingMode::kVertex) {
      const std::size_t count = sample_count(cfg_.boost, n(), static_cast<double>(n()) / static_cast<double>(s));
      std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n() - 1));
      for (std::size_t i = 0; i < count; ++i) {
        const Vertex x = pick(rng_);
        if (valid_g) {
          if (auto c = probe(x, s, false)) return c;
        }
        if (valid_r) {
          if (auto c = probe(x, s, true)) return c;
        }
      }
      return std::nullopt;
    }
    const auto arcs = graph().edges();
    if (arcs.empty()) return std::nullopt;
    const std::size_t count = sample_count(cfg_.boost, n(), static_cast<double>(m()) / static_cast<double>(s));
    std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
    for (std::size_t i = 0; i < count; ++i) {
      const auto [x, y] = arcs[pick(rng_)];
      for (const Vertex z : {x, y}) {
        if (valid_g) {
          if (auto c = probe(z, s, false)) return c;
        }
        if (valid_r) {
          if (auto c = probe(z, s, true)) return c;
        }
      }
    }
    return std::nullopt;
  }

  const DiGraph& original_;
  const FrameworkConfig& cfg_;
  FrameworkLog* log_;
  std::mt19937_64 rng_;
  std::size_t k_ = 0;
  std::size_t bound_ = 0;
  std::optional<DiGraph> sparse_;
  DiGraph reversed_;
  std::optional<PairVcSolver> solver_;
  double a_eff_ = 1;
  std::unordered_set<std::uint64_t> seen_pairs_;
  std::set<std::tuple<Vertex, std::uint64_t, bool>> seen_probes_;
};

}  // namespace

std::vector<std::uint64_t> scale_list(double a) {
  std::vector<std::uint64_t> out;
  if (!(a > 1.0)) return out;
  const int top = std::min(62, static_cast<int>(std::ceil(std::log2(a) - 1e-12)));
  for (int l = 1; l <= top; ++l) out.push_back(std::uint64_t{1} << l);
  return out;
}

namespace {

bool exact_fallback(const DiGraph& g, std::size_t k) {
  return static_cast<double>(k) > std::sqrt(static_cast<double>(g.num_vertices())) / 2.0;
}

}  // namespace

VcAnswer pairwise_decide(const DiGraph& g, std::size_t k, FrameworkLog* log) {
  const std::size_t n = g.num_vertices();
  PairVcSolver solver(g);
  // Any separator of size <= k misses one of k+1 fixed vertices, which then
  // lies on one side of it.
  const std::size_t sources = std::min(n, k + 1);
  for (Vertex v = 0; v < sources; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      for (const Edge& e : {Edge{v, w}, Edge{w, v}}) {
        if (g.has_edge(e.first, e.second)) continue;
        if (log != nullptr) ++log->pair_queries;
        const PairAnswer p = solver.query(e.first, e.second, k);
        if (p.has_cut) return cut_answer(g, p.separator, e, "pairwise");
      }
    }
  }
  return at_least(k + 1, "pairwise");
}

VcAnswer vc_decide(const DiGraph& g, const FrameworkConfig& cfg, FrameworkLog* log) {
  if (!cfg.k) throw UsageError("vc_decide needs k");
  if (cfg.a < 1.0 || !std::isfinite(cfg.a)) throw UsageError("a must be >= 1");
  if (cfg.eps <= Rational(0) || cfg.eps > Rational(1)) throw UsageError("eps must be in (0, 1]");
  if (!(cfg.boost > 0)) throw UsageError("boost must be positive");
  const std::size_t n = g.num_vertices();
  const std::size_t k = *cfg.k;
  if (k == 0) throw UsageError("k must be >= 1");
  if (log != nullptr) ++log->decisions;
  if (n <= 1) return at_least(0, "trivial");
  if (!is_strongly_connected(g)) return disconnected_answer(g);

  const DegreeStats d = degree_stats(g);
  const std::size_t d_min = std::min(d.d_min_out, d.d_min_in);
  if (d_min == n - 1) return at_least(n - 1, "complete");
  if (d_min <= k) {
    auto c = best_degree_cut(g);
    if (!c) throw InternalError("degree cut missing");
    return *c;
  }
  if (cfg.mode == SolveMode::kExact && exact_fallback(g, k)) {
    note(log, "k above sqrt(n)/2: pairwise decision");
    return pairwise_decide(g, k, log);
  }
  return Search(g, cfg, log).run();
}

FrameworkConfig choose_params(std::size_t n, std::size_t m, std::size_t k, const Rational& eps, bool directed,
                              SolveMode mode) {
  FrameworkConfig cfg;
  cfg.k = k;
  cfg.eps = eps;
  cfg.mode = mode;
  cfg.use_local_vc = true;
  const double nd = std::max<double>(2.0, static_cast<double>(n));
  const double md = std::max<double>(2.0, static_cast<double>(m));
  const double kd = std::max<double>(1.0, static_cast<double>(k));
  auto clamp_a = [](double a) { return std::max(1.0, a); };
  if (mode == SolveMode::kExact) {
    if (!directed) {
      cfg.sparsify = true;
      const double m_sparse = std::min(md, 2.0 * (kd + 1.0) * nd);  // arcs of the certificate
      cfg.sampling = SamplingMode::kEdge;
      cfg.a = clamp_a(std::pow(m_sparse, 2.0 / 3.0));
    } else if (md < std::pow(nd, 1.5)) {
      cfg.sampling = SamplingMode::kEdge;
      cfg.a = clamp_a(std::pow(md, 2.0 / 3.0));
    } else {
      cfg.sampling = SamplingMode::kVertex;
      cfg.a = clamp_a(std::pow(md, 1.0 / 3.0));
    }
    return cfg;
  }
  const double kb = std::max(1.0, std::floor((1.0 + eps.to_double()) * kd));
  if (kd > std::pow(nd, 0.8)) {
    cfg.sampling = SamplingMode::kVertex;
    cfg.use_local_vc = false;
    cfg.k.reset();
    cfg.sparsify = !directed;
    cfg.a = 1.0;
    return cfg;
  }
  cfg.sampling = SamplingMode::kEdge;
  if (!directed) {
    cfg.sparsify = true;
    const double m_sparse = std::min(md, 2.0 * (kb + 1.0) * nd);
    const double kh = std::log(kd) / std::log(nd);
    const double ah = std::min(5.0 * kh + 2.0, kh + 4.0) / (3.0 * kh + 3.0);
    cfg.a = clamp_a(std::pow(m_sparse, ah));
  } else if (kd <= std::sqrt(nd)) {
    const double ah = std::min(2.0 / 3.0 + std::log(kd) / std::log(md), 1.0);
    cfg.a = clamp_a(std::pow(md, ah));
  } else {
    const double ah = std::min(4.0 * std::log(nd) / (3.0 * std::log(md)) + std::log(kd) / (3.0 * std::log(md)), 1.0);
    cfg.a = clamp_a(std::pow(md, ah));
  }
  return cfg;
}

VcAnswer vc_approx_nolocal(const DiGraph& g, const Rational& eps, std::uint64_t seed, double boost,
                           FrameworkLog* log) {
  const std::size_t n = g.num_vertices();
  if (n <= 1) return at_least(0, "trivial");
  if (!is_strongly_connected(g)) return disconnected_answer(g);
  auto best = best_degree_cut(g);
  if (!best) return at_least(n - 1, "complete");
  const DegreeStats d = degree_stats(g);
  const double d_min = static_cast<double>(std::min(d.d_min_out, d.d_min_in));
  const double e = eps.to_double();
  const double ordered_pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  std::size_t count = sample_count(boost, n, static_cast<double>(n) / (e * e * d_min));
  const bool all_pairs = static_cast<double>(count) >= ordered_pairs;
  PairVcSolver solver(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  auto consider = [&](Vertex x, Vertex y) {
    if (x == y || g.has_edge(x, y) || best->separator.size() <= 1) return;
    if (log != nullptr) ++log->pair_queries;
    const PairAnswer p = solver.query(x, y, best->separator.size() - 1);
    if (p.has_cut) best = cut_answer(g, p.separator, {x, y}, "pair");
  };
  if (all_pairs) {
    note(log, "sample count covers every ordered pair");
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = 0; y < n; ++y) consider(x, y);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const Vertex x = pick(rng);
      const Vertex y = pick(rng);
      consider(x, y);
    }
  }
  return *best;
}

namespace {

KappaResult from_answer(const VcAnswer& ans) {
  KappaResult r;
  r.kappa = ans.separator.size();
  r.separator = ans.separator;
  r.witness = ans.witness;
  r.origin = ans.origin;
  return r;
}

}  // namespace

FrameworkConfig config_for(const DiGraph& g, std::size_t k, const KappaOptions& options, std::uint64_t seed) {
  FrameworkConfig cfg =
      choose_params(g.num_vertices(), g.num_edges(), k, options.eps, g.is_directed(), options.mode);
  cfg.k = k;
  cfg.seed = seed;
  cfg.boost = options.boost;
  if (options.sampling && *options.sampling != cfg.sampling) {
    cfg.sampling = *options.sampling;
    const double m = std::max<double>(2.0, static_cast<double>(g.num_edges()));
    cfg.a = std::max(1.0, std::pow(m, cfg.sampling == SamplingMode::kVertex ? 1.0 / 3.0 : 2.0 / 3.0));
  }
  return cfg;
}

KappaResult kappa(const DiGraph& g, const KappaOptions& options) {
  const std::size_t n = g.num_vertices();
  KappaResult result;
  if (n <= 1) {
    result.origin = "trivial";
    return result;
  }
  if (!is_strongly_connected(g)) {
    result = from_answer(disconnected_answer(g));
    return result;
  }
  auto degree = best_degree_cut(g);
  if (!degree) {
    result.kappa = n - 1;
    result.origin = "complete";
    return result;
  }
  const std::size_t d = degree->separator.size();
  FrameworkLog log;
  std::uint64_t decision = 0;
  auto decide = [&](std::size_t k) {
    const FrameworkConfig cfg = config_for(g, k, options, derive_seed(options.seed, decision++));
    if (!cfg.use_local_vc) return vc_approx_nolocal(g, options.eps, cfg.seed, cfg.boost, &log);
    return vc_decide(g, cfg, &log);
  };

  VcAnswer best = *degree;
  if (options.mode == SolveMode::kExact) {
    // Smallest k with a cut of size <= k; the degree cut settles k = d.
    std::size_t lo = 1;
    std::size_t hi = d;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      VcAnswer ans = decide(mid);
      if (ans.is_cut()) {
        hi = ans.separator.size();
        best = std::move(ans);
      } else {
        lo = mid + 1;
      }
    }
  } else {
    const double e = options.eps.to_double();
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(g.num_edges());
    // Above this threshold the degree cut is already a (1+eps)-approximation.
    const double high = std::min(nd / (1.0 + e), std::sqrt(md / (1.0 + e)));
    // Grid k_{j+1} = max(k_j + 1, ceil((1+eps) k_j)), searched by bisection.
    std::vector<std::size_t> grid;
    for (std::size_t k = 1; static_cast<double>(k) < std::min(high, static_cast<double>(d));) {
      grid.push_back(k);
      k = std::max(k + 1, static_cast<std::size_t>(std::ceil((1.0 + e) * static_cast<double>(k))));
    }
    std::size_t lo = 0;
    std::size_t hi = grid.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      VcAnswer ans = decide(grid[mid]);
      if (ans.is_cut()) {
        if (ans.separator.size() < best.separator.size()) best = std::move(ans);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
  }
  result = from_answer(best);
  result.log = std::move(log);
  return result;
}

}  // namespace vcut
