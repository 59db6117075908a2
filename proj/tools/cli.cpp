#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcut/convex_embedding.hpp"
#include "vcut/error.hpp"
#include "vcut/generators.hpp"
#include "vcut/graph.hpp"
#include "vcut/local_flow.hpp"
#include "vcut/oracle.hpp"
#include "vcut/pair_vc.hpp"
#include "vcut/vc_framework.hpp"

namespace vcut::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Flags {
  std::string input;
  std::string format = "edgelist";
  std::optional<std::size_t> k;
  std::string eps = "0.25";
  std::uint64_t seed = 0;
  std::string algo = "framework";
  std::optional<std::string> mode;
  bool exact = false;
  bool approx = false;
  std::string sampling = "auto";
  double boost = 3.0;
  bool json = false;
  // localvc
  Vertex vertex = 0;
  std::uint64_t nu = 1;
  // bench
  std::string family = "planted";
  std::string sizes;
  std::size_t seeds = 1;
  double density = 0.3;
};

GraphFormat parse_format(const std::string& text) {
  if (text == "edgelist") return GraphFormat::kEdgeList;
  if (text == "dimacs") return GraphFormat::kDimacs;
  throw UsageError("unknown format " + text);
}

DiGraph load(const Flags& f) {
  if (f.input.empty()) throw UsageError("--input is required");
  if (f.input == "-") return parse_graph(std::cin, parse_format(f.format));
  return parse_graph_file(f.input, parse_format(f.format));
}

SolveMode solve_mode(const Flags& f, SolveMode fallback) {
  if (f.exact && f.approx) throw UsageError("--exact and --approx are exclusive");
  if (f.exact) return SolveMode::kExact;
  if (f.approx) return SolveMode::kApprox;
  if (!f.mode) return fallback;
  if (*f.mode == "exact") return SolveMode::kExact;
  if (*f.mode == "approx") return SolveMode::kApprox;
  throw UsageError("unknown mode " + *f.mode);
}

std::optional<SamplingMode> sampling_mode(const Flags& f) {
  if (f.sampling == "auto") return std::nullopt;
  if (f.sampling == "vertex") return SamplingMode::kVertex;
  if (f.sampling == "edge") return SamplingMode::kEdge;
  throw UsageError("unknown sampling " + f.sampling);
}

Rational parse_eps(const Flags& f) {
  const Rational eps = Rational::parse(f.eps);
  if (eps <= Rational(0) || eps > Rational(1)) throw UsageError("--eps must lie in (0, 1]");
  return eps;
}

KappaOptions kappa_options(const Flags& f, SolveMode mode) {
  if (!(f.boost > 0)) throw UsageError("--boost must be positive");
  KappaOptions o;
  o.mode = mode;
  o.eps = parse_eps(f);
  o.seed = f.seed;
  o.boost = f.boost;
  o.sampling = sampling_mode(f);
  return o;
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json witness_json(const std::optional<Edge>& w) {
  if (!w) return nullptr;
  return Json::array({w->first, w->second});
}

Json base_report(const std::string& command, const std::string& algorithm, const Flags& f) {
  Json r;
  r["command"] = command;
  r["algorithm"] = algorithm;
  r["seed"] = f.seed;
  return r;
}

void fill_answer(Json& r, const VcAnswer& a) {
  r["decision"] = a.is_cut() ? "cut" : "at_least";
  r["kappa_estimate"] = a.is_cut() ? a.separator.size() : a.bound;
  r["separator"] = a.separator;
  r["witness"] = witness_json(a.witness);
  r["origin"] = a.origin;
}

Json log_json(const FrameworkLog& log) {
  Json j;
  j["a"] = log.a_requested;
  j["a_effective"] = log.a_effective;
  j["nu_schedule"] = log.nu_schedule;
  j["pair_queries"] = log.pair_queries;
  j["local_calls"] = log.local_calls;
  j["decisions"] = log.decisions;
  return j;
}

void emit(std::ostream& out, Json report, Clock::time_point start) {
  report["time_ms"] = elapsed_ms(start);
  out << report.dump() << '\n';
}

int cmd_decide(const Flags& f, std::ostream& out) {
  if (!f.k || *f.k == 0) throw UsageError("decide needs --k >= 1");
  const DiGraph g = load(f);
  const auto start = Clock::now();
  const std::size_t k = *f.k;
  Json r = base_report("decide", f.algo, f);
  if (f.algo == "oracle") {
    const OracleAnswer o = oracle_kappa(g);
    const bool cut = o.separator && o.kappa <= k;
    r["decision"] = cut ? "cut" : "at_least";
    r["kappa_estimate"] = o.kappa;
    r["separator"] = cut ? *o.separator : std::vector<Vertex>{};
    r["witness"] = cut ? witness_json(o.witness) : Json(nullptr);
    r["params"] = {{"k", k}};
    emit(out, r, start);
    return kOk;
  }
  if (f.algo != "framework") throw UsageError("decide supports --algo framework or oracle");
  const SolveMode mode = solve_mode(f, SolveMode::kExact);
  const KappaOptions o = kappa_options(f, mode);
  FrameworkConfig cfg = config_for(g, k, o, f.seed);
  FrameworkLog log;
  if (!cfg.use_local_vc) {
    // A fixed-k decision keeps LocalVC; vertex sampling with a = 1 is still valid.
    cfg.use_local_vc = true;
    cfg.k = k;
    log.events.push_back("k above n^0.8: deciding with vertex sampling only");
  }
  const VcAnswer a = vc_decide(g, cfg, &log);
  fill_answer(r, a);
  r["params"] = {{"k", k},
                 {"eps", o.eps.to_string()},
                 {"mode", to_string(mode)},
                 {"sampling", to_string(cfg.sampling)},
                 {"boost", f.boost},
                 {"sparsify", cfg.sparsify},
                 {"log", log_json(log)}};
  emit(out, r, start);
  return kOk;
}

int cmd_kappa(const Flags& f, std::ostream& out, const std::string& command = "kappa") {
  const DiGraph g = load(f);
  const auto start = Clock::now();
  Json r = base_report(command, f.algo, f);
  if (f.algo == "oracle") {
    const OracleAnswer o = oracle_kappa(g);
    r["decision"] = o.separator ? "cut" : "at_least";
    r["kappa_estimate"] = o.kappa;
    r["separator"] = o.separator.value_or(std::vector<Vertex>{});
    r["witness"] = o.separator ? witness_json(o.witness) : Json(nullptr);
    emit(out, r, start);
    return kOk;
  }
  if (f.algo == "embedding") {
    const SolveMode mode = solve_mode(f, SolveMode::kApprox);
    if (mode != SolveMode::kApprox) throw UsageError("the embedding algorithm is approximate only");
    const KappaOptions o = kappa_options(f, mode);
    FrameworkLog log;
    const VcAnswer a = approx_vc_embedding(g, o.eps, f.seed, f.boost, &log);
    fill_answer(r, a);
    r["params"] = {{"eps", o.eps.to_string()}, {"mode", "approx"}, {"boost", f.boost}, {"log", log_json(log)}};
    emit(out, r, start);
    return kOk;
  }
  if (f.algo != "framework") throw UsageError("unknown algorithm " + f.algo);
  const SolveMode mode = solve_mode(f, SolveMode::kExact);
  const KappaOptions o = kappa_options(f, mode);
  const KappaResult k = kappa(g, o);
  r["decision"] = k.separator ? "cut" : "at_least";
  r["kappa_estimate"] = k.kappa;
  r["separator"] = k.separator.value_or(std::vector<Vertex>{});
  r["witness"] = witness_json(k.witness);
  r["origin"] = k.origin;
  r["params"] = {{"eps", o.eps.to_string()},
                 {"mode", to_string(mode)},
                 {"sampling", f.sampling},
                 {"boost", f.boost},
                 {"log", log_json(k.log)}};
  emit(out, r, start);
  return kOk;
}

int cmd_localvc(const Flags& f, std::ostream& out) {
  if (!f.k || *f.k == 0) throw UsageError("localvc needs --k >= 1");
  const DiGraph g = load(f);
  if (f.vertex >= g.num_vertices()) throw UsageError("--vertex out of range");
  const auto start = Clock::now();
  const SolveMode mode = solve_mode(f, SolveMode::kApprox);
  LocalVcParams p = mode == SolveMode::kExact ? exact_local_params(f.vertex, f.nu, *f.k)
                                              : LocalVcParams{f.vertex, f.nu, *f.k, parse_eps(f)};
  const ParamRegime regime = validate_params(g, p);
  if (regime == ParamRegime::kInvalid) throw UsageError("parameters outside both valid regimes");
  const TripleAnswer a = local_vc(g, p);
  Json r = base_report("localvc", "local_vc", f);
  if (a.triple) {
    r["decision"] = "cut";
    r["kappa_estimate"] = a.triple->separator.size();
    r["separator"] = a.triple->separator;
    r["witness"] = Json::array({f.vertex, a.triple->right.front()});
    r["shore"] = a.triple->left;
  } else {
    // No local cut around x; says nothing about kappa.
    r["decision"] = "at_least";
    r["kappa_estimate"] = nullptr;
    r["separator"] = Json::array();
    r["witness"] = nullptr;
  }
  r["params"] = {{"x", f.vertex},
                 {"nu", f.nu},
                 {"k", *f.k},
                 {"eps", p.eps.to_string()},
                 {"mode", to_string(mode)},
                 {"regime", to_string(regime)},
                 {"max_flow", a.max_flow.to_string()}};
  emit(out, r, start);
  return kOk;
}

int cmd_oracle(Flags f, std::ostream& out) {
  f.algo = "oracle";
  return cmd_kappa(f, out, "oracle");
}

bool separates(const DiGraph& g, const std::vector<Vertex>& sep, const std::optional<Edge>& w) {
  if (!w) return false;
  std::vector<bool> removed(g.num_vertices(), false);
  for (Vertex v : sep) removed[v] = true;
  return !removed[w->first] && !removed[w->second] && !reachable_from(g, w->first, removed)[w->second];
}

int cmd_bench(const Flags& f, std::ostream& out) {
  if (f.family != "planted" && f.family != "sparse" && f.family != "cycle" && f.family != "random") {
    throw UsageError("unknown family " + f.family);
  }
  if (f.algo != "framework" && f.algo != "embedding" && f.algo != "oracle") {
    throw UsageError("unknown algorithm " + f.algo);
  }
  const std::size_t planted_k = f.k.value_or(3);
  const SolveMode mode = solve_mode(f, f.algo == "embedding" ? SolveMode::kApprox : SolveMode::kExact);
  const KappaOptions base = kappa_options(f, mode);
  std::vector<std::size_t> sizes;
  std::stringstream list(f.sizes);
  for (std::string item; std::getline(list, item, ',');) {
    if (item.empty()) continue;
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (ec != std::errc() || end != item.data() + item.size()) throw UsageError("bad size " + item);
    sizes.push_back(n);
  }
  out << "n,m,k,algorithm,time_ms,correct\n";
  std::uint64_t run = 0;
  for (std::size_t n : sizes) {
    for (std::size_t s = 0; s < f.seeds; ++s) {
      std::mt19937_64 rng(derive_seed(f.seed, run++));
      DiGraph g;
      std::optional<std::size_t> truth;  // kappa when known
      std::size_t k = planted_k;
      if (f.family == "planted" || f.family == "sparse") {
        g = f.family == "planted" ? planted_cut(n, planted_k, f.density, false, rng).graph
                                  : planted_sparse(n, planted_k, rng).graph;
      } else if (f.family == "cycle") {
        g = cycle_graph(n, false);
        truth = 2;
        k = 2;
      } else {
        g = random_graph(n, f.density, true, rng);
        if (n <= kOracleMaxVertices) truth = oracle_kappa(g).kappa;
        k = truth.value_or(0);
      }
      KappaOptions o = base;
      o.seed = rng();
      const auto start = Clock::now();
      std::string correct = "unknown";
      if (f.family == "planted" || f.family == "sparse") {
        // Planted: a cut of size <= k must be found.
        std::size_t got = 0;
        bool ok = false;
        if (f.algo == "oracle") {
          const OracleAnswer a = oracle_kappa(g);
          ok = a.separator && a.kappa <= planted_k;
        } else if (f.algo == "embedding") {
          const VcAnswer a = approx_vc_embedding(g, o.eps, o.seed, o.boost);
          got = a.separator.size();
          ok = a.is_cut() && separates(g, a.separator, a.witness) &&
               static_cast<double>(got) <= (1.0 + o.eps.to_double()) * static_cast<double>(planted_k);
        } else {
          FrameworkConfig cfg = config_for(g, planted_k, o, o.seed);
          cfg.use_local_vc = true;
          cfg.k = planted_k;
          const VcAnswer a = vc_decide(g, cfg);
          ok = a.is_cut() && separates(g, a.separator, a.witness) &&
               (mode == SolveMode::kExact ? a.separator.size() <= planted_k
                                          : static_cast<double>(a.separator.size()) <=
                                                (1.0 + o.eps.to_double()) * static_cast<double>(planted_k));
        }
        correct = ok ? "true" : "false";
      } else {
        std::size_t got = 0;
        if (f.algo == "oracle") {
          got = oracle_kappa(g).kappa;
        } else if (f.algo == "embedding") {
          const VcAnswer a = approx_vc_embedding(g, o.eps, o.seed, o.boost);
          got = a.is_cut() ? a.separator.size() : a.bound;
        } else {
          got = kappa(g, o).kappa;
        }
        if (truth) {
          const double limit = mode == SolveMode::kExact ? static_cast<double>(*truth)
                                                         : (1.0 + o.eps.to_double()) * static_cast<double>(*truth);
          correct = got >= *truth && static_cast<double>(got) <= limit + 1e-9 ? "true" : "false";
        }
      }
      out << n << ',' << g.num_edges() << ',' << k << ',' << f.algo << ',' << elapsed_ms(start) << ',' << correct
          << '\n';
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--input", f.input, "graph file, - for stdin");
  sub->add_option("--format", f.format, "edgelist or dimacs")->check(CLI::IsMember({"edgelist", "dimacs"}));
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--eps", f.eps, "approximation parameter, decimal or p/q");
  sub->add_option("--algo", f.algo, "framework, embedding or oracle")
      ->check(CLI::IsMember({"framework", "embedding", "oracle"}));
  sub->add_option("--mode", f.mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  sub->add_flag("--exact", f.exact, "same as --mode exact");
  sub->add_flag("--approx", f.approx, "same as --mode approx");
  sub->add_option("--sampling", f.sampling, "vertex, edge or auto")
      ->check(CLI::IsMember({"vertex", "edge", "auto"}));
  sub->add_option("--boost", f.boost, "sampling constant c");
  sub->add_flag("--json", f.json, "JSON-lines output (the default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vertex connectivity toolkit", "vcut"};
  app.require_subcommand(1);
  Flags f;

  auto* decide = app.add_subcommand("decide", "is kappa <= k?");
  add_common(decide, f);
  decide->add_option("--k", f.k, "threshold")->required();

  auto* kap = app.add_subcommand("kappa", "vertex connectivity, exact or approximate");
  add_common(kap, f);

  auto* local = app.add_subcommand("localvc", "one local cut probe from a seed vertex");
  add_common(local, f);
  local->add_option("--k", f.k, "cut size bound")->required();
  local->add_option("--vertex", f.vertex, "seed vertex x");
  local->add_option("--nu", f.nu, "volume bound");

  auto* orc = app.add_subcommand("oracle", "brute-force kappa");
  add_common(orc, f);

  auto* bench = app.add_subcommand("bench", "CSV timings over synthetic families");
  add_common(bench, f);
  bench->add_option("--k", f.k, "planted separator size");
  bench->add_option("--family", f.family, "planted, sparse, cycle or random");
  bench->add_option("--sizes", f.sizes, "comma-separated vertex counts");
  bench->add_option("--seeds", f.seeds, "runs per size");
  bench->add_option("--density", f.density, "blob or G(n,p) density");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (decide->parsed()) return cmd_decide(f, out);
    if (kap->parsed()) return cmd_kappa(f, out);
    if (local->parsed()) return cmd_localvc(f, out);
    if (orc->parsed()) return cmd_oracle(f, out);
    return cmd_bench(f, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace vcut::cli
