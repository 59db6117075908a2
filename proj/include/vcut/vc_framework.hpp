#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcut/graph.hpp"
#include "vcut/rational.hpp"

namespace vcut {

enum class SamplingMode { kVertex, kEdge };
enum class SolveMode { kExact, kApprox };

const char* to_string(SamplingMode mode);
const char* to_string(SolveMode mode);

struct FrameworkConfig {
  SamplingMode sampling = SamplingMode::kEdge;
  bool use_local_vc = true;
  std::optional<std::size_t> k;  // absent only for the no-LocalVC approximation
  double a = 1.0;                // balancedness threshold
  Rational eps{1, 4};
  SolveMode mode = SolveMode::kExact;
  std::uint64_t seed = 0;
  double boost = 3.0;  // c in ceil(c * log2(n) * target) samples
  bool sparsify = false;
};

struct VcAnswer {
  enum class Kind { kCut, kAtLeast };
  Kind kind = Kind::kAtLeast;
  std::vector<Vertex> separator;           // kCut only
  std::optional<SeparationTriple> triple;  // kCut only
  std::optional<Edge> witness;             // an ordered pair the cut separates
  std::size_t bound = 0;                   // kAtLeast: kappa >= bound
  std::string origin;                      // degree, pair, local, pairwise, ...

  bool is_cut() const noexcept { return kind == Kind::kCut; }
};

/// What a run did, for reports and for reproducing it.
struct FrameworkLog {
  std::vector<std::string> events;
  std::vector<std::uint64_t> nu_schedule;
  double a_requested = 0;
  double a_effective = 0;
  std::size_t pair_queries = 0;
  std::size_t local_calls = 0;
  std::size_t decisions = 0;
};

/// Scales 2^l for 1 <= l <= ceil(log2 a).
std::vector<std::uint64_t> scale_list(double a);

/// Is kappa <= k? A cut has |S| <= k in exact mode and <= (1+eps)k in
/// approximate mode, and always separates its witness pair. kAtLeast with
/// bound k+1 may be wrong only with small probability.
VcAnswer vc_decide(const DiGraph& g, const FrameworkConfig& cfg, FrameworkLog* log = nullptr);

/// Parameter choice per the paper's running-time analysis.
FrameworkConfig choose_params(std::size_t n, std::size_t m, std::size_t k, const Rational& eps, bool directed,
                              SolveMode mode);

/// Vertex sampling without LocalVC; returns the smallest of the best pair
/// cut and the two degree cuts.
VcAnswer vc_approx_nolocal(const DiGraph& g, const Rational& eps, std::uint64_t seed, double boost = 3.0,
                           FrameworkLog* log = nullptr);

/// Deterministic check of kappa <= k from k+1 fixed sources; used when k
/// is above the range the sampling analysis covers in exact mode.
VcAnswer pairwise_decide(const DiGraph& g, std::size_t k, FrameworkLog* log = nullptr);

struct KappaOptions {
  SolveMode mode = SolveMode::kExact;
  Rational eps{1, 4};
  std::uint64_t seed = 0;
  double boost = 3.0;
  std::optional<SamplingMode> sampling;  // nullopt: choose_params decides
};

struct KappaResult {
  std::size_t kappa = 0;
  std::optional<std::vector<Vertex>> separator;  // nullopt for complete graphs
  std::optional<Edge> witness;
  std::string origin;
  FrameworkLog log;
};

/// choose_params for one decision of a search, honoring a sampling override.
FrameworkConfig config_for(const DiGraph& g, std::size_t k, const KappaOptions& options, std::uint64_t seed);

/// Exact: binary search with vc_decide. Approximate: bisection over the
/// (1+eps)-geometric grid of k, capped by the degree cuts.
KappaResult kappa(const DiGraph& g, const KappaOptions& options);

}  // namespace vcut
