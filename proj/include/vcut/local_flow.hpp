#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vcut/graph.hpp"
#include "vcut/rational.hpp"

namespace vcut {

struct LocalVcParams {
  Vertex x = 0;
  std::uint64_t nu = 1;
  std::uint64_t k = 1;
  Rational eps{1, 2};
};

/// eps = 1/(2k), the setting that makes the local search exact.
LocalVcParams exact_local_params(Vertex x, std::uint64_t nu, std::uint64_t k);

enum class ParamRegime { kSparse, kDense, kInvalid };

const char* to_string(ParamRegime regime);

/// Sparse: nu/eps + nu < m, (1+eps)(2nu/(eps k) + k) < n, d_min_out >= k.
/// Dense:  nu/eps + nu + (1+eps)nk < m, d_min_out >= k.
/// Sparse wins when both hold. Evaluated exactly.
ParamRegime validate_params(const DiGraph& g, const LocalVcParams& p);

// Node ids of the augmented graph G': v_in = 2v, v_out = 2v+1, s = 2n,
// t = 2n+1. The in-copy of x does not exist.
namespace aug {
constexpr std::uint32_t in(Vertex v) { return 2 * v; }
constexpr std::uint32_t out(Vertex v) { return 2 * v + 1; }
constexpr std::uint32_t source(std::size_t n) { return static_cast<std::uint32_t>(2 * n); }
constexpr std::uint32_t sink(std::size_t n) { return static_cast<std::uint32_t>(2 * n + 1); }
constexpr Vertex original(std::uint32_t node) { return node / 2; }
constexpr bool is_out(std::uint32_t node) { return node % 2 == 1; }
}  // namespace aug

/// Integer capacities of G'. Every quantity is the true rational value
/// times `unit`, which is chosen so that all split, sink and source
/// capacities and every Delta of the scaling loop are integers.
struct AugmentedCapacities {
  std::int64_t unit = 1;
  std::int64_t split = 0;      // nu/(eps k)
  std::int64_t source = 0;     // nu/eps + nu + 1
  std::int64_t inf = 0;        // stands in for infinity: source + 1
  std::int64_t threshold = 0;  // nu/eps + nu
  std::int64_t per_degree = 0; // sink edge of v has capacity deg(v) * per_degree
  std::int64_t initial_gap = 0;  // F = source - deg(x), scaled
  std::uint64_t lambda = 1;      // ceil(sqrt(8 nu/(eps k)))
  int scaling_rounds = 0;        // how many times F >= 1 survives halving

  std::int64_t sink(std::size_t degree) const { return static_cast<std::int64_t>(degree) * per_degree; }
  /// Delta for outer iteration i, scaled: F/(2*Lambda) with F halved i times.
  std::int64_t delta(int i) const;
  Rational value(std::int64_t scaled) const { return Rational(scaled, unit); }
};

/// Throws UsageError if the parameters would overflow 62-bit arithmetic.
AugmentedCapacities make_capacities(const DiGraph& g, const LocalVcParams& p);

enum class EdgeKind : std::uint8_t { kSource, kSplit, kInf, kSink };

struct AugEdge {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  EdgeKind kind = EdgeKind::kInf;
  std::int64_t cap = 0;
  std::int64_t flow = 0;
};

/// Flow on the touched edges of G' plus the split-node-saturated set.
class ResidualState {
 public:
  ResidualState(const DiGraph& g, AugmentedCapacities caps, Vertex x);

  const DiGraph& graph() const noexcept { return *graph_; }
  const AugmentedCapacities& caps() const noexcept { return caps_; }
  Vertex x() const noexcept { return x_; }

  std::int64_t flow(std::uint32_t tail, std::uint32_t head) const;
  const std::unordered_map<std::uint64_t, std::int64_t>& flows() const noexcept { return flow_; }
  std::int64_t total_flow() const noexcept { return total_; }

  /// Original ids whose sink edge is saturated, ascending.
  std::vector<Vertex> b_out() const;
  bool in_b_out(Vertex v) const { return b_out_.contains(v); }
  std::size_t b_out_size() const noexcept { return b_out_.size(); }
  /// Split nodes of B: out-copies of b_out() and in-copies of their
  /// out-neighbors, ascending.
  std::vector<std::uint32_t> b_nodes() const;

  /// Adds `delta` to the flow on G' edge (tail, head). Keeps B_out and the
  /// total in sync; throws InternalError on a capacity violation.
  void add_flow(const AugEdge& edge, std::int64_t delta);

  /// Capacity and conservation on every touched edge.
  bool is_feasible() const;

  static std::uint64_t key(std::uint32_t tail, std::uint32_t head) {
    return (static_cast<std::uint64_t>(tail) << 32) | head;
  }

 private:
  const DiGraph* graph_;
  AugmentedCapacities caps_;
  Vertex x_;
  std::unordered_map<std::uint64_t, std::int64_t> flow_;
  std::unordered_set<Vertex> b_out_;
  std::int64_t total_ = 0;
};

/// Pushes deg_out(x) units along s -> x_out -> t, or cap_source units when
/// that is smaller. Throws UsageError on invalid params.
ResidualState residual_init(const DiGraph& g, const LocalVcParams& p);

/// A capacitated sub-network of G' with the current flow. Nodes are global
/// G' ids in ascending order; edges are sorted by (tail, head).
struct FlowNetwork {
  std::uint32_t source = 0;
  std::uint32_t sink = 0;
  std::vector<std::uint32_t> nodes;
  std::vector<bool> in_b;  // per local node
  std::vector<AugEdge> edges;
  std::vector<std::uint32_t> tail_at;  // local index of each edge's tail
  std::vector<std::uint32_t> head_at;

  std::size_t local(std::uint32_t node) const;  // throws if absent
  bool contains(std::uint32_t node) const;
};

using LocalGraph = FlowNetwork;

/// The local graph LG(G', B). Reads only B and the out-lists of B_out.
LocalGraph build_local_graph(const ResidualState& state);

/// The whole of G' with the same flow, for cross-checks and debugging.
FlowNetwork build_explicit_network(const ResidualState& state);

/// Writes G' with capacities (scaled by caps.unit) as "tail head cap" lines.
void dump_augmented(std::ostream& out, const DiGraph& g, const LocalVcParams& p);

struct ResidualArc {
  std::uint32_t from = 0;  // local node indices
  std::uint32_t to = 0;
  std::uint32_t edge = 0;  // index into FlowNetwork::edges
  bool forward = true;
  std::int64_t residual = 0;
  std::uint8_t length = 1;
  bool modern = false;
  bool special = false;
};

constexpr std::int64_t kUnreachable = -1;

struct LengthAssignment {
  std::int64_t delta = 0;
  std::vector<ResidualArc> arcs;   // sorted by (from, to)
  std::vector<std::size_t> first;  // CSR offsets over arcs by `from`
  std::vector<std::int64_t> dist;  // kUnreachable when not reachable
  std::int64_t d_max = kUnreachable;
};

/// Binary local lengths for the residual network of `net`. Arcs leaving t
/// are dropped.
LengthAssignment assign_lengths(const FlowNetwork& net, std::int64_t delta);

struct BlockingResult {
  std::int64_t value = 0;
  bool blocking = false;            // value < delta/4
  std::vector<std::int64_t> change;  // per FlowNetwork edge, signed
};

/// A delta/4-or-blocking flow on the admissible arcs of `lengths`.
BlockingResult blocking_flow(const FlowNetwork& net, const LengthAssignment& lengths, std::int64_t delta);

/// Applies a blocking-flow result computed on `net` to the state.
void apply_flow(ResidualState& state, const FlowNetwork& net, const BlockingResult& result);

/// What local_flow exposes to an observer after each round, before the
/// increment is applied.
struct RoundTrace {
  const ResidualState& state;
  const LocalGraph& local;
  const LengthAssignment& lengths;
  const BlockingResult& result;
  int outer = 0;  // -1 during the final exact phase
  std::int64_t delta = 0;
};

using RoundObserver = std::function<void(const RoundTrace&)>;

struct LocalFlowResult {
  AugmentedCapacities caps;
  std::int64_t max_flow = 0;  // scaled by caps.unit
  std::vector<AugEdge> min_cut;
  std::size_t rounds = 0;
  std::size_t blocking_rounds = 0;
  std::size_t largest_local_edges = 0;

  Rational max_flow_value() const { return caps.value(max_flow); }
};

/// Maximum s-t flow and a minimum cut of G', computed on local graphs only.
LocalFlowResult local_flow(const DiGraph& g, const LocalVcParams& p, const RoundObserver& observer = {});

/// Turns a cut of capacity <= nu/eps + nu into (L, S, R) with x in L.
/// Throws UsageError when the capacity is above that threshold.
SeparationTriple cut_to_triple(const DiGraph& g, std::span<const AugEdge> cut, const LocalVcParams& p);

struct TripleAnswer {
  std::optional<SeparationTriple> triple;  // nullopt is the "no cut" answer
  Rational max_flow;
};

TripleAnswer local_vc(const DiGraph& g, const LocalVcParams& p);
TripleAnswer local_vc_exact(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k);

}  // namespace vcut
