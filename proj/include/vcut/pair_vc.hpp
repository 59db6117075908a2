#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

/// Result of an (x,y) vertex-connectivity query with threshold k.
///
/// With has_cut, `shore` is an out-vertex shore containing x whose external
/// out-neighborhood `separator` separates x from y, and
/// |separator| == value == kappa(x,y) <= k. `paths` holds that many
/// internally vertex-disjoint x -> y paths (Menger witnesses).
/// Otherwise kappa(x,y) >= value, where value is k+1, or n-1 when (x,y) is
/// an arc and no cut can exist.
struct PairAnswer {
  bool has_cut = false;
  std::size_t value = 0;
  std::vector<Vertex> shore;
  std::vector<Vertex> separator;
  std::vector<std::vector<Vertex>> paths;
};

/// Unit vertex-capacity split network of one graph, reusable across queries.
/// Each v becomes v_in -> v_out with capacity 1 and every arc (u,w) becomes
/// u_out -> w_in with unbounded capacity; a query (x,y) routes from x_out to
/// y_in. Not thread-safe; use one solver per thread.
class PairVcSolver {
 public:
  explicit PairVcSolver(const DiGraph& g);

  /// Runs at most k+1 BFS augmentations. Throws UsageError if x == y.
  PairAnswer query(Vertex x, Vertex y, std::size_t k);

  const DiGraph& graph() const noexcept { return *graph_; }

 private:
  struct Arc {
    std::uint32_t to;
    std::int32_t residual;
  };

  void reset();
  bool augment(std::uint32_t source, std::uint32_t sink);
  std::vector<bool> residual_reach(std::uint32_t source) const;

  const DiGraph* graph_;
  std::vector<std::size_t> first_;  // CSR over network nodes
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> mate_;  // reverse arc of arcs_[i]
  std::vector<std::int32_t> initial_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> parent_arc_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> seen_stamp_;
  std::uint32_t stamp_ = 0;
};

PairAnswer pair_vertex_connectivity(const DiGraph& g, Vertex x, Vertex y, std::size_t k);

/// Exact kappa(x,y): threshold k = n-2, so !has_cut means kappa(x,y) = n-1.
PairAnswer min_vertex_cut_pair(const DiGraph& g, Vertex x, Vertex y);

}  // namespace vcut
