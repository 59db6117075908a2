#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vcut {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class GraphFormat { kEdgeList, kDimacs };

/// Immutable simple directed graph in CSR form, both directions.
///
/// Neighbor lists are sorted ascending, so every traversal that walks them
/// in order breaks ties by smallest id. Undirected inputs are stored
/// bidirected and remember that through is_directed() == false.
class DiGraph {
 public:
  DiGraph() = default;

  /// Builds from an arbitrary arc list; drops self-loops and duplicates.
  /// When directed is false each (u,v) also inserts (v,u).
  DiGraph(std::size_t n, std::span<const Edge> edges, bool directed);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return out_targets_.size(); }
  bool is_directed() const noexcept { return directed_; }

  std::span<const Vertex> out_neighbors(Vertex v) const noexcept {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const Vertex> in_neighbors(Vertex v) const noexcept {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(Vertex v) const noexcept { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(Vertex v) const noexcept { return in_offsets_[v + 1] - in_offsets_[v]; }

  /// Binary search in the sorted out-list.
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// All arcs in (source, target) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const DiGraph& a, const DiGraph& b) noexcept {
    return a.n_ == b.n_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_;
  }

 private:
  std::size_t n_ = 0;
  bool directed_ = true;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_sources_;
};

struct DegreeStats {
  std::size_t d_min_out = 0;
  Vertex v_min_out = 0;
  std::size_t d_min_in = 0;
  Vertex v_min_in = 0;
};

/// Partition (L, S, R) of V with L, R non-empty and no arc from L to R.
/// Each part is kept sorted.
struct SeparationTriple {
  std::vector<Vertex> left;
  std::vector<Vertex> separator;
  std::vector<Vertex> right;
};

DiGraph parse_graph(std::istream& in, GraphFormat format);
DiGraph parse_graph_file(const std::string& path, GraphFormat format);
/// Writes the edge-list format ("n m d|u" header). Undirected graphs emit
/// each edge once with u < v.
void write_edge_list(std::ostream& out, const DiGraph& g);

DiGraph reverse(const DiGraph& g);

bool is_strongly_connected(const DiGraph& g);

/// An ordered pair (u, v) with v unreachable from u, or nullopt when g is
/// strongly connected. u is always vertex 0 or a vertex that cannot reach 0.
std::optional<Edge> unreachable_pair(const DiGraph& g);

/// Ties broken by smallest id. Requires n >= 1.
DegreeStats degree_stats(const DiGraph& g);

std::size_t vol_out(const DiGraph& g, std::span<const Vertex> vertices);

/// Vertices reachable from source in g minus `removed` (flags indexed by id).
/// A removed source reaches nothing.
std::vector<bool> reachable_from(const DiGraph& g, Vertex source, const std::vector<bool>& removed);

/// True iff deleting `cut` leaves some ordered pair of remaining vertices
/// disconnected (the definition of a vertex cut).
bool is_vertex_cut(const DiGraph& g, std::span<const Vertex> cut);

/// Checks the partition, non-emptiness and absence of L -> R arcs.
bool is_separation_triple(const DiGraph& g, const SeparationTriple& t);

/// Builds (L, S, R) with L = vertices reachable from x in G - S.
/// Returns nullopt if x is in S or R would be empty.
std::optional<SeparationTriple> triple_from_separator(const DiGraph& g, Vertex x,
                                                      std::span<const Vertex> separator);

/// Mirror of a triple found in reverse(g): (L, S, R) there is (R, S, L) here.
SeparationTriple mirror(SeparationTriple t);

}  // namespace vcut
