#include "vcut/sparsify.hpp"

#include <queue>

#include "vcut/error.hpp"

namespace vcut {

ForestDecomposition forest_decomposition(const DiGraph& g) {
  if (g.is_directed()) throw UsageError("forest_decomposition needs an undirected graph");
  const std::size_t n = g.num_vertices();

  ForestDecomposition result;
  result.source_n = n;
  result.source_m = g.num_edges() / 2;

  // Maximum-adjacency order: repeatedly scan the unscanned vertex with the
  // largest label r; an edge to an unscanned neighbor u joins F_{r(u)+1}.
  std::vector<std::size_t> label(n, 0);
  std::vector<bool> scanned(n, false);
  using Entry = std::pair<std::size_t, std::int64_t>;  // (label, -id) so ties pick smallest id
  std::priority_queue<Entry> queue;
  for (Vertex v = 0; v < n; ++v) queue.emplace(0, -static_cast<std::int64_t>(v));

  while (!queue.empty()) {
    const auto [r, neg_id] = queue.top();
    queue.pop();
    const auto v = static_cast<Vertex>(-neg_id);
    if (scanned[v] || r != label[v]) continue;
    scanned[v] = true;
    for (Vertex u : g.out_neighbors(v)) {
      if (scanned[u]) continue;
      const std::size_t index = label[u]++;
      if (result.forests.size() <= index) result.forests.resize(index + 1);
      result.forests[index].emplace_back(std::min(u, v), std::max(u, v));
      queue.emplace(label[u], -static_cast<std::int64_t>(u));
    }
  }
  return result;
}

DiGraph certificate(const ForestDecomposition& forests, std::size_t k) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < forests.forests.size() && i < k + 1; ++i) {
    edges.insert(edges.end(), forests.forests[i].begin(), forests.forests[i].end());
  }
  return DiGraph(forests.source_n, edges, false);
}

DiGraph certificate(const DiGraph& g, std::size_t k) {
  if (g.is_directed()) throw UsageError("certificate needs an undirected graph");
  if (k + 1 >= g.num_vertices()) return g;
  return certificate(forest_decomposition(g), k);
}

}  // namespace vcut
