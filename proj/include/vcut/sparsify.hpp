#pragma once

#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

/// Edge-disjoint forests F_1, F_2, ... whose union is the undirected edge
/// set. Each undirected edge appears once, as (u, v) with u < v.
struct ForestDecomposition {
  std::vector<std::vector<Edge>> forests;
  std::size_t source_n = 0;
  std::size_t source_m = 0;  // undirected edge count
};

/// Nagamochi-Ibaraki scan-first search in one pass over the edges.
/// Throws UsageError on a directed graph.
ForestDecomposition forest_decomposition(const DiGraph& g);

/// Bidirected graph on H_{k+1} = F_1 u ... u F_{k+1}. Preserves
/// j-connectivity for every j <= k+1, and (x,y) connectivity up to k+1.
DiGraph certificate(const DiGraph& g, std::size_t k);

/// Same, reusing an already computed decomposition.
DiGraph certificate(const ForestDecomposition& forests, std::size_t k);

}  // namespace vcut
