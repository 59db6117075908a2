#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

/// Per-trial seed derived from (master, index), so trials are independent
/// of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

DiGraph complete_graph(std::size_t n);
DiGraph cycle_graph(std::size_t n, bool directed);
DiGraph star_graph(std::size_t leaves);

/// Two cliques of size `clique` glued along `shared` common vertices
/// (ids 0..shared-1), bidirected. kappa = shared when clique > shared + 1.
DiGraph cliques_sharing(std::size_t clique, std::size_t shared);

/// G(n, p); undirected graphs are bidirected.
DiGraph random_graph(std::size_t n, double p, bool directed, std::mt19937_64& rng);

/// Two dense blobs joined only through a separator of size k: every blob
/// vertex links to each separator vertex, blobs are G(size, density) plus a
/// Hamiltonian cycle, so kappa <= k with the planted separator as a witness.
struct PlantedInstance {
  DiGraph graph;
  std::vector<Vertex> separator;
};
PlantedInstance planted_cut(std::size_t n, std::size_t k, double density, bool directed, std::mt19937_64& rng);

/// Sparse planted family: blobs are random (k+2)-regular-ish circulants, so
/// m grows linearly in n.
PlantedInstance planted_sparse(std::size_t n, std::size_t k, std::mt19937_64& rng);

}  // namespace vcut
