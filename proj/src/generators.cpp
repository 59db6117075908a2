#include "vcut/generators.hpp"

#include <algorithm>

#include "vcut/error.hpp"

namespace vcut {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over a mix of both inputs.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DiGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return DiGraph(n, edges, false);
}

DiGraph cycle_graph(std::size_t n, bool directed) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return DiGraph(n, edges, directed);
}

DiGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return DiGraph(leaves + 1, edges, false);
}

DiGraph cliques_sharing(std::size_t clique, std::size_t shared) {
  if (shared > clique) throw UsageError("cliques_sharing: shared exceeds clique size");
  const std::size_t n = 2 * clique - shared;
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  for (Vertex v = 0; v < shared; ++v) {
    left.push_back(v);
    right.push_back(v);
  }
  Vertex next = static_cast<Vertex>(shared);
  while (left.size() < clique) left.push_back(next++);
  while (right.size() < clique) right.push_back(next++);
  std::vector<Edge> edges;
  for (const auto* side : {&left, &right}) {
    for (std::size_t i = 0; i < side->size(); ++i) {
      for (std::size_t j = i + 1; j < side->size(); ++j) edges.emplace_back((*side)[i], (*side)[j]);
    }
  }
  return DiGraph(n, edges, false);
}

DiGraph random_graph(std::size_t n, double p, bool directed, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return DiGraph(n, edges, directed);
}

namespace {

// Shuffled ids so the separator is not simply the lowest vertices.
std::vector<Vertex> permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> ids(n);
  for (Vertex v = 0; v < n; ++v) ids[v] = v;
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

PlantedInstance assemble(std::size_t n, std::size_t k, const std::vector<Edge>& blob_edges, bool directed,
                         std::mt19937_64& rng) {
  // Local layout: [0, left) left blob, [left, n-k) right blob, [n-k, n) separator.
  const std::vector<Vertex> ids = permutation(n, rng);
  std::vector<Edge> edges;
  for (const auto& [u, v] : blob_edges) edges.emplace_back(ids[u], ids[v]);
  for (Vertex v = 0; v < n - k; ++v) {
    for (std::size_t j = 0; j < k; ++j) {
      const Vertex s = static_cast<Vertex>(n - k + j);
      edges.emplace_back(ids[v], ids[s]);
      if (directed) edges.emplace_back(ids[s], ids[v]);
    }
  }
  PlantedInstance inst{DiGraph(n, edges, directed), {}};
  for (std::size_t j = 0; j < k; ++j) inst.separator.push_back(ids[n - k + j]);
  std::sort(inst.separator.begin(), inst.separator.end());
  return inst;
}

}  // namespace

PlantedInstance planted_cut(std::size_t n, std::size_t k, double density, bool directed, std::mt19937_64& rng) {
  if (n < k + 4) throw UsageError("planted_cut: n too small");
  const std::size_t left = (n - k) / 2;
  std::bernoulli_distribution coin(density);
  std::vector<Edge> blob;
  for (const auto& [lo, hi] : {std::pair<std::size_t, std::size_t>{0, left}, {left, n - k}}) {
    for (std::size_t u = lo; u < hi; ++u) {
      const Vertex next = static_cast<Vertex>(u + 1 < hi ? u + 1 : lo);
      blob.emplace_back(static_cast<Vertex>(u), next);
      if (directed) blob.emplace_back(next, static_cast<Vertex>(u));
      for (std::size_t v = directed ? lo : u + 1; v < hi; ++v) {
        if (u != v && coin(rng)) blob.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
  }
  return assemble(n, k, blob, directed, rng);
}

PlantedInstance planted_sparse(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (n < 2 * (k + 4) + k) throw UsageError("planted_sparse: n too small");
  const std::size_t left = (n - k) / 2;
  std::vector<Edge> blob;
  for (const auto& [lo, hi] : {std::pair<std::size_t, std::size_t>{0, left}, {left, n - k}}) {
    const std::size_t size = hi - lo;
    // Circulant with offsets 1..k+1 is (k+1)-connected inside the blob.
    for (std::size_t u = 0; u < size; ++u) {
      for (std::size_t d = 1; d <= k + 1; ++d) {
        blob.emplace_back(static_cast<Vertex>(lo + u), static_cast<Vertex>(lo + (u + d) % size));
      }
    }
  }
  return assemble(n, k, blob, false, rng);
}

}  // namespace vcut
