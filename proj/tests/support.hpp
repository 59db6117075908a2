#pragma once

// Independent reference computations for tests. Nothing here calls the
// flow code under test.

#include <cstdint>
#include <random>
#include <vector>

#include "vcut/graph.hpp"
#include "vcut/rational.hpp"

namespace vcut::testkit {

DiGraph graph_from(std::size_t n, std::initializer_list<Edge> edges, bool directed);

/// kappa(x,y) by trying every subset of V - {x,y} in order of size;
/// n-1 when (x,y) is an arc.
std::size_t pair_kappa_by_subsets(const DiGraph& g, Vertex x, Vertex y);

/// True iff the paths are x..y walks along arcs with disjoint interiors.
bool paths_are_disjoint(const DiGraph& g, Vertex x, Vertex y, const std::vector<std::vector<Vertex>>& paths);

/// Max s-t flow of the augmented graph for (x, nu, k, eps), built straight
/// from its definition with rational capacities and solved by
/// Edmonds-Karp. `source_side` receives the original vertices whose split
/// nodes lie on the source side of the resulting minimum cut.
struct ExplicitFlow {
  Rational value;
  std::vector<std::uint32_t> source_side;  // augmented ids, 2v / 2v+1 / 2n / 2n+1
};
ExplicitFlow explicit_augmented_max_flow(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k,
                                         const Rational& eps);

/// Union-find acyclicity check on an undirected edge list.
bool is_forest(std::size_t n, const std::vector<Edge>& edges);

/// Random graph with a few knobs, for property loops.
DiGraph random_test_graph(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi, double p_lo, double p_hi,
                          bool directed);

}  // namespace vcut::testkit
