#pragma once

#include <cstdint>
#include <vector>

#include "vcut/graph.hpp"
#include "vcut/rational.hpp"
#include "vcut/vc_framework.hpp"

namespace vcut {

/// Deterministic Miller-Rabin for all 64-bit values.
bool is_prime(std::uint64_t value);

/// A prime in [n^5, n^6], searched upward from a seeded random start. The
/// window is clamped to 62 bits for large n.
std::uint64_t embedding_prime(std::size_t n, std::uint64_t seed);

/// Random modular directed X-embedding over Z_p.
///
/// Points are stored lifted: lifted[v] = (f(v), 1), so affine rank becomes
/// matrix rank. The anchors use the standard frame f(x_1) = 0,
/// f(x_i) = e_{i-1}. Vertices that cannot reach X lie in no hull; they get
/// the zero vector, which adds nothing to any rank.
struct Embedding {
  std::uint64_t p = 0;
  std::vector<Vertex> anchors;  // X, ascending
  std::vector<std::vector<std::uint64_t>> lifted;
  /// Normalized coefficients c^(v, w) per out-arc, aligned with
  /// out_neighbors(v); empty for anchors and for vertices that miss X.
  std::vector<std::vector<std::uint64_t>> coeff;

  std::size_t dimension() const { return anchors.empty() ? 0 : anchors.size() - 1; }
  /// f(v) without the lifting coordinate.
  std::vector<std::uint64_t> point(Vertex v) const;
};

/// X = first min(k, deg_in(anchor)) in-neighbors of `anchor` by id. Throws
/// UsageError when the anchor has no in-neighbor or k is 0.
Embedding build_embedding(const DiGraph& g, Vertex anchor, std::size_t k, std::uint64_t seed);

/// Matrix rank over Z_p. Throws UsageError if p is not prime or the rows
/// differ in length.
std::size_t rank_mod_p(const std::vector<std::vector<std::uint64_t>>& vectors, std::uint64_t p);

/// rank(f(U)) in the paper's sense (one plus the affine dimension).
std::size_t embedding_rank(const Embedding& emb, const std::vector<Vertex>& u);

/// First min(k, degree) out- or in-neighbors by id.
std::vector<Vertex> first_out_neighbors(const DiGraph& g, Vertex v, std::size_t k);
std::vector<Vertex> first_in_neighbors(const DiGraph& g, Vertex v, std::size_t k);

/// (1+eps)-approximate vertex cut by sampling anchor/shore pairs and
/// ranking them through embeddings of G and G^R.
VcAnswer approx_vc_embedding(const DiGraph& g, const Rational& eps, std::uint64_t seed, double boost = 3.0,
                             FrameworkLog* log = nullptr);

}  // namespace vcut
