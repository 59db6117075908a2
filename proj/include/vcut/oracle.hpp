#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

struct OracleAnswer {
  std::size_t kappa = 0;
  /// A minimum vertex cut; nullopt for complete graphs, which have none.
  std::optional<std::vector<Vertex>> separator;
  /// An ordered pair the separator disconnects (unset for complete graphs).
  Edge witness{0, 0};
};

constexpr std::size_t kOracleMaxVertices = 60;

/// kappa as the minimum of kappa(x,y) over all ordered non-adjacent pairs.
/// Throws UsageError when n exceeds max_n.
OracleAnswer oracle_kappa(const DiGraph& g, std::size_t max_n = kOracleMaxVertices);

/// kappa by trying every vertex subset in order of size (n <= 16).
OracleAnswer oracle_kappa_by_subsets(const DiGraph& g);

/// Is there a triple (L, S, R) with x in L, vol_out(L) <= nu and |S| <= k?
/// Enumerates sets grown from x one out-neighbor at a time (n <= 14 by
/// default, at most 64).
bool oracle_local_triples(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k, std::size_t max_n = 14);

/// The same search, returning a witness with smallest |L| when one exists.
std::optional<SeparationTriple> oracle_local_triple(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k,
                                                    std::size_t max_n = 14);

}  // namespace vcut
