#include "vcut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "vcut/error.hpp"
#include "vcut/pair_vc.hpp"

namespace vcut {

OracleAnswer oracle_kappa(const DiGraph& g, std::size_t max_n) {
  const std::size_t n = g.num_vertices();
  if (n > max_n) throw UsageError("oracle_kappa: graph too large");
  OracleAnswer answer;
  answer.kappa = n == 0 ? 0 : n - 1;
  PairVcSolver solver(g);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x == y || g.has_edge(x, y)) continue;
      // Only a strictly smaller cut is interesting.
      if (answer.separator && answer.kappa == 0) return answer;
      const std::size_t limit = answer.separator ? answer.kappa - 1 : n - 2;
      const PairAnswer pair = solver.query(x, y, limit);
      if (pair.has_cut && (!answer.separator || pair.value < answer.kappa)) {
        answer.kappa = pair.value;
        answer.separator = pair.separator;
        answer.witness = {x, y};
      }
    }
  }
  return answer;
}

OracleAnswer oracle_kappa_by_subsets(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 16) throw UsageError("oracle_kappa_by_subsets: graph too large");
  OracleAnswer answer;
  answer.kappa = n == 0 ? 0 : n - 1;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::uint32_t mask : masks) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size + 2 > n) break;
    std::vector<bool> removed(n, false);
    for (Vertex v = 0; v < n; ++v) removed[v] = (mask >> v) & 1u;
    for (Vertex u = 0; u < n; ++u) {
      if (removed[u]) continue;
      const std::vector<bool> reach = reachable_from(g, u, removed);
      for (Vertex v = 0; v < n; ++v) {
        if (!removed[v] && !reach[v]) {
          answer.kappa = size;
          answer.separator.emplace();
          for (Vertex w = 0; w < n; ++w) {
            if (removed[w]) answer.separator->push_back(w);
          }
          answer.witness = {u, v};
          return answer;
        }
      }
    }
  }
  return answer;
}

std::optional<SeparationTriple> oracle_local_triple(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k,
                                                    std::size_t max_n) {
  const std::size_t n = g.num_vertices();
  if (n > max_n || n > 64) throw UsageError("oracle_local_triples: graph too large");
  if (x >= n) throw UsageError("seed vertex out of range");

  std::vector<std::uint64_t> out_mask(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.out_neighbors(v)) out_mask[v] |= std::uint64_t{1} << w;
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  // Breadth-first over set size, so the first hit has the fewest vertices.
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> level;
  if (g.out_degree(x) <= nu) {
    level.push_back(std::uint64_t{1} << x);
    seen.insert(level.back());
  }
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    std::vector<std::uint64_t> next;
    for (std::uint64_t set : level) {
      std::uint64_t boundary = 0;
      std::uint64_t vol = 0;
      for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<Vertex>(std::countr_zero(rest));
        boundary |= out_mask[v];
        vol += g.out_degree(v);
      }
      boundary &= ~set;
      if (static_cast<std::uint64_t>(std::popcount(boundary)) <= k && (set | boundary) != all) {
        SeparationTriple t;
        for (Vertex v = 0; v < n; ++v) {
          const std::uint64_t bit = std::uint64_t{1} << v;
          (set & bit ? t.left : boundary & bit ? t.separator : t.right).push_back(v);
        }
        return t;
      }
      for (std::uint64_t rest = boundary; rest != 0; rest &= rest - 1) {
        const auto w = static_cast<Vertex>(std::countr_zero(rest));
        if (vol + g.out_degree(w) > nu) continue;
        const std::uint64_t grown = set | (std::uint64_t{1} << w);
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

bool oracle_local_triples(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k, std::size_t max_n) {
  return oracle_local_triple(g, x, nu, k, max_n).has_value();
}

}  // namespace vcut
