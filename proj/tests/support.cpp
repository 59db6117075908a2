#include "support.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>

namespace vcut::testkit {

DiGraph graph_from(std::size_t n, std::initializer_list<Edge> edges, bool directed) {
  const std::vector<Edge> list(edges);
  return DiGraph(n, list, directed);
}

std::size_t pair_kappa_by_subsets(const DiGraph& g, Vertex x, Vertex y) {
  const std::size_t n = g.num_vertices();
  if (g.has_edge(x, y)) return n - 1;
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v) {
    if (v != x && v != y) others.push_back(v);
  }
  std::size_t best = n - 1;
  const std::uint32_t limit = 1u << others.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    std::vector<bool> removed(n, false);
    for (std::size_t i = 0; i < others.size(); ++i) removed[others[i]] = (mask >> i) & 1u;
    // Plain DFS, separate from the library's reachability helper.
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.out_neighbors(u)) {
        if (!seen[w] && !removed[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    if (!seen[y]) best = size;
  }
  return best;
}

bool paths_are_disjoint(const DiGraph& g, Vertex x, Vertex y, const std::vector<std::vector<Vertex>>& paths) {
  std::vector<bool> used(g.num_vertices(), false);
  for (const auto& path : paths) {
    if (path.size() < 2 || path.front() != x || path.back() != y) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!g.has_edge(path[i], path[i + 1])) return false;
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      if (used[path[i]] || path[i] == x || path[i] == y) return false;
      used[path[i]] = true;
    }
  }
  return true;
}

ExplicitFlow explicit_augmented_max_flow(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k,
                                         const Rational& eps) {
  const std::size_t n = g.num_vertices();
  const Rational nu_r(static_cast<std::int64_t>(nu));
  const Rational k_r(static_cast<std::int64_t>(k));
  const Rational split = nu_r / (eps * k_r);
  const Rational source = nu_r / eps + nu_r + Rational(1);
  const std::int64_t scale = std::lcm(split.den(), source.den());

  // Dense capacity matrix over 2n+2 nodes; the infinite arcs get a value
  // above the sum of all finite capacities.
  const std::size_t nodes = 2 * n + 2;
  const std::size_t s = 2 * n;
  const std::size_t t = 2 * n + 1;
  std::int64_t finite = source.num() * (scale / source.den()) + static_cast<std::int64_t>(n) * split.num() * (scale / split.den());
  finite += static_cast<std::int64_t>(g.num_edges()) * scale;
  const std::int64_t inf = finite + 1;
  std::vector<std::vector<std::int64_t>> cap(nodes, std::vector<std::int64_t>(nodes, 0));
  cap[s][2 * x + 1] = source.num() * (scale / source.den());
  for (Vertex v = 0; v < n; ++v) {
    if (v != x) cap[2 * v][2 * v + 1] = split.num() * (scale / split.den());
    cap[2 * v + 1][t] = static_cast<std::int64_t>(g.out_degree(v)) * scale;
    for (Vertex w : g.out_neighbors(v)) {
      if (w != x) cap[2 * v + 1][2 * w] = inf;
    }
  }

  std::int64_t flow = 0;
  std::vector<std::size_t> parent(nodes);
  for (;;) {
    std::fill(parent.begin(), parent.end(), nodes);
    parent[s] = s;
    std::queue<std::size_t> queue;
    queue.push(s);
    while (!queue.empty() && parent[t] == nodes) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v = 0; v < nodes; ++v) {
        if (parent[v] == nodes && cap[u][v] > 0) {
          parent[v] = u;
          queue.push(v);
        }
      }
    }
    if (parent[t] == nodes) break;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = t; v != s; v = parent[v]) bottleneck = std::min(bottleneck, cap[parent[v]][v]);
    for (std::size_t v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= bottleneck;
      cap[v][parent[v]] += bottleneck;
    }
    flow += bottleneck;
  }
  ExplicitFlow result{Rational(flow, scale), {}};
  for (std::size_t v = 0; v < nodes; ++v) {
    if (parent[v] != nodes) result.source_side.push_back(static_cast<std::uint32_t>(v));
  }
  return result;
}

bool is_forest(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [u, v] : edges) {
    const Vertex a = find(u);
    const Vertex b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

DiGraph random_test_graph(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi, double p_lo, double p_hi,
                          bool directed) {
  std::uniform_int_distribution<std::size_t> size(n_lo, n_hi);
  std::uniform_real_distribution<double> density(p_lo, p_hi);
  const std::size_t n = size(rng);
  std::bernoulli_distribution coin(density(rng));
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return DiGraph(n, edges, directed);
}

}  // namespace vcut::testkit
