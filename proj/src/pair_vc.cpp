#include "vcut/pair_vc.hpp"

#include <algorithm>

#include "vcut/error.hpp"

namespace vcut {

namespace {

constexpr std::uint32_t in_node(Vertex v) { return 2 * v; }
constexpr std::uint32_t out_node(Vertex v) { return 2 * v + 1; }

}  // namespace

// arcs_ is CSR by tail node; initial_ keeps capacities for reset().
PairVcSolver::PairVcSolver(const DiGraph& g) : graph_(&g) {
  const std::size_t n = g.num_vertices();
  const std::size_t nodes = 2 * n;
  const auto inf = static_cast<std::int32_t>(n + 1);

  struct Pending {
    std::uint32_t tail, head;
    std::int32_t cap;
  };
  std::vector<Pending> pending;
  pending.reserve(n + g.num_edges());
  for (Vertex v = 0; v < n; ++v) pending.push_back({in_node(v), out_node(v), 1});
  for (const auto& [u, w] : g.edges()) pending.push_back({out_node(u), in_node(w), inf});

  std::vector<std::size_t> degree(nodes + 1, 0);
  for (const auto& p : pending) {
    ++degree[p.tail + 1];
    ++degree[p.head + 1];
  }
  for (std::size_t i = 0; i < nodes; ++i) degree[i + 1] += degree[i];
  first_ = degree;

  arcs_.resize(2 * pending.size());
  mate_.resize(arcs_.size());
  std::vector<std::size_t> cursor(first_.begin(), first_.end() - 1);
  for (const auto& p : pending) {
    const std::size_t fwd = cursor[p.tail]++;
    const std::size_t bwd = cursor[p.head]++;
    arcs_[fwd] = {p.head, p.cap};
    arcs_[bwd] = {p.tail, 0};
    mate_[fwd] = static_cast<std::uint32_t>(bwd);
    mate_[bwd] = static_cast<std::uint32_t>(fwd);
  }
  initial_.reserve(arcs_.size());
  for (const auto& a : arcs_) initial_.push_back(a.residual);
  parent_arc_.assign(nodes, 0);
  seen_stamp_.assign(nodes, 0);
}

void PairVcSolver::reset() {
  for (std::size_t i : touched_) {
    arcs_[i].residual = initial_[i];
    arcs_[mate_[i]].residual = initial_[mate_[i]];
  }
  touched_.clear();
}

bool PairVcSolver::augment(std::uint32_t source, std::uint32_t sink) {
  ++stamp_;
  queue_.clear();
  queue_.push_back(source);
  seen_stamp_[source] = stamp_;
  bool found = false;
  for (std::size_t head = 0; head < queue_.size() && !found; ++head) {
    const std::uint32_t u = queue_[head];
    for (std::size_t i = first_[u]; i < first_[u + 1]; ++i) {
      const Arc& a = arcs_[i];
      if (a.residual <= 0 || seen_stamp_[a.to] == stamp_) continue;
      seen_stamp_[a.to] = stamp_;
      parent_arc_[a.to] = i;
      if (a.to == sink) {
        found = true;
        break;
      }
      queue_.push_back(a.to);
    }
  }
  if (!found) return false;
  for (std::uint32_t v = sink; v != source;) {
    const std::size_t i = parent_arc_[v];
    arcs_[i].residual -= 1;
    arcs_[mate_[i]].residual += 1;
    touched_.push_back(i);
    v = arcs_[mate_[i]].to;
  }
  return true;
}

std::vector<bool> PairVcSolver::residual_reach(std::uint32_t source) const {
  std::vector<bool> seen(first_.size() - 1, false);
  std::vector<std::uint32_t> queue{source};
  seen[source] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::size_t i = first_[u]; i < first_[u + 1]; ++i) {
      if (arcs_[i].residual > 0 && !seen[arcs_[i].to]) {
        seen[arcs_[i].to] = true;
        queue.push_back(arcs_[i].to);
      }
    }
  }
  return seen;
}

PairAnswer PairVcSolver::query(Vertex x, Vertex y, std::size_t k) {
  const DiGraph& g = *graph_;
  const std::size_t n = g.num_vertices();
  if (x == y) throw UsageError("pair_vertex_connectivity needs x != y");
  if (x >= n || y >= n) throw UsageError("vertex out of range");

  PairAnswer answer;
  if (g.has_edge(x, y)) {
    answer.value = n - 1;
    return answer;
  }
  k = std::min(k, n - 2);

  reset();
  const std::uint32_t source = out_node(x);
  const std::uint32_t sink = in_node(y);
  std::size_t flow = 0;
  while (flow <= k && augment(source, sink)) ++flow;
  if (flow > k) {
    answer.value = k + 1;
    reset();
    return answer;
  }

  const auto reach = residual_reach(source);
  std::vector<bool> in_shore(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (reach[out_node(v)]) {
      in_shore[v] = true;
      answer.shore.push_back(v);
    }
  }
  std::vector<bool> in_sep(n, false);
  for (Vertex v : answer.shore) {
    for (Vertex w : g.out_neighbors(v)) {
      if (!in_shore[w] && !in_sep[w]) in_sep[w] = true;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in_sep[v]) answer.separator.push_back(v);
  }

  // Path decomposition: walk saturated split arcs from x_out to y_in.
  std::vector<std::int32_t> used(arcs_.size(), 0);
  for (std::size_t p = 0; p < flow; ++p) {
    std::vector<Vertex> path{x};
    std::uint32_t node = source;
    while (node != sink) {
      bool advanced = false;
      for (std::size_t i = first_[node]; i < first_[node + 1]; ++i) {
        const std::int32_t carried = initial_[i] - arcs_[i].residual;
        if (initial_[i] > 0 && carried - used[i] > 0) {
          ++used[i];
          node = arcs_[i].to;
          advanced = true;
          break;
        }
      }
      if (!advanced) throw InternalError("flow decomposition got stuck");
      if (node % 2 == 1) path.push_back(node / 2);
    }
    path.push_back(y);
    answer.paths.push_back(std::move(path));
  }

  answer.has_cut = true;
  answer.value = flow;
  if (answer.separator.size() != flow) throw InternalError("separator size differs from flow value");
  reset();
  return answer;
}

PairAnswer pair_vertex_connectivity(const DiGraph& g, Vertex x, Vertex y, std::size_t k) {
  PairVcSolver solver(g);
  return solver.query(x, y, k);
}

PairAnswer min_vertex_cut_pair(const DiGraph& g, Vertex x, Vertex y) {
  const std::size_t n = g.num_vertices();
  return pair_vertex_connectivity(g, x, y, n >= 2 ? n - 2 : 0);
}

}  // namespace vcut
