#include "vcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vcut/error.hpp"

namespace vcut {

namespace {

void build_csr(std::size_t n, std::vector<Edge>& arcs, std::vector<std::size_t>& offsets,
               std::vector<Vertex>& targets) {
  std::sort(arcs.begin(), arcs.end());
  offsets.assign(n + 1, 0);
  targets.clear();
  targets.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    ++offsets[u + 1];
    targets.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
}

std::vector<bool> bfs(const DiGraph& g, Vertex source, const std::vector<bool>& removed,
                      bool forward) {
  std::vector<bool> seen(g.num_vertices(), false);
  if (!removed.empty() && removed[source]) return seen;
  std::vector<Vertex> queue{source};
  seen[source] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : forward ? g.out_neighbors(u) : g.in_neighbors(u)) {
      if (seen[w] || (!removed.empty() && removed[w])) continue;
      seen[w] = true;
      queue.push_back(w);
    }
  }
  return seen;
}

// Next non-blank, non-comment line; false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no, char comment) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == comment || line[first] == '#') continue;
    return true;
  }
  return false;
}

Vertex checked_id(long long id, std::size_t n, std::size_t line_no) {
  if (id < 0 || static_cast<unsigned long long>(id) >= n) {
    throw RangeError(line_no, "vertex id " + std::to_string(id) + " out of range for n=" +
                                  std::to_string(n));
  }
  return static_cast<Vertex>(id);
}

DiGraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no, '#')) throw ParseError(line_no, "missing header");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string kind, extra;
  if (!(header >> n >> m >> kind) || n < 0 || m < 0 || (kind != "d" && kind != "u") ||
      (header >> extra)) {
    throw ParseError(line_no, "expected header \"n m d|u\"");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, line_no, '#')) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " edges, got " +
                                    std::to_string(i));
    }
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v) || (row >> extra)) throw ParseError(line_no, "expected \"u v\"");
    edges.emplace_back(checked_id(u, n, line_no), checked_id(v, n, line_no));
  }
  if (next_line(in, line, line_no, '#')) throw ParseError(line_no, "trailing content");
  return DiGraph(static_cast<std::size_t>(n), edges, kind == "d");
}

DiGraph parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  while (next_line(in, line, line_no, 'c')) {
    std::istringstream row(line);
    std::string tag, extra;
    row >> tag;
    if (tag == "p") {
      std::string maybe_kind;
      // "p <n> <m>" or "p <kind> <n> <m>"
      if (!(row >> maybe_kind)) throw ParseError(line_no, "malformed problem line");
      std::istringstream probe(maybe_kind);
      if (!(probe >> n)) {
        if (!(row >> n)) throw ParseError(line_no, "malformed problem line");
      }
      if (!(row >> m) || n < 0 || m < 0 || (row >> extra)) {
        throw ParseError(line_no, "malformed problem line");
      }
    } else if (tag == "a" || tag == "e") {
      if (n < 0) throw ParseError(line_no, "arc before problem line");
      long long u = 0, v = 0;
      if (!(row >> u >> v) || (row >> extra)) throw ParseError(line_no, "expected \"a u v\"");
      edges.emplace_back(checked_id(u - 1, n, line_no), checked_id(v - 1, n, line_no));
    } else {
      throw ParseError(line_no, "unknown line tag '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(line_no, "missing problem line");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " arcs, got " +
                                  std::to_string(edges.size()));
  }
  return DiGraph(static_cast<std::size_t>(n), edges, true);
}

}  // namespace

DiGraph::DiGraph(std::size_t n, std::span<const Edge> edges, bool directed)
    : n_(n), directed_(directed) {
  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw UsageError("edge endpoint out of range");
    if (u == v) continue;
    arcs.emplace_back(u, v);
    if (!directed) arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  std::vector<Edge> reversed;
  reversed.reserve(arcs.size());
  for (const auto& [u, v] : arcs) reversed.emplace_back(v, u);
  build_csr(n, arcs, out_offsets_, out_targets_);
  build_csr(n, reversed, in_offsets_, in_sources_);
}

bool DiGraph::has_edge(Vertex u, Vertex v) const noexcept {
  const auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> DiGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : out_neighbors(u)) result.emplace_back(u, v);
  }
  return result;
}

DiGraph parse_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::kEdgeList ? parse_edge_list(in) : parse_dimacs(in);
}

DiGraph parse_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_graph(in, format);
}

void write_edge_list(std::ostream& out, const DiGraph& g) {
  std::vector<Edge> edges = g.edges();
  if (!g.is_directed()) {
    std::erase_if(edges, [](const Edge& e) { return e.first > e.second; });
  }
  out << g.num_vertices() << ' ' << edges.size() << ' ' << (g.is_directed() ? 'd' : 'u') << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

DiGraph reverse(const DiGraph& g) {
  std::vector<Edge> arcs;
  arcs.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) arcs.emplace_back(v, u);
  return DiGraph(g.num_vertices(), arcs, g.is_directed());
}

bool is_strongly_connected(const DiGraph& g) { return !unreachable_pair(g).has_value(); }

std::optional<Edge> unreachable_pair(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n <= 1) return std::nullopt;
  const auto forward = bfs(g, 0, {}, true);
  for (Vertex v = 0; v < n; ++v) {
    if (!forward[v]) return Edge{0, v};
  }
  const auto backward = bfs(g, 0, {}, false);
  for (Vertex v = 0; v < n; ++v) {
    if (!backward[v]) return Edge{v, 0};
  }
  return std::nullopt;
}

DegreeStats degree_stats(const DiGraph& g) {
  if (g.num_vertices() == 0) throw UsageError("degree_stats on empty graph");
  DegreeStats stats{g.out_degree(0), 0, g.in_degree(0), 0};
  for (Vertex v = 1; v < g.num_vertices(); ++v) {
    if (g.out_degree(v) < stats.d_min_out) stats = {g.out_degree(v), v, stats.d_min_in, stats.v_min_in};
    if (g.in_degree(v) < stats.d_min_in) {
      stats.d_min_in = g.in_degree(v);
      stats.v_min_in = v;
    }
  }
  return stats;
}

std::size_t vol_out(const DiGraph& g, std::span<const Vertex> vertices) {
  std::size_t total = 0;
  for (Vertex v : vertices) total += g.out_degree(v);
  return total;
}

std::vector<bool> reachable_from(const DiGraph& g, Vertex source, const std::vector<bool>& removed) {
  return bfs(g, source, removed, true);
}

bool is_vertex_cut(const DiGraph& g, std::span<const Vertex> cut) {
  std::vector<bool> removed(g.num_vertices(), false);
  for (Vertex v : cut) removed[v] = true;
  Vertex root = 0;
  std::size_t remaining = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (removed[v]) continue;
    if (remaining++ == 0) root = v;
  }
  if (remaining < 2) return false;
  const auto fwd = bfs(g, root, removed, true);
  const auto bwd = bfs(g, root, removed, false);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!removed[v] && (!fwd[v] || !bwd[v])) return true;
  }
  return false;
}

bool is_separation_triple(const DiGraph& g, const SeparationTriple& t) {
  if (t.left.empty() || t.right.empty()) return false;
  std::vector<int> part(g.num_vertices(), -1);
  const std::vector<Vertex>* parts[3] = {&t.left, &t.separator, &t.right};
  std::size_t total = 0;
  for (int p = 0; p < 3; ++p) {
    for (Vertex v : *parts[p]) {
      if (v >= g.num_vertices() || part[v] != -1) return false;
      part[v] = p;
      ++total;
    }
  }
  if (total != g.num_vertices()) return false;
  for (Vertex u : t.left) {
    for (Vertex w : g.out_neighbors(u)) {
      if (part[w] == 2) return false;
    }
  }
  return true;
}

std::optional<SeparationTriple> triple_from_separator(const DiGraph& g, Vertex x,
                                                      std::span<const Vertex> separator) {
  std::vector<bool> removed(g.num_vertices(), false);
  for (Vertex v : separator) removed[v] = true;
  if (removed[x]) return std::nullopt;
  const auto reach = reachable_from(g, x, removed);
  SeparationTriple t;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (removed[v]) {
      t.separator.push_back(v);
    } else if (reach[v]) {
      t.left.push_back(v);
    } else {
      t.right.push_back(v);
    }
  }
  if (t.right.empty()) return std::nullopt;
  return t;
}

SeparationTriple mirror(SeparationTriple t) {
  std::swap(t.left, t.right);
  return t;
}

}  // namespace vcut
