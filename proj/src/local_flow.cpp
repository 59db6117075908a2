#include "vcut/local_flow.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "vcut/error.hpp"

namespace vcut {

namespace {

constexpr __int128 kArithmeticLimit = static_cast<__int128>(1) << 59;

std::int64_t checked(__int128 value) {
  if (value < 0 || value > kArithmeticLimit) {
    throw UsageError("local flow parameters exceed exact arithmetic range");
  }
  return static_cast<std::int64_t>(value);
}

bool edge_less(const AugEdge& a, const AugEdge& b) {
  return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
}

}  // namespace

LocalVcParams exact_local_params(Vertex x, std::uint64_t nu, std::uint64_t k) {
  if (k == 0) throw UsageError("k must be positive");
  return {x, nu, k, Rational(1, static_cast<std::int64_t>(2 * k))};
}

const char* to_string(ParamRegime regime) {
  switch (regime) {
    case ParamRegime::kSparse: return "sparse";
    case ParamRegime::kDense: return "dense";
    case ParamRegime::kInvalid: return "invalid";
  }
  return "invalid";
}

ParamRegime validate_params(const DiGraph& g, const LocalVcParams& p) {
  const std::size_t n = g.num_vertices();
  if (n == 0 || p.nu == 0 || p.k == 0 || p.eps <= Rational(0)) return ParamRegime::kInvalid;
  if (degree_stats(g).d_min_out < p.k) return ParamRegime::kInvalid;
  const Rational nu(static_cast<std::int64_t>(p.nu));
  const Rational k(static_cast<std::int64_t>(p.k));
  const Rational m(static_cast<std::int64_t>(g.num_edges()));
  const Rational nn(static_cast<std::int64_t>(n));
  const Rational one_plus = Rational(1) + p.eps;
  if (nu / p.eps + nu < m && one_plus * (Rational(2) * nu / (p.eps * k) + k) < nn) return ParamRegime::kSparse;
  // The dense condition carries an extra +nu: without it the sink edges
  // alone can form a cut of capacity <= nu/eps + nu that yields no triple.
  if (nu / p.eps + nu + one_plus * nn * k < m) return ParamRegime::kDense;
  return ParamRegime::kInvalid;
}

std::int64_t AugmentedCapacities::delta(int i) const {
  // F_i/(2 Lambda) = initial_gap / (2 Lambda 2^i); unit carries 8 Lambda 2^I.
  const std::int64_t base = initial_gap / static_cast<std::int64_t>(8 * lambda) >> scaling_rounds;
  return 4 * base * (std::int64_t{1} << (scaling_rounds - i));
}

AugmentedCapacities make_capacities(const DiGraph& g, const LocalVcParams& p) {
  if (p.x >= g.num_vertices()) throw UsageError("seed vertex out of range");
  if (p.k == 0 || p.nu == 0 || p.eps <= Rational(0)) throw UsageError("nu, k and eps must be positive");
  // eps = a/b. Base unit a*k makes nu/(eps k) = nu b and nu/eps = nu b k.
  const __int128 a = p.eps.num();
  const __int128 b = p.eps.den();
  const __int128 nu = p.nu;
  const __int128 k = p.k;
  const __int128 base = a * k;
  const __int128 split = nu * b;
  const __int128 source = nu * b * k + (nu + 1) * base;
  const __int128 threshold = nu * b * k + nu * base;
  const __int128 gap = source - static_cast<__int128>(g.out_degree(p.x)) * base;
  checked(source);

  AugmentedCapacities caps;
  // Lambda = ceil(sqrt(8 nu b / (a k))): smallest L with L^2 a k >= 8 nu b.
  __int128 lambda = 1;
  while (lambda * lambda * base < 8 * split) ++lambda;
  caps.lambda = static_cast<std::uint64_t>(lambda);
  int rounds = 0;
  while (gap >= (base << rounds)) {
    ++rounds;
    if (rounds > 40) throw UsageError("local flow parameters exceed exact arithmetic range");
  }
  caps.scaling_rounds = rounds;

  const __int128 mult = 8 * lambda * (static_cast<__int128>(1) << rounds);
  caps.unit = checked(base * mult);
  caps.split = checked(split * mult);
  caps.source = checked(source * mult);
  caps.inf = caps.source + 1;
  caps.threshold = checked(threshold * mult);
  caps.per_degree = caps.unit;
  caps.initial_gap = gap > 0 ? checked(gap * mult) : 0;
  return caps;
}

// ---------------------------------------------------------------- state

ResidualState::ResidualState(const DiGraph& g, AugmentedCapacities caps, Vertex x)
    : graph_(&g), caps_(caps), x_(x) {}

std::int64_t ResidualState::flow(std::uint32_t tail, std::uint32_t head) const {
  const auto it = flow_.find(key(tail, head));
  return it == flow_.end() ? 0 : it->second;
}

std::vector<Vertex> ResidualState::b_out() const {
  std::vector<Vertex> result(b_out_.begin(), b_out_.end());
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::uint32_t> ResidualState::b_nodes() const {
  std::vector<std::uint32_t> nodes;
  for (Vertex v : b_out_) {
    nodes.push_back(aug::out(v));
    for (Vertex w : graph_->out_neighbors(v)) {
      if (w != x_) nodes.push_back(aug::in(w));
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

void ResidualState::add_flow(const AugEdge& edge, std::int64_t delta) {
  if (delta == 0) return;
  std::int64_t& f = flow_[key(edge.tail, edge.head)];
  f += delta;
  if (f < 0 || f > edge.cap) throw InternalError("flow outside [0, capacity] on an augmented edge");
  if (edge.kind == EdgeKind::kSource) total_ += delta;
  if (edge.kind == EdgeKind::kSink) {
    const Vertex v = aug::original(edge.tail);
    if (f == edge.cap) {
      b_out_.insert(v);
    } else if (b_out_.contains(v)) {
      throw InternalError("saturated sink edge lost flow");
    }
  }
}

bool ResidualState::is_feasible() const {
  const std::size_t n = graph_->num_vertices();
  std::unordered_map<std::uint32_t, std::int64_t> excess;
  for (const auto& [k, f] : flow_) {
    const auto tail = static_cast<std::uint32_t>(k >> 32);
    const auto head = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (f < 0) return false;
    std::int64_t cap = caps_.inf;
    if (tail == aug::source(n)) {
      cap = caps_.source;
    } else if (head == aug::sink(n)) {
      cap = caps_.sink(graph_->out_degree(aug::original(tail)));
    } else if (!aug::is_out(tail)) {
      cap = caps_.split;
    }
    if (f > cap) return false;
    excess[tail] -= f;
    excess[head] += f;
  }
  for (const auto& [node, e] : excess) {
    if (node == aug::source(n) || node == aug::sink(n)) continue;
    if (e != 0) return false;
  }
  return excess[aug::sink(n)] == total_;
}

ResidualState residual_init(const DiGraph& g, const LocalVcParams& p) {
  if (validate_params(g, p) == ParamRegime::kInvalid) throw UsageError("invalid local flow parameters");
  const AugmentedCapacities caps = make_capacities(g, p);
  ResidualState state(g, caps, p.x);
  const std::size_t n = g.num_vertices();
  const std::int64_t sink_cap = caps.sink(g.out_degree(p.x));
  const std::int64_t amount = std::min(sink_cap, caps.source);
  state.add_flow({aug::source(n), aug::out(p.x), EdgeKind::kSource, caps.source, 0}, amount);
  state.add_flow({aug::out(p.x), aug::sink(n), EdgeKind::kSink, sink_cap, 0}, amount);
  return state;
}

// ---------------------------------------------------------------- networks

std::size_t FlowNetwork::local(std::uint32_t node) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node) throw InternalError("node not in flow network");
  return static_cast<std::size_t>(it - nodes.begin());
}

bool FlowNetwork::contains(std::uint32_t node) const {
  return std::binary_search(nodes.begin(), nodes.end(), node);
}

namespace {

void finish_network(FlowNetwork& net, const ResidualState& state, const std::vector<std::uint32_t>& b) {
  std::sort(net.nodes.begin(), net.nodes.end());
  net.nodes.erase(std::unique(net.nodes.begin(), net.nodes.end()), net.nodes.end());
  net.in_b.assign(net.nodes.size(), false);
  for (std::uint32_t node : b) net.in_b[net.local(node)] = true;
  std::sort(net.edges.begin(), net.edges.end(), edge_less);
  net.tail_at.resize(net.edges.size());
  net.head_at.resize(net.edges.size());
  std::size_t at = 0;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    AugEdge& e = net.edges[i];
    e.flow = state.flow(e.tail, e.head);
    while (at < net.nodes.size() && net.nodes[at] < e.tail) ++at;  // tails ascend
    if (at == net.nodes.size() || net.nodes[at] != e.tail) throw InternalError("edge endpoint outside network");
    net.tail_at[i] = static_cast<std::uint32_t>(at);
    net.head_at[i] = static_cast<std::uint32_t>(net.local(e.head));
  }
}

}  // namespace

LocalGraph build_local_graph(const ResidualState& state) {
  const DiGraph& g = state.graph();
  const AugmentedCapacities& caps = state.caps();
  const std::size_t n = g.num_vertices();
  const Vertex x = state.x();
  const std::vector<Vertex> b_out = state.b_out();
  const std::vector<std::uint32_t> b = state.b_nodes();

  LocalGraph net;
  net.source = aug::source(n);
  net.sink = aug::sink(n);
  net.nodes = {net.source, net.sink};
  net.nodes.insert(net.nodes.end(), b.begin(), b.end());
  net.edges.push_back({net.source, aug::out(x), EdgeKind::kSource, caps.source, 0});

  // Out-copies carrying a sink edge: B_out plus N(B) = out-copies of B's
  // in-copies that are not saturated yet.
  // x_out always hangs off s, even in the degenerate case where its sink
  // edge could not be saturated.
  std::vector<Vertex> frontier = b_out;
  frontier.push_back(x);
  for (std::uint32_t node : b) {
    if (!aug::is_out(node) && !state.in_b_out(aug::original(node))) frontier.push_back(aug::original(node));
  }
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

  for (Vertex v : frontier) {
    net.nodes.push_back(aug::out(v));
    net.edges.push_back({aug::out(v), net.sink, EdgeKind::kSink, caps.sink(g.out_degree(v)), 0});
    if (v != x) {
      if (!std::binary_search(b.begin(), b.end(), aug::in(v))) {
        throw InternalError("saturated vertex whose in-copy left B");
      }
      net.edges.push_back({aug::in(v), aug::out(v), EdgeKind::kSplit, caps.split, 0});
    }
  }
  for (Vertex v : b_out) {
    for (Vertex w : g.out_neighbors(v)) {
      if (w != x) net.edges.push_back({aug::out(v), aug::in(w), EdgeKind::kInf, caps.inf, 0});
    }
  }
  finish_network(net, state, b);
  return net;
}

FlowNetwork build_explicit_network(const ResidualState& state) {
  const DiGraph& g = state.graph();
  const AugmentedCapacities& caps = state.caps();
  const std::size_t n = g.num_vertices();
  const Vertex x = state.x();

  FlowNetwork net;
  net.source = aug::source(n);
  net.sink = aug::sink(n);
  net.nodes = {net.source, net.sink};
  net.edges.push_back({net.source, aug::out(x), EdgeKind::kSource, caps.source, 0});
  for (Vertex v = 0; v < n; ++v) {
    net.nodes.push_back(aug::out(v));
    net.edges.push_back({aug::out(v), net.sink, EdgeKind::kSink, caps.sink(g.out_degree(v)), 0});
    if (v != x) {
      net.nodes.push_back(aug::in(v));
      net.edges.push_back({aug::in(v), aug::out(v), EdgeKind::kSplit, caps.split, 0});
    }
    for (Vertex w : g.out_neighbors(v)) {
      if (w != x) net.edges.push_back({aug::out(v), aug::in(w), EdgeKind::kInf, caps.inf, 0});
    }
  }
  finish_network(net, state, state.b_nodes());
  return net;
}

void dump_augmented(std::ostream& out, const DiGraph& g, const LocalVcParams& p) {
  const AugmentedCapacities caps = make_capacities(g, p);
  const ResidualState empty(g, caps, p.x);
  const FlowNetwork net = build_explicit_network(empty);
  out << "# augmented graph: v_in=2v v_out=2v+1 s=" << net.source << " t=" << net.sink
      << "; capacities scaled by " << caps.unit << "\n";
  out << 2 * g.num_vertices() + 2 << " " << net.edges.size() << " d\n";
  for (const AugEdge& e : net.edges) out << e.tail << " " << e.head << " " << e.cap << "\n";
}

// ---------------------------------------------------------------- lengths

namespace {

// 0-1 BFS from the source over arcs with positive residual.
std::vector<std::int64_t> distances(const FlowNetwork& net, const std::vector<ResidualArc>& arcs,
                                    const std::vector<std::size_t>& first) {
  // 0-1 BFS by layers: zero arcs extend the current layer.
  std::vector<std::int64_t> dist(net.nodes.size(), kUnreachable);
  std::vector<char> done(net.nodes.size(), 0);
  const auto s = static_cast<std::uint32_t>(net.local(net.source));
  std::vector<std::uint32_t> layer{s};
  std::vector<std::uint32_t> next;
  dist[s] = 0;
  for (std::int64_t d = 0; !layer.empty(); ++d) {
    next.clear();
    for (std::size_t h = 0; h < layer.size(); ++h) {
      const std::uint32_t u = layer[h];
      if (done[u] || dist[u] != d) continue;
      done[u] = 1;
      for (std::size_t i = first[u]; i < first[u + 1]; ++i) {
        const ResidualArc& a = arcs[i];
        if (done[a.to]) continue;
        if (a.length == 0) {
          if (dist[a.to] == kUnreachable || dist[a.to] > d) {
            dist[a.to] = d;
            layer.push_back(a.to);
          }
        } else if (dist[a.to] == kUnreachable) {
          dist[a.to] = d + 1;
          next.push_back(a.to);
        }
      }
    }
    layer.swap(next);
  }
  return dist;
}

}  // namespace

LengthAssignment assign_lengths(const FlowNetwork& net, std::int64_t delta) {
  if (delta <= 0) throw UsageError("delta must be positive");
  LengthAssignment result;
  result.delta = delta;
  const auto t = static_cast<std::uint32_t>(net.local(net.sink));

  auto& arcs = result.arcs;
  std::vector<ResidualArc> unsorted;
  unsorted.reserve(2 * net.edges.size());
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const AugEdge& e = net.edges[i];
    const std::uint32_t u = net.tail_at[i];
    const std::uint32_t v = net.head_at[i];
    const bool modern = net.in_b[u] && net.in_b[v];
    if (e.cap - e.flow > 0 && u != t) {
      unsorted.push_back({u, v, static_cast<std::uint32_t>(i), true, e.cap - e.flow, 1, modern, false});
    }
    if (e.flow > 0 && v != t) {
      unsorted.push_back({v, u, static_cast<std::uint32_t>(i), false, e.flow, 1, modern, false});
    }
  }
  // Order by (from, to) with two stable counting passes; G' has no
  // antiparallel edges, so the keys are distinct.
  const std::size_t count = net.nodes.size();
  std::vector<std::size_t> slot(count + 1, 0);
  for (const ResidualArc& a : unsorted) ++slot[a.to + 1];
  for (std::size_t i = 0; i < count; ++i) slot[i + 1] += slot[i];
  std::vector<ResidualArc> by_to(unsorted.size());
  for (const ResidualArc& a : unsorted) by_to[slot[a.to]++] = a;
  result.first.assign(count + 1, 0);
  for (const ResidualArc& a : by_to) ++result.first[a.from + 1];
  for (std::size_t i = 0; i < count; ++i) result.first[i + 1] += result.first[i];
  slot.assign(result.first.begin(), result.first.end());
  arcs.resize(by_to.size());
  for (const ResidualArc& a : by_to) arcs[slot[a.from]++] = a;

  // Lengths before special edges: classical arcs are 1, modern arcs 0 iff
  // their residual reaches delta.
  for (ResidualArc& a : arcs) a.length = (a.modern && a.residual >= delta) ? 0 : 1;
  const std::vector<std::int64_t> pre = distances(net, arcs, result.first);

  for (ResidualArc& a : arcs) {
    if (!a.modern || a.length == 0) continue;
    if (pre[a.from] == kUnreachable || pre[a.from] != pre[a.to]) continue;
    const AugEdge& e = net.edges[a.edge];
    const std::int64_t back = a.forward ? e.flow : e.cap - e.flow;
    if (2 * a.residual >= delta && back >= delta) {
      a.special = true;
      a.length = 0;
    }
  }
  result.dist = distances(net, arcs, result.first);
  result.d_max = result.dist[t];
  return result;
}

// ---------------------------------------------------------------- blocking flow

namespace {

// Buckets items 0..count-1 (taken in increasing order) by key, keeping
// that order inside each bucket.
struct Buckets {
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> items;

  std::span<const std::uint32_t> operator[](std::size_t b) const {
    return {items.data() + first[b], items.data() + first[b + 1]};
  }
};

template <class Key, class Keep>
Buckets bucket(std::size_t buckets, std::size_t count, Key key, Keep keep) {
  Buckets out;
  out.first.assign(buckets + 1, 0);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (keep(i)) ++out.first[key(i) + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) out.first[b + 1] += out.first[b];
  out.items.resize(out.first[buckets]);
  std::vector<std::uint32_t> fill(out.first.begin(), out.first.end() - 1);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (keep(i)) out.items[fill[key(i)]++] = i;
  }
  return out;
}

// Strongly connected components of the zero-length kept arcs, Tarjan style
// without recursion. Components are numbered by their smallest node.
std::vector<std::uint32_t> zero_components(std::size_t count, const std::vector<ResidualArc>& arcs,
                                           const std::vector<std::size_t>& first, const std::vector<char>& zero) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(count, kNone);
  std::vector<std::uint32_t> low(count, 0);
  std::vector<char> on_stack(count, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> comp(count, kNone);
  std::uint32_t counter = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  std::vector<Frame> frames;
  for (std::uint32_t root = 0; root < count; ++root) {
    if (index[root] != kNone) continue;
    frames.push_back({root, first[root]});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      while (f.next < first[f.node + 1] && !zero[f.next]) ++f.next;
      if (f.next < first[f.node + 1]) {
        const std::uint32_t w = arcs[f.next++].to;
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, first[w]});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        auto it = stack.end();
        std::uint32_t id = v;
        do {
          --it;
          id = std::min(id, *it);
        } while (*it != v);
        for (auto m = it; m != stack.end(); ++m) {
          comp[*m] = id;
          on_stack[*m] = 0;
        }
        stack.erase(it, stack.end());
      }
    }
  }
  return comp;
}

}  // namespace

BlockingResult blocking_flow(const FlowNetwork& net, const LengthAssignment& lengths, std::int64_t delta) {
  BlockingResult result;
  result.change.assign(net.edges.size(), 0);
  if (lengths.d_max == kUnreachable) {
    result.blocking = true;
    return result;
  }
  const std::int64_t cap = delta / 4;
  const std::size_t count = net.nodes.size();
  const auto s = static_cast<std::uint32_t>(net.local(net.source));
  const auto t = static_cast<std::uint32_t>(net.local(net.sink));
  const auto& arcs = lengths.arcs;
  const auto& dist = lengths.dist;
  const std::size_t arc_count = arcs.size();

  std::vector<char> admissible(arc_count, 0);
  for (std::size_t i = 0; i < arc_count; ++i) {
    admissible[i] = dist[arcs[i].from] != kUnreachable && dist[arcs[i].from] + arcs[i].length == dist[arcs[i].to];
  }

  // Keep only nodes on some admissible s-t path.
  const Buckets reverse_adm =
      bucket(count, arc_count, [&](std::uint32_t i) { return arcs[i].to; }, [&](std::uint32_t i) { return admissible[i] != 0; });
  std::vector<char> reaches_t(count, 0);
  std::vector<std::uint32_t> queue{t};
  reaches_t[t] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (std::uint32_t i : reverse_adm[queue[h]]) {
      if (!reaches_t[arcs[i].from]) {
        reaches_t[arcs[i].from] = 1;
        queue.push_back(arcs[i].from);
      }
    }
  }
  std::vector<char> kept(arc_count, 0);
  std::vector<char> zero(arc_count, 0);
  for (std::size_t i = 0; i < arc_count; ++i) {
    kept[i] = admissible[i] && reaches_t[arcs[i].from] && reaches_t[arcs[i].to];
    zero[i] = kept[i] && arcs[i].length == 0;
  }
  const std::vector<std::uint32_t> comp = zero_components(count, arcs, lengths.first, zero);

  // Contracted DAG, arcs grouped by tail component in (from, to) order.
  const Buckets dag_out = bucket(
      count, arc_count, [&](std::uint32_t i) { return comp[arcs[i].from]; },
      [&](std::uint32_t i) { return kept[i] && comp[arcs[i].from] != comp[arcs[i].to]; });
  std::vector<std::int64_t> usage(arc_count, 0);
  std::vector<std::size_t> current(count, 0);
  std::vector<char> dead(count, 0);
  const std::uint32_t cs = comp[s];
  const std::uint32_t ct = comp[t];

  std::int64_t pushed = 0;
  std::vector<std::uint32_t> path;
  std::uint32_t at = cs;
  while (pushed < cap && !dead[cs]) {
    if (at == ct) {
      std::int64_t amount = cap - pushed;
      for (std::uint32_t i : path) amount = std::min(amount, arcs[i].residual - usage[i]);
      for (std::uint32_t i : path) usage[i] += amount;
      pushed += amount;
      path.clear();
      at = cs;
      continue;
    }
    const auto list = dag_out[at];
    std::size_t& cur = current[at];
    while (cur < list.size() && (usage[list[cur]] == arcs[list[cur]].residual || dead[comp[arcs[list[cur]].to]])) {
      ++cur;
    }
    if (cur == list.size()) {
      dead[at] = 1;
      if (path.empty()) break;
      path.pop_back();
      at = path.empty() ? cs : comp[arcs[path.back()].to];
      continue;
    }
    path.push_back(list[cur]);
    at = comp[arcs[list[cur]].to];
  }
  result.value = pushed;
  result.blocking = pushed < cap;

  // Route through each contracted component via an in-tree into its root
  // and an out-tree from it.
  std::vector<std::int64_t> inflow(count, 0);
  std::vector<std::int64_t> outflow(count, 0);
  for (std::size_t i = 0; i < arc_count; ++i) {
    if (usage[i] == 0) continue;
    outflow[arcs[i].from] += usage[i];
    inflow[arcs[i].to] += usage[i];
  }
  const Buckets members =
      bucket(count, count, [&](std::uint32_t v) { return comp[v]; }, [&](std::uint32_t v) { return reaches_t[v] != 0; });
  auto inner = [&](std::uint32_t i) { return zero[i] && comp[arcs[i].from] == comp[arcs[i].to]; };
  // Arcs are sorted by (from, to), so both lists come out ordered by the
  // other endpoint's tail.
  const Buckets zero_in_arcs = bucket(count, arc_count, [&](std::uint32_t i) { return arcs[i].to; }, inner);
  const Buckets zero_out_arcs = bucket(count, arc_count, [&](std::uint32_t i) { return arcs[i].from; }, inner);

  constexpr auto kNoArc = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(count, kNoArc);
  std::vector<std::int64_t> amount(count, 0);
  std::vector<std::uint32_t> seen(count, 0);
  std::uint32_t stamp = 0;
  std::vector<std::uint32_t> order;
  for (std::uint32_t c = 0; c < count; ++c) {
    const auto group = members[c];
    if (group.size() < 2) continue;
    bool busy = false;
    for (std::uint32_t v : group) busy = busy || inflow[v] != 0 || outflow[v] != 0;
    if (!busy) continue;
    const std::uint32_t root = c;  // component id is its smallest node
    for (bool into_root : {true, false}) {
      order.assign(1, root);
      ++stamp;
      for (std::uint32_t v : group) parent[v] = kNoArc;
      seen[root] = stamp;
      for (std::size_t h = 0; h < order.size(); ++h) {
        const std::uint32_t u = order[h];
        for (std::uint32_t i : into_root ? zero_in_arcs[u] : zero_out_arcs[u]) {
          const std::uint32_t w = into_root ? arcs[i].from : arcs[i].to;
          if (seen[w] == stamp) continue;
          seen[w] = stamp;
          parent[w] = i;
          order.push_back(w);
        }
      }
      if (order.size() != group.size()) throw InternalError("zero-length component is not strongly connected");
      for (std::uint32_t v : group) amount[v] = into_root ? inflow[v] : outflow[v];
      for (std::size_t h = order.size(); h-- > 1;) {
        const std::uint32_t w = order[h];
        const std::uint32_t i = parent[w];
        usage[i] += amount[w];
        amount[into_root ? arcs[i].to : arcs[i].from] += amount[w];
      }
    }
  }

  for (std::size_t i = 0; i < arc_count; ++i) {
    if (usage[i] == 0) continue;
    if (usage[i] > arcs[i].residual) throw InternalError("blocking flow exceeded a residual capacity");
    result.change[arcs[i].edge] += arcs[i].forward ? usage[i] : -usage[i];
  }
  return result;
}

void apply_flow(ResidualState& state, const FlowNetwork& net, const BlockingResult& result) {
  // Lower flows first so a saturated sink edge never looks as if it lost flow.
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (result.change[i] < 0) state.add_flow(net.edges[i], result.change[i]);
  }
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (result.change[i] > 0) state.add_flow(net.edges[i], result.change[i]);
  }
}

// ---------------------------------------------------------------- driver

LocalFlowResult local_flow(const DiGraph& g, const LocalVcParams& p, const RoundObserver& observer) {
  ResidualState state = residual_init(g, p);
  const AugmentedCapacities& caps = state.caps();
  LocalFlowResult result;
  result.caps = caps;

  // LG depends on B and the flow only. B_out never shrinks, so the graph is
  // rebuilt when it grows and otherwise just takes the round's increment.
  LocalGraph local;
  std::size_t built_for = static_cast<std::size_t>(-1);
  auto round = [&](int outer, std::int64_t delta) {
    if (state.b_out_size() != built_for) {
      local = build_local_graph(state);
      built_for = state.b_out_size();
    }
    result.largest_local_edges = std::max(result.largest_local_edges, local.edges.size());
    const LengthAssignment lengths = assign_lengths(local, delta);
    if (lengths.d_max == kUnreachable) return false;
    const BlockingResult flow = blocking_flow(local, lengths, delta);
    if (observer) observer(RoundTrace{state, local, lengths, flow, outer, delta});
    apply_flow(state, local, flow);
    for (std::size_t i = 0; i < local.edges.size(); ++i) local.edges[i].flow += flow.change[i];
    ++result.rounds;
    if (flow.blocking) ++result.blocking_rounds;
    return true;
  };

  bool saturated = state.total_flow() == caps.source;
  for (int i = 0; i < caps.scaling_rounds && !saturated; ++i) {
    const std::int64_t delta = caps.delta(i);
    for (std::uint64_t r = 0; r < 5 * caps.lambda; ++r) {
      if (state.total_flow() == caps.source || !round(i, delta)) {
        saturated = true;
        break;
      }
    }
  }
  // Whatever is left is below one unit: finish with unit-length phases,
  // which are plain Dinic phases on the same local graphs.
  const std::int64_t huge = 4 * (caps.inf + 1);
  while (state.total_flow() < caps.source && round(-1, huge)) {
  }

  // Residual reachability from s; the source side lies inside B, so its
  // boundary in the local graph is its boundary in G'.
  local = build_local_graph(state);
  const LengthAssignment lengths = assign_lengths(local, huge);
  std::int64_t capacity = 0;
  for (const AugEdge& e : local.edges) {
    const bool tail_in = lengths.dist[local.tail_at[&e - local.edges.data()]] != kUnreachable;
    const bool head_in = lengths.dist[local.head_at[&e - local.edges.data()]] != kUnreachable;
    if (tail_in && !head_in) {
      result.min_cut.push_back(e);
      capacity += e.cap;
    }
  }
  result.max_flow = state.total_flow();
  if (capacity != result.max_flow) throw InternalError("cut capacity differs from flow value");
  return result;
}

SeparationTriple cut_to_triple(const DiGraph& g, std::span<const AugEdge> cut, const LocalVcParams& p) {
  const AugmentedCapacities caps = make_capacities(g, p);
  std::int64_t capacity = 0;
  std::vector<Vertex> separator;
  for (const AugEdge& e : cut) {
    capacity += e.cap;
    if (e.kind == EdgeKind::kSplit) separator.push_back(aug::original(e.tail));
  }
  if (capacity > caps.threshold) throw UsageError("cut capacity above nu/eps + nu");
  std::sort(separator.begin(), separator.end());
  auto triple = triple_from_separator(g, p.x, separator);
  if (!triple) throw InternalError("small cut did not separate the seed vertex");
  return *triple;
}

TripleAnswer local_vc(const DiGraph& g, const LocalVcParams& p) {
  const LocalFlowResult flow = local_flow(g, p);
  TripleAnswer answer;
  answer.max_flow = flow.max_flow_value();
  if (flow.max_flow > flow.caps.threshold) return answer;
  answer.triple = cut_to_triple(g, flow.min_cut, p);
  return answer;
}

TripleAnswer local_vc_exact(const DiGraph& g, Vertex x, std::uint64_t nu, std::uint64_t k) {
  return local_vc(g, exact_local_params(x, nu, k));
}

}  // namespace vcut
