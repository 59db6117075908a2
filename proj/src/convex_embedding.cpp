#include "vcut/convex_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include "framework_detail.hpp"
#include "vcut/error.hpp"
#include "vcut/pair_vc.hpp"

namespace vcut {

using namespace detail;

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) + b) % p); }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : p - (b - a); }

u64 powmod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 inverse(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 saturating_pow(u64 base, int exp) {
  u64 result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<u64>::max() / base) return std::numeric_limits<u64>::max();
    result *= base;
  }
  return result;
}

// Gaussian elimination in place, pivoting only in the first `cols` columns
// but applying row operations to whole rows; returns the rank.
std::size_t eliminate(std::vector<std::vector<u64>>& rows, std::size_t cols, u64 p) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const u64 inv = inverse(rows[rank][c], p);
    const std::size_t len = rows[rank].size();
    for (std::size_t j = c; j < len; ++j) rows[rank][j] = mulmod(rows[rank][j], inv, p);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      const u64 factor = rows[i][c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < len; ++j) rows[i][j] = submod(rows[i][j], mulmod(factor, rows[rank][j], p), p);
    }
    ++rank;
  }
  return rank;
}

constexpr int kSolveAttempts = 8;
// Pairs verified with an exact pair cut after ranking.
constexpr std::size_t kVerifyLimit = 32;

}  // namespace

bool is_prime(u64 value) {
  if (value < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (value % q == 0) return value == q;
  }
  u64 d = value - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are exact for every 64-bit value.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, value);
    if (x == 1 || x == value - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, value);
      if (x == value - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 embedding_prime(std::size_t n, u64 seed) {
  constexpr u64 kCap = u64{1} << 62;
  const u64 base = std::max<u64>(n, 2);
  const u64 hi = std::min(saturating_pow(base, 6), kCap);
  const u64 lo = std::min(saturating_pow(base, 5), hi / 2);
  std::mt19937_64 rng(seed);
  u64 candidate = std::uniform_int_distribution<u64>(lo, hi)(rng);
  // Prime gaps below 2^62 are far smaller than the window, so one wrap suffices.
  for (u64 steps = 0; steps <= hi - lo + 1; ++steps) {
    if (is_prime(candidate)) return candidate;
    candidate = candidate >= hi ? lo : candidate + 1;
  }
  throw InternalError("no prime in embedding window");
}

std::vector<u64> Embedding::point(Vertex v) const {
  const auto& row = lifted.at(v);
  return {row.begin(), row.end() - 1};
}

std::vector<Vertex> first_out_neighbors(const DiGraph& g, Vertex v, std::size_t k) {
  const auto nb = g.out_neighbors(v);
  return {nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(std::min(k, nb.size()))};
}

std::vector<Vertex> first_in_neighbors(const DiGraph& g, Vertex v, std::size_t k) {
  const auto nb = g.in_neighbors(v);
  return {nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(std::min(k, nb.size()))};
}

Embedding build_embedding(const DiGraph& g, Vertex anchor, std::size_t k, u64 seed) {
  const std::size_t n = g.num_vertices();
  if (anchor >= n) throw UsageError("embedding anchor out of range");
  if (k == 0) throw UsageError("embedding needs k >= 1");
  if (g.in_degree(anchor) == 0) throw UsageError("embedding anchor has no in-neighbor");

  std::mt19937_64 rng(seed);
  Embedding emb;
  emb.p = embedding_prime(n, rng());
  emb.anchors = first_in_neighbors(g, anchor, k);
  const u64 p = emb.p;
  const std::size_t width = emb.anchors.size();  // |X| - 1 coordinates plus the lift

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> anchor_index(n, kNone);
  for (std::size_t i = 0; i < width; ++i) anchor_index[emb.anchors[i]] = i;

  // Vertices that reach X; only these get a point.
  std::vector<bool> reaches(n, false);
  std::vector<Vertex> queue(emb.anchors.begin(), emb.anchors.end());
  for (Vertex x : queue) reaches[x] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex u : g.in_neighbors(queue[head])) {
      if (!reaches[u]) {
        reaches[u] = true;
        queue.push_back(u);
      }
    }
  }

  std::vector<std::size_t> unknown_index(n, kNone);
  std::vector<Vertex> unknowns;
  for (Vertex v = 0; v < n; ++v) {
    if (reaches[v] && anchor_index[v] == kNone) {
      unknown_index[v] = unknowns.size();
      unknowns.push_back(v);
    }
  }

  auto anchor_point = [&](std::size_t i) {
    std::vector<u64> row(width, 0);
    if (i > 0) row[i - 1] = 1;
    row[width - 1] = 1;
    return row;
  };

  emb.lifted.assign(n, std::vector<u64>(width, 0));
  for (std::size_t i = 0; i < width; ++i) emb.lifted[emb.anchors[i]] = anchor_point(i);

  std::uniform_int_distribution<u64> coin(1, p - 1);
  const std::size_t u = unknowns.size();
  for (int attempt = 0; attempt < kSolveAttempts; ++attempt) {
    emb.coeff.assign(n, {});
    // Row i: f(v) - sum c^(v,w) f(w) over unknown w = sum c^(v,x) f(x) over x in X.
    std::vector<std::vector<u64>> system(u, std::vector<u64>(u + width, 0));
    for (std::size_t i = 0; i < u; ++i) {
      const Vertex v = unknowns[i];
      const auto nb = g.out_neighbors(v);
      auto& c = emb.coeff[v];
      c.assign(nb.size(), 0);
      u64 sum = 0;
      while (sum == 0) {
        sum = 0;
        for (std::size_t j = 0; j < nb.size(); ++j) {
          if (!reaches[nb[j]]) continue;
          c[j] = coin(rng);
          sum = addmod(sum, c[j], p);
        }
      }
      const u64 inv = inverse(sum, p);
      auto& row = system[i];
      row[i] = 1;
      for (std::size_t j = 0; j < nb.size(); ++j) {
        if (c[j] == 0) continue;
        c[j] = mulmod(c[j], inv, p);
        const Vertex w = nb[j];
        if (anchor_index[w] != kNone) {
          const auto& xw = emb.lifted[w];
          for (std::size_t t = 0; t < width; ++t) row[u + t] = addmod(row[u + t], mulmod(c[j], xw[t], p), p);
        } else {
          row[unknown_index[w]] = submod(row[unknown_index[w]], c[j], p);
        }
      }
    }
    if (eliminate(system, u, p) < u) continue;
    // Back substitution on the unit upper-triangular system.
    for (std::size_t i = u; i-- > 0;) {
      for (std::size_t r = 0; r < i; ++r) {
        const u64 factor = system[r][i];
        if (factor == 0) continue;
        for (std::size_t t = 0; t < width; ++t) {
          system[r][u + t] = submod(system[r][u + t], mulmod(factor, system[i][u + t], p), p);
        }
        system[r][i] = 0;
      }
    }
    for (std::size_t i = 0; i < u; ++i) {
      emb.lifted[unknowns[i]].assign(system[i].begin() + static_cast<std::ptrdiff_t>(u), system[i].end());
    }
    return emb;
  }
  throw InternalError("embedding system stayed singular after resampling");
}

std::size_t rank_mod_p(const std::vector<std::vector<u64>>& vectors, u64 p) {
  if (!is_prime(p)) throw UsageError("rank modulus is not prime");
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().size();
  std::vector<std::vector<u64>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != cols) throw UsageError("rank rows differ in length");
    rows.emplace_back(v.size());
    for (std::size_t j = 0; j < cols; ++j) rows.back()[j] = v[j] % p;
  }
  return eliminate(rows, cols, p);
}

std::size_t embedding_rank(const Embedding& emb, const std::vector<Vertex>& u) {
  std::vector<std::vector<u64>> rows;
  rows.reserve(u.size());
  for (Vertex v : u) rows.push_back(emb.lifted.at(v));
  return rank_mod_p(rows, emb.p);
}

VcAnswer approx_vc_embedding(const DiGraph& g, const Rational& eps, u64 seed, double boost, FrameworkLog* log) {
  if (!(eps > Rational(0)) || eps > Rational(1)) throw UsageError("eps must lie in (0, 1]");
  if (boost <= 0) throw UsageError("boost must be positive");
  const std::size_t n = g.num_vertices();
  if (n <= 1) return at_least(0, "trivial");
  if (!is_strongly_connected(g)) return disconnected_answer(g);
  auto best = best_degree_cut(g);
  if (!best) return at_least(n - 1, "complete");

  const DegreeStats d = degree_stats(g);
  const std::size_t k = std::max(d.d_min_out, d.d_min_in);
  const std::size_t k_low = std::min(d.d_min_out, d.d_min_in);
  const double e = eps.to_double();
  const std::size_t outer = sample_count(boost, n, 1.0 / e);
  const std::size_t inner = sample_count(boost, n, static_cast<double>(n) / (e * static_cast<double>(k_low)));
  note(log, "embedding outer=" + std::to_string(outer) + " inner=" + std::to_string(inner));

  const DiGraph gr = reverse(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  // (rank, x, y): rank <= kappa(x, y) for the ordered pair (x, y) of G.
  std::set<std::tuple<std::size_t, Vertex, Vertex>> candidates;
  auto offer = [&](std::size_t rank, Vertex x, Vertex y) {
    if (rank >= best->separator.size()) return;
    candidates.emplace(rank, x, y);
    if (candidates.size() > kVerifyLimit) candidates.erase(std::prev(candidates.end()));
  };
  for (std::size_t i = 0; i < outer; ++i) {
    const Vertex y1 = pick(rng);
    const Vertex x2 = pick(rng);
    const Embedding f = build_embedding(g, y1, k, rng());
    const Embedding fr = build_embedding(gr, x2, k, rng());
    for (std::size_t j = 0; j < inner; ++j) {
      const Vertex x1 = pick(rng);
      const Vertex y2 = pick(rng);
      if (x1 != y1 && !g.has_edge(x1, y1)) offer(embedding_rank(f, first_out_neighbors(g, x1, k)), x1, y1);
      if (x2 != y2 && !g.has_edge(x2, y2)) offer(embedding_rank(fr, first_in_neighbors(g, y2, k)), x2, y2);
    }
  }
  if (!candidates.empty()) note(log, "embedding min rank " + std::to_string(std::get<0>(*candidates.begin())));

  PairVcSolver solver(g);
  auto verify = [&](Vertex x, Vertex y) {
    if (g.has_edge(x, y) || best->separator.size() <= 1) return;
    if (log != nullptr) ++log->pair_queries;
    const PairAnswer ans = solver.query(x, y, best->separator.size() - 1);
    if (ans.has_cut) best = cut_answer(g, ans.separator, {x, y}, "embedding");
  };
  for (const auto& [rank, x, y] : candidates) {
    if (rank >= best->separator.size()) break;
    verify(x, y);
    verify(y, x);  // kappa_{G^R}(x, y)
  }
  return *best;
}

}  // namespace vcut
