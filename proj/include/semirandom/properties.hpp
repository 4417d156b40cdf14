#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "semirandom/engine.hpp"
#include "semirandom/multigraph.hpp"
#include "semirandom/small_graph.hpp"

namespace semirandom {

// Loop-free, multiplicity-collapsed view. All non-degree predicates run on
// this projection.
struct SimpleGraph {
  std::uint32_t n = 0;
  std::vector<std::vector<Vertex>> adj;  // sorted, deduped, loop-free

  static SimpleGraph projection(const MultiGraph& g) {
    SimpleGraph s;
    s.n = g.num_vertices();
    s.adj.resize(s.n);
    for (Vertex v = 0; v < s.n; ++v) {
      s.adj[v] = g.distinct_neighbors(v);
      std::sort(s.adj[v].begin(), s.adj[v].end());
    }
    return s;
  }

  static SimpleGraph from(const SmallGraph& h) {
    SimpleGraph s;
    s.n = h.n;
    s.adj.resize(s.n);
    for (auto [u, v] : h.edges) {
      s.adj[u].push_back(v);
      s.adj[v].push_back(u);
    }
    for (auto& a : s.adj) std::sort(a.begin(), a.end());
    return s;
  }

  bool has_edge(Vertex u, Vertex v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(adj[v].size()); }

  std::uint64_t num_edges() const {
    std::uint64_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
  }
};

inline bool has_min_degree(const MultiGraph& g, std::uint32_t k, DegreeMode mode) {
  return g.min_degree(mode) >= k;
}

namespace detail {

// Local vertex connectivity check on a split graph (v_in -> v_out, unit
// capacities) with augmenting-path search, early exit at k paths. Arc state
// is undone after each query so the structure is reused across pairs.
class VertexConnectivityChecker {
 public:
  explicit VertexConnectivityChecker(const SimpleGraph& g) : g_(g), n_(g.n) {
    // node 2v = v_in, 2v+1 = v_out
    head_.assign(2 * n_, -1);
    for (Vertex v = 0; v < n_; ++v) add_arc(2 * v, 2 * v + 1);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : g.adj[u]) add_arc(2 * u + 1, 2 * v);
    seen_.assign(2 * n_, 0);
  }

  // True iff there are >= k internally vertex-disjoint u-v paths.
  // u and v must be non-adjacent and distinct.
  bool at_least(Vertex s, Vertex t, std::uint32_t k) {
    touched_.clear();
    std::uint32_t found = 0;
    while (found < k && augment(2 * s + 1, 2 * t)) ++found;
    for (int a : touched_) cap_[static_cast<std::size_t>(a)] ^= 1;
    return found >= k;
  }

 private:
  void add_arc(int from, int to) {
    to_.push_back(to);
    next_.push_back(head_[static_cast<std::size_t>(from)]);
    cap_.push_back(1);
    head_[static_cast<std::size_t>(from)] = static_cast<int>(to_.size()) - 1;
    // residual
    to_.push_back(from);
    next_.push_back(head_[static_cast<std::size_t>(to)]);
    cap_.push_back(0);
    head_[static_cast<std::size_t>(to)] = static_cast<int>(to_.size()) - 1;
  }

  bool augment(int s, int t) {
    ++stamp_;
    path_.clear();
    return dfs(s, t);
  }

  bool dfs(int u, int t) {
    if (u == t) {
      for (int a : path_) {
        cap_[static_cast<std::size_t>(a)] ^= 1;
        cap_[static_cast<std::size_t>(a ^ 1)] ^= 1;
        touched_.push_back(a);
        touched_.push_back(a ^ 1);
      }
      return true;
    }
    seen_[static_cast<std::size_t>(u)] = stamp_;
    for (int a = head_[static_cast<std::size_t>(u)]; a != -1;
         a = next_[static_cast<std::size_t>(a)]) {
      int v = to_[static_cast<std::size_t>(a)];
      if (cap_[static_cast<std::size_t>(a)] == 0) continue;
      if (seen_[static_cast<std::size_t>(v)] == stamp_) continue;
      path_.push_back(a);
      if (dfs(v, t)) return true;
      path_.pop_back();
    }
    return false;
  }

  const SimpleGraph& g_;
  std::uint32_t n_;
  std::vector<int> head_, to_, next_;
  std::vector<std::uint8_t> cap_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<int> path_;
  std::vector<int> touched_;
};

}  // namespace detail

// k-vertex-connectivity on the simple projection. Pair reduction: pick a
// minimum-degree vertex s; it suffices to check s against all non-neighbors
// and every non-adjacent pair of neighbors of s (any minimum cut either
// avoids s, in which case some (s, t) pair witnesses it, or contains s, in
// which case two of s's neighbors lie in different components).
inline bool is_k_connected(const SimpleGraph& g, std::uint32_t k) {
  if (k > 10) throw std::invalid_argument("is_k_connected supports k <= 10");
  if (g.n > 100000) throw std::invalid_argument("is_k_connected supports n <= 1e5");
  if (g.n <= k) return false;
  if (k == 0) return true;
  Vertex s = 0;
  for (Vertex v = 1; v < g.n; ++v)
    if (g.degree(v) < g.degree(s)) s = v;
  if (g.degree(s) < k) return false;

  detail::VertexConnectivityChecker checker(g);
  for (Vertex t = 0; t < g.n; ++t) {
    if (t == s || g.has_edge(s, t)) continue;
    if (!checker.at_least(s, t, k)) return false;
  }
  const auto& nb = g.adj[s];
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (g.has_edge(nb[i], nb[j])) continue;
      if (!checker.at_least(nb[i], nb[j], k)) return false;
    }
  return true;
}

inline bool is_k_connected(const MultiGraph& g, std::uint32_t k) {
  return is_k_connected(SimpleGraph::projection(g), k);
}

// Injective subgraph search (H as a subgraph of g) by backtracking with
// degree pruning; pattern limited to 10 vertices.
inline bool contains_subgraph(const SimpleGraph& g, const SmallGraph& h) {
  if (h.n > 10) throw std::invalid_argument("contains_subgraph supports |V(H)| <= 10");
  if (h.n == 0) return true;
  if (h.n > g.n) return false;

  auto hadj = h.adjacency();
  auto hdeg = h.degrees();
  std::uint32_t hn = h.n;

  // Order pattern vertices so each one (after the first in its component)
  // has a previously-placed neighbor; components ordered by size descending.
  std::vector<std::uint32_t> order;
  std::vector<char> placed(hn, 0);
  std::vector<std::uint32_t> rest(hn);
  std::iota(rest.begin(), rest.end(), 0u);
  std::sort(rest.begin(), rest.end(),
            [&](std::uint32_t a, std::uint32_t b) { return hdeg[a] > hdeg[b]; });
  while (order.size() < hn) {
    std::uint32_t pick = hn;
    for (std::uint32_t v : rest) {
      if (placed[v]) continue;
      bool anchored = false;
      for (std::uint32_t w : hadj[v]) anchored = anchored || placed[w];
      if (anchored) {
        pick = v;
        break;
      }
    }
    if (pick == hn)
      for (std::uint32_t v : rest)
        if (!placed[v]) {
          pick = v;
          break;
        }
    placed[pick] = 1;
    order.push_back(pick);
  }

  std::vector<Vertex> image(hn, 0);
  std::vector<char> mapped(hn, 0);
  std::vector<char> used(g.n, 0);

  std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
    if (depth == hn) return true;
    std::uint32_t hv = order[depth];
    // Candidates: neighbors of an already-mapped pattern neighbor, or all of
    // g for anchor vertices of a new component.
    const std::vector<Vertex>* cands = nullptr;
    std::uint32_t anchor = hn;
    for (std::uint32_t w : hadj[hv])
      if (mapped[w]) {
        if (anchor == hn || g.degree(image[w]) < g.degree(image[anchor])) anchor = w;
      }
    std::vector<Vertex> all;
    if (anchor != hn) {
      cands = &g.adj[image[anchor]];
    } else {
      all.resize(g.n);
      std::iota(all.begin(), all.end(), 0u);
      cands = &all;
    }
    for (Vertex gv : *cands) {
      if (used[gv] || g.degree(gv) < hdeg[hv]) continue;
      bool ok = true;
      for (std::uint32_t w : hadj[hv])
        if (mapped[w] && !g.has_edge(gv, image[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[hv] = gv;
      mapped[hv] = 1;
      used[gv] = 1;
      if (rec(depth + 1)) return true;
      mapped[hv] = 0;
      used[gv] = 0;
    }
    return false;
  };
  return rec(0);
}

inline bool contains_subgraph(const MultiGraph& g, const SmallGraph& h) {
  return contains_subgraph(SimpleGraph::projection(g), h);
}

namespace detail {

// Maximum matching in a general graph (blossom contraction).
inline std::uint32_t max_matching_size(const SimpleGraph& g) {
  std::uint32_t n = g.n;
  std::vector<int> match(n, -1), parent(n), base(n);
  std::vector<char> used(n), blossom(n);

  auto lca = [&](int a, int b) {
    std::vector<char> seen(n, 0);
    for (;;) {
      a = base[static_cast<std::size_t>(a)];
      seen[static_cast<std::size_t>(a)] = 1;
      if (match[static_cast<std::size_t>(a)] == -1) break;
      a = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base[static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(b)]) return b;
      b = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(b)])];
    }
  };

  auto mark_path = [&](int v, int b, int child) {
    while (base[static_cast<std::size_t>(v)] != b) {
      int mv = match[static_cast<std::size_t>(v)];
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(mv)])] = 1;
      parent[static_cast<std::size_t>(v)] = child;
      child = mv;
      v = parent[static_cast<std::size_t>(mv)];
    }
  };

  auto find_path = [&](int root) -> int {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[static_cast<std::size_t>(root)] = 1;
    std::vector<int> q{root};
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      int v = q[qi];
      for (Vertex tou : g.adj[static_cast<std::size_t>(v)]) {
        int to = static_cast<int>(tou);
        if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
            match[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root ||
            (match[static_cast<std::size_t>(to)] != -1 &&
             parent[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] != -1)) {
          int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::uint32_t i = 0; i < n; ++i)
            if (blossom[static_cast<std::size_t>(base[i])]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push_back(static_cast<int>(i));
              }
            }
        } else if (parent[static_cast<std::size_t>(to)] == -1) {
          parent[static_cast<std::size_t>(to)] = v;
          if (match[static_cast<std::size_t>(to)] == -1) return to;
          int mto = match[static_cast<std::size_t>(to)];
          used[static_cast<std::size_t>(mto)] = 1;
          q.push_back(mto);
        }
      }
    }
    return -1;
  };

  std::uint32_t res = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    int u = find_path(static_cast<int>(v));
    if (u == -1) continue;
    ++res;
    while (u != -1) {
      int pv = parent[static_cast<std::size_t>(u)];
      int ppv = match[static_cast<std::size_t>(pv)];
      match[static_cast<std::size_t>(u)] = pv;
      match[static_cast<std::size_t>(pv)] = u;
      u = ppv;
    }
  }
  return res;
}

}  // namespace detail

// Thrown for predicates that are only defined on even vertex counts.
struct OddOrderError : std::invalid_argument {
  OddOrderError() : std::invalid_argument("perfect matching requires even n") {}
};

inline bool has_perfect_matching(const SimpleGraph& g) {
  if (g.n % 2 != 0) throw OddOrderError();
  return detail::max_matching_size(g) * 2 == g.n;
}

inline bool has_perfect_matching(const MultiGraph& g) {
  return has_perfect_matching(SimpleGraph::projection(g));
}

// Exact Hamiltonicity by subset DP over endpoints; n <= 24.
inline bool has_hamilton_cycle(const SimpleGraph& g) {
  if (g.n > 24) throw std::invalid_argument("has_hamilton_cycle supports n <= 24");
  if (g.n < 3) return false;
  std::uint32_t n = g.n;
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.adj[v]) nbr[v] |= 1u << w;
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  // dp[mask] = endpoint set of paths starting at 0 covering mask
  std::vector<std::uint32_t> dp(static_cast<std::size_t>(full) + 1, 0);
  dp[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1)) continue;
    std::uint32_t ends = dp[mask];
    if (!ends) continue;
    std::uint32_t e = ends;
    while (e) {
      std::uint32_t v = static_cast<std::uint32_t>(__builtin_ctz(e));
      e &= e - 1;
      std::uint32_t ext = nbr[v] & ~mask;
      while (ext) {
        std::uint32_t w = static_cast<std::uint32_t>(__builtin_ctz(ext));
        ext &= ext - 1;
        dp[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return (dp[full] & nbr[0]) != 0;
}

inline bool has_hamilton_cycle(const MultiGraph& g) {
  return has_hamilton_cycle(SimpleGraph::projection(g));
}

struct DegeneracyResult {
  std::uint32_t d = 0;
  std::vector<std::uint32_t> ordering;  // each vertex has <= d earlier neighbors
};

// Repeated min-degree peeling; the ordering is the reverse removal order.
inline DegeneracyResult degeneracy(const SimpleGraph& g) {
  std::uint32_t n = g.n;
  DegeneracyResult res;
  if (n == 0) return res;
  std::vector<std::uint32_t> deg(n);
  std::uint32_t maxdeg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    maxdeg = std::max(maxdeg, deg[v]);
  }
  std::vector<std::vector<Vertex>> bucket(maxdeg + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::vector<std::uint32_t> removal;
  removal.reserve(n);
  std::uint32_t d = 0, cur = 0;
  while (removal.size() < n) {
    while (cur <= maxdeg && bucket[cur].empty()) ++cur;
    if (cur > maxdeg) break;
    Vertex v = bucket[cur].back();
    bucket[cur].pop_back();
    if (removed[v] || deg[v] != cur) continue;  // stale entry
    removed[v] = 1;
    removal.push_back(v);
    d = std::max(d, cur);
    for (Vertex w : g.adj[v]) {
      if (removed[w]) continue;
      --deg[w];
      bucket[deg[w]].push_back(w);
      if (deg[w] < cur) cur = deg[w];
    }
  }
  res.d = d;
  res.ordering.assign(removal.rbegin(), removal.rend());
  return res;
}

inline DegeneracyResult degeneracy(const SmallGraph& h) {
  return degeneracy(SimpleGraph::from(h));
}

// Minimum over all orientations of the maximum out-degree; |E| <= 20.
inline std::uint32_t min_max_outdegree(const SmallGraph& h) {
  if (h.edges.size() > 20) throw std::invalid_argument("min_max_outdegree supports |E| <= 20");
  std::uint32_t m = static_cast<std::uint32_t>(h.edges.size());
  if (m == 0) return 0;
  std::uint32_t best = m + 1;
  std::vector<std::uint32_t> out(h.n);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::fill(out.begin(), out.end(), 0u);
    std::uint32_t worst = 0;
    for (std::uint32_t e = 0; e < m; ++e) {
      auto [u, v] = h.edges[e];
      worst = std::max(worst, ++out[(mask >> e) & 1 ? v : u]);
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  }
  return best;
}

// --- TrackedProperty factories (CLI names match the predicate grammar) ---

inline TrackedProperty make_min_degree_property(std::uint32_t k, DegreeMode mode) {
  std::string mname = mode == DegreeMode::Simple  ? "simple"
                      : mode == DegreeMode::NoLoops ? "no_loops"
                                                    : "full";
  return TrackedProperty{
      "min_degree:k=" + std::to_string(k) + ":mode=" + mname,
      [k, mode](const MultiGraph& g) { return has_min_degree(g, k, mode); },
      false,
      {}};
}

inline TrackedProperty make_k_connected_property(std::uint32_t k) {
  return TrackedProperty{
      "k_connected:k=" + std::to_string(k),
      [k](const MultiGraph& g) { return is_k_connected(g, k); },
      true,
      [k](const MultiGraph& g) { return has_min_degree(g, k, DegreeMode::Simple); }};
}

inline TrackedProperty make_subgraph_property(const SmallGraph& h, std::string label) {
  std::uint64_t edges = h.edges.size();
  return TrackedProperty{
      "subgraph:" + std::move(label),
      [h](const MultiGraph& g) { return contains_subgraph(g, h); },
      true,
      [edges](const MultiGraph& g) { return g.num_edges() >= edges; }};
}

inline TrackedProperty make_perfect_matching_property() {
  return TrackedProperty{
      "perfect_matching",
      [](const MultiGraph& g) { return has_perfect_matching(g); },
      true,
      [](const MultiGraph& g) {
        return g.num_vertices() % 2 == 0 && has_min_degree(g, 1, DegreeMode::Simple);
      }};
}

inline TrackedProperty make_hamilton_property() {
  return TrackedProperty{
      "hamilton",
      [](const MultiGraph& g) { return has_hamilton_cycle(g); },
      true,
      [](const MultiGraph& g) { return has_min_degree(g, 2, DegreeMode::Simple); }};
}

}  // namespace semirandom
