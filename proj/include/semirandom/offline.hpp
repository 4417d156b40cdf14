#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semirandom/engine.hpp"
#include "semirandom/multigraph.hpp"
#include "semirandom/small_graph.hpp"

namespace semirandom {

// A required out-degree multiset: r distinct host vertices, the i-th of which
// must be offered at least demand[i] times.
struct OutDegreeDemand {
  std::vector<std::uint32_t> demands;
};

// Smallest prefix length j such that some r distinct vertices' offer counts
// dominate the demand multiset; nullopt if the sequence is exhausted first.
inline std::optional<std::uint64_t> m_of_demand(const OutDegreeDemand& demand,
                                                const OfferSequence& sequence) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("m_of_demand needs a materialized sequence");
  std::uint32_t n = sequence.n();
  if (demand.demands.size() > n) throw std::invalid_argument("more demands than vertices");

  std::vector<std::uint32_t> sorted = demand.demands;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  while (!sorted.empty() && sorted.back() == 0) sorted.pop_back();
  // Zero demands are covered by untouched vertices (size check above).
  if (sorted.empty()) return 0;

  std::uint32_t dmax = sorted.front();
  // ge[t] = number of vertices offered >= t times, 1 <= t <= dmax
  std::vector<std::uint64_t> ge(dmax + 1, 0);
  std::vector<std::uint32_t> cnt(n, 0);
  const auto& seq = sequence.entries();
  for (std::uint64_t j = 0; j < seq.size(); ++j) {
    std::uint32_t c = ++cnt[seq[j]];
    if (c <= dmax) ++ge[c];
    bool ok = true;
    for (std::size_t s = 0; s < sorted.size(); ++s)
      ok = ok && ge[sorted[s]] >= s + 1;
    if (ok) return j + 1;
  }
  return std::nullopt;
}

struct MOfGraphResult {
  std::optional<std::uint64_t> round;
  // orientation[e] = 0 orients edges[e] u->v, 1 orients v->u
  std::vector<std::uint8_t> orientation;
  std::vector<Vertex> hosts;  // pattern vertex -> host vertex in [n]
};

// Minimum of m_of_demand over all orientations of H, deduplicated by
// out-degree multiset, with a witness orientation and host assignment.
inline MOfGraphResult m_of_graph(const SmallGraph& h, const OfferSequence& sequence) {
  if (h.edges.size() > 20) throw std::invalid_argument("m_of_graph supports |E| <= 20");
  if (!sequence.is_materialized())
    throw std::invalid_argument("m_of_graph needs a materialized sequence");
  std::uint32_t m = static_cast<std::uint32_t>(h.edges.size());

  MOfGraphResult best;
  std::map<std::vector<std::uint32_t>, std::optional<std::uint64_t>> seen;
  std::vector<std::uint32_t> out(h.n);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::fill(out.begin(), out.end(), 0u);
    for (std::uint32_t e = 0; e < m; ++e) {
      auto [u, v] = h.edges[e];
      ++out[(mask >> e) & 1 ? v : u];
    }
    std::vector<std::uint32_t> key = out;
    std::sort(key.begin(), key.end(), std::greater<>());
    auto it = seen.find(key);
    std::optional<std::uint64_t> round;
    if (it != seen.end()) {
      round = it->second;
    } else {
      round = m_of_demand(OutDegreeDemand{key}, sequence);
      seen.emplace(std::move(key), round);
    }
    if (round && (!best.round || *round < *best.round)) {
      best.round = round;
      best.orientation.assign(m, 0);
      for (std::uint32_t e = 0; e < m; ++e)
        best.orientation[e] = static_cast<std::uint8_t>((mask >> e) & 1);
      // hosts: assign demands (descending) to the highest offer counts
      std::vector<std::uint32_t> cnt(sequence.n(), 0);
      const auto& seq = sequence.entries();
      for (std::uint64_t j = 0; j < *round; ++j) ++cnt[seq[j]];
      std::vector<Vertex> by_count(sequence.n());
      for (Vertex v = 0; v < sequence.n(); ++v) by_count[v] = v;
      std::stable_sort(by_count.begin(), by_count.end(),
                       [&](Vertex a, Vertex b) { return cnt[a] > cnt[b]; });
      std::vector<std::uint32_t> idx(h.n);
      for (std::uint32_t v = 0; v < h.n; ++v) idx[v] = v;
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return out[a] > out[b]; });
      best.hosts.assign(h.n, 0);
      for (std::uint32_t s = 0; s < h.n; ++s) best.hosts[idx[s]] = by_count[s];
    }
  }
  return best;
}

// Plan realizing the witness embedding: the j-th offer of host(v_i) claims
// the edge to the host of v_i's j-th out-neighbor; all other rounds connect
// to a fixed default endpoint.
inline std::vector<Vertex> offline_embed_plan(const SmallGraph& h,
                                              const OfferSequence& sequence,
                                              const MOfGraphResult& witness) {
  if (!witness.round) throw std::invalid_argument("witness does not reach H");
  std::uint32_t n = sequence.n();
  if (h.n > n) throw std::invalid_argument("pattern larger than host");

  std::vector<std::vector<std::uint32_t>> outnbr(h.n);
  for (std::uint32_t e = 0; e < h.edges.size(); ++e) {
    auto [u, v] = h.edges[e];
    if (witness.orientation[e])
      outnbr[v].push_back(u);
    else
      outnbr[u].push_back(v);
  }
  std::vector<std::int64_t> role(n, -1);  // host -> pattern vertex
  for (std::uint32_t v = 0; v < h.n; ++v) {
    if (role[witness.hosts[v]] != -1) throw std::invalid_argument("witness hosts not distinct");
    role[witness.hosts[v]] = v;
  }

  const auto& seq = sequence.entries();
  std::vector<std::uint32_t> offered_so_far(n, 0);
  std::vector<Vertex> plan;
  plan.reserve(*witness.round);
  for (std::uint64_t i = 0; i < *witness.round; ++i) {
    Vertex u = seq[i];
    std::uint32_t j = offered_so_far[u]++;
    Vertex chosen;
    if (role[u] != -1 && j < outnbr[static_cast<std::size_t>(role[u])].size()) {
      chosen = witness.hosts[outnbr[static_cast<std::size_t>(role[u])][j]];
    } else {
      chosen = u == 0 && n > 1 ? 1 : 0;
    }
    plan.push_back(chosen);
  }
  return plan;
}

// Per-prefix occupancy state for the Y_k^r threshold scans.
struct OfferTally {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> counts;

  explicit OfferTally(std::uint32_t n_) : n(n_), counts(n_, 0) {}

  std::vector<std::uint64_t> histogram() const {
    std::uint32_t maxc = 0;
    for (auto c : counts) maxc = std::max(maxc, c);
    std::vector<std::uint64_t> x(maxc + 1, 0);
    for (auto c : counts) ++x[c];
    return x;
  }

  std::uint64_t y_value(std::uint32_t k) const {
    std::uint64_t y = 0;
    auto x = histogram();
    for (std::uint32_t i = 0; i < k && i < x.size(); ++i) y += (k - i) * x[i];
    return y;
  }
};

// off_k(v) = min{2 off(v), k + off(v)}.
inline std::uint64_t off_k(std::uint64_t off, std::uint32_t k) {
  return std::min<std::uint64_t>(2 * off, k + off);
}

// Smallest r with Y_k^r <= r; Y_k decreases by exactly 1 whenever a vertex's
// count rises within [0, k).
inline std::optional<std::uint64_t> tau_offline_mindeg(std::uint32_t k,
                                                       const OfferSequence& sequence) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("tau_offline_mindeg needs a materialized sequence");
  if (k == 0) return 0;
  std::uint32_t n = sequence.n();
  std::uint64_t y = static_cast<std::uint64_t>(k) * n;
  std::vector<std::uint32_t> cnt(n, 0);
  const auto& seq = sequence.entries();
  if (y == 0) return 0;
  for (std::uint64_t r = 1; r <= seq.size(); ++r) {
    std::uint32_t c = cnt[seq[r - 1]]++;
    if (c < k) --y;
    if (y <= r) return r;
  }
  return std::nullopt;
}

struct BuildMinDegResult {
  bool ok = false;
  std::string failure;       // nonempty when a Hall matching could not saturate B_j
  std::vector<Vertex> plan;  // length r*, one endpoint per round
};

// The recursive matching construction behind the min-degree threshold: level
// j matches every vertex offered at most k-j times to a distinct offer slot,
// avoiding self-slots and repeat partners, then the plan claims the matched
// edges round by round.
inline BuildMinDegResult build_mindeg_graph(std::uint32_t k, const OfferSequence& sequence,
                                            std::uint64_t rstar) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("build_mindeg_graph needs a materialized sequence");
  std::uint32_t n = sequence.n();
  const auto& all = sequence.entries();
  if (rstar > all.size()) throw std::invalid_argument("r* exceeds sequence length");
  std::vector<Vertex> seq(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(rstar));

  BuildMinDegResult res;
  std::vector<std::uint32_t> off(n, 0);
  for (Vertex v : seq) ++off[v];

  // slot_of_vertex[w] = rounds in which w was offered, consumed back-to-front
  std::vector<std::vector<std::uint64_t>> slots_of(n);
  for (std::uint64_t i = 0; i < rstar; ++i) slots_of[seq[i]].push_back(i);

  // matched_slot[i] = vertex the round-i slot is matched to (or n = none)
  std::vector<Vertex> matched_slot(rstar, static_cast<Vertex>(n));
  // promised[v] = vertices already committed to form an edge with v; no pair
  // is ever promised twice, so every matched edge is free when its round
  // arrives and contributes a distinct neighbor
  std::vector<std::vector<Vertex>> promised(n);

  // Vertices with remaining unmatched slots, kept as a compact pool.
  std::vector<Vertex> pool;
  std::vector<std::uint64_t> pool_pos(n, 0);
  std::vector<char> in_pool(n, 0);
  for (Vertex w = 0; w < n; ++w)
    if (!slots_of[w].empty()) {
      pool_pos[w] = pool.size();
      in_pool[w] = 1;
      pool.push_back(w);
    }
  auto pool_remove = [&](Vertex w) {
    Vertex last = pool.back();
    pool[pool_pos[w]] = last;
    pool_pos[last] = pool_pos[w];
    pool.pop_back();
    in_pool[w] = 0;
  };
  auto take_slot = [&](Vertex w, Vertex v) {
    std::uint64_t slot = slots_of[w].back();
    slots_of[w].pop_back();
    matched_slot[slot] = v;
    promised[v].push_back(w);
    promised[w].push_back(v);
    if (slots_of[w].empty()) pool_remove(w);
  };
  auto allowed = [&](Vertex w, Vertex v) {
    if (w == v) return false;
    for (Vertex p : promised[v])
      if (p == w) return false;
    return true;
  };

  for (std::uint32_t j = 1; j <= k; ++j) {
    // B_j: vertices offered at most k-j times
    std::vector<Vertex> b;
    for (Vertex v = 0; v < n; ++v)
      if (off[v] <= k - j) b.push_back(v);
    for (Vertex v : b) {
      // each forbidden vertex blocks one pool entry, so scanning a few more
      // candidates than the forbidden-set size always suffices when the pool
      // is large enough
      Vertex found = static_cast<Vertex>(n);
      std::size_t scan = std::min<std::size_t>(pool.size(), promised[v].size() + 2);
      for (std::size_t s = 0; s < scan; ++s)
        if (allowed(pool[s], v)) {
          found = pool[s];
          break;
        }
      if (found == n) {
        res.failure = "no admissible slot for a level-" + std::to_string(j) + " vertex";
        return res;
      }
      take_slot(found, v);
    }
  }

  // Round-by-round plan: claim the matched edge (free by construction),
  // otherwise an absent edge at the offered vertex that avoids its promised
  // partners, so later matched edges stay free.
  MultiGraph g(n);
  auto is_promised = [&](Vertex u, Vertex w) {
    for (Vertex p : promised[u])
      if (p == w) return true;
    return false;
  };
  res.plan.reserve(rstar);
  for (std::uint64_t i = 0; i < rstar; ++i) {
    Vertex u = seq[i];
    Vertex v = matched_slot[i];
    if (v >= n || g.multiplicity(u, v) > 0) {
      v = static_cast<Vertex>(n);
      for (Vertex w = 0; w < n; ++w)
        if (w != u && g.multiplicity(u, w) == 0 && !is_promised(u, w)) {
          v = w;
          break;
        }
      if (v == n) v = (u + 1) % n;  // neighborhood saturated
    }
    g.add_edge(u, v);
    res.plan.push_back(v);
  }
  res.ok = true;
  return res;
}

// PM threshold: smallest m with X_0^m <= n/2.
inline std::optional<std::uint64_t> tau_offline_pm(const OfferSequence& sequence) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("tau_offline_pm needs a materialized sequence");
  std::uint32_t n = sequence.n();
  if (n % 2 != 0) throw std::invalid_argument("perfect matching threshold requires even n");
  std::uint64_t x0 = n;
  if (x0 <= n / 2) return 0;
  std::vector<std::uint32_t> cnt(n, 0);
  const auto& seq = sequence.entries();
  for (std::uint64_t m = 1; m <= seq.size(); ++m) {
    if (cnt[seq[m - 1]]++ == 0) --x0;
    if (x0 <= n / 2) return m;
  }
  return std::nullopt;
}

// Hamiltonicity threshold: smallest m with n - 2*X_0^m - X_1^m >= 0.
inline std::optional<std::uint64_t> tau_offline_ham(const OfferSequence& sequence) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("tau_offline_ham needs a materialized sequence");
  std::uint32_t n = sequence.n();
  std::int64_t x0 = n, x1 = 0;
  if (static_cast<std::int64_t>(n) - 2 * x0 - x1 >= 0) return 0;
  std::vector<std::uint32_t> cnt(n, 0);
  const auto& seq = sequence.entries();
  for (std::uint64_t m = 1; m <= seq.size(); ++m) {
    std::uint32_t c = cnt[seq[m - 1]]++;
    if (c == 0) {
      --x0;
      ++x1;
    } else if (c == 1) {
      --x1;
    }
    if (static_cast<std::int64_t>(n) - 2 * x0 - x1 >= 0) return m;
  }
  return std::nullopt;
}

}  // namespace semirandom
