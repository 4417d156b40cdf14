#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semirandom/rng.hpp"

namespace semirandom {

using Vertex = std::uint32_t;

// The three degree semantics tracked side by side:
//   Simple  - number of distinct non-self neighbors
//   NoLoops - edge multiplicities, loops excluded
//   Full    - everything; a loop contributes 2 to its endpoint
enum class DegreeMode { Simple, NoLoops, Full };

inline constexpr DegreeMode kAllDegreeModes[] = {DegreeMode::Simple, DegreeMode::NoLoops,
                                                 DegreeMode::Full};

enum class EdgeKind { Fresh, Duplicate, Loop };

// Vertices grouped by current degree, with swap-remove updates. Degrees only
// grow (the process never deletes edges), so the minimum bucket advances
// monotonically and sampling a uniform minimum-degree vertex is O(1).
class DegreeBuckets {
 public:
  explicit DegreeBuckets(std::uint32_t n)
      : degree_(n, 0), pos_(n, 0), buckets_(1) {
    buckets_[0].resize(n);
    for (Vertex v = 0; v < n; ++v) {
      buckets_[0][v] = v;
      pos_[v] = v;
    }
  }

  std::uint32_t degree(Vertex v) const { return degree_[v]; }

  std::uint32_t min_degree() const { return min_; }

  const std::vector<Vertex>& bucket(std::uint32_t d) const {
    static const std::vector<Vertex> empty;
    return d < buckets_.size() ? buckets_[d] : empty;
  }

  void increment(Vertex v, std::uint32_t by = 1) {
    std::uint32_t d = degree_[v];
    std::uint32_t nd = d + by;
    auto& from = buckets_[d];
    Vertex moved = from.back();
    from[pos_[v]] = moved;
    pos_[moved] = pos_[v];
    from.pop_back();
    if (nd >= buckets_.size()) buckets_.resize(nd + 1);
    pos_[v] = static_cast<std::uint32_t>(buckets_[nd].size());
    buckets_[nd].push_back(v);
    degree_[v] = nd;
    while (min_ < buckets_.size() && buckets_[min_].empty()) ++min_;
  }

  // Uniform over minimum-degree vertices. With `exclude` set, samples from
  // the minimum bucket with the excluded vertex removed; if that empties the
  // bucket, falls through to the next non-empty one.
  Vertex sample_min(Rng& rng, std::optional<Vertex> exclude = {}) const {
    std::uint32_t b = min_;
    for (;;) {
      if (b >= buckets_.size()) throw std::logic_error("empty candidate set");
      const auto& bk = buckets_[b];
      if (bk.empty() || (exclude && bk.size() == 1 && bk[0] == *exclude)) {
        ++b;
        continue;
      }
      for (;;) {
        Vertex v = bk[rng.below(bk.size())];
        if (!exclude || v != *exclude) return v;
      }
    }
  }

 private:
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::vector<Vertex>> buckets_;
  std::uint32_t min_ = 0;
};

// Mutable multigraph on [n] with loops and multiplicities. Keeps per-vertex
// neighbor lists with multiplicity counts, an append-only edge log for
// trajectory replay, and one degree-bucket index per DegreeMode.
class MultiGraph {
 public:
  explicit MultiGraph(std::uint32_t n)
      : n_(n),
        adj_(n),
        buckets_{DegreeBuckets(n), DegreeBuckets(n), DegreeBuckets(n)} {
    if (n == 0) throw std::invalid_argument("MultiGraph requires n >= 1");
  }

  std::uint32_t num_vertices() const { return n_; }

  // Edges counted with multiplicity; a loop counts once.
  std::uint64_t num_edges() const { return log_.size(); }

  EdgeKind add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    log_.emplace_back(u, v);
    if (u == v) {
      bump(u, u);
      buckets(DegreeMode::Full).increment(u, 2);
      return EdgeKind::Loop;
    }
    std::uint32_t before = bump(u, v);
    bump(v, u);
    buckets(DegreeMode::Full).increment(u);
    buckets(DegreeMode::Full).increment(v);
    buckets(DegreeMode::NoLoops).increment(u);
    buckets(DegreeMode::NoLoops).increment(v);
    if (before == 0) {
      buckets(DegreeMode::Simple).increment(u);
      buckets(DegreeMode::Simple).increment(v);
    }
    return before > 0 ? EdgeKind::Duplicate : EdgeKind::Fresh;
  }

  std::uint32_t degree(Vertex v, DegreeMode mode) const {
    check(v);
    return buckets(mode).degree(v);
  }

  std::uint32_t min_degree(DegreeMode mode) const { return buckets(mode).min_degree(); }

  std::uint32_t multiplicity(Vertex u, Vertex v) const {
    check(u);
    check(v);
    for (const auto& [w, c] : adj_[u])
      if (w == v) return c;
    return 0;
  }

  // Distinct neighbors other than v itself.
  std::vector<Vertex> distinct_neighbors(Vertex v) const {
    check(v);
    std::vector<Vertex> out;
    out.reserve(adj_[v].size());
    for (const auto& [w, c] : adj_[v])
      if (w != v) out.push_back(w);
    return out;
  }

  // Per-vertex multiplicity list, including a possible self entry (loops).
  const std::vector<std::pair<Vertex, std::uint32_t>>& neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }

  Vertex sample_min_degree_vertex(DegreeMode mode, Rng& rng,
                                  std::optional<Vertex> exclude = {}) const {
    if (exclude && n_ == 1) throw std::logic_error("empty candidate set");
    return buckets(mode).sample_min(rng, exclude);
  }

  const DegreeBuckets& buckets(DegreeMode mode) const {
    return buckets_[static_cast<int>(mode)];
  }

  const std::vector<std::pair<Vertex, Vertex>>& edge_log() const { return log_; }

  // Text edge list, one "u v" line per logged edge, 1-based.
  void write_edge_list(std::ostream& os) const {
    for (const auto& [u, v] : log_) os << (u + 1) << ' ' << (v + 1) << '\n';
  }

 private:
  DegreeBuckets& buckets(DegreeMode mode) { return buckets_[static_cast<int>(mode)]; }

  void check(Vertex v) const {
    if (v >= n_) throw std::out_of_range("vertex out of range");
  }

  // Increments multiplicity(u, v) in u's list; returns the previous value.
  std::uint32_t bump(Vertex u, Vertex v) {
    for (auto& [w, c] : adj_[u])
      if (w == v) return c++;
    adj_[u].emplace_back(v, 1);
    return 0;
  }

  std::uint32_t n_;
  std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> adj_;
  std::vector<std::pair<Vertex, Vertex>> log_;
  DegreeBuckets buckets_[3];
};

}  // namespace semirandom
