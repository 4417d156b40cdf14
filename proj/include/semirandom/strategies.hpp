#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "semirandom/engine.hpp"
#include "semirandom/multigraph.hpp"
#include "semirandom/properties.hpp"
#include "semirandom/small_graph.hpp"

namespace semirandom {

enum class UniformMode { Multigraph, SimpleRetry };

// Connect the offered vertex to a uniform vertex of [n] \ {offered}. The two
// modes play identically; SimpleRetry is the simple-graph reading where
// duplicate rounds count as failures (the engine tags them either way).
class UniformStrategy : public Strategy {
 public:
  explicit UniformStrategy(UniformMode mode) : mode_(mode) {}

  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    std::uint32_t n = view.graph.num_vertices();
    if (n < 2) throw std::invalid_argument("uniform strategy needs n >= 2");
    Vertex u = static_cast<Vertex>(rng.below(n - 1));
    return u >= offered ? u + 1 : u;
  }

  UniformMode mode() const { return mode_; }

 private:
  UniformMode mode_;
};

// k-out block strategy: targets t = 1..n in order, k rounds connected to t,
// extended by r extra rounds iff t itself was offered within the block or an
// offer repeated within it.
class KOutStrategy : public Strategy {
 public:
  KOutStrategy(std::uint32_t k, std::uint32_t r) : k_(k), r_(r) {
    if (k == 0) throw std::invalid_argument("kout strategy needs k >= 1");
  }

  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    std::uint32_t n = view.graph.num_vertices();
    if (target_ >= n) {
      // schedule exhausted; irrelevant filler if the engine keeps running
      if (n < 2) return offered;
      Vertex u = static_cast<Vertex>(rng.below(n - 1));
      return u >= offered ? u + 1 : u;
    }
    block_.push_back(offered);
    Vertex t = target_;
    if (block_.size() == k_ && !extended_) {
      bool bad = false;
      for (std::size_t i = 0; i < block_.size(); ++i) {
        bad = bad || block_[i] == target_;
        for (std::size_t j = i + 1; j < block_.size(); ++j) bad = bad || block_[i] == block_[j];
      }
      if (bad && r_ > 0) {
        extended_ = true;
        ++big_blocks_;
      } else {
        advance(n);
      }
    } else if (extended_ && block_.size() == k_ + r_) {
      advance(n);
    }
    return t;
  }

  bool finished() const override { return done_; }

  std::uint64_t big_blocks() const { return big_blocks_; }

  void collect_metrics(std::map<std::string, double>& m) const override {
    m["big_blocks"] = static_cast<double>(big_blocks_);
  }

 private:
  void advance(std::uint32_t n) {
    ++target_;
    block_.clear();
    extended_ = false;
    done_ = target_ >= n;
  }

  std::uint32_t k_, r_;
  Vertex target_ = 0;
  std::vector<Vertex> block_;
  bool extended_ = false;
  bool done_ = false;
  std::uint64_t big_blocks_ = 0;
};

// Two-chance bipartite strategy on the equipartition X_0 = {1..n/2},
// X_1 = {n/2+1..n}. Phase I hands every vertex of the opposite part one
// out-choice; Phase II gives a second one to the vertices offered at most
// once in Phase I. Edges claimed by the overflow rules are tagged filler.
class BipartiteTwoChanceStrategy : public Strategy {
 public:
  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    std::uint32_t n = view.graph.num_vertices();
    if (n % 2 != 0) throw std::invalid_argument("bipartite strategy needs even n");
    if (half_ == 0) {
      half_ = n / 2;
      phase1_offers_.assign(n, 0);
    }
    int i = offered < half_ ? 0 : 1;
    if (phase_ == 1) {
      ++x_[i];
      ++phase1_offers_[offered];
      ++f0_;
      Vertex chosen;
      if (x_[i] <= half_) {
        chosen = part_vertex(1 - i, x_[i]);
      } else {
        chosen = part_vertex(1 - i, 1);
        ++filler_;
      }
      if (std::min(x_[0], x_[1]) >= half_) begin_phase2();
      return chosen;
    }
    if (phase_ == 2) {
      ++yc_[i];
      ++f1_;
      Vertex chosen;
      std::uint64_t idx = yc_[i];
      if (idx <= y_ && idx <= y_sizes_[1 - i]) {
        chosen = y_lists_[1 - i][idx - 1];
      } else {
        // overflow of either counter or a short opposite list: filler
        chosen = y_sizes_[1 - i] > 0 ? y_lists_[1 - i][0] : part_vertex(1 - i, 1);
        ++filler_;
      }
      if (std::min(yc_[0], yc_[1]) >= y_) done_ = true;
      return chosen;
    }
    // already finished: filler if the engine keeps running
    (void)rng;
    return part_vertex(1 - i, 1);
  }

  bool finished() const override { return done_; }

  void collect_metrics(std::map<std::string, double>& m) const override {
    m["phase1_rounds"] = static_cast<double>(f0_);
    m["phase2_rounds"] = static_cast<double>(f1_);
    m["filler_edges"] = static_cast<double>(filler_);
    m["y0"] = static_cast<double>(y_sizes_[0]);
    m["y1"] = static_cast<double>(y_sizes_[1]);
  }

 private:
  Vertex part_vertex(int part, std::uint64_t one_based) const {
    return static_cast<Vertex>(part * half_ + (one_based - 1));
  }

  void begin_phase2() {
    phase_ = 2;
    for (int p = 0; p < 2; ++p) {
      for (std::uint32_t j = 0; j < half_; ++j) {
        Vertex v = part_vertex(p, j + 1);
        if (phase1_offers_[v] <= 1) y_lists_[p].push_back(v);
      }
      y_sizes_[p] = y_lists_[p].size();
    }
    y_ = std::max(y_sizes_[0], y_sizes_[1]);
    if (y_ == 0) done_ = true;
  }

  std::uint32_t half_ = 0;
  int phase_ = 1;
  std::uint64_t x_[2] = {0, 0};
  std::uint64_t yc_[2] = {0, 0};
  std::vector<std::uint32_t> phase1_offers_;
  std::vector<Vertex> y_lists_[2];
  std::uint64_t y_sizes_[2] = {0, 0};
  std::uint64_t y_ = 0;
  std::uint64_t f0_ = 0, f1_ = 0, filler_ = 0;
  bool done_ = false;
};

enum class MinDegreeTiming { BeforeOffer, AfterOffer };

// Min-degree family: connect the offered vertex to a uniform vertex of
// minimum degree under the given mode. `exclude_offered` drops the offered
// vertex from the candidate set; AfterOffer timing evaluates degrees as if
// the offered vertex had already gained one.
class MinDegreeStrategy : public Strategy {
 public:
  MinDegreeStrategy(DegreeMode mode, bool exclude_offered, MinDegreeTiming timing)
      : mode_(mode), exclude_(exclude_offered), timing_(timing) {}

  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    const MultiGraph& g = view.graph;
    if (timing_ == MinDegreeTiming::BeforeOffer) {
      return g.sample_min_degree_vertex(
          mode_, rng, exclude_ ? std::optional<Vertex>(offered) : std::nullopt);
    }
    // AfterOffer: the offered vertex counts with degree + 1.
    const DegreeBuckets& b = g.buckets(mode_);
    std::uint32_t m = b.min_degree();
    std::uint32_t d = b.degree(offered);
    if (exclude_) return b.sample_min(rng, offered);
    if (d > m) return b.sample_min(rng);
    const auto& mins = b.bucket(m);
    if (mins.size() >= 2) return b.sample_min(rng, offered);
    // offered is the sole minimum: after the bump it sits at m+1, competing
    // with the next occupied level
    std::uint32_t cap = static_cast<std::uint32_t>(2 * g.num_edges() + 2);
    std::uint32_t lvl = m + 1;
    while (lvl <= cap && b.bucket(lvl).empty()) ++lvl;
    const auto& next = b.bucket(lvl);
    // nothing else (n == 1) or everything else strictly above m+1: the
    // bumped offered vertex is the unique minimum
    if (next.empty() || lvl > m + 1) return offered;
    std::uint64_t pick = rng.below(next.size() + 1);
    return pick == next.size() ? offered : next[pick];
  }

 private:
  DegreeMode mode_;
  bool exclude_;
  MinDegreeTiming timing_;
};

// Build a copy of H along a degeneracy ordering: each candidate vertex gets
// connected to the images of the next slot's back neighbors in order, and is
// adopted as the image once it has consumed all of them. Vertices with no
// back neighbors are absorbed for free with arbitrary unused hosts.
class DegeneracyEmbedStrategy : public Strategy {
 public:
  explicit DegeneracyEmbedStrategy(SmallGraph h) : h_(std::move(h)) {
    auto res = degeneracy(h_);
    order_ = res.ordering;
    auto adj = h_.adjacency();
    std::vector<std::uint32_t> rank(h_.n, 0);
    for (std::uint32_t i = 0; i < order_.size(); ++i) rank[order_[i]] = i;
    back_.resize(h_.n);
    for (std::uint32_t i = 0; i < order_.size(); ++i) {
      for (std::uint32_t w : adj[order_[i]])
        if (rank[w] < i) back_[i].push_back(w);
    }
  }

  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    std::uint32_t n = view.graph.num_vertices();
    if (!initialized_) init(n);
    if (done_ || in_image_[offered]) return arbitrary(n, rng);
    std::uint32_t ell = static_cast<std::uint32_t>(back_[k_].size());
    std::uint64_t& t = count_at(offered);
    ++t;
    Vertex host = image_of(back_[k_][static_cast<std::size_t>(t - 1)]);
    if (t == ell) adopt(offered, n);
    return host;
  }

  bool finished() const override { return done_; }

  void collect_metrics(std::map<std::string, double>& m) const override {
    m["embedded_vertices"] = static_cast<double>(k_);
  }

 private:
  void init(std::uint32_t n) {
    if (h_.n > n) throw std::invalid_argument("pattern larger than host");
    in_image_.assign(n, 0);
    counts_.assign(n, 0);
    epoch_seen_.assign(n, 0);
    phi_.assign(h_.n, 0);
    initialized_ = true;
    absorb_free(n);
  }

  std::uint64_t& count_at(Vertex v) {
    if (epoch_seen_[v] != epoch_) {
      epoch_seen_[v] = epoch_;
      counts_[v] = 0;
    }
    return counts_[v];
  }

  Vertex image_of(std::uint32_t hvert) const { return phi_[hvert]; }

  void adopt(Vertex host, std::uint32_t n) {
    phi_[order_[k_]] = host;
    in_image_[host] = 1;
    ++k_;
    ++epoch_;
    absorb_free(n);
  }

  // Absorb every next slot with no back neighbors using the smallest host
  // vertex not yet in the image.
  void absorb_free(std::uint32_t n) {
    while (k_ < order_.size() && back_[k_].empty()) {
      while (free_scan_ < n && in_image_[free_scan_]) ++free_scan_;
      phi_[order_[k_]] = free_scan_;
      in_image_[free_scan_] = 1;
      ++k_;
      ++epoch_;
    }
    done_ = k_ >= order_.size();
  }

  Vertex arbitrary(std::uint32_t n, Rng& rng) { return static_cast<Vertex>(rng.below(n)); }

  SmallGraph h_;
  std::vector<std::uint32_t> order_;           // degeneracy ordering (h vertices)
  std::vector<std::vector<std::uint32_t>> back_;  // back neighbors per slot
  std::vector<Vertex> phi_;
  std::vector<char> in_image_;
  std::vector<std::uint64_t> counts_, epoch_seen_;
  std::uint64_t epoch_ = 1;
  std::uint32_t k_ = 0;
  Vertex free_scan_ = 0;
  bool initialized_ = false;
  bool done_ = false;
};

// Spanning embedding of a bounded-degree H on exactly [n]: the r-th offer of
// vertex i claims (i, j_r) where j_1 < j_2 < ... are i's H-neighbors; offers
// beyond deg_H(i) claim an arbitrary edge at the offered vertex.
class SpanningEmbedStrategy : public Strategy {
 public:
  explicit SpanningEmbedStrategy(SmallGraph h) : h_(std::move(h)) {
    adj_ = h_.adjacency();
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    counts_.assign(h_.n, 0);
    for (const auto& a : adj_)
      if (!a.empty()) ++remaining_;
    done_ = remaining_ == 0;
  }

  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    std::uint32_t n = view.graph.num_vertices();
    if (h_.n != n) throw std::invalid_argument("spanning pattern must live on [n]");
    std::uint64_t r = ++counts_[offered];
    const auto& a = adj_[offered];
    if (r <= a.size()) {
      if (r == a.size()) {
        --remaining_;
        done_ = remaining_ == 0;
      }
      return a[static_cast<std::size_t>(r - 1)];
    }
    if (n < 2) return offered;
    Vertex u = static_cast<Vertex>(rng.below(n - 1));
    return u >= offered ? u + 1 : u;
  }

  bool finished() const override { return done_; }

 private:
  SmallGraph h_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t remaining_ = 0;
  bool done_ = false;
};

inline std::unique_ptr<Strategy> uniform_strategy(UniformMode mode) {
  return std::make_unique<UniformStrategy>(mode);
}

inline std::unique_ptr<Strategy> kout_strategy(std::uint32_t k, std::uint32_t r) {
  return std::make_unique<KOutStrategy>(k, r);
}

inline std::unique_ptr<Strategy> bipartite_two_chance() {
  return std::make_unique<BipartiteTwoChanceStrategy>();
}

inline std::unique_ptr<Strategy> min_degree_strategy(DegreeMode mode, bool exclude_offered,
                                                     MinDegreeTiming timing) {
  return std::make_unique<MinDegreeStrategy>(mode, exclude_offered, timing);
}

inline std::unique_ptr<Strategy> degeneracy_embed(SmallGraph h) {
  return std::make_unique<DegeneracyEmbedStrategy>(std::move(h));
}

inline std::unique_ptr<Strategy> spanning_embed(SmallGraph h) {
  return std::make_unique<SpanningEmbedStrategy>(std::move(h));
}

}  // namespace semirandom
