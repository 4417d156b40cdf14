#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "semirandom/multigraph.hpp"
#include "semirandom/rng.hpp"

namespace semirandom {

// The i.i.d. uniform vertex stream, either seeded-lazy or materialized.
class OfferSequence {
 public:
  static OfferSequence seeded(std::uint32_t n, std::uint64_t seed) {
    OfferSequence s;
    s.n_ = n;
    s.source_ = seed;
    return s;
  }

  static OfferSequence materialized(std::uint32_t n, std::vector<Vertex> entries) {
    for (Vertex v : entries)
      if (v >= n) throw std::out_of_range("offer outside [n]");
    OfferSequence s;
    s.n_ = n;
    s.source_ = std::move(entries);
    return s;
  }

  std::uint32_t n() const { return n_; }

  bool is_materialized() const { return std::holds_alternative<std::vector<Vertex>>(source_); }

  const std::vector<Vertex>& entries() const {
    if (!is_materialized()) throw std::logic_error("sequence is not materialized");
    return std::get<std::vector<Vertex>>(source_);
  }

  std::uint64_t seed() const {
    if (is_materialized()) throw std::logic_error("sequence has no seed");
    return std::get<std::uint64_t>(source_);
  }

  std::vector<Vertex> materialize(std::uint64_t len) const {
    if (is_materialized()) {
      const auto& e = entries();
      if (len > e.size()) throw std::out_of_range("sequence shorter than requested");
      return {e.begin(), e.begin() + static_cast<std::ptrdiff_t>(len)};
    }
    Rng rng(seed());
    std::vector<Vertex> out(len);
    for (auto& v : out) v = rng.vertex(n_);
    return out;
  }

 private:
  std::uint32_t n_ = 0;
  std::variant<std::uint64_t, std::vector<Vertex>> source_;
};

// Read-only view of the process handed to a strategy each round. offers[v]
// counts how many times v was offered, including the current round's offer.
struct ProcessView {
  const MultiGraph& graph;
  std::uint64_t round;  // 1-based index of the round being played
  const std::vector<std::uint64_t>& offers;
};

// Builder's decision rule. One instance per run; may keep private state but
// must never mutate the graph (it only names the second endpoint).
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) = 0;
  // Strategies with an intrinsic goal (block schedules, embeddings) report
  // completion here; the engine can stop on it.
  virtual bool finished() const { return false; }
  virtual void collect_metrics(std::map<std::string, double>&) const {}
};

// Convenience adapter for ad-hoc strategies in tests.
class FunctionStrategy : public Strategy {
 public:
  using Fn = std::function<Vertex(const ProcessView&, Vertex, Rng&)>;
  explicit FunctionStrategy(Fn fn) : fn_(std::move(fn)) {}
  Vertex choose(const ProcessView& view, Vertex offered, Rng& rng) override {
    return fn_(view, offered, rng);
  }

 private:
  Fn fn_;
};

// Monotone predicate tracked along a run. `expensive` predicates are gated
// and checked on a stride, then the exact hitting round is found by replaying
// the edge log (valid because all tracked properties are monotone).
struct TrackedProperty {
  std::string name;
  std::function<bool(const MultiGraph&)> eval;
  bool expensive = false;
  std::function<bool(const MultiGraph&)> gate;  // cheap prerequisite, optional
};

struct StopCondition {
  std::optional<std::uint64_t> budget;       // fixed number of rounds
  bool on_strategy_finished = false;         // stop when strategy reports done
  std::vector<std::string> stop_on;          // stop when all named properties hit
  std::optional<std::uint64_t> hard_cap;     // overrides the default cap
};

struct RunRecord {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  std::uint64_t failures = 0;  // rounds whose edge was a loop or duplicate
  bool censored = false;       // hard cap reached before the stop condition
  std::map<std::string, std::optional<std::uint64_t>> hits;  // 1-based rounds
  std::map<std::string, double> metrics;
  std::vector<std::pair<Vertex, Vertex>> edge_log;  // kept when requested
};

struct RunOptions {
  bool keep_edge_log = false;
};

// Default hard cap: generous for every strategy/property pair in scope
// (degree goals finish within ~k*n, the rest within O(n log n)).
inline std::uint64_t default_hard_cap(std::uint32_t n) {
  double cap = 10.0 * n * std::max(std::log(static_cast<double>(n)), 3.0);
  return static_cast<std::uint64_t>(cap) + 100;
}

namespace detail {

// Exact hitting round of a monotone predicate via bisection on the edge log:
// smallest prefix length in (lo, hi] whose replayed graph satisfies eval.
inline std::uint64_t bisect_hitting(const std::vector<std::pair<Vertex, Vertex>>& log,
                                    std::uint32_t n,
                                    const std::function<bool(const MultiGraph&)>& eval,
                                    std::uint64_t lo, std::uint64_t hi) {
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    MultiGraph g(n);
    for (std::uint64_t i = 0; i < mid; ++i) g.add_edge(log[i].first, log[i].second);
    (eval(g) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

// Drive the process: offer a uniform vertex, let the strategy pick the other
// endpoint, apply the edge, and record hitting rounds of tracked properties.
inline RunRecord run(std::uint32_t n, Strategy& strategy, const StopCondition& stop,
                     std::uint64_t seed, const std::vector<TrackedProperty>& track = {},
                     const RunOptions& opts = {}) {
  MultiGraph g(n);
  Rng rng(seed);
  RunRecord rec;
  rec.n = n;
  rec.seed = seed;

  std::vector<std::uint64_t> offers(n, 0);
  std::vector<std::optional<std::uint64_t>> hit(track.size());
  std::vector<std::uint64_t> last_checked(track.size(), 0);
  std::uint64_t stride = std::max<std::uint64_t>(1, (n + 99) / 100);

  bool need_log = opts.keep_edge_log;
  for (const auto& p : track) need_log = need_log || p.expensive;

  std::size_t pending_stops = 0;
  std::vector<int> stop_idx;
  for (const auto& name : stop.stop_on) {
    bool found = false;
    for (std::size_t i = 0; i < track.size(); ++i)
      if (track[i].name == name) {
        stop_idx.push_back(static_cast<int>(i));
        found = true;
      }
    if (!found) throw std::invalid_argument("stop_on names an untracked property");
  }
  pending_stops = stop_idx.size();

  std::uint64_t cap = stop.hard_cap ? *stop.hard_cap : default_hard_cap(n);
  if (stop.budget) cap = std::max(cap, *stop.budget);

  auto check_property = [&](std::size_t i, std::uint64_t round, bool force) {
    if (hit[i]) return;
    const auto& p = track[i];
    if (p.expensive) {
      if (p.gate && !p.gate(g)) return;
      if (!force && round % stride != 0) return;
      if (p.eval(g)) {
        std::uint64_t exact =
            detail::bisect_hitting(g.edge_log(), n, p.eval, last_checked[i], round);
        hit[i] = exact;
      }
      last_checked[i] = round;
    } else {
      if (p.eval(g)) hit[i] = round;
    }
  };

  std::uint64_t round = 0;
  bool done = false;
  while (!done) {
    if (stop.budget && round >= *stop.budget) break;
    if (stop.on_strategy_finished && strategy.finished()) break;
    if (round >= cap) {
      rec.censored = pending_stops > 0 || (stop.on_strategy_finished && !strategy.finished());
      break;
    }
    ++round;
    Vertex offered = rng.vertex(n);
    ++offers[offered];
    ProcessView view{g, round, offers};
    Vertex chosen = strategy.choose(view, offered, rng);
    if (chosen >= n) throw std::out_of_range("strategy returned out-of-range vertex");
    EdgeKind kind = g.add_edge(offered, chosen);
    if (kind != EdgeKind::Fresh) ++rec.failures;

    for (std::size_t i = 0; i < track.size(); ++i) check_property(i, round, false);

    if (pending_stops > 0) {
      bool all = true;
      for (int i : stop_idx) all = all && hit[static_cast<std::size_t>(i)].has_value();
      done = all;
    }
  }

  // A final forced check so stride-gated properties that became true near the
  // end are still reported with their exact hitting round.
  for (std::size_t i = 0; i < track.size(); ++i) check_property(i, round, true);

  rec.rounds = round;
  for (std::size_t i = 0; i < track.size(); ++i) rec.hits[track[i].name] = hit[i];
  strategy.collect_metrics(rec.metrics);
  if (opts.keep_edge_log || need_log) rec.edge_log = g.edge_log();
  return rec;
}

// Replay a materialized sequence against a fixed per-round endpoint plan.
inline MultiGraph run_offline(const OfferSequence& sequence,
                              const std::vector<Vertex>& plan) {
  if (!sequence.is_materialized())
    throw std::invalid_argument("run_offline needs a materialized sequence");
  const auto& seq = sequence.entries();
  if (plan.size() > seq.size()) throw std::invalid_argument("plan longer than sequence");
  MultiGraph g(sequence.n());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (plan[i] >= sequence.n()) throw std::out_of_range("plan entry out of range");
    g.add_edge(seq[i], plan[i]);
  }
  return g;
}

// Per-vertex offer counts over a sequence prefix.
inline std::vector<std::uint64_t> offer_counts(const std::vector<Vertex>& prefix,
                                               std::uint32_t n) {
  std::vector<std::uint64_t> c(n, 0);
  for (Vertex v : prefix) {
    if (v >= n) throw std::out_of_range("offer outside [n]");
    ++c[v];
  }
  return c;
}

// Occupancy histogram: X[k] = number of vertices offered exactly k times.
inline std::vector<std::uint64_t> occupancy(const std::vector<std::uint64_t>& counts) {
  std::uint64_t maxc = 0;
  for (auto c : counts) maxc = std::max(maxc, c);
  std::vector<std::uint64_t> x(maxc + 1, 0);
  for (auto c : counts) ++x[c];
  return x;
}

}  // namespace semirandom
