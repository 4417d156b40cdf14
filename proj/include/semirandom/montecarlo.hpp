#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "semirandom/engine.hpp"
#include "semirandom/rng.hpp"

namespace semirandom {

using StrategyFactory = std::function<std::unique_ptr<Strategy>()>;

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  std::optional<std::uint64_t> hit;
  bool censored = false;
};

struct HittingStats {
  std::uint32_t n = 0;
  std::uint64_t base_seed = 0;
  std::vector<TrialOutcome> trials;           // trial-index order
  std::vector<std::uint64_t> sorted_hits;     // uncensored hitting rounds
  std::uint64_t censored = 0;
  double mean = 0.0;        // over uncensored trials
  double mean_over_n = 0.0;
  double stderr_mean = 0.0;
  double q05 = 0.0, q50 = 0.0, q95 = 0.0;  // censored trials rank as +inf

  // Right-continuous empirical CDF; censored trials never arrive.
  double cdf(double t) const {
    auto it = std::upper_bound(sorted_hits.begin(), sorted_hits.end(), t);
    return static_cast<double>(it - sorted_hits.begin()) /
           static_cast<double>(trials.size());
  }
};

namespace detail {

inline double quantile_with_censoring(const std::vector<std::uint64_t>& sorted,
                                      std::uint64_t total, double q) {
  // rank over all trials; censored ones sit past the end as +inf
  std::uint64_t idx = static_cast<std::uint64_t>(q * static_cast<double>(total - 1) + 0.5);
  if (idx >= sorted.size()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(sorted[idx]);
}

inline void finalize(HittingStats& stats) {
  stats.sorted_hits.clear();
  stats.censored = 0;
  for (const auto& t : stats.trials) {
    if (t.hit)
      stats.sorted_hits.push_back(*t.hit);
    else
      ++stats.censored;
  }
  std::sort(stats.sorted_hits.begin(), stats.sorted_hits.end());
  double sum = 0.0, sq = 0.0;
  for (auto h : stats.sorted_hits) {
    sum += static_cast<double>(h);
    sq += static_cast<double>(h) * static_cast<double>(h);
  }
  std::size_t m = stats.sorted_hits.size();
  if (m > 0) {
    stats.mean = sum / static_cast<double>(m);
    stats.mean_over_n = stats.mean / static_cast<double>(stats.n);
    if (m > 1) {
      double var = (sq - sum * sum / static_cast<double>(m)) / static_cast<double>(m - 1);
      stats.stderr_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(m));
    }
  }
  std::uint64_t total = stats.trials.size();
  stats.q05 = quantile_with_censoring(stats.sorted_hits, total, 0.05);
  stats.q50 = quantile_with_censoring(stats.sorted_hits, total, 0.50);
  stats.q95 = quantile_with_censoring(stats.sorted_hits, total, 0.95);
}

}  // namespace detail

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Independent seeded trials of `strategy` until `property` hits, aggregated
// deterministically in trial-index order regardless of thread scheduling.
inline HittingStats estimate_hitting(std::uint32_t n, const StrategyFactory& make_strategy,
                                     const TrackedProperty& property, std::uint64_t trials,
                                     std::uint64_t base_seed, unsigned threads = 0,
                                     std::optional<std::uint64_t> hard_cap = {}) {
  if (trials < 1) throw std::invalid_argument("estimate_hitting requires trials >= 1");
  HittingStats stats;
  stats.n = n;
  stats.base_seed = base_seed;
  stats.trials.resize(trials);

  StopCondition stop;
  stop.stop_on = {property.name};
  stop.hard_cap = hard_cap;

  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= trials) return;
      std::uint64_t seed = derive_stream(base_seed, i);
      auto strategy = make_strategy();
      RunRecord rec = run(n, *strategy, stop, seed, {property});
      TrialOutcome& out = stats.trials[i];
      out.seed = seed;
      out.rounds = rec.rounds;
      out.hit = rec.hits.at(property.name);
      out.censored = !out.hit.has_value();
    }
  };

  unsigned t = std::min<std::uint64_t>(resolve_threads(threads), trials);
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  detail::finalize(stats);
  return stats;
}

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  bool censored = false;  // any grid point had censored trials
};

inline LogLogFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("fit_loglog needs >= 3 matched points");
  std::size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  LogLogFit fit;
  double dm = static_cast<double>(m);
  fit.slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / dm;
  fit.residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    fit.residuals[i] = ly[i] - (fit.intercept + fit.slope * lx[i]);
  return fit;
}

// Median hitting round per grid point, then a log-log least-squares fit.
inline LogLogFit scaling_exponent(const std::vector<std::uint32_t>& n_grid,
                                  const std::function<StrategyFactory(std::uint32_t)>& strategy_for,
                                  const std::function<TrackedProperty(std::uint32_t)>& property_for,
                                  std::uint64_t trials, std::uint64_t base_seed,
                                  unsigned threads = 0) {
  if (n_grid.size() < 3) throw std::invalid_argument("scaling_exponent needs >= 3 grid points");
  std::vector<double> xs, ys;
  bool censored = false;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    std::uint32_t n = n_grid[i];
    HittingStats s = estimate_hitting(n, strategy_for(n), property_for(n), trials,
                                      derive_stream(base_seed, 1000 + i), threads);
    censored = censored || s.censored > 0;
    xs.push_back(static_cast<double>(n));
    ys.push_back(s.q50);
  }
  LogLogFit fit = fit_loglog(xs, ys);
  fit.censored = censored;
  return fit;
}

struct DominanceReport {
  std::uint64_t shift = 0;    // the allowed head start (rounds)
  double epsilon = 0.0;       // max_t (CDF_B(t) - CDF_A(t + shift)), clamped >= 0
  std::uint64_t censored_a = 0, censored_b = 0;
};

// Empirical (shift, epsilon)-dominance of A over B on a shared predicate.
// Censored trials count as +inf in both CDFs, which can only raise epsilon.
inline DominanceReport dominance(const HittingStats& a, const HittingStats& b,
                                 std::uint64_t shift) {
  DominanceReport rep;
  rep.shift = shift;
  rep.censored_a = a.censored;
  rep.censored_b = b.censored;
  double eps = 0.0;
  // CDF_B only jumps at its sample points, so the supremum is attained there
  for (std::size_t i = 0; i < b.sorted_hits.size(); ++i) {
    double t = static_cast<double>(b.sorted_hits[i]);
    double cb = static_cast<double>(i + 1) / static_cast<double>(b.trials.size());
    eps = std::max(eps, cb - a.cdf(t + static_cast<double>(shift)));
  }
  rep.epsilon = std::max(eps, 0.0);
  return rep;
}

inline DominanceReport dominance(std::uint32_t n, const StrategyFactory& a,
                                 const StrategyFactory& b, const TrackedProperty& property,
                                 std::uint64_t trials, std::uint64_t base_seed,
                                 std::uint64_t shift, unsigned threads = 0) {
  HittingStats sa = estimate_hitting(n, a, property, trials, derive_stream(base_seed, 1), threads);
  HittingStats sb = estimate_hitting(n, b, property, trials, derive_stream(base_seed, 2), threads);
  return dominance(sa, sb, shift);
}

}  // namespace semirandom
