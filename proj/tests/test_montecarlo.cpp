#include <catch_amalgamated.hpp>

#include <cmath>

#include "semirandom/montecarlo.hpp"
#include "semirandom/properties.hpp"
#include "semirandom/strategies.hpp"

using namespace semirandom;

namespace {

StrategyFactory smin() {
  return []() {
    return min_degree_strategy(DegreeMode::Full, false, MinDegreeTiming::BeforeOffer);
  };
}

StrategyFactory self_loop() {
  return []() {
    return std::make_unique<FunctionStrategy>(
        [](const ProcessView&, Vertex offered, Rng&) { return offered; });
  };
}

}  // namespace

TEST_CASE("estimate_hitting is deterministic and thread-count independent") {
  auto prop = make_min_degree_property(1, DegreeMode::Full);
  HittingStats a = estimate_hitting(200, smin(), prop, 16, 42, 1);
  HittingStats b = estimate_hitting(200, smin(), prop, 16, 42, 4);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    REQUIRE(a.trials[i].seed == b.trials[i].seed);
    REQUIRE(a.trials[i].hit == b.trials[i].hit);
  }
  REQUIRE(a.mean == b.mean);
  REQUIRE(a.q50 == b.q50);
}

TEST_CASE("single-vertex loop strategy hits FULL degree 2 at round 1") {
  auto prop = make_min_degree_property(2, DegreeMode::Full);
  HittingStats s = estimate_hitting(1, self_loop(), prop, 5, 7);
  for (const auto& t : s.trials) REQUIRE(t.hit == 1);
  REQUIRE(s.mean == Catch::Approx(1.0));
  REQUIRE(s.censored == 0);
}

TEST_CASE("censored trials are excluded from mean but rank as +inf") {
  auto prop = make_min_degree_property(1, DegreeMode::Simple);  // loops never help
  HittingStats s = estimate_hitting(1, self_loop(), prop, 4, 3, 1, std::uint64_t{20});
  REQUIRE(s.censored == 4);
  REQUIRE(s.sorted_hits.empty());
  REQUIRE(std::isinf(s.q50));
  REQUIRE(s.cdf(1e18) == 0.0);
}

TEST_CASE("empirical cdf is a right-continuous step function") {
  HittingStats s;
  s.n = 10;
  s.trials.resize(4);
  s.trials[0].hit = 5;
  s.trials[1].hit = 5;
  s.trials[2].hit = 9;
  s.trials[3].censored = true;
  detail::finalize(s);
  REQUIRE(s.cdf(4.999) == 0.0);
  REQUIRE(s.cdf(5) == 0.5);
  REQUIRE(s.cdf(8) == 0.5);
  REQUIRE(s.cdf(9) == 0.75);
  REQUIRE(s.cdf(1e12) == 0.75);
  REQUIRE(s.mean == Catch::Approx((5 + 5 + 9) / 3.0));
}

TEST_CASE("standard error shrinks roughly as trials^{-1/2}") {
  auto prop = make_min_degree_property(1, DegreeMode::Full);
  HittingStats small = estimate_hitting(100, smin(), prop, 20, 11);
  HittingStats big = estimate_hitting(100, smin(), prop, 320, 11);
  REQUIRE(big.stderr_mean < small.stderr_mean);
  double ratio = small.stderr_mean / big.stderr_mean;
  REQUIRE(ratio > 1.8);  // ideal 4, generous slack for sampling noise
}

TEST_CASE("fit_loglog recovers a known power law") {
  std::vector<double> xs = {100, 200, 400, 800};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * std::pow(x, 0.5));
  LogLogFit fit = fit_loglog(xs, ys);
  REQUIRE(fit.slope == Catch::Approx(0.5).margin(1e-9));
  REQUIRE(fit.intercept == Catch::Approx(std::log(3.0)).margin(1e-9));
  for (double r : fit.residuals) REQUIRE(std::abs(r) < 1e-9);
  REQUIRE_THROWS_AS(fit_loglog({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("dominance of identical strategies is statistically near zero") {
  auto prop = make_min_degree_property(1, DegreeMode::Full);
  DominanceReport rep = dominance(300, smin(), smin(), prop, 200, 5, 0);
  // two-sample CDF distance for identical distributions, 200 trials each
  REQUIRE(rep.epsilon < 0.15);
  REQUIRE(rep.censored_a == 0);
  REQUIRE(rep.censored_b == 0);
}

TEST_CASE("dominance epsilon is non-increasing in the shift") {
  auto prop = make_min_degree_property(2, DegreeMode::Full);
  HittingStats a = estimate_hitting(300, smin(), prop, 100, 21);
  HittingStats b = estimate_hitting(
      300,
      []() { return uniform_strategy(UniformMode::Multigraph); },
      prop, 100, 22);
  double prev = 1.0;
  for (std::uint64_t shift : {0ull, 20ull, 100ull, 400ull}) {
    DominanceReport rep = dominance(a, b, shift);
    REQUIRE(rep.epsilon <= prev + 1e-12);
    prev = rep.epsilon;
  }
}
