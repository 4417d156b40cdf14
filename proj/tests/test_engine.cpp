#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "semirandom/engine.hpp"
#include "semirandom/properties.hpp"
#include "semirandom/strategies.hpp"

using namespace semirandom;

namespace {

std::unique_ptr<Strategy> connect_to_offered() {
  return std::make_unique<FunctionStrategy>(
      [](const ProcessView&, Vertex offered, Rng&) { return offered; });
}

std::unique_ptr<Strategy> connect_to_other() {
  return std::make_unique<FunctionStrategy>(
      [](const ProcessView& view, Vertex offered, Rng&) {
        return static_cast<Vertex>((offered + 1) % view.graph.num_vertices());
      });
}

}  // namespace

TEST_CASE("n=1 with self-connection: budget of loops") {
  auto s = connect_to_offered();
  StopCondition stop;
  stop.budget = 3;
  RunRecord rec = run(1, *s, stop, 11, {}, {.keep_edge_log = true});
  REQUIRE(rec.rounds == 3);
  REQUIRE(rec.failures == 3);  // all loops
  REQUIRE(rec.edge_log.size() == 3);
  MultiGraph g(1);
  for (auto [u, v] : rec.edge_log) g.add_edge(u, v);
  REQUIRE(g.degree(0, DegreeMode::Full) == 6);
}

TEST_CASE("n=2 stop on FULL min degree 1 hits at round 1") {
  auto s = connect_to_other();
  StopCondition stop;
  stop.stop_on = {"goal"};
  TrackedProperty prop{"goal",
                       [](const MultiGraph& g) { return g.min_degree(DegreeMode::Full) >= 1; },
                       false,
                       {}};
  RunRecord rec = run(2, *s, stop, 5, {prop});
  REQUIRE(rec.rounds == 1);
  REQUIRE(rec.hits.at("goal") == 1);
}

TEST_CASE("determinism: identical seeds give identical records") {
  for (int rep = 0; rep < 2; ++rep) {
    auto a = min_degree_strategy(DegreeMode::Full, false, MinDegreeTiming::BeforeOffer);
    auto b = min_degree_strategy(DegreeMode::Full, false, MinDegreeTiming::BeforeOffer);
    StopCondition stop;
    stop.budget = 500;
    auto prop = make_min_degree_property(1, DegreeMode::Full);
    RunRecord ra = run(100, *a, stop, 99, {prop}, {.keep_edge_log = true});
    RunRecord rb = run(100, *b, stop, 99, {prop}, {.keep_edge_log = true});
    REQUIRE(ra.rounds == rb.rounds);
    REQUIRE(ra.failures == rb.failures);
    REQUIRE(ra.edge_log == rb.edge_log);
    REQUIRE(ra.hits == rb.hits);
  }
}

TEST_CASE("every edge is incident to the round's offered vertex") {
  OfferSequence seq = OfferSequence::seeded(50, 31);
  auto offers = seq.materialize(300);
  // a strategy that consumes no rng draws leaves the offer stream identical
  // to the plain seeded sequence
  auto s = connect_to_other();
  StopCondition stop;
  stop.budget = 300;
  RunRecord rec = run(50, *s, stop, 31, {}, {.keep_edge_log = true});
  REQUIRE(rec.edge_log.size() == 300);
  // the engine draws offers from the same stream the seeded sequence uses
  for (std::size_t i = 0; i < 300; ++i) REQUIRE(rec.edge_log[i].first == offers[i]);
}

TEST_CASE("offer stream is uniform over 1e6 draws") {
  OfferSequence seq = OfferSequence::seeded(10, 2024);
  auto offers = seq.materialize(1000000);
  std::vector<std::uint64_t> c(10, 0);
  for (Vertex v : offers) ++c[v];
  // 4 sigma with sigma = sqrt(1e6 * 0.1 * 0.9) = 300
  for (int v = 0; v < 10; ++v)
    REQUIRE(std::llabs(static_cast<long long>(c[v]) - 100000) < 1200);
}

TEST_CASE("out-of-range strategy choice is an error") {
  FunctionStrategy s([](const ProcessView&, Vertex, Rng&) { return Vertex{7}; });
  StopCondition stop;
  stop.budget = 1;
  REQUIRE_THROWS_AS(run(3, s, stop, 1), std::out_of_range);
}

TEST_CASE("stop_on with untracked name is an error") {
  auto s = connect_to_other();
  StopCondition stop;
  stop.stop_on = {"nope"};
  REQUIRE_THROWS_AS(run(3, *s, stop, 1), std::invalid_argument);
}

TEST_CASE("hard cap censors unreachable goals") {
  auto s = connect_to_other();  // on n=2 both vertices alternate, never 3-connected
  StopCondition stop;
  stop.stop_on = {"k_connected:k=3"};
  stop.hard_cap = 50;
  RunRecord rec = run(2, *s, stop, 8, {make_k_connected_property(3)});
  REQUIRE(rec.censored);
  REQUIRE(rec.rounds == 50);
  REQUIRE_FALSE(rec.hits.at("k_connected:k=3").has_value());
}

TEST_CASE("expensive stride-checked property reports the exact hitting round") {
  // cheap twin vs expensive twin of the same predicate must agree exactly
  auto cheap = make_min_degree_property(2, DegreeMode::Simple);
  TrackedProperty expensive{"expensive_twin",
                            [](const MultiGraph& g) {
                              return g.min_degree(DegreeMode::Simple) >= 2;
                            },
                            true,
                            {}};
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    auto a = min_degree_strategy(DegreeMode::Simple, true, MinDegreeTiming::BeforeOffer);
    StopCondition stop;
    stop.stop_on = {cheap.name};
    RunRecord rec = run(200, *a, stop, seed, {cheap, expensive});
    REQUIRE(rec.hits.at(cheap.name).has_value());
    REQUIRE(rec.hits.at("expensive_twin") == rec.hits.at(cheap.name));
  }
}

TEST_CASE("run_offline replays a fixed plan") {
  OfferSequence seq = OfferSequence::materialized(3, {0, 1, 2});
  MultiGraph g = run_offline(seq, {1, 2, 0});
  REQUIRE(g.multiplicity(0, 1) == 1);
  REQUIRE(g.multiplicity(1, 2) == 1);
  REQUIRE(g.multiplicity(2, 0) == 1);

  OfferSequence dup = OfferSequence::materialized(2, {0, 0});
  MultiGraph g2 = run_offline(dup, {1, 1});
  REQUIRE(g2.multiplicity(0, 1) == 2);

  MultiGraph g3 = run_offline(seq, {});
  REQUIRE(g3.num_edges() == 0);
}

TEST_CASE("offer_counts and occupancy") {
  auto c = offer_counts({0, 0, 1}, 3);
  REQUIRE(c == std::vector<std::uint64_t>{2, 1, 0});
  auto x = occupancy(c);
  REQUIRE(x == std::vector<std::uint64_t>{1, 1, 1});

  auto empty = occupancy(offer_counts({}, 2));
  REQUIRE(empty == std::vector<std::uint64_t>{2});

  auto both = occupancy(offer_counts({0, 1}, 2));
  REQUIRE(both == std::vector<std::uint64_t>{0, 2});
}

TEST_CASE("materialized sequences validate entries") {
  REQUIRE_THROWS_AS(OfferSequence::materialized(2, {0, 2}), std::out_of_range);
  OfferSequence s = OfferSequence::materialized(2, {0, 1});
  REQUIRE(s.is_materialized());
  REQUIRE_THROWS_AS(s.seed(), std::logic_error);
  REQUIRE_THROWS_AS(s.materialize(3), std::out_of_range);
  REQUIRE(s.materialize(1) == std::vector<Vertex>{0});
}
