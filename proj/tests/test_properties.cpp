#include <catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "semirandom/properties.hpp"
#include "semirandom/rng.hpp"
#include "semirandom/small_graph.hpp"
#include "semirandom/strategies.hpp"

using namespace semirandom;

namespace {

SimpleGraph from_edges(std::uint32_t n,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  SmallGraph h;
  h.n = n;
  for (auto [u, v] : edges) h.add_edge(u, v);
  return SimpleGraph::from(h);
}

// Exhaustive k-connectivity: n > k and no vertex subset of size < k whose
// removal disconnects (or empties) the graph.
bool kconn_brute(const SimpleGraph& g, std::uint32_t k) {
  if (g.n <= k) return false;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) >= k) continue;
    // vertices with bit set are removed; check connectivity of the rest
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.n; ++v)
      if (!(mask >> v & 1)) rest.push_back(v);
    if (rest.empty()) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<Vertex> stack{rest[0]};
    seen[rest[0]] = 1;
    std::size_t cnt = 0;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++cnt;
      for (Vertex w : g.adj[v])
        if (!(mask >> w & 1) && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (cnt != rest.size()) return false;
  }
  return true;
}

bool pm_brute(const SimpleGraph& g, std::uint32_t used) {
  Vertex v = 0;
  while (v < g.n && (used >> v & 1)) ++v;
  if (v == g.n) return true;
  for (Vertex w : g.adj[v])
    if (!(used >> w & 1))
      if (pm_brute(g, used | (1u << v) | (1u << w))) return true;
  return false;
}

SimpleGraph random_graph(std::uint32_t n, double p, Rng& rng) {
  SmallGraph h;
  h.n = n;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (rng.unit() < p) h.add_edge(u, v);
  return SimpleGraph::from(h);
}

}  // namespace

TEST_CASE("k-connectivity on named graphs") {
  SimpleGraph k4 = SimpleGraph::from(SmallGraph::complete(4));
  REQUIRE(is_k_connected(k4, 3));
  REQUIRE_FALSE(is_k_connected(k4, 4));  // n <= k

  SimpleGraph c5 = SimpleGraph::from(SmallGraph::cycle(5));
  REQUIRE(is_k_connected(c5, 2));
  REQUIRE_FALSE(is_k_connected(c5, 3));

  SimpleGraph star = from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  REQUIRE(is_k_connected(star, 1));
  REQUIRE_FALSE(is_k_connected(star, 2));

  SimpleGraph lone = from_edges(1, {});
  REQUIRE(is_k_connected(lone, 0));
  REQUIRE_FALSE(is_k_connected(lone, 1));
}

TEST_CASE("k-connectivity matches exhaustive cut enumeration (n <= 7)") {
  Rng rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(6));
    double p = 0.2 + 0.6 * rng.unit();
    SimpleGraph g = random_graph(n, p, rng);
    for (std::uint32_t k = 1; k <= 4; ++k)
      REQUIRE(is_k_connected(g, k) == kconn_brute(g, k));
  }
}

TEST_CASE("subgraph containment basics") {
  SimpleGraph c4 = SimpleGraph::from(SmallGraph::cycle(4));
  REQUIRE_FALSE(contains_subgraph(c4, SmallGraph::complete(3)));
  REQUIRE(contains_subgraph(c4, SmallGraph::empty(2)));
  REQUIRE(contains_subgraph(c4, SmallGraph::path(4)));
  REQUIRE(contains_subgraph(c4, SmallGraph::cycle(4)));
  REQUIRE_FALSE(contains_subgraph(c4, SmallGraph::complete(5)));

  SimpleGraph k5 = SimpleGraph::from(SmallGraph::complete(5));
  REQUIRE(contains_subgraph(k5, SmallGraph::cycle(5)));
  REQUIRE(contains_subgraph(k5, SmallGraph::matching(4)));
}

TEST_CASE("perfect matching matches exhaustive search (n <= 10)") {
  Rng rng(555);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint32_t n = 2 * (1 + static_cast<std::uint32_t>(rng.below(5)));
    SimpleGraph g = random_graph(n, 0.15 + 0.7 * rng.unit(), rng);
    REQUIRE(has_perfect_matching(g) == pm_brute(g, 0));
  }
}

TEST_CASE("perfect matching on odd n is a structured error") {
  SimpleGraph g = SimpleGraph::from(SmallGraph::complete(3));
  REQUIRE_THROWS_AS(has_perfect_matching(g), OddOrderError);
}

TEST_CASE("PM and Hamilton on named graphs") {
  SimpleGraph c4 = SimpleGraph::from(SmallGraph::cycle(4));
  REQUIRE(has_perfect_matching(c4));
  REQUIRE(has_hamilton_cycle(c4));

  SimpleGraph p4 = SimpleGraph::from(SmallGraph::path(4));
  REQUIRE(has_perfect_matching(p4));
  REQUIRE_FALSE(has_hamilton_cycle(p4));

  SmallGraph two_triangles;
  two_triangles.n = 6;
  two_triangles.add_edge(0, 1);
  two_triangles.add_edge(1, 2);
  two_triangles.add_edge(0, 2);
  two_triangles.add_edge(3, 4);
  two_triangles.add_edge(4, 5);
  two_triangles.add_edge(3, 5);
  SimpleGraph tt = SimpleGraph::from(two_triangles);
  // each triangle is an odd component, so no perfect matching exists
  // (confirmed by the exhaustive oracle)
  REQUIRE_FALSE(has_perfect_matching(tt));
  REQUIRE(pm_brute(tt, 0) == false);
  REQUIRE_FALSE(has_hamilton_cycle(tt));
}

TEST_CASE("hamilton agrees with necessary/sufficient structure on small random graphs") {
  // sanity on complete graphs and near-empty graphs
  for (std::uint32_t n = 3; n <= 8; ++n) {
    REQUIRE(has_hamilton_cycle(SimpleGraph::from(SmallGraph::complete(n))));
    REQUIRE_FALSE(has_hamilton_cycle(SimpleGraph::from(SmallGraph::path(n))));
  }
}

TEST_CASE("degeneracy on named graphs with valid ordering") {
  for (std::uint32_t d = 1; d <= 5; ++d) {
    auto res = degeneracy(SmallGraph::complete(d + 1));
    REQUIRE(res.d == d);
  }
  auto cyc = degeneracy(SmallGraph::cycle(6));
  REQUIRE(cyc.d == 2);
  auto tree = degeneracy(SmallGraph::path(7));
  REQUIRE(tree.d == 1);

  // ordering property: every vertex has at most d earlier neighbors
  SmallGraph h = SmallGraph::complete(4);
  h.n = 7;
  h.add_edge(3, 4);
  h.add_edge(4, 5);
  h.add_edge(5, 6);
  auto res = degeneracy(h);
  auto adj = h.adjacency();
  std::vector<std::uint32_t> rank(h.n);
  for (std::uint32_t i = 0; i < h.n; ++i) rank[res.ordering[i]] = i;
  for (std::uint32_t i = 0; i < h.n; ++i) {
    std::uint32_t back = 0;
    for (std::uint32_t w : adj[res.ordering[i]])
      if (rank[w] < i) ++back;
    REQUIRE(back <= res.d);
  }
}

TEST_CASE("min_max_outdegree on named graphs and density oracle") {
  REQUIRE(min_max_outdegree(SmallGraph::complete(3)) == 1);
  REQUIRE(min_max_outdegree(SmallGraph::complete(4)) == 2);
  REQUIRE(min_max_outdegree(SmallGraph::path(5)) == 1);
  REQUIRE(min_max_outdegree(SmallGraph::empty(3)) == 0);

  // r = ceil(max density over subgraphs); for K_r that is ceil(C(r,2)/r)
  REQUIRE(min_max_outdegree(SmallGraph::cycle(6)) == 1);
}

TEST_CASE("min_max_outdegree <= degeneracy for all graphs with |E| <= 8") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(4));
    SmallGraph h;
    h.n = n;
    for (std::uint32_t u = 0; u < n && h.edges.size() < 8; ++u)
      for (std::uint32_t v = u + 1; v < n && h.edges.size() < 8; ++v)
        if (rng.unit() < 0.5) h.add_edge(u, v);
    REQUIRE(min_max_outdegree(h) <= degeneracy(h).d);
  }
}

TEST_CASE("predicate monotonicity along a run's edge log") {
  auto strat = min_degree_strategy(DegreeMode::Full, false, MinDegreeTiming::BeforeOffer);
  StopCondition stop;
  stop.budget = 120;
  RunRecord rec = run(12, *strat, stop, 17, {}, {.keep_edge_log = true});
  std::vector<TrackedProperty> props = {
      make_min_degree_property(2, DegreeMode::Full),
      make_k_connected_property(2),
      make_subgraph_property(SmallGraph::complete(3), "K3"),
      make_perfect_matching_property(),
      make_hamilton_property(),
  };
  for (const auto& p : props) {
    MultiGraph g(12);
    bool was = false;
    for (auto [u, v] : rec.edge_log) {
      g.add_edge(u, v);
      bool now = p.eval(g);
      REQUIRE((was ? now : true));
      was = now;
    }
  }
}

TEST_CASE("min degree predicate factories and gates") {
  auto p = make_min_degree_property(2, DegreeMode::Full);
  REQUIRE(p.name == "min_degree:k=2:mode=full");
  MultiGraph g(2);
  g.add_edge(0, 1);
  REQUIRE_FALSE(p.eval(g));
  g.add_edge(0, 1);
  REQUIRE(p.eval(g));

  auto kc = make_k_connected_property(2);
  REQUIRE(kc.expensive);
  REQUIRE_FALSE(kc.gate(g));  // n=2 simple degree 1 < 2
}
