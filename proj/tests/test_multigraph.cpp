#include <catch_amalgamated.hpp>

#include <algorithm>
#include <utility>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "semirandom/multigraph.hpp"
#include "semirandom/rng.hpp"

using namespace semirandom;

TEST_CASE("construction rejects n = 0") {
  REQUIRE_THROWS_AS(MultiGraph(0), std::invalid_argument);
}

TEST_CASE("edge kinds and degree modes") {
  MultiGraph g(3);
  REQUIRE(g.add_edge(0, 1) == EdgeKind::Fresh);
  REQUIRE(g.add_edge(0, 1) == EdgeKind::Duplicate);
  REQUIRE(g.add_edge(1, 0) == EdgeKind::Duplicate);
  REQUIRE(g.add_edge(2, 2) == EdgeKind::Loop);

  REQUIRE(g.degree(0, DegreeMode::Simple) == 1);
  REQUIRE(g.degree(0, DegreeMode::NoLoops) == 3);
  REQUIRE(g.degree(0, DegreeMode::Full) == 3);
  REQUIRE(g.degree(2, DegreeMode::Simple) == 0);
  REQUIRE(g.degree(2, DegreeMode::NoLoops) == 0);
  REQUIRE(g.degree(2, DegreeMode::Full) == 2);
  REQUIRE(g.multiplicity(0, 1) == 3);
  REQUIRE(g.multiplicity(1, 0) == 3);
  REQUIRE(g.multiplicity(2, 2) == 1);
  REQUIRE(g.num_edges() == 4);
}

TEST_CASE("double edge on two vertices: SIMPLE vs NO_LOOPS thresholds") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  REQUIRE(g.min_degree(DegreeMode::Simple) == 1);
  REQUIRE(g.min_degree(DegreeMode::NoLoops) == 2);
  REQUIRE(g.min_degree(DegreeMode::Full) == 2);
}

TEST_CASE("loop counts two in FULL degree only") {
  MultiGraph g(1);
  g.add_edge(0, 0);
  REQUIRE(g.degree(0, DegreeMode::Full) == 2);
  REQUIRE(g.degree(0, DegreeMode::NoLoops) == 0);
  REQUIRE(g.degree(0, DegreeMode::Simple) == 0);
}

TEST_CASE("degrees recomputed from the edge log match the buckets") {
  Rng rng(42);
  MultiGraph g(20);
  for (int i = 0; i < 500; ++i) g.add_edge(rng.vertex(20), rng.vertex(20));

  std::map<Vertex, std::uint32_t> full, noloops;
  std::map<Vertex, std::set<Vertex>> simple;
  for (auto [u, v] : g.edge_log()) {
    if (u == v) {
      full[u] += 2;
    } else {
      full[u] += 1;
      full[v] += 1;
      noloops[u] += 1;
      noloops[v] += 1;
      simple[u].insert(v);
      simple[v].insert(u);
    }
  }
  for (Vertex v = 0; v < 20; ++v) {
    REQUIRE(g.degree(v, DegreeMode::Full) == full[v]);
    REQUIRE(g.degree(v, DegreeMode::NoLoops) == noloops[v]);
    REQUIRE(g.degree(v, DegreeMode::Simple) == simple[v].size());
    for (DegreeMode m : kAllDegreeModes) {
      const auto& bucket = std::as_const(g).buckets(m).bucket(g.degree(v, m));
      REQUIRE(std::find(bucket.begin(), bucket.end(), v) != bucket.end());
    }
  }
  for (DegreeMode m : kAllDegreeModes) {
    std::uint32_t mn = ~0u;
    for (Vertex v = 0; v < 20; ++v) mn = std::min(mn, g.degree(v, m));
    REQUIRE(g.min_degree(m) == mn);
  }
}

TEST_CASE("min-degree sampling is uniform (chi-square)") {
  MultiGraph g(10);
  g.add_edge(8, 9);  // vertices 0..7 stay at minimum degree 0
  Rng rng(7);
  std::vector<std::uint64_t> counts(10, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[g.sample_min_degree_vertex(DegreeMode::Full, rng)];
  REQUIRE(counts[8] == 0);
  REQUIRE(counts[9] == 0);
  double expected = draws / 8.0;
  double chi2 = 0.0;
  for (int v = 0; v < 8; ++v) {
    double d = counts[v] - expected;
    chi2 += d * d / expected;
  }
  // 7 degrees of freedom; 24.3 is the 0.001 tail
  REQUIRE(chi2 < 24.3);
}

TEST_CASE("min-degree sampling with exclusion") {
  MultiGraph g(3);
  g.add_edge(1, 2);  // vertex 0 is the unique minimum
  Rng rng(3);
  // excluding the sole minimum falls through to the next bucket
  for (int i = 0; i < 50; ++i) {
    Vertex v = g.sample_min_degree_vertex(DegreeMode::Full, rng, Vertex{0});
    REQUIRE((v == 1 || v == 2));
  }
  for (int i = 0; i < 50; ++i)
    REQUIRE(g.sample_min_degree_vertex(DegreeMode::Full, rng) == 0);
}

TEST_CASE("exclusion with a single vertex is an error") {
  MultiGraph g(1);
  Rng rng(1);
  REQUIRE_THROWS_AS(g.sample_min_degree_vertex(DegreeMode::Full, rng, Vertex{0}),
                    std::logic_error);
}

TEST_CASE("rng bounded draws are unbiased and reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.below(17) == b.below(17));
  Rng r(5);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 50000; ++i) ++seen[r.below(5)];
  for (int v = 0; v < 5; ++v) REQUIRE(std::abs(seen[v] - 10000) < 500);
}

TEST_CASE("derive_stream decorrelates trials deterministically") {
  REQUIRE(derive_stream(1, 0) == derive_stream(1, 0));
  REQUIRE(derive_stream(1, 0) != derive_stream(1, 1));
  REQUIRE(derive_stream(1, 0) != derive_stream(2, 0));
}

TEST_CASE("edge list export is 1-based") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  std::ostringstream os;
  g.write_edge_list(os);
  REQUIRE(os.str() == "1 2\n");
}
