#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semirandom {

// A simple pattern graph on vertices 0..n-1 (no loops, no multiplicities).
// Used for subgraph targets, offline demands, and spanning templates.
struct SmallGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  void add_edge(std::uint32_t u, std::uint32_t v) {
    if (u >= n || v >= n) throw std::out_of_range("SmallGraph edge out of range");
    if (u == v) throw std::invalid_argument("SmallGraph forbids loops");
    for (auto [a, b] : edges)
      if ((a == u && b == v) || (a == v && b == u))
        throw std::invalid_argument("SmallGraph forbids parallel edges");
    edges.emplace_back(u, v);
  }

  std::vector<std::uint32_t> degrees() const {
    std::vector<std::uint32_t> d(n, 0);
    for (auto [u, v] : edges) {
      ++d[u];
      ++d[v];
    }
    return d;
  }

  std::vector<std::vector<std::uint32_t>> adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  static SmallGraph complete(std::uint32_t k) {
    SmallGraph g;
    g.n = k;
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = i + 1; j < k; ++j) g.edges.emplace_back(i, j);
    return g;
  }

  static SmallGraph cycle(std::uint32_t k) {
    if (k < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
    SmallGraph g;
    g.n = k;
    for (std::uint32_t i = 0; i < k; ++i) g.edges.emplace_back(i, (i + 1) % k);
    return g;
  }

  // Path on k vertices (k-1 edges).
  static SmallGraph path(std::uint32_t k) {
    SmallGraph g;
    g.n = k;
    for (std::uint32_t i = 0; i + 1 < k; ++i) g.edges.emplace_back(i, i + 1);
    return g;
  }

  // Perfect matching on k vertices; k must be even.
  static SmallGraph matching(std::uint32_t k) {
    if (k % 2 != 0) throw std::invalid_argument("matching needs even vertex count");
    SmallGraph g;
    g.n = k;
    for (std::uint32_t i = 0; i < k; i += 2) g.edges.emplace_back(i, i + 1);
    return g;
  }

  static SmallGraph empty(std::uint32_t k) {
    SmallGraph g;
    g.n = k;
    return g;
  }

  // Edge-list text: pairs of 1-based vertex ids, one edge per line.
  // Vertex count is the largest id seen.
  static SmallGraph from_edge_list(std::istream& in) {
    SmallGraph g;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::uint32_t u, v;
      if (!(ls >> u >> v)) continue;
      if (u == 0 || v == 0) throw std::invalid_argument("edge list ids are 1-based");
      raw.emplace_back(u - 1, v - 1);
      g.n = std::max({g.n, u, v});
    }
    for (auto [u, v] : raw) g.add_edge(u, v);
    return g;
  }
};

}  // namespace semirandom
