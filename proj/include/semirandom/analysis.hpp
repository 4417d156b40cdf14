#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semirandom/multigraph.hpp"
#include "semirandom/properties.hpp"

namespace semirandom {

// Expected number of bins with exactly k of m balls over n bins:
// n * C(m,k) * (1/n)^k * (1-1/n)^(m-k), evaluated by a stable recurrence.
inline double f_exact(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("f_exact requires k <= m");
  if (n == 0) throw std::invalid_argument("f_exact requires n >= 1");
  if (n == 1) return k == m ? 1.0 : 0.0;
  double nn = static_cast<double>(n);
  // t_0 = n (1 - 1/n)^m; t_{j+1} = t_j * (m - j) / ((j+1)(n-1))
  double t = nn * std::pow(1.0 - 1.0 / nn, static_cast<double>(m));
  for (std::uint64_t j = 0; j < k; ++j)
    t *= static_cast<double>(m - j) / (static_cast<double>(j + 1) * (nn - 1.0));
  return t;
}

// Poisson-regime simplification e^{-m/n} m^k / (k! n^{k-1}).
inline double f_asymptotic(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  double nn = static_cast<double>(n), mm = static_cast<double>(m);
  double v = nn * std::exp(-mm / nn);
  for (std::uint64_t j = 1; j <= k; ++j) v *= mm / (static_cast<double>(j) * nn);
  return v;
}

namespace detail {

inline long double fk_value(std::uint32_t k, long double x) {
  long double sum = 0.0L, term = 1.0L;  // term = x^i / i!
  for (std::uint32_t i = 0; i < k; ++i) {
    sum += static_cast<long double>(k - i) * term;
    term *= x / static_cast<long double>(i + 1);
  }
  return sum - x * std::exp(x);
}

inline double bisect(long double lo, long double hi,
                     const std::function<long double(long double)>& f) {
  long double flo = f(lo);
  if (!(flo > 0.0L) || !(f(hi) < 0.0L)) throw std::logic_error("bisection bracket failure");
  for (int it = 0; it < 200; ++it) {
    long double mid = 0.5L * (lo + hi);
    (f(mid) > 0.0L ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace detail

// Unique positive root of f_k(x) = sum_{i<k} (k-i) x^i/i! - x e^x on (0, k+1).
inline double alpha_k(std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("alpha_k requires k >= 1");
  return detail::bisect(1e-18L, static_cast<long double>(k) + 1.0L,
                        [k](long double x) { return detail::fk_value(k, x); });
}

// Closed forms for the first three min-degree constants.
inline double h_closed(std::uint32_t k) {
  double l2 = std::log(2.0);
  switch (k) {
    case 1:
      return l2;
    case 2:
      return l2 + std::log(1.0 + l2);
    case 3:
      return std::log(l2 * l2 + 2.0 * (1.0 + l2) * (1.0 + std::log(1.0 + l2)));
    default:
      throw std::invalid_argument("h_closed supports k in {1,2,3}");
  }
}

// Unique positive root of (2 + a) e^{-a} = 1 on [0.5, 2].
inline double alpha_ham() {
  return detail::bisect(0.5L, 2.0L, [](long double a) {
    return (2.0L + a) * std::exp(-a) - 1.0L;
  });
}

inline double alpha_kout() { return 1.0 + 2.0 * std::exp(-1.0); }

// Exact K_l count on the simple projection via degeneracy-ordered forward
// neighborhoods; |V| <= 1e4.
inline std::uint64_t clique_count(const SimpleGraph& g, std::uint32_t l) {
  if (l < 3) throw std::invalid_argument("clique_count requires l >= 3");
  if (g.n > 10000) throw std::invalid_argument("clique_count supports n <= 1e4");
  auto res = degeneracy(g);
  std::vector<std::uint32_t> rank(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) rank[res.ordering[i]] = i;
  // forward = neighbors later in the degeneracy ordering (<= d of them)
  std::vector<std::vector<Vertex>> fwd(g.n);
  for (Vertex v = 0; v < g.n; ++v)
    for (Vertex w : g.adj[v])
      if (rank[w] > rank[v]) fwd[v].push_back(w);

  std::uint64_t total = 0;
  std::vector<Vertex> cand;
  std::function<void(const std::vector<Vertex>&, std::uint32_t)> extend =
      [&](const std::vector<Vertex>& cands, std::uint32_t need) {
        if (need == 0) {
          ++total;
          return;
        }
        if (cands.size() < need) return;
        for (std::size_t i = 0; i < cands.size(); ++i) {
          Vertex v = cands[i];
          std::vector<Vertex> next;
          for (std::size_t j = i + 1; j < cands.size(); ++j)
            if (g.has_edge(v, cands[j])) next.push_back(cands[j]);
          extend(next, need - 1);
        }
      };
  for (Vertex v = 0; v < g.n; ++v) {
    // cliques whose degeneracy-first vertex is v
    std::vector<Vertex> cands = fwd[v];
    std::sort(cands.begin(), cands.end(),
              [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
    extend(cands, l - 1);
  }
  return total;
}

inline std::uint64_t clique_count(const MultiGraph& g, std::uint32_t l) {
  return clique_count(SimpleGraph::projection(g), l);
}

// Expected-clique upper bound (l-1)^(l-2) * m^(l-1) / n^(l-2).
inline double clique_bound(std::uint64_t n, std::uint64_t m, std::uint32_t l) {
  if (l < 3) throw std::invalid_argument("clique_bound requires l >= 3");
  double le = static_cast<double>(l);
  return std::pow(le - 1.0, le - 2.0) *
         std::pow(static_cast<double>(m), le - 1.0) /
         std::pow(static_cast<double>(n), le - 2.0);
}

struct ConstantRow {
  std::string name;
  double value;
  std::string method;  // closed-form | bisection
};

inline std::vector<ConstantRow> constant_table(std::uint32_t max_alpha_k = 5) {
  std::vector<ConstantRow> rows;
  for (std::uint32_t k = 1; k <= 3; ++k)
    rows.push_back({"h_" + std::to_string(k), h_closed(k), "closed-form"});
  for (std::uint32_t k = 1; k <= max_alpha_k; ++k)
    rows.push_back({"alpha_" + std::to_string(k), alpha_k(k), "bisection"});
  rows.push_back({"alpha_ham", alpha_ham(), "bisection"});
  rows.push_back({"alpha_kout", alpha_kout(), "closed-form"});
  return rows;
}

}  // namespace semirandom
