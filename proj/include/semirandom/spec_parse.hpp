#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "semirandom/io.hpp"
#include "semirandom/montecarlo.hpp"
#include "semirandom/properties.hpp"
#include "semirandom/strategies.hpp"

namespace semirandom {

struct SpecParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mini-grammar: name[:key=value[,key=value...]] with ':' accepted between
// pairs as well. A segment without '=' continues the previous value, so
// nested specs like graph=matching:6 survive the split.
struct ParsedSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

inline ParsedSpec parse_spec_string(const std::string& spec) {
  ParsedSpec out;
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : spec + std::string(1, ':')) {
    if (c == ':' || c == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (tokens.empty() || tokens.front().empty()) throw SpecParseError("empty spec: " + spec);
  out.name = tokens.front();
  std::string last_key;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.empty()) continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      if (last_key.empty()) throw SpecParseError("dangling value in spec: " + spec);
      out.params[last_key] += ":" + t;
    } else {
      last_key = t.substr(0, eq);
      out.params[last_key] = t.substr(eq + 1);
    }
  }
  return out;
}

namespace detail {

inline std::string take(std::map<std::string, std::string>& params, const std::string& key,
                        const std::string& fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::string v = it->second;
  params.erase(it);
  return v;
}

inline std::uint64_t take_u64(std::map<std::string, std::string>& params, const std::string& key,
                              std::uint64_t fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::uint64_t v = std::stoull(it->second);
  params.erase(it);
  return v;
}

inline void expect_empty(const std::map<std::string, std::string>& params,
                         const std::string& spec) {
  if (!params.empty())
    throw SpecParseError("unknown parameter '" + params.begin()->first + "' in: " + spec);
}

inline DegreeMode parse_mode(const std::string& s) {
  if (s == "simple") return DegreeMode::Simple;
  if (s == "no_loops") return DegreeMode::NoLoops;
  if (s == "full") return DegreeMode::Full;
  throw SpecParseError("unknown degree mode: " + s);
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw SpecParseError("bad boolean: " + s);
}

}  // namespace detail

// Strategy specs:
//   uniform[:mode=multigraph|simple-retry]
//   kout:k=K[,r=R]
//   bipartite
//   min_degree[:mode=M][,timing=before|after][,exclude=B]
//   degeneracy_embed:graph=SPEC | file=PATH
//   spanning_embed:graph=SPEC | file=PATH   (pattern must live on [n])
inline StrategyFactory make_strategy_factory(const std::string& spec) {
  ParsedSpec p = parse_spec_string(spec);
  auto params = p.params;
  if (p.name == "uniform") {
    std::string mode = detail::take(params, "mode", "multigraph");
    detail::expect_empty(params, spec);
    UniformMode m;
    if (mode == "multigraph")
      m = UniformMode::Multigraph;
    else if (mode == "simple-retry")
      m = UniformMode::SimpleRetry;
    else
      throw SpecParseError("unknown uniform mode: " + mode);
    return [m]() { return uniform_strategy(m); };
  }
  if (p.name == "kout") {
    std::uint32_t k = static_cast<std::uint32_t>(detail::take_u64(params, "k", 1));
    std::uint32_t r = static_cast<std::uint32_t>(detail::take_u64(params, "r", 0));
    detail::expect_empty(params, spec);
    return [k, r]() { return kout_strategy(k, r); };
  }
  if (p.name == "bipartite") {
    detail::expect_empty(params, spec);
    return []() { return bipartite_two_chance(); };
  }
  if (p.name == "min_degree") {
    DegreeMode mode = detail::parse_mode(detail::take(params, "mode", "full"));
    std::string timing = detail::take(params, "timing", "before");
    bool exclude = detail::parse_bool(detail::take(params, "exclude", "false"));
    detail::expect_empty(params, spec);
    MinDegreeTiming t;
    if (timing == "before")
      t = MinDegreeTiming::BeforeOffer;
    else if (timing == "after")
      t = MinDegreeTiming::AfterOffer;
    else
      throw SpecParseError("unknown timing: " + timing);
    return [mode, exclude, t]() { return min_degree_strategy(mode, exclude, t); };
  }
  if (p.name == "degeneracy_embed" || p.name == "spanning_embed") {
    std::string gspec = detail::take(params, "graph", "");
    std::string file = detail::take(params, "file", "");
    detail::expect_empty(params, spec);
    if (gspec.empty() == file.empty())
      throw SpecParseError("embed strategies need exactly one of graph=/file=");
    SmallGraph h = gspec.empty() ? parse_small_graph("file=" + file) : parse_small_graph(gspec);
    bool spanning = p.name == "spanning_embed";
    return [h, spanning]() -> std::unique_ptr<Strategy> {
      if (spanning) return spanning_embed(h);
      return degeneracy_embed(h);
    };
  }
  throw SpecParseError("unknown strategy: " + p.name);
}

// Predicate specs:
//   min_degree:k=K[,mode=M]
//   k_connected:k=K
//   subgraph:file=PATH | graph=SPEC
//   perfect_matching
//   hamilton
inline TrackedProperty make_predicate(const std::string& spec) {
  ParsedSpec p = parse_spec_string(spec);
  auto params = p.params;
  if (p.name == "min_degree") {
    std::uint32_t k = static_cast<std::uint32_t>(detail::take_u64(params, "k", 1));
    DegreeMode mode = detail::parse_mode(detail::take(params, "mode", "full"));
    detail::expect_empty(params, spec);
    return make_min_degree_property(k, mode);
  }
  if (p.name == "k_connected") {
    std::uint32_t k = static_cast<std::uint32_t>(detail::take_u64(params, "k", 1));
    detail::expect_empty(params, spec);
    return make_k_connected_property(k);
  }
  if (p.name == "subgraph") {
    std::string gspec = detail::take(params, "graph", "");
    std::string file = detail::take(params, "file", "");
    detail::expect_empty(params, spec);
    if (gspec.empty() == file.empty())
      throw SpecParseError("subgraph predicate needs exactly one of graph=/file=");
    std::string label = gspec.empty() ? file : gspec;
    SmallGraph h = gspec.empty() ? parse_small_graph("file=" + file) : parse_small_graph(gspec);
    return make_subgraph_property(h, label);
  }
  if (p.name == "perfect_matching") {
    detail::expect_empty(params, spec);
    return make_perfect_matching_property();
  }
  if (p.name == "hamilton") {
    detail::expect_empty(params, spec);
    return make_hamilton_property();
  }
  throw SpecParseError("unknown predicate: " + p.name);
}

// Parsed CLI configuration; serializing and re-parsing reproduces it.
struct ExperimentConfig {
  std::string command;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> grid;
  std::string strategy;
  std::string predicate;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "csv";
  std::string out;

  nlohmann::json to_json() const {
    return nlohmann::json{{"command", command}, {"n", n},           {"grid", grid},
                          {"strategy", strategy}, {"predicate", predicate},
                          {"trials", trials},   {"seed", seed},     {"threads", threads},
                          {"format", format},   {"out", out}};
  }

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    c.n = j.at("n").get<std::uint32_t>();
    c.grid = j.at("grid").get<std::vector<std::uint32_t>>();
    c.strategy = j.at("strategy").get<std::string>();
    c.predicate = j.at("predicate").get<std::string>();
    c.trials = j.at("trials").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.at("threads").get<unsigned>();
    c.format = j.at("format").get<std::string>();
    c.out = j.at("out").get<std::string>();
    return c;
  }
};

}  // namespace semirandom
