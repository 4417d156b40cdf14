#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "semirandom/engine.hpp"
#include "semirandom/montecarlo.hpp"
#include "semirandom/small_graph.hpp"

namespace semirandom {

// --- OfferSequence / plan files ---------------------------------------------
// Text: first line "n m", then m lines of 1-based vertex ids.
// Binary: u32 n, u64 m (little endian), then m little-endian u32 0-based ids.

inline void write_sequence_text(std::ostream& os, std::uint32_t n,
                                const std::vector<Vertex>& entries) {
  os << n << ' ' << entries.size() << '\n';
  for (Vertex v : entries) os << (v + 1) << '\n';
}

inline void write_sequence_binary(std::ostream& os, std::uint32_t n,
                                  const std::vector<Vertex>& entries) {
  auto put32 = [&](std::uint32_t x) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    os.write(b, 4);
  };
  auto put64 = [&](std::uint64_t x) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    os.write(b, 8);
  };
  put32(n);
  put64(entries.size());
  for (Vertex v : entries) put32(v);
}

inline OfferSequence read_sequence_text(std::istream& in) {
  std::uint32_t n;
  std::uint64_t m;
  if (!(in >> n >> m)) throw std::invalid_argument("bad sequence header");
  std::vector<Vertex> entries;
  entries.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t v;
    if (!(in >> v)) throw std::invalid_argument("sequence shorter than its header");
    if (v == 0 || v > n) throw std::invalid_argument("sequence ids are 1-based in [n]");
    entries.push_back(static_cast<Vertex>(v - 1));
  }
  return OfferSequence::materialized(n, std::move(entries));
}

inline OfferSequence read_sequence_binary(std::istream& in) {
  auto get32 = [&]() {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
      throw std::invalid_argument("truncated binary sequence");
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return x;
  };
  auto get64 = [&]() {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
      throw std::invalid_argument("truncated binary sequence");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return x;
  };
  std::uint32_t n = get32();
  std::uint64_t m = get64();
  std::vector<Vertex> entries;
  entries.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) entries.push_back(get32());
  return OfferSequence::materialized(n, std::move(entries));
}

// Sniff text vs binary: a text file begins with decimal digits / whitespace.
inline OfferSequence read_sequence_auto(std::istream& in) {
  int c = in.peek();
  bool text = c == ' ' || c == '\t' || c == '\n' || c == '\r' || (c >= '0' && c <= '9');
  return text ? read_sequence_text(in) : read_sequence_binary(in);
}

inline OfferSequence read_sequence_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open sequence file: " + path);
  return read_sequence_auto(f);
}

// Plans use the same layout: "n m" header, then one 1-based endpoint per line.
inline void write_plan_text(std::ostream& os, std::uint32_t n, const std::vector<Vertex>& plan) {
  write_sequence_text(os, n, plan);
}

inline std::vector<Vertex> read_plan_text(std::istream& in) {
  return read_sequence_text(in).entries();
}

// --- RunRecord / trial exports ----------------------------------------------

inline nlohmann::json run_record_json(const RunRecord& rec) {
  nlohmann::json hits = nlohmann::json::object();
  for (const auto& [name, round] : rec.hits) {
    if (round)
      hits[name] = *round;
    else
      hits[name] = nullptr;
  }
  return nlohmann::json{{"n", rec.n},
                        {"seed", rec.seed},
                        {"rounds", rec.rounds},
                        {"failures", rec.failures},
                        {"hits", hits}};
}

inline void write_trials_csv(std::ostream& os, const HittingStats& stats) {
  os << "trial,seed,n,rounds,hit_round,censored\n";
  for (std::size_t i = 0; i < stats.trials.size(); ++i) {
    const auto& t = stats.trials[i];
    os << i << ',' << t.seed << ',' << stats.n << ',' << t.rounds << ',';
    if (t.hit) os << *t.hit;
    os << ',' << (t.censored ? 1 : 0) << '\n';
  }
}

inline nlohmann::json hitting_summary_json(const HittingStats& stats) {
  nlohmann::json j{{"n", stats.n},
                   {"base_seed", stats.base_seed},
                   {"trials", stats.trials.size()},
                   {"censored", stats.censored},
                   {"mean", stats.mean},
                   {"mean_over_n", stats.mean_over_n},
                   {"stderr", stats.stderr_mean}};
  j["q05"] = std::isfinite(stats.q05) ? nlohmann::json(stats.q05) : nlohmann::json(nullptr);
  j["q50"] = std::isfinite(stats.q50) ? nlohmann::json(stats.q50) : nlohmann::json(nullptr);
  j["q95"] = std::isfinite(stats.q95) ? nlohmann::json(stats.q95) : nlohmann::json(nullptr);
  return j;
}

// --- Small-graph specs --------------------------------------------------------
// Built-in names K<r>, C<r>, P<r>, matching:<n>, or an edge-list file.

inline SmallGraph parse_small_graph(const std::string& spec) {
  auto parse_num = [&](std::size_t from) {
    if (from >= spec.size()) throw std::invalid_argument("bad graph spec: " + spec);
    std::size_t pos = 0;
    unsigned long v = std::stoul(spec.substr(from), &pos);
    if (from + pos != spec.size()) throw std::invalid_argument("bad graph spec: " + spec);
    return static_cast<std::uint32_t>(v);
  };
  if (spec.rfind("matching:", 0) == 0) return SmallGraph::matching(parse_num(9));
  if (spec.rfind("file=", 0) == 0) {
    std::ifstream f(spec.substr(5));
    if (!f) throw std::runtime_error("cannot open graph file: " + spec.substr(5));
    return SmallGraph::from_edge_list(f);
  }
  if (spec.size() >= 2 && (spec[0] == 'K' || spec[0] == 'C' || spec[0] == 'P') &&
      spec[1] >= '0' && spec[1] <= '9') {
    std::uint32_t r = parse_num(1);
    if (spec[0] == 'K') return SmallGraph::complete(r);
    if (spec[0] == 'C') return SmallGraph::cycle(r);
    return SmallGraph::path(r);
  }
  throw std::invalid_argument("unknown graph spec: " + spec);
}

}  // namespace semirandom
