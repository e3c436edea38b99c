#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace mixvote {

// A set system over servers X = {1..m}: an ordered list of blocks, each an
// ordered (t+1)-tuple of distinct server ids.  Verification is exhaustive,
// so sizes are capped; larger inputs are rejected as intractable rather than
// sampled.
inline constexpr int kMaxVerifiableM = 25;
inline constexpr int kMaxVerifiableT = 4;

struct SetSystem {
  int m = 0;
  int t = 0;
  std::vector<std::vector<int>> blocks;

  int b() const { return static_cast<int>(blocks.size()); }

  friend bool operator==(const SetSystem& a, const SetSystem& b) {
    return a.m == b.m && a.t == b.t && a.blocks == b.blocks;
  }
};

struct VerifyResult {
  bool ok = false;
  std::string reason;
  // For a coverage failure: the adversary set every block intersects.
  std::vector<int> witness;

  explicit operator bool() const { return ok; }
};

namespace detail {

inline void check_caps(int m, int t) {
  if (m > kMaxVerifiableM || t > kMaxVerifiableT)
    throw std::invalid_argument(
        "set system verification intractable: exhaustive checking is capped at m <= 25, t <= 4");
}

inline std::uint32_t block_mask(const std::vector<int>& block) {
  std::uint32_t mask = 0;
  for (int id : block) mask |= std::uint32_t{1} << (id - 1);
  return mask;
}

// All k-subsets of {1..m} in lexicographic order, as bit masks.
inline void for_each_subset(int m, int k, const std::function<bool(std::uint32_t)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  if (k == 0) {
    fn(0);
    return;
  }
  if (k > m) return;
  while (true) {
    std::uint32_t mask = 0;
    for (int id : idx) mask |= std::uint32_t{1} << (id - 1);
    if (!fn(mask)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - (k - 1 - i)) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::vector<int> mask_to_ids(std::uint32_t mask) {
  std::vector<int> ids;
  for (int i = 0; i < 32; ++i)
    if (mask & (std::uint32_t{1} << i)) ids.push_back(i + 1);
  return ids;
}

}  // namespace detail

// Structural plus coverage verification: every block is a (t+1)-tuple of
// distinct ids in 1..m, and every adversary set F with |F| <= t misses at
// least one block entirely.  The first failing F (smallest, then
// lexicographic) is returned as a witness.
inline VerifyResult verify_verifiers(const SetSystem& s) {
  if (s.m < 1) return {false, "m must be >= 1", {}};
  if (s.t < 0) return {false, "t must be >= 0", {}};
  detail::check_caps(s.m, s.t);
  if (s.blocks.empty()) return {false, "no blocks", {}};
  for (const auto& block : s.blocks) {
    if (static_cast<int>(block.size()) != s.t + 1)
      return {false, "every block must have exactly t+1 members", {}};
    std::set<int> uniq(block.begin(), block.end());
    if (static_cast<int>(uniq.size()) != s.t + 1)
      return {false, "block members must be distinct", {}};
    for (int id : block)
      if (id < 1 || id > s.m) return {false, "server id out of range 1..m", {}};
  }
  std::vector<std::uint32_t> masks;
  masks.reserve(s.blocks.size());
  for (const auto& block : s.blocks) masks.push_back(detail::block_mask(block));
  VerifyResult res{true, "", {}};
  for (int k = 0; k <= s.t && res.ok; ++k) {
    detail::for_each_subset(s.m, k, [&](std::uint32_t f) {
      for (auto bm : masks)
        if ((bm & f) == 0) return true;  // some block dodges F; next subset
      res.ok = false;
      res.reason = "adversary set intersects every block";
      res.witness = detail::mask_to_ids(f);
      return false;
    });
  }
  return res;
}

// t-confinement: every server set T with |T| = t occupies at most t distinct
// (block, position) slots across the whole system.
inline VerifyResult check_confinement(const SetSystem& s) {
  auto base = verify_verifiers(s);
  if (!base.ok) return base;
  if (s.t == 0) return {true, "", {}};
  VerifyResult res{true, "", {}};
  detail::for_each_subset(s.m, s.t, [&](std::uint32_t tm) {
    int slots = 0;
    for (const auto& block : s.blocks)
      for (int id : block)
        if (tm & (std::uint32_t{1} << (id - 1))) ++slots;
    if (slots > s.t) {
      res.ok = false;
      res.reason = "server set occupies more than t slots";
      res.witness = detail::mask_to_ids(tm);
      return false;
    }
    return true;
  });
  return res;
}

// Disjoint construction: m = (t+1)^2 servers split into t+1 consecutive
// blocks, so every server is used exactly once.
inline SetSystem build_disjoint(int t) {
  if (t < 0) throw std::invalid_argument("build_disjoint: t must be >= 0");
  detail::check_caps((t + 1) * (t + 1), t);
  SetSystem s;
  s.t = t;
  s.m = (t + 1) * (t + 1);
  for (int k = 0; k < t + 1; ++k) {
    std::vector<int> block;
    for (int j = 1; j <= t + 1; ++j) block.push_back(k * (t + 1) + j);
    s.blocks.push_back(std::move(block));
  }
  return s;
}

// Greedy construction over all (t+1)-subsets of {1..m}: repeatedly add the
// candidate block disjoint from the most still-uncovered adversary sets,
// breaking ties lexicographically, until every set of size t is covered.
inline SetSystem build_greedy(int m, int t) {
  if (t < 0) throw std::invalid_argument("build_greedy: t must be >= 0");
  if (m < t + 1) throw std::invalid_argument("build_greedy: need m >= t+1");
  detail::check_caps(m, t);
  SetSystem s;
  s.m = m;
  s.t = t;
  std::vector<std::uint32_t> uncovered;
  detail::for_each_subset(m, t, [&](std::uint32_t f) {
    uncovered.push_back(f);
    return true;
  });
  std::vector<std::uint32_t> candidates;
  detail::for_each_subset(m, t + 1, [&](std::uint32_t c) {
    candidates.push_back(c);
    return true;
  });
  while (!uncovered.empty()) {
    std::uint32_t best = 0;
    std::size_t best_count = 0;
    for (auto c : candidates) {
      std::size_t count = 0;
      for (auto f : uncovered)
        if ((c & f) == 0) ++count;
      if (count > best_count) {  // strict: keeps the lexicographically first
        best_count = count;
        best = c;
      }
    }
    if (best_count == 0)
      throw std::invalid_argument(
          "build_greedy: infeasible, no block avoids the remaining adversary sets (need m >= 2t+1)");
    s.blocks.push_back(detail::mask_to_ids(best));
    std::vector<std::uint32_t> rest;
    rest.reserve(uncovered.size() - best_count);
    for (auto f : uncovered)
      if ((best & f) != 0) rest.push_back(f);
    uncovered = std::move(rest);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Communication DAG: receiver -> B_1 -> ... -> B_b -> sender, with middle
// vertices colored by server id.  Reshare mode uses complete bipartite edges
// between consecutive blocks; Confinement mode connects equal positions only.

enum class TransferMode : std::uint8_t { Reshare, Confinement };

struct VirtualDag {
  int t = 0;
  int positions = 0;  // t+1
  int levels = 0;     // number of blocks
  std::vector<std::vector<int>> color;        // [level][position] = server id
  std::vector<std::pair<int, int>> edges;     // vertex-index pairs
  // Vertex indexing: 0 = receiver, 1 + level*positions + pos = middle,
  // last = sender.
  int vertex_count = 0;

  int middle_vertex(int level, int pos) const { return 1 + level * positions + pos; }
  int receiver_vertex() const { return 0; }
  int sender_vertex() const { return vertex_count - 1; }
};

inline VirtualDag build_dag(const SetSystem& s, TransferMode mode) {
  auto v = verify_verifiers(s);
  if (!v.ok) throw std::invalid_argument("build_dag: set system fails verification: " + v.reason);
  VirtualDag d;
  d.t = s.t;
  d.positions = s.t + 1;
  d.levels = s.b();
  d.vertex_count = 2 + d.levels * d.positions;
  d.color.assign(static_cast<std::size_t>(d.levels), {});
  for (int k = 0; k < d.levels; ++k)
    d.color[static_cast<std::size_t>(k)] = s.blocks[static_cast<std::size_t>(k)];
  for (int j = 0; j < d.positions; ++j)
    d.edges.emplace_back(d.receiver_vertex(), d.middle_vertex(0, j));
  for (int k = 0; k + 1 < d.levels; ++k) {
    if (mode == TransferMode::Reshare) {
      for (int a = 0; a < d.positions; ++a)
        for (int bpos = 0; bpos < d.positions; ++bpos)
          d.edges.emplace_back(d.middle_vertex(k, a), d.middle_vertex(k + 1, bpos));
    } else {
      for (int j = 0; j < d.positions; ++j)
        d.edges.emplace_back(d.middle_vertex(k, j), d.middle_vertex(k + 1, j));
    }
  }
  for (int j = 0; j < d.positions; ++j)
    d.edges.emplace_back(d.middle_vertex(d.levels - 1, j), d.sender_vertex());
  return d;
}

// Does the receiver stay connected to the sender after deleting the vertices
// of every color subset of size t?  Exhaustive over color subsets.
inline bool check_t_cut(const VirtualDag& d, int t) {
  std::set<int> color_set;
  for (const auto& level : d.color) color_set.insert(level.begin(), level.end());
  std::vector<int> colors(color_set.begin(), color_set.end());
  const int k = std::min<int>(t, static_cast<int>(colors.size()));
  if (static_cast<int>(colors.size()) > kMaxVerifiableM || t > kMaxVerifiableT)
    throw std::invalid_argument("check_t_cut: verification intractable beyond m <= 25, t <= 4");

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d.vertex_count));
  for (auto [a, b] : d.edges) adj[static_cast<std::size_t>(a)].push_back(b);

  auto connected_without = [&](const std::set<int>& removed) {
    std::vector<bool> dead(static_cast<std::size_t>(d.vertex_count), false);
    for (int lvl = 0; lvl < d.levels; ++lvl)
      for (int pos = 0; pos < d.positions; ++pos)
        if (removed.count(d.color[static_cast<std::size_t>(lvl)][static_cast<std::size_t>(pos)]))
          dead[static_cast<std::size_t>(d.middle_vertex(lvl, pos))] = true;
    std::vector<bool> seen(static_cast<std::size_t>(d.vertex_count), false);
    std::vector<int> stack{d.receiver_vertex()};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == d.sender_vertex()) return true;
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!dead[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return false;
  };

  bool ok = true;
  std::function<void(std::size_t, std::set<int>&)> rec = [&](std::size_t start, std::set<int>& cur) {
    if (!ok) return;
    if (static_cast<int>(cur.size()) == k) {
      if (!connected_without(cur)) ok = false;
      return;
    }
    for (std::size_t i = start; i < colors.size(); ++i) {
      cur.insert(colors[i]);
      rec(i + 1, cur);
      cur.erase(colors[i]);
    }
  };
  std::set<int> cur;
  rec(0, cur);
  return ok;
}

// ---------------------------------------------------------------------------
// JSON file format: {"m": int, "t": int, "blocks": [[ids...], ...]}

inline nlohmann::ordered_json setsystem_to_json(const SetSystem& s) {
  nlohmann::ordered_json j;
  j["m"] = s.m;
  j["t"] = s.t;
  j["blocks"] = s.blocks;
  return j;
}

inline SetSystem setsystem_from_json(const nlohmann::json& j) {
  SetSystem s;
  if (!j.is_object() || !j.contains("m") || !j.contains("t") || !j.contains("blocks"))
    throw std::invalid_argument("set system json: need fields m, t, blocks");
  for (const auto& [key, _] : j.items())
    if (key != "m" && key != "t" && key != "blocks")
      throw std::invalid_argument("set system json: unknown field '" + key + "'");
  s.m = j.at("m").get<int>();
  s.t = j.at("t").get<int>();
  s.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  return s;
}

}  // namespace mixvote
