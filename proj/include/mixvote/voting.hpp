#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mixvote/group.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/rng.hpp"

namespace mixvote {

// Single-seat elections deliver one secret code per candidate; multi-seat
// elections deliver one secret permutation of the candidate ordering, and a
// voter casts images under it for up to `seats` favourites.
struct ElectionMode {
  bool multi = false;
  int seats = 1;
};

inline ElectionMode single_seat() { return {false, 1}; }
inline ElectionMode multi_seat(int s) { return {true, s}; }

// The receiver's code state, keyed by tuple index only: the tuple -> voter
// linkage exists nowhere but inside the mix secrets, so this object carries
// no voter identity by construction.
struct CodeBook {
  std::string election_id;
  int v = 0;
  int c = 0;
  ElectionMode mode;
  GroupSpec code_spec;
  std::vector<std::vector<GroupElement>> codes;        // [tuple][candidate], single-seat
  std::vector<GroupElement> perms;                     // [tuple], multi-seat
  std::map<std::string, std::pair<int, int>> reverse;  // encoding -> (tuple, candidate)
};

inline CodeBook generate_codes(int v, int c, ElectionMode mode, const GroupSpec& code_spec,
                               RandomSource& rng, std::string election_id = "election") {
  if (v < 1 || c < 1) throw std::invalid_argument("generate_codes: need v >= 1 and c >= 1");
  CodeBook book;
  book.election_id = std::move(election_id);
  book.v = v;
  book.c = c;
  book.mode = mode;
  book.code_spec = code_spec;
  if (mode.multi) {
    if (mode.seats < 1 || mode.seats > c)
      throw std::invalid_argument("generate_codes: seats must be in 1..c");
    if (code_spec.kind != GroupKind::Permutation || code_spec.length != c)
      throw std::invalid_argument("generate_codes: multi-seat requires the degree-c permutation carrier");
    for (int i = 0; i < v; ++i) book.perms.push_back(groups::sample_uniform(code_spec, rng));
    return book;
  }
  const std::uint64_t order = code_spec.length < 1 ? 1 : groups::order_saturated(code_spec);
  const std::uint64_t needed = static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(v);
  if (order < needed)
    throw std::invalid_argument(
        "generate_codes: code space too small for c*v globally unique codes");
  validate_spec(code_spec);
  long attempts = 0;
  book.codes.resize(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) {
    for (int a = 0; a < c; ++a) {
      GroupElement code;
      std::string key;
      do {
        if (++attempts > 100000)
          throw std::logic_error("generate_codes: rejection sampling failed to find unique codes");
        code = groups::sample_uniform(code_spec, rng);
        key = groups::encode(code);
      } while (book.reverse.count(key));
      book.reverse.emplace(std::move(key), std::make_pair(i + 1, a + 1));
      book.codes[static_cast<std::size_t>(i)].push_back(std::move(code));
    }
  }
  return book;
}

// Send the whole codebook through the mix.  Single-seat tuples travel as one
// v x c matrix so all codes of a tuple share the same slot permutation and
// modifier; multi-seat permutations go through the non-abelian pipeline.
inline MixForward dispatch(const CodeBook& book, const MixConfig& cfg, RandomSource& rng,
                           const std::string& run_id = "dispatch") {
  if (book.mode.multi) {
    if (cfg.protocol != Protocol::P3)
      throw std::invalid_argument("dispatch: multi-seat codebooks travel via the multi-seat protocol");
    if (cfg.carrier != book.code_spec)
      throw std::invalid_argument("dispatch: carrier mismatch with codebook");
    return forward_p3(book.perms, cfg, rng, run_id);
  }
  if (cfg.protocol != Protocol::P2)
    throw std::invalid_argument("dispatch: single-seat codebooks travel via the production protocol");
  if (cfg.carrier != book.code_spec)
    throw std::invalid_argument("dispatch: carrier mismatch with codebook");
  return forward_p2(book.codes, cfg, rng, run_id);
}

struct TallyResult {
  int c = 0;
  int seats = 1;
  std::vector<long long> counts;  // per candidate, 1-based candidate -> index-1
  long long rejected = 0;
  long long ballots = 0;
};

// Single-seat: look each recovered code up in the reverse index; unknown
// codes are rejected data, not errors.
inline TallyResult decode_and_tally(const std::vector<std::pair<int, GroupElement>>& recovered,
                                    const CodeBook& book) {
  TallyResult t;
  t.c = book.c;
  t.seats = 1;
  t.counts.assign(static_cast<std::size_t>(book.c), 0);
  for (const auto& [slot, code] : recovered) {
    (void)slot;
    ++t.ballots;
    auto it = book.reverse.find(groups::encode(code));
    if (it == book.reverse.end()) {
      ++t.rejected;
      continue;
    }
    ++t.counts[static_cast<std::size_t>(it->second.second - 1)];
  }
  return t;
}

// Multi-seat: candidate = pi_tuple^{-1}(image).
inline TallyResult decode_and_tally(const std::vector<std::pair<int, int>>& images,
                                    const CodeBook& book) {
  TallyResult t;
  t.c = book.c;
  t.seats = book.mode.seats;
  t.counts.assign(static_cast<std::size_t>(book.c), 0);
  for (const auto& [slot, image] : images) {
    ++t.ballots;
    if (slot < 1 || slot > book.v || image < 1 || image > book.c) {
      ++t.rejected;
      continue;
    }
    const auto& pi = book.perms[static_cast<std::size_t>(slot - 1)];
    int candidate = 0;
    for (int x = 1; x <= book.c; ++x)
      if (static_cast<int>(pi.v[static_cast<std::size_t>(x - 1)]) == image) candidate = x;
    ++t.counts[static_cast<std::size_t>(candidate - 1)];
  }
  return t;
}

inline nlohmann::ordered_json tally_to_json(const TallyResult& t) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json counts;
  for (int a = 1; a <= t.c; ++a)
    counts[std::to_string(a)] = t.counts[static_cast<std::size_t>(a - 1)];
  j["tally"] = std::move(counts);
  j["rejected"] = t.rejected;
  j["ballots"] = t.ballots;
  j["seats"] = t.seats;
  return j;
}

}  // namespace mixvote
