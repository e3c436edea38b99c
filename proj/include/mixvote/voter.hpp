#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/sharing.hpp"

namespace mixvote {

// A simulated human voter with t+1 devices.  Share j of every code lands on
// device j; devices never exchange data, so corrupting one device exposes
// exactly one share per code.  The human is the only place where shares
// meet: reconstruction is digit-wise mod-10 addition (or xor, or composing
// permutations), modeled with an optional slip rate.
struct VoterAgent {
  int id = 0;  // delivered slot, 1-based
  int device_count = 0;
  std::vector<int> intent;  // candidate indices, 1-based; empty = abstention
  double error_rate = 0.0;
  GroupSpec spec;
  // device_rows[device j][code a] = share j of code a
  std::vector<std::vector<GroupElement>> device_rows;

  int code_count() const {
    return device_rows.empty() ? 0 : static_cast<int>(device_rows[0].size());
  }
};

inline void receive_shares(VoterAgent& agent, const std::vector<ShareBundle>& delivery) {
  if (delivery.empty()) throw std::invalid_argument("receive_shares: empty delivery");
  const int devices = static_cast<int>(delivery[0].shares.size());
  if (agent.device_count != 0 && agent.device_count != devices)
    throw std::invalid_argument("receive_shares: share count does not match device count");
  agent.device_count = devices;
  agent.spec = delivery[0].spec;
  agent.device_rows.assign(static_cast<std::size_t>(devices), {});
  for (const auto& bundle : delivery) {
    if (static_cast<int>(bundle.shares.size()) != devices || bundle.spec != agent.spec)
      throw std::invalid_argument("receive_shares: ragged delivery");
    for (int j = 0; j < devices; ++j)
      agent.device_rows[static_cast<std::size_t>(j)].push_back(
          bundle.shares[static_cast<std::size_t>(j)]);
  }
}

namespace detail {

inline bool slip_happens(double rate, RandomSource& rng) {
  if (rate <= 0.0) return false;
  const std::uint64_t scale = 1000000000;
  return rng.below(scale) < static_cast<std::uint64_t>(rate * static_cast<double>(scale));
}

// A human slip replaces one written symbol with a different one; for
// permutations that can break the bijection, which is exactly the failure a
// fallible copyist produces.
inline GroupElement with_slips(const GroupElement& e, double rate, RandomSource& rng) {
  auto out = e.v;
  for (auto& d : out) {
    if (!slip_happens(rate, rng)) continue;
    switch (e.spec.kind) {
      case GroupKind::Bitstring:
        d ^= 1;
        break;
      case GroupKind::DigitVector:
        d = static_cast<std::uint8_t>((d + 1 + rng.below(9)) % 10);
        break;
      case GroupKind::Permutation:
        d = static_cast<std::uint8_t>(
            1 + (d - 1 + 1 + rng.below(static_cast<std::uint64_t>(e.spec.length - 1))) %
                    static_cast<std::uint64_t>(e.spec.length));
        break;
    }
  }
  return groups::raw_element(e.spec, std::move(out));
}

}  // namespace detail

// Component-wise fold across devices in order: digit-wise mod-10 sums for
// the human-friendly carrier, composition for permutations.  Equals the
// sharing module's reconstruction when no slip occurs.
inline GroupElement human_reconstruct(const VoterAgent& agent, int code_index,
                                      RandomSource* slips = nullptr) {
  if (agent.device_rows.empty()) throw std::invalid_argument("human_reconstruct: no shares held");
  if (code_index < 1 || code_index > agent.code_count())
    throw std::invalid_argument("human_reconstruct: code index out of range");
  auto acc = agent.device_rows[0][static_cast<std::size_t>(code_index - 1)];
  for (int j = 1; j < agent.device_count; ++j)
    acc = groups::op(acc, agent.device_rows[static_cast<std::size_t>(j)]
                              [static_cast<std::size_t>(code_index - 1)]);
  if (agent.error_rate > 0.0 && slips) return detail::with_slips(acc, agent.error_rate, *slips);
  return acc;
}

// What leaves the agent.  Exactly the values for the intended candidates;
// unchosen codes never leave the agent.
struct Ballot {
  int slot = 0;
  std::vector<GroupElement> codes;  // single-seat
  std::vector<int> images;          // multi-seat, one message per image

  bool empty() const { return codes.empty() && images.empty(); }
};

inline Ballot cast_ballot(const VoterAgent& agent, RandomSource* slips = nullptr) {
  Ballot b;
  b.slot = agent.id;
  if (agent.intent.empty()) return b;  // abstention
  if (agent.spec.kind == GroupKind::Permutation) {
    auto pi = human_reconstruct(agent, 1, slips);
    for (int candidate : agent.intent) {
      if (candidate < 1 || candidate > agent.spec.length)
        throw std::invalid_argument("cast_ballot: intent out of range");
      b.images.push_back(static_cast<int>(pi.v[static_cast<std::size_t>(candidate - 1)]));
    }
    return b;
  }
  for (int candidate : agent.intent) {
    if (candidate < 1 || candidate > agent.code_count())
      throw std::invalid_argument("cast_ballot: intent out of range");
    b.codes.push_back(human_reconstruct(agent, candidate, slips));
  }
  return b;
}

}  // namespace mixvote
