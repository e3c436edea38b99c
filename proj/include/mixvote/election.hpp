#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mixvote/mixnet.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/voter.hpp"
#include "mixvote/voting.hpp"

namespace mixvote {

// One full election: generate -> dispatch -> reconstruct -> cast -> reply ->
// tally, all randomness drawn from a single source in a fixed order.
struct ElectionRun {
  CodeBook book;
  MixForward fwd;
  std::vector<VoterAgent> agents;
  std::vector<Ballot> ballots;
  std::vector<std::pair<int, GroupElement>> recovered_codes;  // single-seat arrivals
  std::vector<std::pair<int, int>> recovered_images;          // multi-seat arrivals
  TallyResult tally;
};

// intents[i] lists voter i+1's chosen candidates (1-based); empty = abstain.
inline ElectionRun run_election(int v, int c, ElectionMode mode, const MixConfig& cfg,
                                const std::vector<std::vector<int>>& intents, RandomSource& rng,
                                const std::string& run_id = "run", double error_rate = 0.0) {
  if (static_cast<int>(intents.size()) != v)
    throw std::invalid_argument("run_election: need one intent list per voter");
  for (const auto& in : intents) {
    if (!mode.multi && static_cast<int>(in.size()) > 1)
      throw std::invalid_argument("run_election: single-seat voters cast at most one candidate");
    if (mode.multi && static_cast<int>(in.size()) > mode.seats)
      throw std::invalid_argument("run_election: more choices than seats");
    for (int x : in)
      if (x < 1 || x > c) throw std::invalid_argument("run_election: intent out of range");
  }

  ElectionRun run;
  run.book = generate_codes(v, c, mode, cfg.carrier, rng, run_id);
  run.fwd = dispatch(run.book, cfg, rng, run_id);

  const int width = mode.multi ? 1 : c;
  for (int i = 1; i <= v; ++i) {
    VoterAgent agent;
    agent.id = i;
    agent.intent = intents[static_cast<std::size_t>(i - 1)];
    agent.error_rate = error_rate;
    std::vector<ShareBundle> delivery;
    for (int a = 1; a <= width; ++a) delivery.push_back(delivered_bundle(run.fwd, cfg.carrier, i, a));
    receive_shares(agent, delivery);
    run.agents.push_back(std::move(agent));
  }
  for (const auto& agent : run.agents)
    run.ballots.push_back(cast_ballot(agent, error_rate > 0.0 ? &rng : nullptr));

  if (mode.multi) {
    std::vector<std::pair<int, int>> casts;
    for (const auto& b : run.ballots)
      for (int image : b.images) casts.emplace_back(b.slot, image);
    run.recovered_images = reply_p3(casts, run.fwd.secrets, cfg, run.fwd.transcript);
    run.tally = decode_and_tally(run.recovered_images, run.book);
  } else {
    std::vector<std::pair<int, GroupElement>> casts;
    for (const auto& b : run.ballots)
      for (const auto& code : b.codes) casts.emplace_back(b.slot, code);
    run.recovered_codes = reply_abelian(casts, run.fwd.secrets, cfg, run.fwd.transcript);
    run.tally = decode_and_tally(run.recovered_codes, run.book);
  }
  return run;
}

}  // namespace mixvote
