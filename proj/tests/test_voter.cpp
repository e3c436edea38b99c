#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/sharing.hpp"
#include "mixvote/voter.hpp"

using namespace mixvote;
using mixvote::groups::encode;
using mixvote::groups::parse_element;

namespace {

VoterAgent agent_with_rows(GroupSpec spec, std::vector<std::vector<std::string>> rows) {
  VoterAgent a;
  a.id = 1;
  a.device_count = static_cast<int>(rows.size());
  a.spec = spec;
  for (const auto& row : rows) {
    std::vector<GroupElement> parsed;
    for (const auto& text : row) parsed.push_back(parse_element(spec, text));
    a.device_rows.push_back(std::move(parsed));
  }
  return a;
}

}  // namespace

TEST_CASE("delivered share j of every code lands on device j") {
  SeededRng rng(17);
  auto spec = digit_spec(2);
  ConcreteCarrier cr{spec, &rng};
  std::vector<ShareBundle> delivery;
  for (int a = 0; a < 3; ++a)
    delivery.push_back(share(cr.sample(), 2, rng));

  VoterAgent agent;
  agent.id = 4;
  receive_shares(agent, delivery);
  REQUIRE(agent.device_count == 3);
  REQUIRE(agent.code_count() == 3);
  for (int j = 0; j < 3; ++j)
    for (int a = 0; a < 3; ++a)
      CHECK(agent.device_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] ==
            delivery[static_cast<std::size_t>(a)].shares[static_cast<std::size_t>(j)]);

  // No single device row determines any code: rows are distinct shares.
  std::set<std::string> row_fingerprints;
  for (int j = 0; j < 3; ++j) {
    std::string fp;
    for (const auto& e : agent.device_rows[static_cast<std::size_t>(j)]) fp += encode(e) + ";";
    row_fingerprints.insert(fp);
  }
  CHECK(row_fingerprints.size() == 3);
}

TEST_CASE("ragged or empty deliveries are refused") {
  VoterAgent agent;
  CHECK_THROWS(receive_shares(agent, {}));

  SeededRng rng(1);
  ConcreteCarrier cr{digit_spec(1), &rng};
  auto b2 = share(cr.sample(), 1, rng);
  auto b3 = share(cr.sample(), 2, rng);
  CHECK_THROWS(receive_shares(agent, {b2, b3}));

  agent.device_count = 4;
  CHECK_THROWS(receive_shares(agent, {b2}));
}

TEST_CASE("human reconstruction is the digit-wise mod-10 sum across devices") {
  // 3 + 4 + 5 = 12, written digit 2; per-digit independence: (9,1) + (2,3) = (1,4).
  auto one_digit = agent_with_rows(digit_spec(1), {{"3"}, {"4"}, {"5"}});
  CHECK(encode(human_reconstruct(one_digit, 1)) == "2");

  auto two_digits = agent_with_rows(digit_spec(2), {{"91"}, {"23"}});
  CHECK(encode(human_reconstruct(two_digits, 1)) == "14");
}

TEST_CASE("human reconstruction XORs bitstrings and composes permutations") {
  auto bits = agent_with_rows(bitstring_spec(4), {{"1010"}, {"0110"}});
  CHECK(encode(human_reconstruct(bits, 1)) == "1100");

  // Fold order matters: [1,3,2] then [2,3,1] gives x -> first[second[x]] = [3,2,1].
  auto perms = agent_with_rows(perm_spec(3), {{"1,3,2"}, {"2,3,1"}});
  CHECK(encode(human_reconstruct(perms, 1)) == "3,2,1");
}

TEST_CASE("human reconstruction matches the sharing module on random inputs") {
  SeededRng rng(23);
  for (auto spec : {bitstring_spec(6), digit_spec(4), perm_spec(4)}) {
    ConcreteCarrier cr{spec, &rng};
    for (int t = 0; t <= 3; ++t) {
      for (int rep = 0; rep < 80; ++rep) {
        auto secret = cr.sample();
        auto bundle = share(secret, t, rng);
        VoterAgent agent;
        agent.id = 1;
        receive_shares(agent, {bundle});
        CHECK(human_reconstruct(agent, 1) == secret);
        CHECK(human_reconstruct(agent, 1) == reconstruct(bundle));
      }
    }
  }
}

TEST_CASE("reconstruction bounds-checks the code index and share presence") {
  VoterAgent empty;
  CHECK_THROWS(human_reconstruct(empty, 1));
  auto agent = agent_with_rows(digit_spec(1), {{"3", "7"}, {"4", "1"}});
  CHECK_THROWS(human_reconstruct(agent, 0));
  CHECK_THROWS(human_reconstruct(agent, 3));
  CHECK(encode(human_reconstruct(agent, 2)) == "8");
}

TEST_CASE("slips corrupt symbols at the configured rate") {
  SeededRng rng(31);

  // Rate 0 never slips, even with a source attached.
  auto agent = agent_with_rows(digit_spec(3), {{"123"}, {"456"}});
  CHECK(encode(human_reconstruct(agent, 1, &rng)) == "579");

  // Rate 1 changes every written symbol to a different one.
  agent.error_rate = 1.0;
  for (int rep = 0; rep < 50; ++rep) {
    auto out = human_reconstruct(agent, 1, &rng);
    CHECK(out.v[0] != 5);
    CHECK(out.v[1] != 7);
    CHECK(out.v[2] != 9);
  }

  auto bits = agent_with_rows(bitstring_spec(4), {{"1010"}, {"0110"}});
  bits.error_rate = 1.0;
  CHECK(encode(human_reconstruct(bits, 1, &rng)) == "0011");  // full complement

  // Intermediate rates hit some runs and spare others.
  agent.error_rate = 0.3;
  int changed = 0;
  for (int rep = 0; rep < 400; ++rep)
    if (encode(human_reconstruct(agent, 1, &rng)) != "579") ++changed;
  CHECK(changed > 100);
  CHECK(changed < 350);

  // Permutation slips stay inside the symbol alphabet but may repeat values.
  auto perms = agent_with_rows(perm_spec(4), {{"2,1,4,3"}});
  perms.error_rate = 1.0;
  for (int rep = 0; rep < 50; ++rep) {
    auto out = human_reconstruct(perms, 1, &rng);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(out.v[i] >= 1);
      CHECK(out.v[i] <= 4);
      CHECK(out.v[i] != perms.device_rows[0][0].v[i]);
    }
  }
}

TEST_CASE("ballots carry exactly the chosen candidates' values") {
  auto agent = agent_with_rows(digit_spec(2), {{"12", "34", "56"}, {"11", "11", "11"}});
  agent.id = 7;

  agent.intent = {};
  auto b = cast_ballot(agent);
  CHECK(b.slot == 7);
  CHECK(b.empty());

  agent.intent = {2};
  b = cast_ballot(agent);
  REQUIRE(b.codes.size() == 1);
  CHECK(encode(b.codes[0]) == "45");
  CHECK(b.images.empty());

  agent.intent = {4};
  CHECK_THROWS(cast_ballot(agent));
}

TEST_CASE("multi-seat ballots cast images of the chosen candidates") {
  auto agent = agent_with_rows(perm_spec(3), {{"2,3,1"}});
  agent.id = 2;
  agent.intent = {1, 3};
  auto b = cast_ballot(agent);
  CHECK(b.slot == 2);
  CHECK(b.codes.empty());
  CHECK(b.images == std::vector<int>{2, 1});

  agent.intent = {4};
  CHECK_THROWS(cast_ballot(agent));
}

TEST_CASE("seeded slips reproduce exactly") {
  auto run = [](std::uint64_t seed) {
    SeededRng rng(seed);
    auto agent = agent_with_rows(digit_spec(6), {{"123456"}, {"654321"}});
    agent.error_rate = 0.4;
    std::string out;
    for (int rep = 0; rep < 20; ++rep) out += encode(human_reconstruct(agent, 1, &rng)) + "|";
    return out;
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
}
