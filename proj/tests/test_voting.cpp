#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mixvote/election.hpp"
#include "mixvote/group.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/setsystem.hpp"
#include "mixvote/voting.hpp"

using namespace mixvote;
using mixvote::groups::encode;

namespace {

MixConfig single_seat_config(int t, GroupSpec carrier) {
  return MixConfig{build_disjoint(t), TransferMode::Reshare, carrier, Protocol::P2,
                   ProductEngine::Ideal};
}

MixConfig multi_seat_config(int t, int degree, ProductEngine engine = ProductEngine::Ideal) {
  return MixConfig{build_disjoint(t), TransferMode::Reshare, perm_spec(degree), Protocol::P3,
                   engine};
}

}  // namespace

TEST_CASE("generated codes are globally unique across all tuples and candidates") {
  SeededRng rng(7);
  for (auto spec : {bitstring_spec(12), digit_spec(4)}) {
    auto book = generate_codes(4, 3, single_seat(), spec, rng);
    REQUIRE(book.codes.size() == 4);
    std::set<std::string> seen;
    for (int i = 1; i <= 4; ++i) {
      REQUIRE(book.codes[static_cast<std::size_t>(i - 1)].size() == 3);
      for (int a = 1; a <= 3; ++a) {
        const auto& code = book.codes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(a - 1)];
        CHECK(code.spec == spec);
        CHECK(seen.insert(encode(code)).second);
        auto it = book.reverse.find(encode(code));
        REQUIRE(it != book.reverse.end());
        CHECK(it->second == std::make_pair(i, a));
      }
    }
    CHECK(seen.size() == 12);
  }
}

TEST_CASE("code generation refuses groups too small to hold c*v unique codes") {
  SeededRng rng(1);
  // Order 2 group cannot hold 3 codes.
  CHECK_THROWS_WITH(generate_codes(1, 3, single_seat(), bitstring_spec(1), rng),
                    Catch::Matchers::ContainsSubstring("code space too small"));
  // Degenerate length-0 carrier has a single element.
  CHECK_THROWS_WITH(generate_codes(2, 1, single_seat(), bitstring_spec(0), rng),
                    Catch::Matchers::ContainsSubstring("code space too small"));
  // Exactly-full code space is still satisfiable: 2^2 = 4 = c*v.
  auto book = generate_codes(2, 2, single_seat(), bitstring_spec(2), rng);
  CHECK(book.reverse.size() == 4);
  CHECK_THROWS(generate_codes(0, 1, single_seat(), bitstring_spec(2), rng));
  CHECK_THROWS(generate_codes(1, 0, single_seat(), bitstring_spec(2), rng));
}

TEST_CASE("multi-seat codebooks hold one candidate-order permutation per tuple") {
  SeededRng rng(3);
  auto book = generate_codes(5, 4, multi_seat(2), perm_spec(4), rng);
  CHECK(book.perms.size() == 5);
  CHECK(book.codes.empty());
  for (const auto& p : book.perms) CHECK(p.spec == perm_spec(4));

  CHECK_THROWS_WITH(generate_codes(2, 4, multi_seat(0), perm_spec(4), rng),
                    Catch::Matchers::ContainsSubstring("seats"));
  CHECK_THROWS_WITH(generate_codes(2, 4, multi_seat(5), perm_spec(4), rng),
                    Catch::Matchers::ContainsSubstring("seats"));
  CHECK_THROWS_WITH(generate_codes(2, 4, multi_seat(2), digit_spec(4), rng),
                    Catch::Matchers::ContainsSubstring("permutation carrier"));
  CHECK_THROWS_WITH(generate_codes(2, 4, multi_seat(2), perm_spec(3), rng),
                    Catch::Matchers::ContainsSubstring("permutation carrier"));
}

TEST_CASE("dispatch rejects mode/protocol and carrier mismatches") {
  SeededRng rng(5);
  auto single = generate_codes(2, 2, single_seat(), digit_spec(3), rng);
  auto multi = generate_codes(2, 3, multi_seat(1), perm_spec(3), rng);

  CHECK_THROWS(dispatch(single, multi_seat_config(1, 3), rng));
  CHECK_THROWS(dispatch(multi, single_seat_config(1, digit_spec(3)), rng));
  CHECK_THROWS(dispatch(single, single_seat_config(1, digit_spec(4)), rng));
  CHECK_THROWS(dispatch(multi, multi_seat_config(1, 4), rng));

  auto fwd = dispatch(single, single_seat_config(1, digit_spec(3)), rng);
  CHECK(fwd.delivered.size() == 2);
  REQUIRE(fwd.delivered[0].size() == 2);  // one column per candidate code
}

TEST_CASE("single-seat decoding counts candidates and rejects unknown codes") {
  SeededRng rng(11);
  auto book = generate_codes(3, 2, single_seat(), digit_spec(3), rng);
  auto code = [&](int tuple, int cand) {
    return book.codes[static_cast<std::size_t>(tuple - 1)][static_cast<std::size_t>(cand - 1)];
  };
  // An element outside the codebook: walk until the encoding is unused.
  GroupElement stranger = groups::identity(digit_spec(3));
  while (book.reverse.count(encode(stranger)))
    stranger = groups::op(stranger, groups::parse_element(digit_spec(3), "001"));

  std::vector<std::pair<int, GroupElement>> recovered = {
      {1, code(1, 1)}, {2, code(2, 2)}, {3, code(3, 1)}, {3, stranger}};
  auto t = decode_and_tally(recovered, book);
  CHECK(t.ballots == 4);
  CHECK(t.rejected == 1);
  REQUIRE(t.counts.size() == 2);
  CHECK(t.counts[0] == 2);
  CHECK(t.counts[1] == 1);
  CHECK(t.seats == 1);
}

TEST_CASE("multi-seat decoding inverts the tuple permutation") {
  CodeBook book;
  book.v = 1;
  book.c = 3;
  book.mode = multi_seat(2);
  book.code_spec = perm_spec(3);
  book.perms = {groups::parse_element(perm_spec(3), "2,3,1")};

  // Image 3 under [2,3,1] is produced by candidate 2.
  auto t = decode_and_tally(std::vector<std::pair<int, int>>{{1, 3}}, book);
  CHECK(t.counts == std::vector<long long>{0, 1, 0});
  CHECK(t.rejected == 0);

  // Image 2 comes from candidate 1, image 1 from candidate 3.
  t = decode_and_tally(std::vector<std::pair<int, int>>{{1, 2}, {1, 1}}, book);
  CHECK(t.counts == std::vector<long long>{1, 0, 1});

  // Out-of-range slot or image is rejected data.
  t = decode_and_tally(std::vector<std::pair<int, int>>{{2, 1}, {1, 4}, {0, 1}}, book);
  CHECK(t.rejected == 3);
  CHECK(t.ballots == 3);
  CHECK(t.counts == std::vector<long long>{0, 0, 0});
  CHECK(t.seats == 2);
}

TEST_CASE("tally serialization lists per-candidate counts under 1-based keys") {
  TallyResult t;
  t.c = 3;
  t.seats = 2;
  t.counts = {4, 0, 1};
  t.rejected = 2;
  t.ballots = 7;
  auto j = tally_to_json(t);
  CHECK(j["tally"]["1"] == 4);
  CHECK(j["tally"]["2"] == 0);
  CHECK(j["tally"]["3"] == 1);
  CHECK(j["rejected"] == 2);
  CHECK(j["ballots"] == 7);
  CHECK(j["seats"] == 2);
  CHECK(j.dump() == R"({"tally":{"1":4,"2":0,"3":1},"rejected":2,"ballots":7,"seats":2})");
}

TEST_CASE("single-seat election end to end tallies the voters' intents") {
  SeededRng rng(2026);
  auto cfg = single_seat_config(1, digit_spec(4));
  auto run = run_election(3, 2, single_seat(), cfg, {{1}, {2}, {1}}, rng);
  CHECK(run.tally.counts == std::vector<long long>{2, 1});
  CHECK(run.tally.rejected == 0);
  CHECK(run.tally.ballots == 3);
  for (const auto& agent : run.agents) CHECK(agent.device_count == 2);
}

TEST_CASE("multi-seat election end to end tallies every chosen image") {
  SeededRng rng(99);
  auto cfg = multi_seat_config(1, 3);
  auto run = run_election(2, 3, multi_seat(2), cfg, {{1, 3}, {2}}, rng);
  CHECK(run.tally.counts == std::vector<long long>{1, 1, 1});
  CHECK(run.tally.rejected == 0);
  CHECK(run.tally.ballots == 3);
}

TEST_CASE("election tally is independent of the hidden slot shuffle") {
  // Whatever permutation the mix applies, each voter's ballot decodes to the
  // candidate that voter chose, so the tally is the multiset of intents.
  const std::vector<std::vector<int>> intents = {{2}, {}, {1}, {2}};
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    SeededRng rng(seed);
    auto cfg = single_seat_config(1, bitstring_spec(8));
    auto run = run_election(4, 2, single_seat(), cfg, intents, rng);
    CHECK(run.tally.counts == std::vector<long long>{1, 2});
    CHECK(run.tally.ballots == 3);  // one abstention
    CHECK(run.tally.rejected == 0);
  }
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SeededRng rng(seed);
    auto cfg = multi_seat_config(1, 3, seed % 2 ? ProductEngine::Ideal : ProductEngine::Concrete);
    auto run = run_election(3, 3, multi_seat(2), cfg, {{3, 1}, {}, {2, 3}}, rng);
    CHECK(run.tally.counts == std::vector<long long>{1, 1, 2});
    CHECK(run.tally.ballots == 4);
    CHECK(run.tally.rejected == 0);
  }
}

TEST_CASE("same seed reproduces the same election byte for byte") {
  auto snapshot = [](std::uint64_t seed) {
    SeededRng rng(seed);
    auto cfg = single_seat_config(2, digit_spec(4));
    auto run = run_election(3, 3, single_seat(), cfg, {{3}, {1}, {3}}, rng);
    std::string s = tally_to_json(run.tally).dump();
    for (const auto& [slot, code] : run.recovered_codes)
      s += "|" + std::to_string(slot) + ":" + encode(code);
    s += "#" + std::to_string(run.fwd.transcript.records.size());
    return s;
  };
  CHECK(snapshot(42) == snapshot(42));
  CHECK(snapshot(42) != snapshot(43));
}

TEST_CASE("run_election validates intent lists") {
  SeededRng rng(4);
  auto cfg = single_seat_config(1, digit_spec(3));
  CHECK_THROWS(run_election(2, 2, single_seat(), cfg, {{1}}, rng));          // wrong arity
  CHECK_THROWS(run_election(2, 2, single_seat(), cfg, {{1, 2}, {}}, rng));   // two votes, one seat
  CHECK_THROWS(run_election(2, 2, single_seat(), cfg, {{3}, {}}, rng));      // candidate range
  auto mcfg = multi_seat_config(1, 3);
  CHECK_THROWS(run_election(2, 3, multi_seat(2), mcfg, {{1, 2, 3}, {}}, rng));
}
