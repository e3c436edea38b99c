#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mixvote/adversary.hpp"
#include "mixvote/group.hpp"
#include "mixvote/linalg.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/setsystem.hpp"

using namespace mixvote;

namespace {

MixConfig p1_config(int t, GroupSpec carrier) {
  return MixConfig{build_disjoint(t), TransferMode::Confinement, carrier, Protocol::P1,
                   ProductEngine::Ideal};
}

MixConfig p2_config(SetSystem s, TransferMode mode, GroupSpec carrier) {
  return MixConfig{std::move(s), mode, carrier, Protocol::P2, ProductEngine::Ideal};
}

AuditRequest request(MixConfig cfg, int v, int width, CorruptionSet cs,
                     AuditBackend backend = AuditBackend::Auto) {
  return AuditRequest{std::move(cfg), v, width, std::move(cs), backend, kEnumerationBudget};
}

CorruptionSet parties(std::vector<std::string> ids) {
  CorruptionSet cs;
  cs.parties = std::move(ids);
  return cs;
}

// Every corruption set with at most one server, plus the empty set.
std::vector<CorruptionSet> all_single_servers(const SetSystem& sys) {
  std::vector<CorruptionSet> out;
  out.push_back(CorruptionSet{});
  for (int s = 1; s <= sys.m; ++s) out.push_back(corrupt_servers({s}));
  return out;
}

}  // namespace

TEST_CASE("column space reduction is canonical", "[adversary][linalg]") {
  SECTION("mod 2 membership and residuals") {
    linalg::ColSpace cs(2, 3);
    REQUIRE(cs.dim() == 0);
    REQUIRE(cs.insert({1, 0, 1}));
    REQUIRE(cs.insert({0, 1, 1}));
    REQUIRE_FALSE(cs.insert({1, 1, 0}));  // sum of the first two
    REQUIRE(cs.dim() == 2);
    REQUIRE(cs.contains({1, 1, 0}));
    REQUIRE_FALSE(cs.contains({1, 1, 1}));
    REQUIRE(linalg::ColSpace::is_zero(cs.residual({1, 0, 1})));
    auto res = cs.residual({1, 1, 1});
    REQUIRE_FALSE(linalg::ColSpace::is_zero(res));
    REQUIRE(cs.residual(res) == res);  // residuals are idempotent
  }

  SECTION("key is independent of insertion order") {
    linalg::ColSpace a(5, 3), b(5, 3);
    REQUIRE(a.insert({1, 2, 3}));
    REQUIRE(a.insert({0, 1, 4}));
    // 2*(1,2,3) + (0,1,4) = (2,5,10) = (2,0,0) mod 5.
    REQUIRE(a.contains({2, 0, 0}));
    REQUIRE(b.insert({2, 0, 0}));
    REQUIRE(b.insert({1, 2, 3}));
    REQUIRE_FALSE(b.insert({0, 1, 4}));  // already spanned by the first two
    REQUIRE(a.key() == b.key());
    REQUIRE(a == b);
  }

  SECTION("mod 5 scaling normalizes the leading coefficient") {
    linalg::ColSpace cs(5, 2);
    REQUIRE(cs.insert({3, 1}));
    // 3*2 = 6 = 1 mod 5, so the stored basis row starts with 1.
    REQUIRE(cs.contains({1, 2}));
    REQUIRE(cs.key() == "12|");
  }
}

TEST_CASE("total variation distance is computed exactly", "[adversary]") {
  detail::ViewDistribution a, b;
  a.add("x");
  a.add("y");
  b.add("x");
  b.add("x");
  b.add("y");
  b.add("y");
  auto d = detail::tv_distance(a, b);
  REQUIRE(d.exactly_zero);
  REQUIRE(d.value == 0.0);

  detail::ViewDistribution c;
  c.add("z");
  auto d2 = detail::tv_distance(a, c);
  REQUIRE_FALSE(d2.exactly_zero);
  REQUIRE(d2.value == 1.0);

  detail::ViewDistribution e, f;
  e.add("x");
  e.add("x");
  e.add("x");
  e.add("y");
  f.add("x");
  f.add("y");
  f.add("y");
  f.add("y");
  auto d3 = detail::tv_distance(e, f);
  REQUIRE_FALSE(d3.exactly_zero);
  REQUIRE(d3.value == 0.5);
}

TEST_CASE("exhaustive view enumeration walks every draw combination", "[adversary]") {
  SECTION("full product of ranges") {
    detail::ViewDistribution dist;
    auto st = detail::enumerate_views(
        [](RandomSource& r) {
          auto x = r.below(2);
          auto y = r.below(3);
          return std::to_string(x) + std::to_string(y);
        },
        1000, dist);
    REQUIRE_FALSE(st.intractable);
    REQUIRE(st.states == 6);
    REQUIRE(dist.total == 6);
    REQUIRE(dist.counts.size() == 6);
    for (const auto& [view, count] : dist.counts) REQUIRE(count == 1);
  }

  SECTION("budget overrun reports intractable") {
    detail::ViewDistribution dist;
    auto st = detail::enumerate_views(
        [](RandomSource& r) {
          for (int i = 0; i < 10; ++i) (void)r.below(10);
          return std::string("v");
        },
        100000, dist);
    REQUIRE(st.intractable);
    REQUIRE(dist.total == 0);
  }

  SECTION("draw-free protocols still enumerate one state") {
    detail::ViewDistribution dist;
    auto st = detail::enumerate_views([](RandomSource&) { return std::string("fixed"); }, 10, dist);
    REQUIRE(st.states == 1);
    REQUIRE(dist.counts.at("fixed") == 1);
  }
}

TEST_CASE("capture projects the transcript onto the coalition", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  SeededRng rng(7);
  ConcreteCarrier cr{cfg.carrier, &rng};
  std::vector<std::vector<GroupElement>> payload{{cr.sample()}, {cr.sample()}};
  auto fwd = detail::mix_forward_abelian(payload, cfg, cr, "capture-test");

  SECTION("nobody corrupted, nothing seen") {
    auto view = capture(fwd.transcript, CorruptionSet{}, cfg.system);
    REQUIRE(view.empty());
    REQUIRE(detail::concrete_view(fwd.transcript, CorruptionSet{}, cfg.system).empty());
  }

  SECTION("block leader sees its dealt shares, its announcements, and its sends") {
    auto view = capture(fwd.transcript, corrupt_servers({1}), cfg.system);
    std::map<EventKind, int> kinds;
    for (const auto& r : view) ++kinds[r.kind];
    // Dealer shares for two slots; the block-1 announcement; all four
    // modifier shares (the leader distributes them); two onward sends.
    REQUIRE(kinds[EventKind::Share] == 4);
    REQUIRE(kinds[EventKind::PermAnnounce] == 1);
    REQUIRE(kinds[EventKind::Modifier] == 4);
    REQUIRE(view.size() == 9);
    for (const auto& r : view) {
      const bool from_me = r.from == "srv:1";
      const bool to_me = r.to == "srv:1";
      const bool block_bcast = r.to == "blk:1";
      REQUIRE((from_me || to_me || block_bcast));
    }
  }

  SECTION("non-leader member sees only its own lane plus the announcement") {
    auto view = capture(fwd.transcript, corrupt_servers({2}), cfg.system);
    std::map<EventKind, int> kinds;
    for (const auto& r : view) ++kinds[r.kind];
    REQUIRE(kinds[EventKind::Share] == 4);  // two dealt shares, two onward sends
    REQUIRE(kinds[EventKind::PermAnnounce] == 1);
    REQUIRE(kinds[EventKind::Modifier] == 2);
    REQUIRE(view.size() == 7);
  }

  SECTION("a corrupted voter device sees exactly one share per code") {
    auto view = capture(fwd.transcript, parties({party_dev(1, 2)}), cfg.system);
    REQUIRE(view.size() == 1);
    REQUIRE(view[0].kind == EventKind::Delivery);
    REQUIRE(view[0].slot == 1);
  }

  SECTION("the code issuer observes only what arrives back at it") {
    SeededRng rng2(11);
    ConcreteCarrier cr2{cfg.carrier, &rng2};
    std::vector<GroupElement> msgs{cr2.sample(), cr2.sample()};
    auto run = detail::run_pad_roundtrip(cfg, msgs, cr2);
    auto view = capture(run.transcript, parties({kPartyCge}), cfg.system);
    REQUIRE(view.size() == 2);  // one reply arrival per slot; dealt shares are not its view
    for (const auto& r : view) {
      REQUIRE(r.to == kPartyCge);
      REQUIRE(r.kind == EventKind::Reply);
    }
    REQUIRE(capture(fwd.transcript, parties({kPartyCge}), cfg.system).empty());
  }

  SECTION("views of different coalitions differ") {
    auto v1 = detail::concrete_view(fwd.transcript, corrupt_servers({1}), cfg.system);
    auto v3 = detail::concrete_view(fwd.transcript, corrupt_servers({3}), cfg.system);
    REQUIRE(v1 != v3);
    REQUIRE_FALSE(v1.empty());
  }
}

TEST_CASE("existential honesty holds for verified systems", "[adversary]") {
  auto disjoint = build_disjoint(2);
  REQUIRE(has_honest_block(disjoint, corrupt_servers({1, 4})));
  REQUIRE(has_honest_block(disjoint, CorruptionSet{}));
  // Hitting one server per block needs t+1 corruptions.
  REQUIRE_FALSE(has_honest_block(disjoint, corrupt_servers({1, 4, 7})));

  auto greedy = build_greedy(5, 2);
  for (int s1 = 1; s1 <= greedy.m; ++s1)
    for (int s2 = s1; s2 <= greedy.m; ++s2)
      REQUIRE(has_honest_block(greedy, corrupt_servers({s1, s2})));
}

TEST_CASE("transport privacy holds for every within-bound coalition", "[adversary]") {
  SECTION("P1 over bits, pointwise and affine agree") {
    auto cfg = p1_config(1, bitstring_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      for (auto backend : {AuditBackend::Pointwise, AuditBackend::Affine}) {
        auto out = audit_privacy(request(cfg, 2, 1, cs, backend));
        INFO("parties=" << (cs.empty() ? "<none>" : cs.parties[0]) << " method=" << out.method);
        REQUIRE(out.verdict == AuditVerdict::Pass);
        REQUIRE(out.exactly_zero);
        REQUIRE(out.distance == 0.0);
      }
    }
  }

  SECTION("P1 over decimal digits, both backends") {
    auto cfg = p1_config(1, digit_spec(1));
    auto pw = audit_privacy(request(cfg, 1, 1, corrupt_servers({2}), AuditBackend::Pointwise));
    REQUIRE(pw.verdict == AuditVerdict::Pass);
    REQUIRE(pw.states == 10 * 100000);  // ten worlds, five base-10 draws each
    auto af = audit_privacy(request(cfg, 1, 1, corrupt_servers({2}), AuditBackend::Affine));
    REQUIRE(af.verdict == AuditVerdict::Pass);
    REQUIRE(af.exactly_zero);
  }

  SECTION("P2 with resharing on an overlapping system") {
    auto cfg = p2_config(build_greedy(3, 1), TransferMode::Reshare, bitstring_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      auto pw = audit_privacy(request(cfg, 1, 1, cs, AuditBackend::Pointwise));
      auto af = audit_privacy(request(cfg, 1, 1, cs, AuditBackend::Affine));
      REQUIRE(pw.verdict == AuditVerdict::Pass);
      REQUIRE(af.verdict == AuditVerdict::Pass);
    }
  }

  SECTION("P2 with position transfer on the disjoint system") {
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, bitstring_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      auto pw = audit_privacy(request(cfg, 2, 1, cs, AuditBackend::Pointwise));
      auto af = audit_privacy(request(cfg, 2, 1, cs, AuditBackend::Affine));
      REQUIRE(pw.verdict == AuditVerdict::Pass);
      REQUIRE(af.verdict == AuditVerdict::Pass);
    }
  }

  SECTION("decimal resharing is out of pointwise reach but affine settles it") {
    auto cfg = p2_config(build_greedy(3, 1), TransferMode::Reshare, digit_spec(1));
    auto req = request(cfg, 1, 1, corrupt_servers({1}), AuditBackend::Pointwise);
    REQUIRE(audit_privacy(req).verdict == AuditVerdict::Intractable);
    req.backend = AuditBackend::Auto;
    auto out = audit_privacy(req);
    REQUIRE(out.verdict == AuditVerdict::Pass);
    REQUIRE(out.method == "affine");
    REQUIRE(out.branches == 1);  // single slot: one permutation branch per block
  }
}

TEST_CASE("a fully corrupted block breaks transport privacy", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  auto out = audit_privacy(request(cfg, 1, 1, corrupt_servers({1, 2}), AuditBackend::Pointwise));
  REQUIRE(out.verdict == AuditVerdict::Fail);
  REQUIRE_FALSE(out.exactly_zero);
  REQUIRE(out.distance > 0.0);
  auto af = audit_privacy(request(cfg, 1, 1, corrupt_servers({1, 2}), AuditBackend::Affine));
  REQUIRE(af.verdict == AuditVerdict::Fail);

  SECTION("at t = 0 a single corrupted server is already a full block") {
    auto cfg0 = p2_config(build_disjoint(0), TransferMode::Confinement, bitstring_spec(1));
    auto broken = audit_privacy(request(cfg0, 1, 1, corrupt_servers({1}), AuditBackend::Pointwise));
    REQUIRE(broken.verdict == AuditVerdict::Fail);
    auto vacuous = audit_privacy(request(cfg0, 1, 1, CorruptionSet{}, AuditBackend::Pointwise));
    REQUIRE(vacuous.verdict == AuditVerdict::Pass);
  }
}

TEST_CASE("sender messages stay private over the pad round trip", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  for (const auto& cs : all_single_servers(cfg.system)) {
    auto pw = audit_privacy_roundtrip(request(cfg, 2, 1, cs, AuditBackend::Pointwise));
    auto af = audit_privacy_roundtrip(request(cfg, 2, 1, cs, AuditBackend::Affine));
    INFO("parties=" << (cs.empty() ? "<none>" : cs.parties[0]));
    REQUIRE(pw.verdict == AuditVerdict::Pass);
    REQUIRE(pw.exactly_zero);
    REQUIRE(af.verdict == AuditVerdict::Pass);
  }

  SECTION("a fully corrupted pad block recovers the message") {
    auto out =
        audit_privacy_roundtrip(request(cfg, 1, 1, corrupt_servers({1, 2}), AuditBackend::Pointwise));
    REQUIRE(out.verdict == AuditVerdict::Fail);
    REQUIRE(out.distance > 0.0);
  }
}

TEST_CASE("slot-assignment swaps are invisible to small coalitions", "[adversary]") {
  SECTION("P1 over bits: every single server, both backends") {
    auto cfg = p1_config(1, bitstring_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      auto pw = audit_anonymity(request(cfg, 2, 1, cs, AuditBackend::Pointwise));
      auto af = audit_anonymity(request(cfg, 2, 1, cs, AuditBackend::Affine));
      INFO("parties=" << (cs.empty() ? "<none>" : cs.parties[0]));
      REQUIRE(pw.verdict == AuditVerdict::Pass);
      REQUIRE(pw.exactly_zero);
      REQUIRE(af.verdict == AuditVerdict::Pass);
      REQUIRE(af.distance == 0.0);
    }
  }

  SECTION("P1 over decimal digits via the affine backend") {
    auto cfg = p1_config(1, digit_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      auto out = audit_anonymity(request(cfg, 2, 1, cs, AuditBackend::Affine));
      REQUIRE(out.verdict == AuditVerdict::Pass);
    }
  }

  SECTION("P2 code bundles over bits with position transfer") {
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, bitstring_spec(1));
    auto pw = audit_anonymity(request(cfg, 2, 2, corrupt_servers({1}), AuditBackend::Pointwise));
    REQUIRE(pw.verdict == AuditVerdict::Pass);
    auto af = audit_anonymity(request(cfg, 2, 2, corrupt_servers({1}), AuditBackend::Affine));
    REQUIRE(af.verdict == AuditVerdict::Pass);
  }

  SECTION("P2 code bundles with resharing fall back to affine") {
    auto cfg = p2_config(build_greedy(3, 1), TransferMode::Reshare, bitstring_spec(1));
    for (const auto& cs : all_single_servers(cfg.system)) {
      auto out = audit_anonymity(request(cfg, 2, 2, cs, AuditBackend::Auto));
      REQUIRE(out.verdict == AuditVerdict::Pass);
      REQUIRE(out.method == "affine");
    }
  }
}

TEST_CASE("corrupting one leader per block links payloads to slots", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  // srv:1 leads block 1 and srv:3 leads block 2; together they know every
  // slot permutation and every modifier total, and the delivered outputs
  // then pin the assignment.
  auto pw = audit_anonymity(request(cfg, 2, 1, corrupt_servers({1, 3}), AuditBackend::Pointwise));
  REQUIRE(pw.verdict == AuditVerdict::Fail);
  REQUIRE(pw.distance > 0.0);
  auto af = audit_anonymity(request(cfg, 2, 1, corrupt_servers({1, 3}), AuditBackend::Affine));
  REQUIRE(af.verdict == AuditVerdict::Fail);

  SECTION("non-leaders in every block still miss the modifier totals") {
    // srv:2 and srv:4 hit both blocks (t+1 corruptions) and learn both slot
    // permutations, yet each block's modifier total keeps one uniform share
    // they never see, so the delivered values stay masked.
    auto pw = audit_anonymity(request(cfg, 2, 1, corrupt_servers({2, 4}), AuditBackend::Pointwise));
    REQUIRE(pw.verdict == AuditVerdict::Pass);
    REQUIRE(pw.exactly_zero);
    auto af = audit_anonymity(request(cfg, 2, 1, corrupt_servers({2, 4}), AuditBackend::Affine));
    REQUIRE(af.verdict == AuditVerdict::Pass);
  }
}

TEST_CASE("vote swaps stay invisible even to a colluding code issuer", "[adversary]") {
  SECTION("bits with position transfer: pointwise and affine agree") {
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, bitstring_spec(1));
    for (auto ids : {std::vector<std::string>{kPartyCge},
                     std::vector<std::string>{kPartyCge, "srv:1"},
                     std::vector<std::string>{kPartyCge, "srv:2"},
                     std::vector<std::string>{kPartyCge, "srv:3"},
                     std::vector<std::string>{kPartyCge, "srv:4"}}) {
      auto pw = audit_anonymity_pipeline(request(cfg, 2, 2, parties(ids), AuditBackend::Pointwise));
      auto af = audit_anonymity_pipeline(request(cfg, 2, 2, parties(ids), AuditBackend::Affine));
      INFO("issuer plus " << (ids.size() > 1 ? ids[1] : "nobody"));
      REQUIRE(pw.verdict == AuditVerdict::Pass);
      REQUIRE(pw.exactly_zero);
      REQUIRE(af.verdict == AuditVerdict::Pass);
    }
  }

  SECTION("bits with resharing via affine") {
    auto cfg = p2_config(build_greedy(3, 1), TransferMode::Reshare, bitstring_spec(1));
    auto out = audit_anonymity_pipeline(
        request(cfg, 2, 2, parties({kPartyCge, "srv:1"}), AuditBackend::Affine));
    REQUIRE(out.verdict == AuditVerdict::Pass);
  }

  SECTION("decimal digits via affine") {
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, digit_spec(1));
    auto out = audit_anonymity_pipeline(
        request(cfg, 2, 2, parties({kPartyCge, "srv:2"}), AuditBackend::Affine));
    REQUIRE(out.verdict == AuditVerdict::Pass);
  }

  SECTION("even a whole corrupted first block cannot link votes to voters") {
    // Both members of block 1 know its permutation and modifiers, and the
    // issuer decodes every returned code; the second block's permutation
    // alone still severs the voter link.
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, bitstring_spec(1));
    auto out = audit_anonymity_pipeline(
        request(cfg, 2, 2, parties({kPartyCge, "srv:1", "srv:2"}), AuditBackend::Pointwise));
    REQUIRE(out.verdict == AuditVerdict::Pass);
    REQUIRE(out.exactly_zero);
  }

  SECTION("the issuer plus every block leader reads the votes") {
    auto cfg = p2_config(build_disjoint(1), TransferMode::Confinement, bitstring_spec(1));
    auto out = audit_anonymity_pipeline(
        request(cfg, 2, 2, parties({kPartyCge, "srv:1", "srv:3"}), AuditBackend::Pointwise));
    REQUIRE(out.verdict == AuditVerdict::Fail);
    REQUIRE(out.distance > 0.0);
    auto af = audit_anonymity_pipeline(
        request(cfg, 2, 2, parties({kPartyCge, "srv:1", "srv:3"}), AuditBackend::Affine));
    REQUIRE(af.verdict == AuditVerdict::Fail);
  }
}

TEST_CASE("the share product leaks nothing to any single participant", "[adversary]") {
  for (auto engine : {ProductEngine::Ideal, ProductEngine::Concrete}) {
    for (int s = 1; s <= 4; ++s) {
      auto out = audit_product_privacy(3, 1, engine, party_srv(s));
      INFO("engine=" << (engine == ProductEngine::Ideal ? "ideal" : "concrete") << " srv=" << s);
      REQUIRE(out.verdict == AuditVerdict::Pass);
      REQUIRE(out.exactly_zero);
      REQUIRE(out.states > 0);
    }
  }
  auto noted = audit_product_privacy(3, 1, ProductEngine::Ideal, party_srv(1));
  REQUIRE(noted.note.find("ideal") != std::string::npos);
}

TEST_CASE("audits validate their inputs", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  REQUIRE_THROWS_AS(audit_anonymity(request(cfg, 3, 1, CorruptionSet{})), std::invalid_argument);
  REQUIRE_THROWS_AS(audit_anonymity_pipeline(request(cfg, 2, 1, CorruptionSet{})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(audit_privacy_roundtrip(request(cfg, 2, 2, CorruptionSet{})),
                    std::invalid_argument);

  auto bad = cfg;
  bad.system.blocks.clear();
  REQUIRE_THROWS_AS(audit_privacy(request(bad, 1, 1, CorruptionSet{})), std::invalid_argument);

  SetSystem overlapping{2, 1, {{1, 2}, {1, 2}}};
  CorruptionSet one = corrupt_servers({1});
  REQUIRE_FALSE(has_honest_block(overlapping, one));
}

TEST_CASE("audit reports carry the verdict and the exact distance", "[adversary]") {
  auto cfg = p1_config(1, bitstring_spec(1));
  auto req = request(cfg, 2, 1, corrupt_servers({2}), AuditBackend::Pointwise);
  auto out = audit_anonymity(req);
  auto j = audit_report("p1-bits", req, out);
  REQUIRE(j["scenario"] == "p1-bits");
  REQUIRE(j["corruption_set"] == std::vector<std::string>{"srv:2"});
  REQUIRE(j["verdict"] == "pass");
  REQUIRE(j["distance"] == 0.0);
  REQUIRE(j["states_enumerated"].get<long long>() == out.states);
  REQUIRE(j["wall_time"] == 0.0);

  auto again = audit_anonymity(req);
  REQUIRE(audit_report("p1-bits", req, again).dump() == j.dump());

  auto leak = audit_privacy(request(cfg, 1, 1, corrupt_servers({1, 2}), AuditBackend::Affine));
  auto jf = audit_report("p1-bits-block", request(cfg, 1, 1, corrupt_servers({1, 2})), leak);
  REQUIRE(jf["verdict"] == "fail");
  REQUIRE(jf["distance"].is_null());
  REQUIRE(jf["method"] == "affine");
}
