#pragma once

// Scenario files and the command layer behind the CLI.  A scenario is a
// versioned JSON document that pins every security-relevant parameter of a
// run; every command is a pure function of (scenario bytes, flags, seed), so
// reruns are byte-identical.  Unknown JSON fields are rejected outright --
// a silently ignored typo in "t" or "transfer_mode" must not weaken a claim.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mixvote/adversary.hpp"
#include "mixvote/election.hpp"
#include "mixvote/group.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/setsystem.hpp"
#include "mixvote/transcript.hpp"
#include "mixvote/voting.hpp"

namespace mixvote {

inline constexpr const char* kScenarioSchema = "mixvote/1";

struct Scenario {
  bool has_seed = false;
  std::uint64_t seed = 0;

  int v = 0;
  int c = 0;
  int seats = 1;
  bool multi = false;
  int code_digits = 1;

  int t = 0;
  std::string system_source;  // "disjoint" | "greedy" | "file"
  int greedy_m = 0;
  std::string system_path;
  TransferMode transfer = TransferMode::Reshare;
  Protocol protocol = Protocol::P2;
  ProductEngine engine = ProductEngine::Ideal;

  bool all_subsets = false;  // corruption family "all-subsets-<=t"
  std::vector<std::vector<std::string>> corruption_sets;

  std::vector<std::vector<int>> intents;
};

namespace detail {

inline void reject_unknown_fields(const nlohmann::json& j, const std::string& where,
                                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw std::invalid_argument("scenario: " + where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw std::invalid_argument("scenario: unknown field \"" + key + "\" in " + where);
}

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& where,
                                           const std::string& key) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument("scenario: missing field \"" + key + "\" in " + where);
  return *it;
}

inline int require_int(const nlohmann::json& j, const std::string& where, const std::string& key) {
  const auto& f = require_field(j, where, key);
  if (!f.is_number_integer())
    throw std::invalid_argument("scenario: field \"" + key + "\" in " + where +
                                " must be an integer");
  return f.get<int>();
}

inline std::string require_string(const nlohmann::json& j, const std::string& where,
                                  const std::string& key) {
  const auto& f = require_field(j, where, key);
  if (!f.is_string())
    throw std::invalid_argument("scenario: field \"" + key + "\" in " + where +
                                " must be a string");
  return f.get<std::string>();
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j) {
  detail::reject_unknown_fields(
      j, "the scenario", {"schema", "seed", "election", "mix", "adversary", "intents"});
  if (detail::require_string(j, "the scenario", "schema") != kScenarioSchema)
    throw std::invalid_argument(std::string("scenario: schema must be \"") + kScenarioSchema +
                                "\"");

  Scenario s;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw std::invalid_argument("scenario: seed must be a non-negative integer");
    if (j["seed"].is_number_integer() && j["seed"].get<long long>() < 0)
      throw std::invalid_argument("scenario: seed must be a non-negative integer");
    s.has_seed = true;
    s.seed = j["seed"].get<std::uint64_t>();
  }

  const auto& el = detail::require_field(j, "the scenario", "election");
  detail::reject_unknown_fields(el, "election", {"v", "c", "seats", "mode", "code_digits"});
  s.v = detail::require_int(el, "election", "v");
  s.c = detail::require_int(el, "election", "c");
  const auto mode = detail::require_string(el, "election", "mode");
  if (mode == "single") {
    s.multi = false;
  } else if (mode == "multi") {
    s.multi = true;
  } else {
    throw std::invalid_argument("scenario: election.mode must be \"single\" or \"multi\"");
  }
  s.seats = el.contains("seats") ? detail::require_int(el, "election", "seats") : 1;
  s.code_digits = el.contains("code_digits") ? detail::require_int(el, "election", "code_digits") : 1;
  if (s.v < 1) throw std::invalid_argument("scenario: election.v must be >= 1");
  if (s.c < 1) throw std::invalid_argument("scenario: election.c must be >= 1");
  if (!s.multi && s.seats != 1)
    throw std::invalid_argument("scenario: single-seat elections have seats = 1");
  if (s.code_digits < 1) throw std::invalid_argument("scenario: election.code_digits must be >= 1");

  const auto& mx = detail::require_field(j, "the scenario", "mix");
  detail::reject_unknown_fields(mx, "mix", {"t", "setsystem", "transfer_mode", "protocol", "engine"});
  s.t = detail::require_int(mx, "mix", "t");
  if (s.t < 0) throw std::invalid_argument("scenario: mix.t must be >= 0");

  const auto& ss = detail::require_field(mx, "mix", "setsystem");
  detail::reject_unknown_fields(ss, "mix.setsystem", {"source", "m", "path"});
  s.system_source = detail::require_string(ss, "mix.setsystem", "source");
  if (s.system_source == "greedy") {
    s.greedy_m = detail::require_int(ss, "mix.setsystem", "m");
  } else if (s.system_source == "file") {
    s.system_path = detail::require_string(ss, "mix.setsystem", "path");
  } else if (s.system_source != "disjoint") {
    throw std::invalid_argument(
        "scenario: mix.setsystem.source must be \"disjoint\", \"greedy\" or \"file\"");
  }
  if (s.system_source != "greedy" && ss.contains("m"))
    throw std::invalid_argument("scenario: mix.setsystem.m applies to the greedy source only");
  if (s.system_source != "file" && ss.contains("path"))
    throw std::invalid_argument("scenario: mix.setsystem.path applies to the file source only");

  const auto transfer = detail::require_string(mx, "mix", "transfer_mode");
  if (transfer == "reshare") {
    s.transfer = TransferMode::Reshare;
  } else if (transfer == "confinement") {
    s.transfer = TransferMode::Confinement;
  } else {
    throw std::invalid_argument(
        "scenario: mix.transfer_mode must be \"reshare\" or \"confinement\"");
  }

  const auto protocol = detail::require_string(mx, "mix", "protocol");
  if (protocol == "p1") {
    s.protocol = Protocol::P1;
  } else if (protocol == "p2") {
    s.protocol = Protocol::P2;
  } else if (protocol == "p3") {
    s.protocol = Protocol::P3;
  } else {
    throw std::invalid_argument("scenario: mix.protocol must be \"p1\", \"p2\" or \"p3\"");
  }

  if (mx.contains("engine")) {
    const auto engine = detail::require_string(mx, "mix", "engine");
    if (engine == "ideal") {
      s.engine = ProductEngine::Ideal;
    } else if (engine == "concrete") {
      s.engine = ProductEngine::Concrete;
    } else {
      throw std::invalid_argument("scenario: mix.engine must be \"ideal\" or \"concrete\"");
    }
  }

  const auto& adv = detail::require_field(j, "the scenario", "adversary");
  detail::reject_unknown_fields(adv, "adversary", {"corruptions"});
  const auto& cor = detail::require_field(adv, "adversary", "corruptions");
  if (cor.is_string()) {
    const auto fam = cor.get<std::string>();
    if (fam != "all-subsets-<=t" && fam != "all-subsets-≤t")
      throw std::invalid_argument(
          "scenario: adversary.corruptions must be \"all-subsets-<=t\" or a list of party lists");
    s.all_subsets = true;
  } else if (cor.is_array()) {
    for (const auto& entry : cor) {
      if (!entry.is_array())
        throw std::invalid_argument("scenario: each corruption set must be a list of party ids");
      std::vector<std::string> ids;
      for (const auto& id : entry) {
        if (!id.is_string())
          throw std::invalid_argument("scenario: corruption party ids must be strings");
        ids.push_back(id.get<std::string>());
      }
      s.corruption_sets.push_back(std::move(ids));
    }
  } else {
    throw std::invalid_argument(
        "scenario: adversary.corruptions must be \"all-subsets-<=t\" or a list of party lists");
  }

  const auto& in = detail::require_field(j, "the scenario", "intents");
  if (!in.is_array()) throw std::invalid_argument("scenario: intents must be a list per voter");
  for (const auto& entry : in) {
    if (!entry.is_array())
      throw std::invalid_argument("scenario: each voter intent must be a list of candidates");
    std::vector<int> picks;
    for (const auto& x : entry) {
      if (!x.is_number_integer())
        throw std::invalid_argument("scenario: intent entries must be candidate numbers");
      picks.push_back(x.get<int>());
    }
    s.intents.push_back(std::move(picks));
  }

  // Cross-field consistency.
  if (s.protocol == Protocol::P3 && !s.multi)
    throw std::invalid_argument("scenario: protocol p3 is the multi-seat transport");
  if (s.protocol != Protocol::P3 && s.multi)
    throw std::invalid_argument("scenario: multi-seat elections use protocol p3");
  if (s.protocol == Protocol::P1) {
    if (!s.intents.empty())
      throw std::invalid_argument(
          "scenario: p1 transmits pads, not votes; intents must be an empty list");
  } else if (static_cast<int>(s.intents.size()) != s.v) {
    throw std::invalid_argument("scenario: need one intent list per voter");
  }
  return s;
}

// Build or load the verifiers set system the scenario names.  File-sourced
// systems arrive as parsed JSON so the command layer stays filesystem-free.
inline SetSystem scenario_system(const Scenario& s, const nlohmann::json* file_system = nullptr) {
  SetSystem sys;
  if (s.system_source == "disjoint") {
    sys = build_disjoint(s.t);
  } else if (s.system_source == "greedy") {
    sys = build_greedy(s.greedy_m, s.t);
  } else {
    if (!file_system)
      throw std::invalid_argument("scenario: set-system file \"" + s.system_path +
                                  "\" was not provided");
    sys = setsystem_from_json(*file_system);
    if (sys.t != s.t)
      throw std::invalid_argument("scenario: mix.t disagrees with the set-system file");
  }
  return sys;
}

inline GroupSpec scenario_carrier(const Scenario& s) {
  return s.multi ? perm_spec(s.c) : digit_spec(s.code_digits);
}

inline MixConfig scenario_mix_config(const Scenario& s, SetSystem sys) {
  return MixConfig{std::move(sys), s.transfer, scenario_carrier(s), s.protocol, s.engine};
}

// Expand the adversary block into concrete corruption sets, preserving order
// (explicit lists) or using subset-size-then-lexicographic order (families).
inline std::vector<CorruptionSet> corruption_family(const Scenario& s, const SetSystem& sys) {
  std::vector<CorruptionSet> out;
  if (!s.all_subsets) {
    for (const auto& ids : s.corruption_sets) {
      CorruptionSet cs;
      cs.parties = ids;
      out.push_back(std::move(cs));
    }
    return out;
  }
  std::vector<std::vector<int>> subsets{{}};
  for (int size = 1; size <= sys.t; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::function<void(int, int)> grow = [&](int start, int depth) {
      if (depth == size) {
        subsets.push_back(pick);
        return;
      }
      for (int id = start; id <= sys.m; ++id) {
        pick[static_cast<std::size_t>(depth)] = id;
        grow(id + 1, depth + 1);
      }
    };
    grow(1, 0);
  }
  for (const auto& ids : subsets) {
    CorruptionSet cs;
    for (int id : ids) cs.parties.push_back(party_srv(id));
    out.push_back(std::move(cs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands.  Results carry the exit code, the stdout payload, and the files
// to materialize; the binary wrapper does the I/O.
// ---------------------------------------------------------------------------

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitPropertyFailure = 2;
inline constexpr int kExitIntractable = 3;

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;                            // stdout, UTF-8 JSON
  std::vector<std::pair<std::string, std::string>> files;  // name -> bytes
};

inline std::uint64_t resolve_seed(const Scenario& s, std::optional<std::uint64_t> flag_seed,
                                  std::optional<std::uint64_t> env_seed) {
  if (flag_seed) return *flag_seed;
  if (s.has_seed) return s.seed;
  if (env_seed) return *env_seed;
  throw std::invalid_argument("scenario: no seed (set \"seed\", pass --seed, or export MIXVOTE_SEED)");
}

namespace detail {

inline std::string run_identifier(std::uint64_t seed) { return "run-" + std::to_string(seed); }

// The deterministic end-to-end run every command shares: p2/p3 scenarios run
// a full election; p1 scenarios run the pad round trip with uniform messages.
struct ScenarioRun {
  Transcript transcript;
  nlohmann::ordered_json tally;  // null for p1
};

inline ScenarioRun execute_scenario(const Scenario& s, const MixConfig& cfg, std::uint64_t seed) {
  ScenarioRun run;
  SeededRng rng(seed);
  if (s.protocol == Protocol::P1) {
    ConcreteCarrier cr{cfg.carrier, &rng};
    std::vector<GroupElement> messages;
    for (int i = 0; i < s.v; ++i) messages.push_back(cr.sample());
    auto fwd = run_pad_roundtrip(cfg, messages, cr);
    fwd.transcript.run_id = run_identifier(seed);
    run.transcript = std::move(fwd.transcript);
    run.tally = nullptr;
    return run;
  }
  auto mode = s.multi ? multi_seat(s.seats) : single_seat();
  auto election = run_election(s.v, s.c, mode, cfg, s.intents, rng, run_identifier(seed));
  run.tally = tally_to_json(election.tally);
  run.transcript = std::move(election.fwd.transcript);
  return run;
}

}  // namespace detail

inline CommandResult cmd_run(const nlohmann::json& scenario_json,
                             std::optional<std::uint64_t> flag_seed = std::nullopt,
                             std::optional<std::uint64_t> env_seed = std::nullopt,
                             const nlohmann::json* file_system = nullptr) {
  auto s = parse_scenario(scenario_json);
  if (s.protocol == Protocol::P1)
    throw std::invalid_argument(
        "scenario: p1 carries pads, not ballots; use the audit command for p1 scenarios");
  const auto seed = resolve_seed(s, flag_seed, env_seed);
  auto cfg = scenario_mix_config(s, scenario_system(s, file_system));
  auto run = detail::execute_scenario(s, cfg, seed);

  CommandResult res;
  res.output = run.tally.dump(2) + "\n";
  res.files.emplace_back("tally.json", res.output);
  res.files.emplace_back("transcript.jsonl", transcript_to_jsonl(run.transcript));
  return res;
}

struct AuditFlags {
  bool privacy = false;
  bool anonymity = false;
  bool negative_controls = false;
  bool timings = false;
};

namespace detail {

inline CorruptionSet full_first_block(const SetSystem& sys) {
  CorruptionSet cs;
  for (int id : sys.blocks.front()) cs.parties.push_back(party_srv(id));
  return cs;
}

inline CorruptionSet all_leaders(const SetSystem& sys, bool with_issuer) {
  CorruptionSet cs;
  if (with_issuer) cs.parties.push_back(kPartyCge);
  for (int k = 1; k <= sys.b(); ++k) {
    const auto id = party_srv(leader_of(sys, k));
    if (!cs.contains(id)) cs.parties.push_back(id);
  }
  return cs;
}

}  // namespace detail

inline CommandResult cmd_audit(const nlohmann::json& scenario_json, const std::string& scenario_name,
                               const AuditFlags& flags,
                               std::optional<std::uint64_t> flag_seed = std::nullopt,
                               std::optional<std::uint64_t> env_seed = std::nullopt,
                               const nlohmann::json* file_system = nullptr) {
  auto s = parse_scenario(scenario_json);
  if (!flags.privacy && !flags.anonymity)
    throw std::invalid_argument("audit: pass --privacy and/or --anonymity");
  if (s.protocol == Protocol::P3)
    throw std::invalid_argument(
        "audit: exact audits cover the abelian transports (p1, p2); the multi-seat share "
        "product is audited in the test suite");
  if (flags.anonymity && s.v != 2)
    throw std::invalid_argument("audit: the anonymity comparison needs exactly two slots (v = 2)");
  if (flags.anonymity && s.protocol == Protocol::P2 && s.c < 2)
    throw std::invalid_argument("audit: p2 anonymity swaps two candidate choices; need c >= 2");

  const auto seed = resolve_seed(s, flag_seed, env_seed);
  auto cfg = scenario_mix_config(s, scenario_system(s, file_system));
  const auto family = corruption_family(s, cfg.system);
  const int width = s.protocol == Protocol::P1 ? 1 : s.c;

  bool any_positive_fail = false;
  bool any_control_passed = false;
  bool any_intractable = false;

  auto entry_for = [&](const char* property, const AuditRequest& req, const AuditOutcome& out,
                       double wall, bool expected_fail = false) {
    auto j = audit_report(scenario_name, req, out, flags.timings ? wall : 0.0);
    j["property"] = property;
    if (expected_fail) j["expected"] = "fail";
    if (out.verdict == AuditVerdict::Intractable) any_intractable = true;
    if (!expected_fail && out.verdict == AuditVerdict::Fail) any_positive_fail = true;
    if (expected_fail && out.verdict == AuditVerdict::Pass) any_control_passed = true;
    return j;
  };

  auto run_privacy = [&](const AuditRequest& req) {
    return s.protocol == Protocol::P1 ? audit_privacy_roundtrip(req) : audit_privacy(req);
  };
  auto run_anonymity = [&](const AuditRequest& req) {
    return s.protocol == Protocol::P1 ? audit_anonymity(req) : audit_anonymity_pipeline(req);
  };
  auto timed = [&](auto&& fn, const AuditRequest& req, double& wall) {
    const auto start = std::chrono::steady_clock::now();
    auto out = fn(req);
    wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  nlohmann::ordered_json report;
  report["scenario"] = scenario_name;
  report["seed"] = seed;
  report["privacy"] = nlohmann::json::array();
  report["anonymity"] = nlohmann::json::array();
  report["negative_controls"] = nlohmann::json::array();

  for (const auto& cs : family) {
    AuditRequest req{cfg, s.v, width, cs, AuditBackend::Auto, kEnumerationBudget};
    if (flags.privacy) {
      double wall = 0.0;
      auto out = timed(run_privacy, req, wall);
      report["privacy"].push_back(entry_for("privacy", req, out, wall));
    }
    if (flags.anonymity) {
      double wall = 0.0;
      auto out = timed(run_anonymity, req, wall);
      report["anonymity"].push_back(entry_for("anonymity", req, out, wall));
    }
  }

  if (flags.negative_controls) {
    if (flags.privacy) {
      AuditRequest req{cfg, s.v, width, detail::full_first_block(cfg.system), AuditBackend::Auto,
                       kEnumerationBudget};
      double wall = 0.0;
      auto out = timed(run_privacy, req, wall);
      report["negative_controls"].push_back(entry_for("privacy", req, out, wall, true));
    }
    if (flags.anonymity) {
      AuditRequest req{cfg, s.v, width,
                       detail::all_leaders(cfg.system, s.protocol == Protocol::P2),
                       AuditBackend::Auto, kEnumerationBudget};
      double wall = 0.0;
      auto out = timed(run_anonymity, req, wall);
      report["negative_controls"].push_back(entry_for("anonymity", req, out, wall, true));
    }
  }

  CommandResult res;
  if (any_positive_fail || any_control_passed)
    res.exit_code = kExitPropertyFailure;
  else if (any_intractable)
    res.exit_code = kExitIntractable;
  res.output = report.dump(2) + "\n";
  res.files.emplace_back("report.json", res.output);
  auto reference = detail::execute_scenario(s, cfg, seed);
  res.files.emplace_back("transcript.jsonl", transcript_to_jsonl(reference.transcript));
  return res;
}

// Re-derive the transcript a scenario produces and compare it byte for byte
// with a previously written one.
inline CommandResult cmd_replay(const nlohmann::json& scenario_json,
                                const std::string& stored_transcript,
                                std::optional<std::uint64_t> flag_seed = std::nullopt,
                                std::optional<std::uint64_t> env_seed = std::nullopt,
                                const nlohmann::json* file_system = nullptr) {
  auto s = parse_scenario(scenario_json);
  const auto seed = resolve_seed(s, flag_seed, env_seed);
  auto cfg = scenario_mix_config(s, scenario_system(s, file_system));
  auto run = detail::execute_scenario(s, cfg, seed);
  const auto fresh = transcript_to_jsonl(run.transcript);

  nlohmann::ordered_json verdict;
  verdict["seed"] = seed;
  if (fresh == stored_transcript) {
    verdict["match"] = true;
    verdict["records"] = run.transcript.records.size();
  } else {
    verdict["match"] = false;
    std::size_t line = 1, i = 0;
    const std::size_t n = std::min(fresh.size(), stored_transcript.size());
    while (i < n && fresh[i] == stored_transcript[i]) {
      if (fresh[i] == '\n') ++line;
      ++i;
    }
    verdict["first_divergence_line"] = line;
  }
  CommandResult res;
  res.exit_code = verdict["match"].get<bool>() ? kExitOk : kExitPropertyFailure;
  res.output = verdict.dump(2) + "\n";
  return res;
}

}  // namespace mixvote
