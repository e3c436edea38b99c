// mixvote: scenario-driven front end for the code-voting MIX library.
//
//   mixvote run <scenario.json> [--seed N] [--out DIR]
//   mixvote audit <scenario.json> --privacy --anonymity [--negative-controls]
//                 [--timings] [--seed N] [--out DIR]
//   mixvote setsystem build  (--disjoint | --greedy M) -t T [--out FILE]
//   mixvote setsystem verify <system.json>
//   mixvote setsystem confinement <system.json>
//   mixvote setsystem dagcut <system.json> --mode reshare|confinement
//   mixvote replay <scenario.json> <transcript.jsonl> [--seed N]
//
// Every command is a pure function of its input bytes, flags and seed, so
// reruns are byte-identical.  Exit codes: 0 success, 1 validation error,
// 2 property or audit failure, 3 enumeration intractable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixvote/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path.string());
  out << bytes;
}

nlohmann::json parse_json_file(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("MIXVOTE_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("MIXVOTE_SEED must be a non-negative integer");
  }
  if (used != std::string(raw).size())
    throw std::invalid_argument("MIXVOTE_SEED must be a non-negative integer");
  return value;
}

// File-sourced set systems resolve relative to the scenario file.
struct LoadedScenario {
  nlohmann::json doc;
  nlohmann::json system;
  bool has_system = false;
};

LoadedScenario load_scenario(const fs::path& path) {
  LoadedScenario out;
  out.doc = parse_json_file(path);
  if (out.doc.is_object() && out.doc.contains("mix") && out.doc["mix"].is_object() &&
      out.doc["mix"].contains("setsystem") && out.doc["mix"]["setsystem"].is_object()) {
    const auto& ss = out.doc["mix"]["setsystem"];
    if (ss.value("source", "") == "file" && ss.contains("path") && ss["path"].is_string()) {
      fs::path sys_path = ss["path"].get<std::string>();
      if (sys_path.is_relative()) sys_path = path.parent_path() / sys_path;
      out.system = parse_json_file(sys_path);
      out.has_system = true;
    }
  }
  return out;
}

void materialize(const mixvote::CommandResult& res, const fs::path& out_dir) {
  for (const auto& [name, bytes] : res.files) write_file(out_dir / name, bytes);
}

int run_setsystem_build(bool disjoint, int greedy_m, int t, const std::string& out_path) {
  auto sys = disjoint ? mixvote::build_disjoint(t) : mixvote::build_greedy(greedy_m, t);
  const auto text = mixvote::setsystem_to_json(sys).dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
  return mixvote::kExitOk;
}

int run_setsystem_verify(const fs::path& path) {
  auto sys = mixvote::setsystem_from_json(parse_json_file(path));
  auto res = mixvote::verify_verifiers(sys);
  nlohmann::ordered_json j;
  j["property"] = "verifiers-set-system";
  j["ok"] = res.ok;
  if (!res.ok) {
    j["reason"] = res.reason;
    j["witness"] = res.witness;
  }
  std::cout << j.dump(2) << "\n";
  return res.ok ? mixvote::kExitOk : mixvote::kExitPropertyFailure;
}

int run_setsystem_confinement(const fs::path& path) {
  auto sys = mixvote::setsystem_from_json(parse_json_file(path));
  auto res = mixvote::check_confinement(sys);
  nlohmann::ordered_json j;
  j["property"] = "t-confinement";
  j["ok"] = res.ok;
  if (!res.ok) {
    j["reason"] = res.reason;
    j["witness"] = res.witness;
  }
  std::cout << j.dump(2) << "\n";
  return res.ok ? mixvote::kExitOk : mixvote::kExitPropertyFailure;
}

int run_setsystem_dagcut(const fs::path& path, const std::string& mode_name) {
  auto sys = mixvote::setsystem_from_json(parse_json_file(path));
  mixvote::TransferMode mode;
  if (mode_name == "reshare") {
    mode = mixvote::TransferMode::Reshare;
  } else if (mode_name == "confinement") {
    mode = mixvote::TransferMode::Confinement;
  } else {
    throw std::invalid_argument("dagcut: --mode must be reshare or confinement");
  }
  auto dag = mixvote::build_dag(sys, mode);
  bool ok = mixvote::check_t_cut(dag, sys.t);
  nlohmann::ordered_json j;
  j["property"] = "virtual-dag-t-cut";
  j["mode"] = mode_name;
  j["ok"] = ok;
  std::cout << j.dump(2) << "\n";
  return ok ? mixvote::kExitOk : mixvote::kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unconditionally secure MIX election toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".", transcript_path;
  std::optional<std::uint64_t> flag_seed;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { flag_seed = v; },
        "override the scenario seed");
  };

  auto* run = app.add_subcommand("run", "run an election scenario end to end");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "directory for tally.json and transcript.jsonl");
  add_seed(run);

  mixvote::AuditFlags audit_flags;
  auto* audit = app.add_subcommand("audit", "exact privacy/anonymity audits");
  audit->add_option("scenario", scenario_path, "scenario JSON file")->required();
  audit->add_flag("--privacy", audit_flags.privacy, "audit payload privacy");
  audit->add_flag("--anonymity", audit_flags.anonymity, "audit sender anonymity");
  audit->add_flag("--negative-controls", audit_flags.negative_controls,
                  "also run must-fail coalitions");
  audit->add_flag("--timings", audit_flags.timings, "record wall-clock times in the report");
  audit->add_option("--out", out_dir, "directory for report.json and transcript.jsonl");
  add_seed(audit);

  auto* setsystem = app.add_subcommand("setsystem", "verifiers set system tools");
  setsystem->require_subcommand(1);
  bool build_disjoint_flag = false;
  int build_greedy_m = 0, build_t = 0;
  std::string build_out, system_path, dag_mode = "reshare";
  auto* build = setsystem->add_subcommand("build", "construct a system and print its file");
  build->add_flag("--disjoint", build_disjoint_flag, "t+1 disjoint blocks of t+1 servers");
  build->add_option("--greedy", build_greedy_m, "greedy cover over m servers");
  build->add_option("-t,--t", build_t, "collusion bound")->required();
  build->add_option("--out", build_out, "also write the file here");
  auto* verify = setsystem->add_subcommand("verify", "exhaustive verifiers property check");
  verify->add_option("system", system_path, "system JSON file")->required();
  auto* confinement = setsystem->add_subcommand("confinement", "t-confinement check");
  confinement->add_option("system", system_path, "system JSON file")->required();
  auto* dagcut = setsystem->add_subcommand("dagcut", "virtual-DAG t-color cut check");
  dagcut->add_option("system", system_path, "system JSON file")->required();
  dagcut->add_option("--mode", dag_mode, "reshare or confinement");

  auto* replay = app.add_subcommand("replay", "re-derive a transcript and compare bytes");
  replay->add_option("scenario", scenario_path, "scenario JSON file")->required();
  replay->add_option("transcript", transcript_path, "previously written transcript.jsonl")
      ->required();
  add_seed(replay);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto loaded = load_scenario(scenario_path);
      auto res = mixvote::cmd_run(loaded.doc, flag_seed, env_seed(),
                                  loaded.has_system ? &loaded.system : nullptr);
      materialize(res, out_dir);
      std::cout << res.output;
      return res.exit_code;
    }
    if (audit->parsed()) {
      auto loaded = load_scenario(scenario_path);
      auto res = mixvote::cmd_audit(loaded.doc, fs::path(scenario_path).filename().string(),
                                    audit_flags, flag_seed, env_seed(),
                                    loaded.has_system ? &loaded.system : nullptr);
      materialize(res, out_dir);
      std::cout << res.output;
      return res.exit_code;
    }
    if (replay->parsed()) {
      auto loaded = load_scenario(scenario_path);
      auto res = mixvote::cmd_replay(loaded.doc, read_file(transcript_path), flag_seed, env_seed(),
                                     loaded.has_system ? &loaded.system : nullptr);
      std::cout << res.output;
      return res.exit_code;
    }
    if (build->parsed()) {
      if (build_disjoint_flag == (build_greedy_m > 0))
        throw std::invalid_argument("setsystem build: pass exactly one of --disjoint, --greedy M");
      return run_setsystem_build(build_disjoint_flag, build_greedy_m, build_t, build_out);
    }
    if (verify->parsed()) return run_setsystem_verify(system_path);
    if (confinement->parsed()) return run_setsystem_confinement(system_path);
    if (dagcut->parsed()) return run_setsystem_dagcut(system_path, dag_mode);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mixvote::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mixvote::kExitValidation;
  }
  return mixvote::kExitValidation;
}
