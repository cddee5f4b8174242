// Copyright 2026 The coalstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// coalstab: command-line front end.
//
// Exit codes: 0 stable / found / success, 1 unstable / absent,
// 2 usage or parse error, 3 cap exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coalstab/coalstab.hpp"

namespace {

using namespace coalstab;

constexpr int kExitStable = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

GameDocument load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

/// A name from the game file, or a literal such as {{1,2},{3}}.
Partition resolve_partition(const GameDocument& doc, const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_partition(spec, doc.game.n());
  if (auto p = doc.find_partition(spec)) return *p;
  if (spec == "singletons") return Partition::singletons(doc.game.n());
  if (spec == "grand") return Partition::grand(doc.game.n());
  throw parse_error("no partition named '" + spec + "'");
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of coalition structures in TU games"};
  app.require_subcommand(1);

  std::string game_path;
  std::string partition_spec;
  std::string notion = "dc";
  bool strict = false;
  bool oracle = false;

  auto* check_cmd = app.add_subcommand("check", "Check a partition for stability");
  check_cmd->add_option("--game", game_path, "Game file")->required();
  check_cmd->add_option("--partition", partition_spec, "Partition name or literal")->required();
  check_cmd->add_option("--notion", notion, "dc | dp | dpk:K | dhp")->required();
  check_cmd->add_flag("--strict", strict, "Strict stability");
  check_cmd->add_flag("--oracle", oracle, "Use the definitional oracle");

  auto* find_cmd = app.add_subcommand("find", "Find a stable partition");
  find_cmd->add_option("--game", game_path, "Game file")->required();
  find_cmd->add_option("--notion", notion, "dc | dp")->required();

  int max_size = 0;
  bool all_max = false;
  auto* solve_cmd = app.add_subcommand("solve", "Welfare-maximizing partition");
  solve_cmd->add_option("--game", game_path, "Game file")->required();
  solve_cmd->add_option("--max-size", max_size, "At most K blocks");
  solve_cmd->add_flag("--all-maximizers", all_max, "List every maximizer");

  std::string start_spec;
  std::string strategy_spec = "first";
  std::string rules_spec = "merge,split";
  bool as_json = false;
  auto* iterate_cmd = app.add_subcommand("iterate", "Iterate rewrite rules to a fixpoint");
  iterate_cmd->add_option("--game", game_path, "Game file")->required();
  iterate_cmd->add_option("--start", start_spec, "Start partition name or literal")->required();
  iterate_cmd->add_option("--strategy", strategy_spec, "first | best | random:SEED");
  iterate_cmd->add_option("--rules", rules_spec, "Comma-separated: merge,split,transfer,exchange");
  iterate_cmd->add_flag("--json", as_json, "Print a JSON report instead of trace lines");

  auto* outcomes_cmd = app.add_subcommand("outcomes", "All fixpoints reachable from a start");
  outcomes_cmd->add_option("--game", game_path, "Game file")->required();
  outcomes_cmd->add_option("--start", start_spec, "Start partition name or literal")->required();
  outcomes_cmd->add_option("--rules", rules_spec, "Comma-separated rule names");

  std::string family;
  std::vector<std::string> params;
  std::vector<std::string> extra_partitions;
  std::string out_path;
  bool as_table = false;
  auto* generate_cmd = app.add_subcommand("generate", "Write a game file for a family");
  generate_cmd->add_option("--family", family, "paper_example | generalized_odd | partition_power | transportation | random")
      ->required();
  generate_cmd->add_option("--param", params, "Family parameter KEY=VALUE (repeatable)");
  generate_cmd->add_option("--partition", extra_partitions, "Named partition NAME=LITERAL (repeatable)");
  generate_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
  generate_cmd->add_flag("--table", as_table, "Write the full value table instead of the rule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check_cmd) {
      const GameDocument doc = load_game(game_path);
      const Partition p = resolve_partition(doc, partition_spec);
      const Defection d = Defection::parse(notion);
      const Verdict v = oracle ? check_definitional(doc.game, p, d, strict) : check(doc.game, p, d, strict);
      print(verdict_to_json(p, v, d, oracle ? "definitional" : "characterization"));
      return v.stable ? kExitStable : kExitUnstable;
    }

    if (*find_cmd) {
      const GameDocument doc = load_game(game_path);
      json j;
      j["command"] = "find";
      j["notion"] = notion;
      std::optional<Partition> found;
      if (notion == "dc") {
        found = find_dc_stable(doc.game);
      } else if (notion == "dp") {
        found = optimal_partition(doc.game).witness;
      } else {
        throw std::invalid_argument("find supports --notion dc or dp");
      }
      j["found"] = found.has_value();
      if (found) {
        j["partition"] = found->str();
        j["social_welfare"] = social_welfare(doc.game, *found).str();
      }
      print(j);
      return found ? kExitStable : kExitUnstable;
    }

    if (*solve_cmd) {
      const GameDocument doc = load_game(game_path);
      json j;
      if (max_size > 0) {
        j = opt_to_json(optimal_partition_bounded(doc.game, max_size), max_size);
      } else {
        j = opt_to_json(optimal_partition(doc.game, /*count_maximizers=*/true));
      }
      if (all_max) {
        json list = json::array();
        for (const auto& p : all_maximizers(doc.game)) list.push_back(p.str());
        j["all_maximizers"] = list;
      }
      print(j);
      return kExitStable;
    }

    if (*iterate_cmd) {
      const GameDocument doc = load_game(game_path);
      const Partition start = resolve_partition(doc, start_spec);
      const Strategy strategy = Strategy::parse(strategy_spec);
      const RuleSet rules = RuleSet::parse(rules_spec);
      const Trace t = iterate(doc.game, start, strategy, rules);
      if (as_json) {
        print(trace_to_json(t, strategy, rules));
      } else {
        for (const auto& line : trace_lines(t)) std::cout << line << "\n";
      }
      return kExitStable;
    }

    if (*outcomes_cmd) {
      const GameDocument doc = load_game(game_path);
      const Partition start = resolve_partition(doc, start_spec);
      const RuleSet rules = RuleSet::parse(rules_spec);
      json j;
      j["command"] = "outcomes";
      j["start"] = start.str();
      j["rules"] = rules.str();
      json list = json::array();
      for (const auto& p : closure_outcomes(doc.game, start, rules)) {
        json item;
        item["partition"] = p.str();
        item["social_welfare"] = social_welfare(doc.game, p).str();
        list.push_back(item);
      }
      j["outcomes"] = list;
      print(j);
      return kExitStable;
    }

    if (*generate_cmd) {
      RuleSpec rule{family, {}};
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--param expects KEY=VALUE, got '" + kv + "'");
        rule.params.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
      auto [game, named] = build_rule_game(rule);
      GameDocument doc{game, std::nullopt, {}, {}};
      // Rule documents rebuild the family's partitions on load.
      if (as_table) {
        for (const auto& [name, p] : named) doc.partitions.emplace_back(name, p);
      } else {
        doc.rule = rule;
      }
      for (const auto& kv : extra_partitions) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--partition expects NAME=LITERAL, got '" + kv + "'");
        doc.partitions.emplace_back(kv.substr(0, eq), parse_partition(kv.substr(eq + 1), game.n()));
      }
      const std::string text = serialize_game(doc);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw parse_error("cannot write '" + out_path + "'");
        out << text;
      }
      return kExitStable;
    }
  } catch (const cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
