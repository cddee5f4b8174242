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

#pragma once

// Text formats.
//
// Game files are line oriented. '#' starts a comment. Lines are one of
//
//   key: value                     header or family parameter
//   {1,3}: 5/2                     table entry (coalition literal: value)
//   partition NAME: {{1,2},{3}}    named partition
//
// A header line may carry several "key: value" pairs separated by commas when
// every comma-separated piece has a colon ("family: generalized_odd, n: 3").
// Values are integers, fractions p/q or finite decimals, all read exactly.
//
// Table documents:  n: N, representation: table, optional "default: 0",
//                   then one entry per nonempty coalition.
// Rule documents:   representation: rule, family: NAME, then the family's
//                   parameters (see build_rule_game).
//
// Reports are JSON with every value written as an exact rational string.
// Trace lines are documented at trace_lines().

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coalstab/dynamics.hpp"
#include "coalstab/errors.hpp"
#include "coalstab/game.hpp"
#include "coalstab/games.hpp"
#include "coalstab/solver.hpp"
#include "coalstab/stability.hpp"

namespace coalstab {

// ---------------------------------------------------------------------------
// Literals

namespace detail {

inline std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline int parse_player(std::string_view text, int n) {
  const std::string t = strip(text);
  if (t.empty() || t.size() > 3 || t.find_first_not_of("0123456789") != std::string::npos)
    throw parse_error("malformed player index '" + t + "'");
  const int p = std::stoi(t);
  if (p < 1 || p > n) throw parse_error("player index " + t + " out of range 1.." + std::to_string(n));
  return p;
}

}  // namespace detail

/// "{1,3}" -> coalition; "{}" is the empty coalition. Repeated players are an
/// error.
inline Coalition parse_coalition(std::string_view text, int n) {
  const std::string t = detail::strip(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw parse_error("malformed coalition literal '" + t + "'");
  const std::string inner = detail::strip(std::string_view(t).substr(1, t.size() - 2));
  Coalition c;
  if (inner.empty()) return c;
  std::size_t start = 0;
  while (true) {
    const auto comma = inner.find(',', start);
    const int p = detail::parse_player(std::string_view(inner).substr(start, comma == std::string::npos ? std::string::npos : comma - start), n);
    if (c.contains(p)) throw parse_error("player " + std::to_string(p) + " repeated in '" + t + "'");
    c.insert(p);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return c;
}

/// "{{1,2},{3}}" -> collection (canonicalized; block order is irrelevant).
inline Collection parse_collection(std::string_view text, int n) {
  const std::string t = detail::strip(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw parse_error("malformed collection literal '" + t + "'");
  const std::string inner = detail::strip(std::string_view(t).substr(1, t.size() - 2));
  std::vector<Coalition> blocks;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    const auto open = inner.find('{', pos);
    if (open == std::string::npos) {
      if (!detail::strip(std::string_view(inner).substr(pos)).empty())
        throw parse_error("malformed collection literal '" + t + "'");
      break;
    }
    const std::string between = detail::strip(std::string_view(inner).substr(pos, open - pos));
    if (!(between.empty() || (between == "," && !blocks.empty()))) throw parse_error("malformed collection literal '" + t + "'");
    if (between.empty() && !blocks.empty()) throw parse_error("missing comma in collection literal '" + t + "'");
    const auto close = inner.find('}', open);
    if (close == std::string::npos) throw parse_error("unbalanced braces in '" + t + "'");
    Coalition c = parse_coalition(std::string_view(inner).substr(open, close - open + 1), n);
    if (c.empty()) throw parse_error("empty block in '" + t + "'");
    blocks.push_back(c);
    pos = close + 1;
  }
  try {
    return Collection(n, std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string(e.what()));
  }
}

inline Partition parse_partition(std::string_view text, int n) {
  Collection c = parse_collection(text, n);
  if (!c.covers_all()) throw parse_error("'" + detail::strip(text) + "' does not cover players 1.." + std::to_string(n));
  return Partition(std::move(c));
}

// ---------------------------------------------------------------------------
// Game documents

/// A rule-family game description: family name plus its parameters in file
/// order.
struct RuleSpec {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  }
  std::string require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw parse_error("family '" + family + "' needs parameter '" + key + "'");
  }

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

struct GameDocument {
  Game game;
  std::optional<RuleSpec> rule;
  /// Partitions named in the file, in file order.
  std::vector<std::pair<std::string, Partition>> partitions;
  /// Partitions a rule family defines (e.g. "cities", "odd_even").
  std::vector<std::pair<std::string, Partition>> family_partitions;

  std::optional<Partition> find_partition(const std::string& name) const {
    for (const auto* list : {&partitions, &family_partitions})
      for (const auto& [k, p] : *list)
        if (k == name) return p;
    return std::nullopt;
  }
};

namespace detail {

inline std::int64_t parse_int_param(const RuleSpec& r, const std::string& key, std::optional<std::int64_t> fallback = {}) {
  auto text = r.get(key);
  if (!text) {
    if (fallback) return *fallback;
    throw parse_error("family '" + r.family + "' needs parameter '" + key + "'");
  }
  Value v = Value::parse(*text);
  if (!v.is_integer() || abs(v.numerator()) > 1'000'000'000'000'000'000LL)
    throw parse_error("parameter '" + key + "' must be an integer");
  return v.numerator().convert_to<std::int64_t>();
}

inline std::vector<Value> parse_value_list(const std::string& text) {
  std::istringstream in(text);
  std::vector<Value> out;
  std::string item;
  while (in >> item) out.push_back(Value::parse(item));
  return out;
}

/// Player count implied by a partition literal: the largest player named.
inline int players_in_literal(const std::string& text) {
  int best = 0;
  std::string digits;
  for (char ch : text + " ") {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
    } else if (!digits.empty()) {
      if (digits.size() > 3) throw parse_error("player index '" + digits + "' out of range");
      best = std::max(best, std::stoi(digits));
      digits.clear();
    }
  }
  if (best < 1) throw parse_error("partition literal '" + text + "' names no players");
  if (best > kMaxPlayers) throw parse_error("player index " + std::to_string(best) + " out of range");
  return best;
}

}  // namespace detail

/// Builds a game from a rule family. Families and their parameters:
///
///   paper_example     name: exa-a | exa-1 | exa-miss | exa-2 | exa-miss1
///   generalized_odd   n: half the player count (>= 2)
///   partition_power   partition: literal, m: exponent (>= 1)
///   transportation    cities: literal, base_costs: a_1 .. a_k,
///                     decays: r_1 .. r_k, penalty: mu, [chains: literal]
///   random            class: additive|superadditive|strictly_superadditive|general,
///                     players, seed, [low: 0], [high: 10], [denominator: 1]
///
/// Also returns the partitions the family defines.
inline std::pair<Game, std::vector<std::pair<std::string, Partition>>> build_rule_game(const RuleSpec& r) {
  std::vector<std::pair<std::string, Partition>> named;
  try {
    if (r.family == "paper_example") return {paper_example(r.require("name")), named};
    if (r.family == "generalized_odd") {
      const auto half = detail::parse_int_param(r, "n");
      if (half < 2 || 2 * half > kMaxPlayers) throw parse_error("generalized_odd needs 2 <= n <= " + std::to_string(kMaxPlayers / 2));
      const int h = static_cast<int>(half);
      named.emplace_back("odd_even", odd_even_partition(h));
      named.emplace_back("pairs", pairs_partition(h));
      return {generalized_odd_game(h), named};
    }
    if (r.family == "partition_power") {
      const std::string literal = r.require("partition");
      Partition p = parse_partition(literal, detail::players_in_literal(literal));
      const auto m = detail::parse_int_param(r, "m");
      if (m < 1 || m > 64) throw parse_error("partition_power needs 1 <= m <= 64");
      named.emplace_back("defining", p);
      return {partition_power_game(p, static_cast<int>(m)), named};
    }
    if (r.family == "transportation") {
      const std::string literal = r.require("cities");
      const int n = detail::players_in_literal(literal);
      CityConfig cfg{parse_partition(literal, n), detail::parse_value_list(r.require("base_costs")),
                     detail::parse_value_list(r.require("decays")), Value::parse(r.require("penalty")), std::nullopt};
      if (auto chains = r.get("chains")) cfg.chains = parse_partition(*chains, n);
      TransportationGame t = transportation_game(cfg);
      named.emplace_back("cities", cfg.cities);
      named.emplace_back("chains", t.chains);
      return {t.game, named};
    }
    if (r.family == "random") {
      GeneratorSpec spec;
      spec.game_class = parse_game_class(r.require("class"));
      spec.n = static_cast<int>(detail::parse_int_param(r, "players"));
      spec.seed = static_cast<std::uint64_t>(detail::parse_int_param(r, "seed"));
      spec.low = detail::parse_int_param(r, "low", 0);
      spec.high = detail::parse_int_param(r, "high", 10);
      spec.denominator = detail::parse_int_param(r, "denominator", 1);
      return {random_game(spec), named};
    }
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string(e.what()));
  }
  throw parse_error("unknown family '" + r.family + "'");
}

namespace detail {

inline bool is_header_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

/// Splits "a: 1, b: 2" into pairs when every piece has a colon.
inline std::vector<std::pair<std::string, std::string>> split_header(const std::string& line) {
  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    pieces.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  const bool all_keyed = std::all_of(pieces.begin(), pieces.end(), [](const std::string& p) {
    const auto colon = p.find(':');
    return colon != std::string::npos && is_header_key(strip(std::string_view(p).substr(0, colon)));
  });
  if (!all_keyed) pieces = {line};
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : pieces) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw parse_error("expected 'key: value', got '" + strip(p) + "'");
    const std::string key = strip(std::string_view(p).substr(0, colon));
    if (!is_header_key(key)) throw parse_error("bad key '" + key + "'");
    out.emplace_back(key, strip(std::string_view(p).substr(colon + 1)));
  }
  return out;
}

}  // namespace detail

inline GameDocument parse_game(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> params;  // rule parameters, file order
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::pair<std::string, std::string>> partition_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = detail::strip(raw);
    if (line.empty()) continue;
    try {
      if (line.front() == '{') {
        const auto close = line.find('}');
        const auto colon = close == std::string::npos ? std::string::npos : line.find(':', close);
        if (colon == std::string::npos) throw parse_error("expected '{...}: value'");
        entries.emplace_back(line.substr(0, colon), detail::strip(std::string_view(line).substr(colon + 1)));
      } else if (line.rfind("partition ", 0) == 0) {
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw parse_error("expected 'partition NAME: literal'");
        const std::string name = detail::strip(std::string_view(line).substr(10, colon - 10));
        if (!detail::is_header_key(name)) throw parse_error("bad partition name '" + name + "'");
        for (const auto& [k, v] : partition_lines)
          if (k == name) throw parse_error("partition '" + name + "' named twice");
        partition_lines.emplace_back(name, detail::strip(std::string_view(line).substr(colon + 1)));
      } else {
        for (auto& [k, v] : detail::split_header(line)) {
          if (std::any_of(params.begin(), params.end(), [&](const auto& kv) { return kv.first == k; }))
            throw parse_error("key '" + k + "' given twice");
          params.emplace_back(k, v);
        }
      }
    } catch (const parse_error& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  auto header_value = [&](const std::string& key) -> std::optional<std::string> {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  };

  std::string representation = header_value("representation").value_or(header_value("family") ? "rule" : "table");
  GameDocument doc{Game::from_table(1, {Value(0), Value(0)}), std::nullopt, {}, {}};

  if (representation == "rule") {
    if (!entries.empty()) throw parse_error("rule documents take no table entries");
    RuleSpec rule;
    rule.family = header_value("family").value_or("");
    if (rule.family.empty()) throw parse_error("rule document needs 'family'");
    for (const auto& [k, v] : params)
      if (k != "representation" && k != "family") rule.params.emplace_back(k, v);
    auto [game, named] = build_rule_game(rule);
    if (auto players = header_value("players"); players && Value::parse(*players) != Value(game.n()))
      throw parse_error("'players: " + *players + "' disagrees with the family (" + std::to_string(game.n()) + " players)");
    doc.game = std::move(game);
    doc.rule = std::move(rule);
    doc.family_partitions = std::move(named);
  } else if (representation == "table") {
    auto n_text = header_value("n");
    if (!n_text) throw parse_error("table document needs 'n'");
    const Value n_value = Value::parse(*n_text);
    if (!n_value.is_integer() || n_value < Value(1) || n_value > Value(kMaxPlayers))
      throw parse_error("n must be an integer in [1, " + std::to_string(kMaxPlayers) + "]");
    const int n = n_value.numerator().convert_to<int>();
    for (const auto& [k, v] : params)
      if (k != "n" && k != "representation" && k != "default") throw parse_error("unknown key '" + k + "' in table document");
    bool defaults_to_zero = false;
    if (auto d = header_value("default")) {
      if (Value::parse(*d) != Value(0)) throw parse_error("only 'default: 0' is supported");
      defaults_to_zero = true;
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<Value> table(size);
    std::vector<bool> seen(size, false);
    for (const auto& [literal, value_text] : entries) {
      const Coalition c = parse_coalition(literal, n);
      if (seen[c.bits()]) throw parse_error("duplicate coalition entry " + c.str());
      seen[c.bits()] = true;
      Value v = Value::parse(value_text);
      if (c.empty() && !v.is_zero()) throw parse_error("value for {} must be 0");
      table[c.bits()] = std::move(v);
    }
    if (!defaults_to_zero) {
      for (std::size_t m = 1; m < size; ++m)
        if (!seen[m]) throw parse_error("missing value for " + Coalition(static_cast<Coalition::mask_type>(m)).str() + " (add 'default: 0' to allow)");
    }
    doc.game = Game::from_table(n, std::move(table));
  } else {
    throw parse_error("unknown representation '" + representation + "'");
  }

  for (const auto& [name, literal] : partition_lines) doc.partitions.emplace_back(name, parse_partition(literal, doc.game.n()));
  return doc;
}

/// Table documents list every nonempty coalition in bit-pattern order; rule
/// documents write their family parameters. Named partitions follow.
inline std::string serialize_game(const GameDocument& doc) {
  std::ostringstream out;
  if (doc.rule) {
    out << "representation: rule\n";
    out << "family: " << doc.rule->family << "\n";
    for (const auto& [k, v] : doc.rule->params) out << k << ": " << v << "\n";
  } else {
    const int n = doc.game.n();
    out << "n: " << n << "\n";
    out << "representation: table\n";
    for (std::size_t m = 1; m < (std::size_t{1} << n); ++m) {
      const Coalition c(static_cast<Coalition::mask_type>(m));
      out << c.str() << ": " << doc.game.value(c).str() << "\n";
    }
  }
  for (const auto& [name, p] : doc.partitions) out << "partition " << name << ": " << p.str() << "\n";
  return out.str();
}

inline std::string serialize_game(const Game& g) {
  return serialize_game(GameDocument{g, std::nullopt, {}, {}});
}

// ---------------------------------------------------------------------------
// Reports

using json = nlohmann::ordered_json;

inline json witness_to_json(const Partition& p, const Witness& w) {
  json j;
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, DefectingCollection>) {
          j["kind"] = "defecting_collection";
          j["collection"] = e.collection.str();
        } else if constexpr (std::is_same_v<E, IntraBlockPair>) {
          j["kind"] = "intra_block_pair";
          j["block"] = p[e.block].str();
          j["a"] = e.a.str();
          j["b"] = e.b.str();
        } else if constexpr (std::is_same_v<E, IncompatibleSet>) {
          j["kind"] = "incompatible_set";
          j["T"] = e.t.str();
        } else if constexpr (std::is_same_v<E, BlockSplit>) {
          j["kind"] = "block_split";
          j["block"] = p[e.block].str();
          j["parts"] = e.parts.str();
        } else {
          j["kind"] = "block_merge";
          json blocks = json::array();
          for (auto i : e.blocks) blocks.push_back(p[i].str());
          j["blocks"] = blocks;
        }
      },
      w.evidence);
  j["kept"] = w.kept.str();
  j["deviation"] = w.deviation.str();
  return j;
}

/// Inverse of witness_to_json against the same partition.
inline Witness witness_from_json(const json& j, const Partition& p) {
  const int n = p.n();
  auto block_index = [&](const std::string& literal) {
    const Coalition c = parse_coalition(literal, n);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] == c) return i;
    throw parse_error("witness block " + literal + " is not a block of " + p.str());
  };
  const std::string kind = j.at("kind").get<std::string>();
  Witness w{DefectingCollection{}, Value::parse(j.at("kept").get<std::string>()),
            Value::parse(j.at("deviation").get<std::string>())};
  if (kind == "defecting_collection") {
    w.evidence = DefectingCollection{parse_collection(j.at("collection").get<std::string>(), n)};
  } else if (kind == "intra_block_pair") {
    w.evidence = IntraBlockPair{block_index(j.at("block").get<std::string>()), parse_coalition(j.at("a").get<std::string>(), n),
                                parse_coalition(j.at("b").get<std::string>(), n)};
  } else if (kind == "incompatible_set") {
    w.evidence = IncompatibleSet{parse_coalition(j.at("T").get<std::string>(), n)};
  } else if (kind == "block_split") {
    w.evidence = BlockSplit{block_index(j.at("block").get<std::string>()), parse_collection(j.at("parts").get<std::string>(), n)};
  } else if (kind == "block_merge") {
    BlockMerge m;
    for (const auto& b : j.at("blocks")) m.blocks.push_back(block_index(b.get<std::string>()));
    w.evidence = std::move(m);
  } else {
    throw parse_error("unknown witness kind '" + kind + "'");
  }
  return w;
}

inline json verdict_to_json(const Partition& p, const Verdict& v, Defection d, const std::string& checker) {
  json j;
  j["command"] = "check";
  j["notion"] = d.str();
  j["strict"] = v.strict;
  j["checker"] = checker;
  j["partition"] = p.str();
  j["stable"] = v.stable;
  if (v.witness) j["witness"] = witness_to_json(p, *v.witness);
  return j;
}

inline json opt_to_json(const OptResult& r, std::optional<int> max_size = std::nullopt) {
  json j;
  j["command"] = "solve";
  if (max_size) j["max_size"] = *max_size;
  j["optimum"] = r.optimum.str();
  j["witness"] = r.witness.str();
  if (r.maximizer_count) j["maximizer_count"] = *r.maximizer_count;
  return j;
}

inline std::string describe_move(const Partition& source, const RuleApplication& a) {
  return std::visit(
      [&](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, MergeMove>) {
          std::string s = "merge";
          for (auto i : m.blocks) s += " " + source[i].str();
          return s;
        } else if constexpr (std::is_same_v<M, SplitMove>) {
          std::string s = "split " + source[m.block].str() + " into";
          for (Coalition c : m.parts) s += " " + c.str();
          return s;
        } else if constexpr (std::is_same_v<M, TransferMove>) {
          return "transfer " + m.moved.str() + " from " + source[m.from].str() + " to " + source[m.to].str();
        } else {
          return "exchange " + m.from_first.str() + " from " + source[m.first].str() + " with " + m.from_second.str() +
                 " from " + source[m.second].str();
        }
      },
      a.move);
}

/// One line per event:
///   start <partition> sw <value>
///   <move> gain <value> => <partition> sw <value>      (per step)
///   final <partition> sw <value>
/// where <move> is one of
///   merge <block> <block> ...
///   split <block> into <part> <part> ...
///   transfer <U> from <block> to <block>
///   exchange <U1> from <block> with <U2> from <block>
inline std::vector<std::string> trace_lines(const Trace& t) {
  std::vector<std::string> lines;
  lines.push_back("start " + t.initial.str() + " sw " + t.initial_welfare.str());
  const Partition* source = &t.initial;
  for (const auto& s : t.steps) {
    lines.push_back(describe_move(*source, s.application) + " gain " + s.application.gain.str() + " => " + s.result.str() +
                    " sw " + s.welfare.str());
    source = &s.result;
  }
  const Value final_welfare = t.steps.empty() ? t.initial_welfare : t.steps.back().welfare;
  lines.push_back("final " + t.final_partition.str() + " sw " + final_welfare.str());
  return lines;
}

inline json trace_to_json(const Trace& t, Strategy strategy, RuleSet rules) {
  json j;
  j["command"] = "iterate";
  j["strategy"] = strategy.str();
  j["rules"] = rules.str();
  j["start"] = t.initial.str();
  j["final"] = t.final_partition.str();
  j["steps"] = t.steps.size();
  j["trace"] = trace_lines(t);
  return j;
}

}  // namespace coalstab
