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

// Welfare-improving rewrite rules on partitions.
//
//   merge     {T1..Tk} u P  ->  {T1 u .. u Tk} u P       k >= 2
//   split     {T1 u .. u Tk} u P  ->  {T1..Tk} u P       k >= 2
//   transfer  {T1, T2} u P  ->  {T1 \ U, T2 u U} u P     U proper nonempty in T1
//   exchange  {T1, T2} u P  ->  {T1 \ U1 u U2, T2 \ U2 u U1} u P
//                                                        U1, U2 proper nonempty
//
// Every application must raise the social welfare strictly, so any iteration
// terminates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coalstab/enumerate.hpp"
#include "coalstab/errors.hpp"
#include "coalstab/game.hpp"

namespace coalstab {

enum class RuleName { Merge, Split, Transfer, Exchange };

inline std::string to_string(RuleName r) {
  switch (r) {
    case RuleName::Merge: return "merge";
    case RuleName::Split: return "split";
    case RuleName::Transfer: return "transfer";
    case RuleName::Exchange: return "exchange";
  }
  return "?";
}

inline RuleName parse_rule_name(const std::string& s) {
  if (s == "merge") return RuleName::Merge;
  if (s == "split") return RuleName::Split;
  if (s == "transfer") return RuleName::Transfer;
  if (s == "exchange") return RuleName::Exchange;
  throw std::invalid_argument("unknown rule '" + s + "'");
}

/// Enabled rules, as a small bit set.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::initializer_list<RuleName> rules) {
    for (auto r : rules) insert(r);
  }
  static RuleSet merge_split() { return {RuleName::Merge, RuleName::Split}; }
  static RuleSet all() { return {RuleName::Merge, RuleName::Split, RuleName::Transfer, RuleName::Exchange}; }

  /// Comma-separated rule names, e.g. "merge,split".
  static RuleSet parse(const std::string& list) {
    RuleSet out;
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto comma = list.find(',', start);
      const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!item.empty()) out.insert(parse_rule_name(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (out.bits_ == 0) throw std::invalid_argument("empty rule set");
    return out;
  }

  void insert(RuleName r) { bits_ |= bit(r); }
  bool contains(RuleName r) const { return bits_ & bit(r); }

  std::string str() const {
    std::string s;
    for (auto r : {RuleName::Merge, RuleName::Split, RuleName::Transfer, RuleName::Exchange})
      if (contains(r)) s += (s.empty() ? "" : ",") + to_string(r);
    return s;
  }

 private:
  static unsigned bit(RuleName r) { return 1u << static_cast<unsigned>(r); }
  unsigned bits_ = 0;
};

struct MergeMove {
  std::vector<std::size_t> blocks;  // ascending, at least two
};
struct SplitMove {
  std::size_t block;
  Collection parts;  // partitions the block, at least two parts
};
struct TransferMove {
  std::size_t from;
  std::size_t to;
  Coalition moved;
};
struct ExchangeMove {
  std::size_t first;  // first < second
  std::size_t second;
  Coalition from_first;
  Coalition from_second;
};

/// One rule application against a specific source partition. Block indices
/// refer to that partition's canonical block order.
struct RuleApplication {
  std::variant<MergeMove, SplitMove, TransferMove, ExchangeMove> move;
  Value gain;

  RuleName rule() const { return static_cast<RuleName>(move.index()); }
};

namespace detail {

inline Value merge_gain(const Game& g, const Partition& p, const std::vector<std::size_t>& blocks) {
  Value parts;
  Coalition u;
  for (auto i : blocks) {
    parts += g.value(p[i]);
    u |= p[i];
  }
  return g.value(u) - parts;
}

/// Enumerates improving applications in canonical order (merges, splits,
/// transfers, exchanges). `emit` returns false to stop early.
template <class Emit>
void scan_rules(const Game& g, const Partition& p, RuleSet rules, Emit&& emit) {
  require_same_players(g.n(), p.n());
  const std::size_t k = p.size();
  bool go = true;

  if (rules.contains(RuleName::Merge)) {
    for (std::uint64_t mask = 1; go && mask < (std::uint64_t{1} << k); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1u) group.push_back(i);
      Value gain = merge_gain(g, p, group);
      if (gain.sign() > 0) go = emit(RuleApplication{MergeMove{std::move(group)}, std::move(gain)});
    }
  }

  if (rules.contains(RuleName::Split)) {
    // Two-part splits first, then finer ones; every split is listed.
    for (std::size_t i = 0; go && i < k; ++i) {
      if (p[i].size() < 2) continue;
      const Value whole = g.value(p[i]);
      for (int pass = 0; go && pass < 2; ++pass) {
        PartitionStream splits(g.n(), p[i]);
        while (go) {
          auto parts = splits.next();
          if (!parts) break;
          const bool two = parts->size() == 2;
          if (parts->size() < 2 || two != (pass == 0)) continue;
          Value gain = social_welfare(g, *parts) - whole;
          if (gain.sign() > 0) go = emit(RuleApplication{SplitMove{i, std::move(*parts)}, std::move(gain)});
        }
      }
    }
  }

  if (rules.contains(RuleName::Transfer)) {
    for (std::size_t from = 0; go && from < k; ++from) {
      for (std::size_t to = 0; go && to < k; ++to) {
        if (from == to) continue;
        const Value before = g.value(p[from]) + g.value(p[to]);
        for_each_proper_subset(p[from], [&](Coalition u) {
          if (!go) return;
          Value gain = g.value(p[from] - u) + g.value(p[to] | u) - before;
          if (gain.sign() > 0) go = emit(RuleApplication{TransferMove{from, to, u}, std::move(gain)});
        });
      }
    }
  }

  if (rules.contains(RuleName::Exchange)) {
    for (std::size_t i = 0; go && i < k; ++i) {
      for (std::size_t j = i + 1; go && j < k; ++j) {
        const Value before = g.value(p[i]) + g.value(p[j]);
        for_each_proper_subset(p[i], [&](Coalition u1) {
          for_each_proper_subset(p[j], [&](Coalition u2) {
            if (!go) return;
            Value gain = g.value((p[i] - u1) | u2) + g.value((p[j] - u2) | u1) - before;
            if (gain.sign() > 0) go = emit(RuleApplication{ExchangeMove{i, j, u1, u2}, std::move(gain)});
          });
        });
      }
    }
  }
}

}  // namespace detail

/// Every strictly improving application of the enabled rules.
inline std::vector<RuleApplication> applicable_rules(const Game& g, const Partition& p, RuleSet rules) {
  std::vector<RuleApplication> out;
  detail::scan_rules(g, p, rules, [&](RuleApplication a) {
    out.push_back(std::move(a));
    return true;
  });
  return out;
}

/// No enabled rule applies.
inline bool is_closed(const Game& g, const Partition& p, RuleSet rules) {
  bool closed = true;
  detail::scan_rules(g, p, rules, [&](const RuleApplication&) {
    closed = false;
    return false;
  });
  return closed;
}

/// Rewrites `p` by `a`. Checks that the payload fits `p`; the welfare gain is
/// not re-evaluated here (see the overload taking a game).
inline Partition step(const Partition& p, const RuleApplication& a) {
  const std::size_t k = p.size();
  auto bad = [](const std::string& why) { return std::invalid_argument("inapplicable application: " + why); };
  std::vector<Coalition> blocks = p.blocks();

  return std::visit(
      [&](const auto& m) -> Partition {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, MergeMove>) {
          std::vector<std::size_t> idx = m.blocks;
          std::sort(idx.begin(), idx.end());
          if (idx.size() < 2 || std::adjacent_find(idx.begin(), idx.end()) != idx.end() || idx.back() >= k)
            throw bad("merge needs two or more distinct blocks");
          Coalition u;
          for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            u |= blocks[*it];
            blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(*it));
          }
          blocks.push_back(u);
        } else if constexpr (std::is_same_v<M, SplitMove>) {
          if (m.block >= k || m.parts.size() < 2 || m.parts.cover() != blocks[m.block])
            throw bad("split parts must partition the block into two or more parts");
          blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(m.block));
          blocks.insert(blocks.end(), m.parts.begin(), m.parts.end());
        } else if constexpr (std::is_same_v<M, TransferMove>) {
          if (m.from >= k || m.to >= k || m.from == m.to || m.moved.empty() ||
              !m.moved.proper_subset_of(blocks[m.from]))
            throw bad("transfer moves a proper nonempty subset between two blocks");
          blocks[m.from] = blocks[m.from] - m.moved;
          blocks[m.to] = blocks[m.to] | m.moved;
        } else {
          if (m.first >= k || m.second >= k || m.first == m.second || m.from_first.empty() ||
              m.from_second.empty() || !m.from_first.proper_subset_of(blocks[m.first]) ||
              !m.from_second.proper_subset_of(blocks[m.second]))
            throw bad("exchange swaps proper nonempty subsets of two blocks");
          const Coalition a = (blocks[m.first] - m.from_first) | m.from_second;
          const Coalition b = (blocks[m.second] - m.from_second) | m.from_first;
          blocks[m.first] = a;
          blocks[m.second] = b;
        }
        return Partition(p.n(), std::move(blocks));
      },
      a.move);
}

/// As step(p, a), and also checks that the stated gain is exact and positive.
inline Partition step(const Game& g, const Partition& p, const RuleApplication& a) {
  Partition next = step(p, a);
  if (a.gain.sign() <= 0) throw std::invalid_argument("inapplicable application: gain must be positive");
  if (social_welfare(g, next) - social_welfare(g, p) != a.gain)
    throw std::invalid_argument("inapplicable application: stated gain does not match");
  return next;
}

/// How iterate() picks among applicable rules.
class Strategy {
 public:
  enum class Kind { FirstApplicable, BestGain, Random };

  static Strategy first() { return Strategy(Kind::FirstApplicable, 0); }
  static Strategy best() { return Strategy(Kind::BestGain, 0); }
  static Strategy random(std::uint64_t seed) { return Strategy(Kind::Random, seed); }

  /// "first", "best" or "random:SEED".
  static Strategy parse(const std::string& s) {
    if (s == "first") return first();
    if (s == "best") return best();
    if (s.rfind("random:", 0) == 0) {
      const std::string digits = s.substr(7);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19)
        throw std::invalid_argument("bad seed in strategy '" + s + "'");
      return random(std::stoull(digits));
    }
    throw std::invalid_argument("unknown strategy '" + s + "'");
  }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::string str() const {
    switch (kind_) {
      case Kind::FirstApplicable: return "first";
      case Kind::BestGain: return "best";
      case Kind::Random: return "random:" + std::to_string(seed_);
    }
    return "?";
  }

 private:
  Strategy(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}
  Kind kind_;
  std::uint64_t seed_;
};

struct TraceStep {
  RuleApplication application;
  Partition result;
  Value welfare;  // sw(result)
};

struct Trace {
  Partition initial;
  Value initial_welfare;
  std::vector<TraceStep> steps;
  Partition final_partition;
};

/// Applies rules chosen by `strategy` until none applies.
inline Trace iterate(const Game& g, const Partition& start, Strategy strategy, RuleSet rules = RuleSet::merge_split()) {
  Trace trace{start, social_welfare(g, start), {}, start};
  std::mt19937_64 rng(strategy.seed());
  Partition current = start;
  Value welfare = trace.initial_welfare;
  while (true) {
    std::vector<RuleApplication> options = applicable_rules(g, current, rules);
    if (options.empty()) break;
    std::size_t pick = 0;
    switch (strategy.kind()) {
      case Strategy::Kind::FirstApplicable: break;
      case Strategy::Kind::BestGain:
        for (std::size_t i = 1; i < options.size(); ++i)
          if (options[i].gain > options[pick].gain) pick = i;
        break;
      case Strategy::Kind::Random: pick = static_cast<std::size_t>(rng() % options.size()); break;
    }
    Partition next = step(current, options[pick]);
    welfare += options[pick].gain;
    trace.steps.push_back({std::move(options[pick]), next, welfare});
    current = std::move(next);
  }
  trace.final_partition = current;
  return trace;
}

/// Every fixpoint reachable from `start` under any order of rule
/// applications, in ascending partition order. Depth-first over the rewrite
/// graph with memoization on canonical partitions.
inline std::vector<Partition> closure_outcomes(const Game& g, const Partition& start, RuleSet rules) {
  require_cap("closure_outcomes", static_cast<std::size_t>(g.n()), kClosureCap);
  std::set<Partition> visited;
  std::set<Partition> fixpoints;
  std::vector<Partition> stack{start};
  visited.insert(start);
  while (!stack.empty()) {
    Partition current = std::move(stack.back());
    stack.pop_back();
    std::vector<RuleApplication> options = applicable_rules(g, current, rules);
    if (options.empty()) {
      fixpoints.insert(current);
      continue;
    }
    // Push in reverse so children are expanded in canonical order.
    for (auto it = options.rbegin(); it != options.rend(); ++it) {
      Partition next = step(current, *it);
      if (visited.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return {fixpoints.begin(), fixpoints.end()};
}

}  // namespace coalstab
