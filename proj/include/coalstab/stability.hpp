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

// Stability of coalition structures under defection functions.
//
// A defection function maps a partition P to the collections C its players
// may defect into. P is stable when every such C has sw(C[P]) >= sw(C), and
// strictly stable when the inequality is strict for every C that actually
// changes something (C[P] != C).
//
// Two routes are provided for each notion: the definitional oracles, which
// enumerate the defection family directly, and the characterization-based
// checkers, which scan far smaller families of coalitions. Tests hold the two
// routes to the same verdicts.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coalstab/enumerate.hpp"
#include "coalstab/errors.hpp"
#include "coalstab/game.hpp"
#include "coalstab/solver.hpp"

namespace coalstab {

/// Which collections may defect from a partition.
struct Defection {
  enum class Kind { Dc, Dp, DpK, Dhp };

  Kind kind = Kind::Dc;
  int k = 0;  // size bound, DpK only

  static Defection dc() { return {Kind::Dc, 0}; }
  static Defection dp() { return {Kind::Dp, 0}; }
  static Defection dp_k(int k) { return {Kind::DpK, k}; }
  static Defection dhp() { return {Kind::Dhp, 0}; }

  std::string str() const {
    switch (kind) {
      case Kind::Dc: return "dc";
      case Kind::Dp: return "dp";
      case Kind::DpK: return "dpk:" + std::to_string(k);
      case Kind::Dhp: return "dhp";
    }
    return "?";
  }

  /// "dc", "dp", "dpk:K" or "dhp".
  static Defection parse(const std::string& s) {
    if (s == "dc") return dc();
    if (s == "dp") return dp();
    if (s == "dhp") return dhp();
    if (s.rfind("dpk:", 0) == 0) {
      const std::string digits = s.substr(4);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
        throw std::invalid_argument("bad size bound in notion '" + s + "'");
      const int k = std::stoi(digits);
      if (k < 1) throw std::invalid_argument("bad size bound in notion '" + s + "'");
      return dp_k(k);
    }
    throw std::invalid_argument("unknown notion '" + s + "'");
  }

  friend bool operator==(const Defection&, const Defection&) = default;
};

/// C violates the defining inequality as a whole.
struct DefectingCollection {
  Collection collection;
};
/// Disjoint A, B inside one block with v(A u B) below (or, strictly, not
/// above) v(A) + v(B).
struct IntraBlockPair {
  std::size_t block;
  Coalition a;
  Coalition b;
};
/// A P-incompatible T whose pieces across blocks are worth less than T.
struct IncompatibleSet {
  Coalition t;
};
/// A split of one block into two or more parts worth more than the block.
struct BlockSplit {
  std::size_t block;
  Collection parts;
};
/// Two or more blocks whose union is worth more than they are.
struct BlockMerge {
  std::vector<std::size_t> blocks;
};

/// Evidence against stability. `kept` is the partition-side quantity of the
/// cited inequality and `deviation` the deviating side: a non-strict check
/// failed because kept < deviation, a strict one because kept <= deviation.
struct Witness {
  std::variant<DefectingCollection, IntraBlockPair, IncompatibleSet, BlockSplit, BlockMerge> evidence;
  Value kept;
  Value deviation;
};

struct Verdict {
  bool stable = true;
  bool strict = false;
  std::optional<Witness> witness;

  static Verdict pass(bool strict) { return {true, strict, std::nullopt}; }
  static Verdict fail(bool strict, Witness w) { return {false, strict, std::move(w)}; }
};

namespace detail {

inline bool violates(const Value& kept, const Value& deviation, bool strict) {
  return strict ? kept <= deviation : kept < deviation;
}

inline Value value_of_blocks(const Game& g, const Partition& p, const std::vector<std::size_t>& blocks,
                             Coalition* merged = nullptr) {
  Value total;
  Coalition u;
  for (auto i : blocks) {
    total += g.value(p[i]);
    u |= p[i];
  }
  if (merged) *merged = u;
  return total;
}

inline Value sum_of_pieces(const Game& g, const Partition& p, Coalition t) {
  Value total;
  for (Coalition b : p) total += g.value(b & t);
  return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Game-class predicates

/// v(S) = sum of v({i}) over S, for every S. Equivalent to additivity over
/// all disjoint pairs, and checkable in O(2^n n).
inline bool is_additive(const Game& g) {
  const int n = g.n();
  std::vector<Value> singles(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) singles[static_cast<std::size_t>(i)] = g.value(Coalition::singleton(i));
  bool ok = true;
  for_each_nonempty_subset(g.grand(), [&](Coalition s) {
    if (!ok) return;
    Value sum;
    for (int p : s.players()) sum += singles[static_cast<std::size_t>(p)];
    ok = sum == g.value(s);
  });
  return ok;
}

namespace detail {

/// Calls f(a, b) for each unordered pair of disjoint nonempty coalitions with
/// a u b inside `within`, oriented so that a holds the least member of a u b.
/// Stops when f returns false.
template <class F>
bool for_each_disjoint_pair(Coalition within, F&& f) {
  bool go = true;
  for_each_nonempty_subset(within, [&](Coalition u) {
    if (!go || u.size() < 2) return;
    const Coalition low = Coalition::singleton(u.least());
    const Coalition rest = u - low;
    for_each_nonempty_subset(rest, [&](Coalition r) {
      if (!go || r == rest) return;  // b must be nonempty
      const Coalition a = low | r;
      if (!f(a, u - a)) go = false;
    });
    // The split with a = {least} alone.
    if (go && !f(low, rest)) go = false;
  });
  return go;
}

}  // namespace detail

/// v(A) + v(B) <= v(A u B) for all disjoint nonempty A, B (strict: <).
inline bool is_superadditive(const Game& g, bool strict = false) {
  return detail::for_each_disjoint_pair(g.grand(), [&](Coalition a, Coalition b) {
    return !detail::violates(g.value(a | b), g.value(a) + g.value(b), strict);
  });
}

// ---------------------------------------------------------------------------
// Definitional oracles

/// Direct check of the defining inequality over the whole defection family.
/// Returns the first violating collection in enumeration order.
inline Verdict check_definitional(const Game& g, const Partition& p, Defection d, bool strict = false) {
  require_same_players(g.n(), p.n());
  const int n = g.n();
  std::optional<Verdict> found;

  // Partitions: C[P] = P, and C changes something iff C != P.
  const Value sw_p = social_welfare(g, p);
  auto test_partition = [&](const Partition& c) {
    if (strict && c == p) return true;
    Value sw_c = social_welfare(g, c);
    if (detail::violates(sw_p, sw_c, strict)) {
      found = Verdict::fail(strict, {DefectingCollection{c.collection()}, sw_p, std::move(sw_c)});
      return false;
    }
    return true;
  };

  switch (d.kind) {
    case Defection::Kind::Dc: {
      require_cap("definitional Dc oracle", static_cast<std::size_t>(n), kCollectionEnumerationCap);
      CollectionStream stream(n);
      while (auto c = stream.next()) {
        const Collection framed = frame(*c, p);
        if (strict && framed == *c) continue;
        Value kept = social_welfare(g, framed);
        Value deviation = social_welfare(g, *c);
        if (detail::violates(kept, deviation, strict))
          return Verdict::fail(strict, {DefectingCollection{*c}, std::move(kept), std::move(deviation)});
      }
      break;
    }
    case Defection::Kind::Dp:
      for_each_partition(n, test_partition);
      break;
    case Defection::Kind::DpK:
      if (d.k < 1 || d.k > n) throw std::invalid_argument("size bound k=" + std::to_string(d.k) + " outside [1, n]");
      if (static_cast<int>(p.size()) > d.k) throw std::invalid_argument("partition exceeds size bound");
      for_each_partition(n, [&](const Partition& c) {
        return static_cast<int>(c.size()) > d.k || test_partition(c);
      });
      break;
    case Defection::Kind::Dhp: {
      HomogeneousPartitionStream stream(p);
      while (auto q = stream.next())
        if (!test_partition(*q)) break;
      break;
    }
  }
  return found ? std::move(*found) : Verdict::pass(strict);
}

// ---------------------------------------------------------------------------
// Characterization-based checkers

namespace detail {

inline Verdict check_dc_impl(const Game& g, const Partition& p, bool strict) {
  require_same_players(g.n(), p.n());
  std::optional<Verdict> found;

  // Inside every block: v(A u B) >= v(A) + v(B).
  for (std::size_t i = 0; i < p.size() && !found; ++i) {
    detail::for_each_disjoint_pair(p[i], [&](Coalition a, Coalition b) {
      Value kept = g.value(a | b);
      Value deviation = g.value(a) + g.value(b);
      if (!violates(kept, deviation, strict)) return true;
      found = Verdict::fail(strict, {IntraBlockPair{i, a, b}, std::move(kept), std::move(deviation)});
      return false;
    });
  }
  if (found) return std::move(*found);

  // Every P-incompatible T, scanned from the highest bit pattern down:
  // sum_i v(P_i n T) >= v(T).
  const auto full = g.grand().bits();
  for (auto m = full; m > 0; --m) {
    const Coalition t(m);
    if (is_compatible(t, p)) continue;
    Value kept = sum_of_pieces(g, p, t);
    Value deviation = g.value(t);
    if (violates(kept, deviation, strict))
      return Verdict::fail(strict, {IncompatibleSet{t}, std::move(kept), std::move(deviation)});
  }
  return Verdict::pass(strict);
}

}  // namespace detail

/// Dc-stability via the intra-block pair and incompatible-set conditions.
inline Verdict check_dc(const Game& g, const Partition& p) { return detail::check_dc_impl(g, p, false); }

/// Strict Dc-stability: the same scan with sharp inequalities.
inline Verdict check_dc_strict(const Game& g, const Partition& p) { return detail::check_dc_impl(g, p, true); }

/// Dp-stable iff sw(P) is the maximum over all partitions.
inline Verdict check_dp(const Game& g, const Partition& p) {
  require_same_players(g.n(), p.n());
  Value sw_p = social_welfare(g, p);
  OptResult opt = optimal_partition(g);
  if (sw_p < opt.optimum)
    return Verdict::fail(false, {DefectingCollection{opt.witness.collection()}, std::move(sw_p), opt.optimum});
  return Verdict::pass(false);
}

/// Dp^k-stable iff sw(P) is the maximum over partitions with at most k blocks.
/// Only defined for |P| <= k.
inline Verdict check_dp_k(const Game& g, const Partition& p, int k) {
  require_same_players(g.n(), p.n());
  if (k < 1 || k > g.n()) throw std::invalid_argument("size bound k=" + std::to_string(k) + " outside [1, n]");
  if (static_cast<int>(p.size()) > k) throw std::invalid_argument("partition exceeds size bound");
  Value sw_p = social_welfare(g, p);
  OptResult opt = optimal_partition_bounded(g, k);
  if (sw_p < opt.optimum)
    return Verdict::fail(false, {DefectingCollection{opt.witness.collection()}, std::move(sw_p), opt.optimum});
  return Verdict::pass(false);
}

namespace detail {

inline Verdict check_dhp_impl(const Game& g, const Partition& p, bool strict) {
  require_same_players(g.n(), p.n());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].size() < 2) continue;
    const Value whole = g.value(p[i]);
    PartitionStream splits(g.n(), p[i]);
    while (auto parts = splits.next()) {
      if (parts->size() < 2) continue;
      Value sum = social_welfare(g, *parts);
      if (violates(whole, sum, strict)) return Verdict::fail(strict, {BlockSplit{i, *parts}, whole, std::move(sum)});
    }
  }
  const std::size_t k = p.size();
  require_cap("check_dhp block merges", k, kMaxPlayers);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u) group.push_back(i);
    Coalition merged;
    Value parts = value_of_blocks(g, p, group, &merged);
    Value whole = g.value(merged);
    if (violates(parts, whole, strict))
      return Verdict::fail(strict, {BlockMerge{std::move(group)}, std::move(parts), std::move(whole)});
  }
  return Verdict::pass(strict);
}

}  // namespace detail

/// Dhp-stability: no block gains by splitting and no group of blocks gains by
/// merging.
inline Verdict check_dhp(const Game& g, const Partition& p) { return detail::check_dhp_impl(g, p, false); }

/// Strict Dhp-stability: every split and every merge of two or more blocks
/// strictly loses welfare. Implied by strict Dp-stability, but weaker: with
/// v{1,2} = v{1,3} = 1 and 0 elsewhere, {{1,2},{3}} is strictly Dhp-stable
/// while {{1,3},{2}} ties it.
inline Verdict check_strict_dhp(const Game& g, const Partition& p) { return detail::check_dhp_impl(g, p, true); }

/// Strict Dp-stability holds iff P is the unique welfare maximizer.
inline Verdict check_strict_dp(const Game& g, const Partition& p) {
  require_same_players(g.n(), p.n());
  Value sw_p = social_welfare(g, p);
  OptResult opt = optimal_partition(g, /*count_maximizers=*/true);
  if (sw_p < opt.optimum)
    return Verdict::fail(true, {DefectingCollection{opt.witness.collection()}, std::move(sw_p), opt.optimum});
  if (*opt.maximizer_count == 1) return Verdict::pass(true);
  // P ties with another maximizer; name one.
  if (opt.witness != p)
    return Verdict::fail(true, {DefectingCollection{opt.witness.collection()}, sw_p, opt.optimum});
  std::optional<Verdict> found;
  for_each_partition(g.n(), [&](const Partition& q) {
    if (q == p || social_welfare(g, q) != opt.optimum) return true;
    found = Verdict::fail(true, {DefectingCollection{q.collection()}, sw_p, opt.optimum});
    return false;
  });
  return std::move(*found);
}

/// Dispatches to the characterization-based checker for `d`.
inline Verdict check(const Game& g, const Partition& p, Defection d, bool strict = false) {
  switch (d.kind) {
    case Defection::Kind::Dc: return strict ? check_dc_strict(g, p) : check_dc(g, p);
    case Defection::Kind::Dp: return strict ? check_strict_dp(g, p) : check_dp(g, p);
    case Defection::Kind::DpK:
      if (strict) throw std::invalid_argument("strict Dp^k has no characterization; use the definitional oracle");
      return check_dp_k(g, p, d.k);
    case Defection::Kind::Dhp: return strict ? check_strict_dhp(g, p) : check_dhp(g, p);
  }
  throw std::logic_error("unreachable");
}

/// Recomputes a negative verdict's witness from its structure and confirms it
/// is a genuine violation of the inequality it cites.
inline bool witness_is_genuine(const Game& g, const Partition& p, const Verdict& verdict) {
  if (verdict.stable || !verdict.witness) return verdict.stable && !verdict.witness;
  const Witness& w = *verdict.witness;
  const bool strict = verdict.strict;
  std::optional<std::pair<Value, Value>> recomputed;

  if (auto* dc = std::get_if<DefectingCollection>(&w.evidence)) {
    const Collection framed = frame(dc->collection, p);
    if (strict && framed == dc->collection) return false;
    recomputed = {social_welfare(g, framed), social_welfare(g, dc->collection)};
  } else if (auto* pair = std::get_if<IntraBlockPair>(&w.evidence)) {
    if (pair->block >= p.size() || pair->a.empty() || pair->b.empty() || !pair->a.disjoint(pair->b) ||
        !(pair->a | pair->b).subset_of(p[pair->block]))
      return false;
    recomputed = {g.value(pair->a | pair->b), g.value(pair->a) + g.value(pair->b)};
  } else if (auto* inc = std::get_if<IncompatibleSet>(&w.evidence)) {
    if (inc->t.empty() || is_compatible(inc->t, p)) return false;
    recomputed = {detail::sum_of_pieces(g, p, inc->t), g.value(inc->t)};
  } else if (auto* split = std::get_if<BlockSplit>(&w.evidence)) {
    if (split->block >= p.size() || split->parts.size() < 2 || split->parts.cover() != p[split->block]) return false;
    recomputed = {g.value(p[split->block]), social_welfare(g, split->parts)};
  } else if (auto* merge = std::get_if<BlockMerge>(&w.evidence)) {
    std::vector<std::size_t> idx = merge->blocks;
    std::sort(idx.begin(), idx.end());
    if (idx.size() < 2 || std::adjacent_find(idx.begin(), idx.end()) != idx.end() || idx.back() >= p.size())
      return false;
    Coalition merged;
    Value parts = detail::value_of_blocks(g, p, idx, &merged);
    recomputed = {std::move(parts), g.value(merged)};
  }
  return recomputed && recomputed->first == w.kept && recomputed->second == w.deviation &&
         detail::violates(w.kept, w.deviation, strict);
}

// ---------------------------------------------------------------------------
// Shortcuts and search

struct CorollaryReport {
  /// {N} is Dc-stable (the game is superadditive).
  bool grand_coalition_stable = false;
  /// ... and the only Dc-stable partition (strictly superadditive).
  bool grand_coalition_unique = false;
  /// All-singletons partition is Dc-stable: sum_{i in T} v({i}) >= v(T) for all T.
  bool singletons_stable = false;
  /// ... and the only one (the inequality is strict for every |T| >= 2).
  bool singletons_unique = false;
};

inline CorollaryReport corollary_shortcuts(const Game& g) {
  CorollaryReport r;
  r.grand_coalition_stable = is_superadditive(g, false);
  r.grand_coalition_unique = r.grand_coalition_stable && is_superadditive(g, true);
  bool weak = true;
  bool sharp = true;
  for_each_nonempty_subset(g.grand(), [&](Coalition t) {
    if (t.size() < 2) return;
    Value pieces;
    for (int i : t.players()) pieces += g.value(Coalition::singleton(i));
    const Value whole = g.value(t);
    if (pieces < whole) weak = false;
    if (pieces <= whole) sharp = false;
  });
  r.singletons_stable = weak;
  r.singletons_unique = weak && sharp;
  return r;
}

/// A Dc-stable partition if one exists. Only welfare maximizers can be
/// Dc-stable, so the search runs over the maximizers in enumeration order.
inline std::optional<Partition> find_dc_stable(const Game& g) {
  for (const Partition& p : all_maximizers(g))
    if (check_dc(g, p).stable) return p;
  return std::nullopt;
}

}  // namespace coalstab
