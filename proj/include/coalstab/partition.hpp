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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalstab/coalition.hpp"

namespace coalstab {

/// Family of pairwise disjoint nonempty coalitions over players {1..n}.
///
/// Blocks are kept in canonical order (ascending least member), so two
/// collections with the same blocks compare equal regardless of how they were
/// built. The empty collection is allowed.
class Collection {
 public:
  Collection() = default;

  /// Validates and canonicalizes. Throws std::invalid_argument on empty
  /// blocks, overlapping blocks or players outside 1..n.
  Collection(int n, std::vector<Coalition> blocks) : n_(PlayerCount(n)), blocks_(std::move(blocks)) {
    const Coalition all = Coalition::grand(n_);
    Coalition seen;
    for (Coalition b : blocks_) {
      if (b.empty()) throw std::invalid_argument("collection contains an empty block");
      if (!b.subset_of(all)) throw std::invalid_argument("block " + b.str() + " has a player outside 1.." + std::to_string(n_));
      if (b.intersects(seen)) throw std::invalid_argument("blocks are not pairwise disjoint at " + b.str());
      seen |= b;
    }
    canonicalize();
    cover_ = seen;
  }

  int n() const noexcept { return n_; }
  const std::vector<Coalition>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  const Coalition& operator[](std::size_t i) const { return blocks_[i]; }
  auto begin() const noexcept { return blocks_.begin(); }
  auto end() const noexcept { return blocks_.end(); }

  /// Union of all blocks.
  Coalition cover() const noexcept { return cover_; }
  bool covers_all() const noexcept { return cover_ == Coalition::grand(n_); }

  bool contains_block(Coalition c) const {
    return std::find(blocks_.begin(), blocks_.end(), c) != blocks_.end();
  }

  /// Every block of *this is also a block of `other`.
  bool is_subcollection_of(const Collection& other) const {
    return std::all_of(blocks_.begin(), blocks_.end(), [&](Coalition b) { return other.contains_block(b); });
  }

  /// "{{1,2},{3}}"; the empty collection prints as "{}".
  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += ',';
      s += blocks_[i].str();
    }
    return s + "}";
  }

  friend bool operator==(const Collection& a, const Collection& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  /// Orders by n, then lexicographically by block bit patterns.
  friend std::strong_ordering operator<=>(const Collection& a, const Collection& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                                  b.blocks_.end());
  }

 private:
  void canonicalize() {
    std::sort(blocks_.begin(), blocks_.end(),
              [](Coalition a, Coalition b) { return a.least() < b.least(); });
  }

  int n_ = 1;
  std::vector<Coalition> blocks_;
  Coalition cover_;
};

/// A collection whose blocks cover {1..n}.
class Partition {
 public:
  Partition(int n, std::vector<Coalition> blocks) : c_(n, std::move(blocks)) {
    if (!c_.covers_all())
      throw std::invalid_argument("blocks " + c_.str() + " do not cover players 1.." + std::to_string(n));
  }
  explicit Partition(Collection c) : c_(std::move(c)) {
    if (!c_.covers_all()) throw std::invalid_argument("collection " + c_.str() + " is not a partition");
  }

  static Partition grand(int n) { return Partition(n, {Coalition::grand(n)}); }
  static Partition singletons(int n) {
    std::vector<Coalition> blocks;
    for (int i = 1; i <= n; ++i) blocks.push_back(Coalition::singleton(i));
    return Partition(n, std::move(blocks));
  }

  int n() const noexcept { return c_.n(); }
  const Collection& collection() const noexcept { return c_; }
  operator const Collection&() const noexcept { return c_; }  // NOLINT(google-explicit-constructor)
  const std::vector<Coalition>& blocks() const noexcept { return c_.blocks(); }
  std::size_t size() const noexcept { return c_.size(); }
  const Coalition& operator[](std::size_t i) const { return c_[i]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }
  bool contains_block(Coalition b) const { return c_.contains_block(b); }
  std::string str() const { return c_.str(); }

  /// Index of the block holding `player`.
  std::size_t block_of(int player) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (c_[i].contains(player)) return i;
    throw std::out_of_range("player " + std::to_string(player) + " not in partition");
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) { return a.c_ <=> b.c_; }

 private:
  Collection c_;
};

inline void require_same_players(int a, int b) {
  if (a != b) throw std::invalid_argument("player-count mismatch");
}

/// C in the frame of P: every block of P intersected with the union of C,
/// empty intersections dropped.
inline Collection frame(const Collection& c, const Partition& p) {
  require_same_players(c.n(), p.n());
  const Coalition u = c.cover();
  std::vector<Coalition> blocks;
  for (Coalition b : p)
    if (Coalition x = b & u; !x.empty()) blocks.push_back(x);
  return Collection(p.n(), std::move(blocks));
}

/// T lies inside a single block of P.
inline bool is_compatible(Coalition t, const Partition& p) {
  return std::any_of(p.begin(), p.end(), [&](Coalition b) { return t.subset_of(b); });
}

/// T is an exact union of blocks of P.
inline bool is_union_of_blocks(Coalition t, const Partition& p) {
  for (Coalition b : p)
    if (b.intersects(t) && !b.subset_of(t)) return false;
  return true;
}

/// Every block of Q is P-compatible or a union of blocks of P.
inline bool is_homogeneous(const Partition& q, const Partition& p) {
  require_same_players(q.n(), p.n());
  return std::all_of(q.begin(), q.end(),
                     [&](Coalition b) { return is_compatible(b, p) || is_union_of_blocks(b, p); });
}

}  // namespace coalstab
