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

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalstab/errors.hpp"

namespace coalstab {

/// Validated number of players, 1 <= n <= kMaxPlayers.
class PlayerCount {
 public:
  constexpr explicit PlayerCount(int n) : n_(n) {
    if (n < 1 || n > kMaxPlayers)
      throw std::invalid_argument("player count " + std::to_string(n) + " outside [1, " +
                                  std::to_string(kMaxPlayers) + "]");
  }
  constexpr int value() const noexcept { return n_; }
  constexpr operator int() const noexcept { return n_; }  // NOLINT(google-explicit-constructor)

 private:
  int n_;
};

/// Subset of the players {1..n}; player i is bit i-1.
class Coalition {
 public:
  using mask_type = std::uint32_t;

  constexpr Coalition() = default;
  constexpr explicit Coalition(mask_type bits) : bits_(bits) {}
  Coalition(std::initializer_list<int> players) {
    for (int p : players) insert(p);
  }

  static Coalition from_players(const std::vector<int>& players) {
    Coalition c;
    for (int p : players) c.insert(p);
    return c;
  }

  /// {1..n}
  static constexpr Coalition grand(int n) {
    return Coalition(n >= 32 ? ~mask_type{0} : ((mask_type{1} << n) - 1));
  }
  static constexpr Coalition singleton(int player) { return Coalition(mask_type{1} << (player - 1)); }

  constexpr mask_type bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool contains(int player) const noexcept { return (bits_ >> (player - 1)) & 1u; }

  /// Least member; undefined on the empty coalition.
  constexpr int least() const noexcept { return std::countr_zero(bits_) + 1; }
  /// Largest member; undefined on the empty coalition.
  constexpr int greatest() const noexcept { return 32 - std::countl_zero(bits_); }

  constexpr bool subset_of(Coalition o) const noexcept { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(Coalition o) const noexcept { return subset_of(o) && bits_ != o.bits_; }
  constexpr bool disjoint(Coalition o) const noexcept { return (bits_ & o.bits_) == 0; }
  constexpr bool intersects(Coalition o) const noexcept { return (bits_ & o.bits_) != 0; }

  void insert(int player) {
    if (player < 1 || player > kMaxPlayers)
      throw std::invalid_argument("player index " + std::to_string(player) + " out of range");
    bits_ |= mask_type{1} << (player - 1);
  }

  std::vector<int> players() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (mask_type b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  /// Brace notation, e.g. "{1,3}"; the empty coalition prints as "{}".
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int p : players()) {
      if (!first) s += ',';
      s += std::to_string(p);
      first = false;
    }
    return s + "}";
  }

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.bits_ | b.bits_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.bits_ & b.bits_); }
  friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition(a.bits_ & ~b.bits_); }
  constexpr Coalition& operator|=(Coalition o) { bits_ |= o.bits_; return *this; }
  constexpr Coalition& operator&=(Coalition o) { bits_ &= o.bits_; return *this; }

  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition a, Coalition b) { return a.bits_ <=> b.bits_; }

 private:
  mask_type bits_ = 0;
};

/// Calls f(sub) for every nonempty subset of `set`, in increasing bit order.
template <class F>
void for_each_nonempty_subset(Coalition set, F&& f) {
  const auto mask = set.bits();
  // (sub - mask) & mask steps to the next subset of mask in increasing order.
  Coalition::mask_type sub = 0;
  do {
    sub = (sub - mask) & mask;
    if (sub) f(Coalition(sub));
  } while (sub != mask && mask != 0);
}

/// Calls f(sub) for every nonempty proper subset of `set`.
template <class F>
void for_each_proper_subset(Coalition set, F&& f) {
  for_each_nonempty_subset(set, [&](Coalition sub) {
    if (sub != set) f(sub);
  });
}

}  // namespace coalstab

template <>
struct std::hash<coalstab::Coalition> {
  std::size_t operator()(coalstab::Coalition c) const noexcept { return std::hash<std::uint32_t>{}(c.bits()); }
};
