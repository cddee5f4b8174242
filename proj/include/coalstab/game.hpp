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

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coalstab/coalition.hpp"
#include "coalstab/partition.hpp"
#include "coalstab/value.hpp"

namespace coalstab {

/// Transferable-utility game on players {1..n}.
///
/// Either a dense table indexed by coalition bit pattern, or a value rule that
/// is evaluated on demand and memoized. Games are immutable and cheap to copy
/// (shared state); the memo is guarded, so concurrent lookups are safe and
/// always see the same values. v(empty) is 0 by construction.
class Game {
 public:
  using rule_type = std::function<Value(Coalition)>;

  /// `table[mask]` is v of the coalition with bit pattern `mask`.
  static Game from_table(int n, std::vector<Value> table) {
    PlayerCount count(n);
    if (table.size() != (std::size_t{1} << count))
      throw std::invalid_argument("value table must have 2^n entries");
    if (!table[0].is_zero()) throw std::invalid_argument("v(empty) must be 0");
    auto impl = std::make_shared<Impl>();
    impl->n = n;
    impl->table = std::move(table);
    return Game(std::move(impl));
  }

  /// Lazily evaluated game; `rule` is never called on the empty coalition.
  static Game from_rule(int n, rule_type rule) {
    PlayerCount count(n);
    if (!rule) throw std::invalid_argument("empty value rule");
    auto impl = std::make_shared<Impl>();
    impl->n = count;
    impl->rule = std::move(rule);
    return Game(std::move(impl));
  }

  /// Dense game filled from `rule` eagerly.
  static Game tabulate(int n, const rule_type& rule) {
    PlayerCount count(n);
    std::vector<Value> table(std::size_t{1} << count);
    for (std::size_t m = 1; m < table.size(); ++m) table[m] = rule(Coalition(static_cast<Coalition::mask_type>(m)));
    return from_table(n, std::move(table));
  }

  int n() const noexcept { return impl_->n; }
  Coalition grand() const noexcept { return Coalition::grand(impl_->n); }
  bool is_dense() const noexcept { return !impl_->rule; }

  Value value(Coalition s) const {
    if (s.empty()) return Value{};
    if (!s.subset_of(grand())) throw std::invalid_argument("coalition " + s.str() + " outside the player set");
    if (is_dense()) return impl_->table[s.bits()];
    std::lock_guard lock(impl_->memo_mutex);
    auto it = impl_->memo.find(s.bits());
    if (it != impl_->memo.end()) return it->second;
    Value v = impl_->rule(s);
    impl_->memo.emplace(s.bits(), v);
    return v;
  }
  Value operator()(Coalition s) const { return value(s); }

  /// Dense copy of all 2^n values.
  std::vector<Value> table() const {
    if (is_dense()) return impl_->table;
    std::vector<Value> t(std::size_t{1} << n());
    for (std::size_t m = 1; m < t.size(); ++m) t[m] = value(Coalition(static_cast<Coalition::mask_type>(m)));
    return t;
  }

  Game materialized() const { return is_dense() ? *this : from_table(n(), table()); }

  /// Same n and the same value on every coalition.
  friend bool operator==(const Game& a, const Game& b) {
    if (a.n() != b.n()) return false;
    if (a.impl_ == b.impl_) return true;
    for (std::size_t m = 1; m < (std::size_t{1} << a.n()); ++m) {
      Coalition s(static_cast<Coalition::mask_type>(m));
      if (a.value(s) != b.value(s)) return false;
    }
    return true;
  }

 private:
  struct Impl {
    int n = 1;
    std::vector<Value> table;
    rule_type rule;
    mutable std::mutex memo_mutex;
    mutable std::unordered_map<Coalition::mask_type, Value> memo;
  };

  explicit Game(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<Impl> impl_;
};

/// Sum of the block values; 0 for the empty collection.
inline Value social_welfare(const Game& g, const Collection& c) {
  require_same_players(g.n(), c.n());
  Value total;
  for (Coalition b : c) total += g.value(b);
  return total;
}

/// Social welfare of C in the frame of P.
inline Value modified_social_welfare(const Game& g, const Collection& c, const Partition& p) {
  return social_welfare(g, frame(c, p));
}

}  // namespace coalstab
