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

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coalstab/errors.hpp"

namespace coalstab {

/// Exact rational game value.
///
/// Always gcd-reduced with a positive denominator. Comparisons are exact, so
/// `a < b` and `a <= b` never coincide by accident; the stability notions
/// depend on that distinction.
class Value {
 public:
  using rep_type = boost::multiprecision::cpp_rational;
  using int_type = boost::multiprecision::cpp_int;

  Value() = default;
  Value(std::int64_t integer) : q_(integer) {}  // NOLINT(google-explicit-constructor)
  Value(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    q_ = rep_type(int_type(num), int_type(den));
  }
  explicit Value(rep_type q) : q_(std::move(q)) {}

  const rep_type& rep() const noexcept { return q_; }
  int_type numerator() const { return boost::multiprecision::numerator(q_); }
  int_type denominator() const { return boost::multiprecision::denominator(q_); }

  bool is_zero() const { return q_.is_zero(); }
  int sign() const { return q_.sign(); }
  bool is_integer() const { return denominator() == 1; }

  Value& operator+=(const Value& o) { q_ += o.q_; return *this; }
  Value& operator-=(const Value& o) { q_ -= o.q_; return *this; }
  Value& operator*=(const Value& o) { q_ *= o.q_; return *this; }
  Value& operator/=(const Value& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }
  friend Value operator/(Value a, const Value& b) { return a /= b; }
  friend Value operator-(const Value& a) { return Value(rep_type(-a.q_)); }

  friend bool operator==(const Value& a, const Value& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    int c = a.q_.compare(b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  /// Accepts integers ("-3"), fractions ("7/2") and finite decimals
  /// ("2.5", "-0.125"). Decimals are converted exactly.
  static Value parse(std::string_view text);

  /// Non-negative integer power.
  Value pow(unsigned exponent) const {
    Value result(1);
    Value base = *this;
    while (exponent) {
      if (exponent & 1u) result *= base;
      base *= base;
      exponent >>= 1;
    }
    return result;
  }

  std::size_t hash() const {
    return std::hash<std::string>{}(str());
  }

 private:
  rep_type q_;
};

inline std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline Value::int_type parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw parse_error("malformed rational '" + std::string(whole) + "'");
  Value::int_type r{std::string(s)};
  return negative ? Value::int_type(-r) : r;
}

}  // namespace detail

inline Value Value::parse(std::string_view text) {
  using detail::parse_integer;
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw parse_error("malformed rational ''");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(detail::trim(s.substr(0, slash)), s);
    auto den_text = detail::trim(s.substr(slash + 1));
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!detail::all_digits(den_text)) throw parse_error("malformed rational '" + std::string(s) + "'");
    int_type den(std::string{den_text});
    if (den == 0) throw parse_error("malformed rational '" + std::string(s) + "' (zero denominator)");
    return Value(rep_type(num, den));
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac_part.empty() && !detail::all_digits(frac_part)))
      throw parse_error("malformed rational '" + std::string(s) + "'");
    int_type scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    int_type whole = int_part.empty() ? int_type(0) : int_type(std::string(int_part));
    int_type frac = frac_part.empty() ? int_type(0) : int_type(std::string(frac_part));
    int_type num = whole * scale + frac;
    if (negative) num = -num;
    return Value(rep_type(num, scale));
  }

  return Value(rep_type(parse_integer(s, s)));
}

}  // namespace coalstab

template <>
struct std::hash<coalstab::Value> {
  std::size_t operator()(const coalstab::Value& v) const { return v.hash(); }
};
