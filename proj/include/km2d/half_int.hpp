// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdlib>
#include <functional>
#include <string>
#include <string_view>

namespace km2d {

/// Element of Z/2 stored as its double. Mode labels on the NS lattice are
/// half-odd-integers, so every index in the toolkit goes through this type.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }

  /// Parses "3/2", "-1/2", "2", "1.5", "-0.5".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Integer value; only meaningful when is_integer().
  constexpr int as_int() const { return twice_ / 2; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }
  constexpr int sign() const { return (twice_ > 0) - (twice_ < 0); }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "3/2", "-1/2", "0", "2".
  std::string str() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

constexpr HalfInt operator""_h(unsigned long long twice) {
  return HalfInt::from_twice(static_cast<int>(twice));
}

/// (-1)^n for integer n.
constexpr int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace km2d

template <>
struct std::hash<km2d::HalfInt> {
  size_t operator()(km2d::HalfInt h) const noexcept { return std::hash<int>{}(h.twice()); }
};
