// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/half_int.hpp"

#include "km2d/errors.hpp"

#include <charconv>
#include <cmath>

namespace km2d {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument("cannot parse half-integer '" + std::string(whole) + "'");
  return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den == 1) return from_int(num);
    if (den != 2) throw InvalidArgument("denominator must be 2 in '" + std::string(text) + "'");
    return from_twice(num);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    const bool negative = !text.empty() && text.front() == '-';
    std::string_view int_part = text.substr(0, dot);
    int whole = (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, text);
    int half = 0;
    if (frac == "5")
      half = 1;
    else if (frac.find_first_not_of('0') != std::string_view::npos)
      throw InvalidArgument("'" + std::string(text) + "' is not a multiple of 1/2");
    const int mag = 2 * std::abs(whole) + half;
    return from_twice(negative ? -mag : mag);
  }
  return from_int(parse_int(text, text));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(as_int());
  return std::to_string(twice_) + "/2";
}

}  // namespace km2d
