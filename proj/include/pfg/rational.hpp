// Copyright 2026 The pfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfg {

// Exact rational arithmetic. cpp_rational keeps values normalized (lowest
// terms, positive denominator), so equality is plain operator==.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Renders a rational as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

// Parses "p" or "p/q" with an optional leading sign on p. Whitespace is not
// accepted; callers trim first. Throws std::invalid_argument on anything
// else, including q == 0.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("invalid rational: '" + std::string(text) +
                                "'");
  };
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  const auto check_digits = [&](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) {
      part.remove_prefix(1);
    }
    if (part.empty()) fail();
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    }
  };
  check_digits(num, true);
  if (!num.empty() && num[0] == '+') num.remove_prefix(1);
  if (den.data() == nullptr) {
    return Rational(BigInt(std::string(num)));
  }
  check_digits(den, false);
  BigInt d{std::string(den)};
  if (d == 0) fail();
  return Rational(BigInt(std::string(num)), d);
}

}  // namespace pfg
