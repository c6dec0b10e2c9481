// Copyright 2026 The DPoS Governance Authors
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

#ifndef DPOS_RATIONAL_HPP_
#define DPOS_RATIONAL_HPP_

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "dpos/error.hpp"

namespace dpos {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return -floor_div(-num, den);
}

inline std::int64_t floor(const Rational& r) {
  return floor_div(r.numerator(), r.denominator());
}

inline std::int64_t ceil(const Rational& r) {
  return ceil_div(r.numerator(), r.denominator());
}

// Parses "123", "-4", "0.25", "1.5e0" is rejected: plain decimals only.
inline Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw DomainError("empty decimal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) throw DomainError("malformed decimal '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    }
    seen_digit = true;
    if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10)) {
      throw DomainError("decimal out of range '" + std::string(text) + "'");
    }
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) throw DomainError("malformed decimal '" + std::string(text) + "'");
  return Rational(negative ? -num : num, den);
}

// "15/7" or "4" for integers.
inline std::string to_fraction_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Decimal rendering rounded half away from zero, e.g. 15/7 -> "2.14".
inline std::string to_fixed_string(const Rational& r, int places = 2) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  bool negative = r < 0;
  Rational a = negative ? -r : r;
  // round(a * scale) computed as floor(a * scale + 1/2)
  std::int64_t scaled = floor(a * scale + Rational(1, 2));
  std::string whole = std::to_string(scaled / scale);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole;
  if (places > 0) out += "." + frac;
  return out;
}

// Canonical decimal string for an exact rational whose denominator is a
// product of 2s and 5s; otherwise falls back to the fraction form.
inline std::string to_decimal_string(const Rational& r) {
  std::int64_t den = r.denominator();
  int places = 0;
  std::int64_t d = den;
  while (d % 10 == 0) { d /= 10; ++places; }
  while (d % 2 == 0) { d /= 2; ++places; }
  while (d % 5 == 0) { d /= 5; ++places; }
  if (d != 1) return to_fraction_string(r);
  if (den == 1) return std::to_string(r.numerator());
  std::string s = to_fixed_string(r, places);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace dpos

#endif  // DPOS_RATIONAL_HPP_
