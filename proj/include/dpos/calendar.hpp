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

// UTC calendar helpers. Days start at 00:00:00 UTC.

#ifndef DPOS_CALENDAR_HPP_
#define DPOS_CALENDAR_HPP_

#include <charconv>
#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "dpos/error.hpp"

namespace dpos {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

namespace detail {

inline int parse_fixed_int(std::string_view text, std::size_t pos, std::size_t len,
                           std::string_view what) {
  int value = 0;
  if (pos + len > text.size()) throw DomainError("truncated " + std::string(what));
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
  if (ec != std::errc() || ptr != text.data() + pos + len) {
    throw DomainError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

inline Date make_date(int y, int m, int d, std::string_view text) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw DomainError("invalid calendar date '" + std::string(text) + "'");
  return Date(ymd);
}

}  // namespace detail

// "YYYY-MM-DD"
inline Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DomainError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return detail::make_date(detail::parse_fixed_int(text, 0, 4, "date"),
                           detail::parse_fixed_int(text, 5, 2, "date"),
                           detail::parse_fixed_int(text, 8, 2, "date"), text);
}

// "YYYY-MM-DDTHH:MM:SSZ"; a bare date means midnight.
inline Timestamp parse_timestamp(std::string_view text) {
  if (text.size() == 10) return Timestamp(parse_date(text));
  std::string_view body = text;
  if (!body.empty() && body.back() == 'Z') body.remove_suffix(1);
  if (body.size() != 19 || (body[10] != 'T' && body[10] != ' ') || body[13] != ':' ||
      body[16] != ':') {
    throw DomainError("expected ISO-8601 UTC timestamp, got '" + std::string(text) + "'");
  }
  Date day = parse_date(body.substr(0, 10));
  int hh = detail::parse_fixed_int(body, 11, 2, "time");
  int mm = detail::parse_fixed_int(body, 14, 2, "time");
  int ss = detail::parse_fixed_int(body, 17, 2, "time");
  if (hh > 23 || mm > 59 || ss > 59) {
    throw DomainError("invalid time of day '" + std::string(text) + "'");
  }
  return Timestamp(day) + std::chrono::hours(hh) + std::chrono::minutes(mm) +
         std::chrono::seconds(ss);
}

inline Date day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

inline std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

inline std::string format_timestamp(Timestamp ts) {
  Date d = day_of(ts);
  auto secs = (ts - Timestamp(d)).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "T%02lld:%02lld:%02lldZ", static_cast<long long>(secs / 3600),
                static_cast<long long>((secs / 60) % 60), static_cast<long long>(secs % 60));
  return format_date(d) + buf;
}

// "86400", "90s", "12h", "1d"
inline std::chrono::seconds parse_duration(std::string_view text) {
  if (text.empty()) throw DomainError("empty duration");
  std::int64_t scale = 1;
  std::string_view digits = text;
  switch (text.back()) {
    case 's': scale = 1; digits.remove_suffix(1); break;
    case 'm': scale = 60; digits.remove_suffix(1); break;
    case 'h': scale = 3600; digits.remove_suffix(1); break;
    case 'd': scale = 86400; digits.remove_suffix(1); break;
    default: break;
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0) {
    throw DomainError("malformed duration '" + std::string(text) + "'");
  }
  return std::chrono::seconds(value * scale);
}

}  // namespace dpos

#endif  // DPOS_CALENDAR_HPP_
