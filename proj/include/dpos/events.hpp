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

// Event-log ingestion. One record per line:
//
//   {"ts": "2020-03-02T10:00:00Z", "voter": "alice", "kind": "vote",
//    "candidates": ["bp1", "bp2"]}
//   {"ts": ..., "voter": ..., "kind": "delegate", "target": "bob"}
//   {"ts": ..., "voter": ..., "kind": "stake", "coins": "12.5"}
//
// The CSV form has the header `ts,voter,kind,candidates,target,coins`, with
// candidates separated by ';' and empty cells for fields a kind does not use.

#ifndef DPOS_EVENTS_HPP_
#define DPOS_EVENTS_HPP_

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpos/calendar.hpp"
#include "dpos/error.hpp"
#include "dpos/power.hpp"
#include "dpos/rational.hpp"

namespace dpos::store {

enum class EventKind { Vote, Unvote, Delegate, Undelegate, Stake, Unstake };

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Vote: return "vote";
    case EventKind::Unvote: return "unvote";
    case EventKind::Delegate: return "delegate";
    case EventKind::Undelegate: return "undelegate";
    case EventKind::Stake: return "stake";
    case EventKind::Unstake: return "unstake";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::Vote, EventKind::Unvote, EventKind::Delegate,
                 EventKind::Undelegate, EventKind::Stake, EventKind::Unstake}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct EventRecord {
  Timestamp ts;
  VoterId voter;
  EventKind kind = EventKind::Vote;
  std::vector<CandidateId> candidates;  // vote, unvote
  std::optional<VoterId> target;        // delegate
  std::optional<Rational> coins;        // stake, unstake
  std::size_t line = 0;                 // source line, 0 when synthesised

  bool is_voting() const { return kind == EventKind::Vote || kind == EventKind::Unvote; }
  bool is_delegating() const {
    return kind == EventKind::Delegate || kind == EventKind::Undelegate;
  }
};

struct EventLog {
  std::vector<EventRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }

  std::map<EventKind, std::size_t> counts() const {
    std::map<EventKind, std::size_t> out;
    for (const auto& r : records) ++out[r.kind];
    return out;
  }
};

enum class LogFormat { Jsonl, Csv };

namespace detail {

// Checks that a record carries exactly the payload its kind needs.
inline void check_payload(const EventRecord& r, bool has_candidates, std::size_t line) {
  const bool wants_candidates = r.kind == EventKind::Vote || r.kind == EventKind::Unvote;
  const bool wants_target = r.kind == EventKind::Delegate;
  const bool wants_coins = r.kind == EventKind::Stake || r.kind == EventKind::Unstake;
  if (has_candidates && !wants_candidates) {
    throw ParseError(line, "candidates", "not allowed for kind " + std::string(to_string(r.kind)));
  }
  if (r.kind == EventKind::Vote && r.candidates.empty()) {
    throw ParseError(line, "candidates", "vote requires at least one candidate");
  }
  if (r.target && !wants_target) {
    throw ParseError(line, "target", "not allowed for kind " + std::string(to_string(r.kind)));
  }
  if (wants_target && (!r.target || r.target->empty())) {
    throw ParseError(line, "target", "delegate requires a target");
  }
  if (r.coins && !wants_coins) {
    throw ParseError(line, "coins", "not allowed for kind " + std::string(to_string(r.kind)));
  }
  if (wants_coins && !r.coins) {
    throw ParseError(line, "coins", std::string(to_string(r.kind)) + " requires coins");
  }
  if (r.coins && *r.coins < 0) throw ParseError(line, "coins", "must be non-negative");
  std::vector<CandidateId> sorted = r.candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError(line, "candidates", "duplicate candidate");
  }
  for (const auto& c : r.candidates) {
    if (c.empty()) throw ParseError(line, "candidates", "empty candidate id");
  }
}

inline Rational parse_coins(std::string_view text, std::size_t line) {
  try {
    return parse_decimal(text);
  } catch (const DomainError& e) {
    throw ParseError(line, "coins", e.what());
  }
}

inline void finish(EventLog& log, bool sort) {
  if (sort) {
    std::stable_sort(log.records.begin(), log.records.end(),
                     [](const EventRecord& a, const EventRecord& b) { return a.ts < b.ts; });
    return;
  }
  for (std::size_t i = 1; i < log.records.size(); ++i) {
    if (log.records[i].ts < log.records[i - 1].ts) {
      throw ParseError(log.records[i].line, "ts",
                       "timestamp earlier than the previous record (pass --sort to reorder)");
    }
  }
}

inline std::vector<std::string> split_csv_row(const std::string& row, std::size_t line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw ParseError(line, "row", "unterminated quote");
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace detail

inline EventLog parse_jsonl(std::istream& in, bool sort = false) {
  using nlohmann::json;
  EventLog log;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line, "record", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line, "record", "expected a JSON object");
    for (const auto& [key, _] : j.items()) {
      static const std::array<std::string_view, 6> kKnown = {"ts",     "voter",  "kind",
                                                             "candidates", "target", "coins"};
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        throw ParseError(line, key, "unknown field");
      }
    }
    auto require_string = [&](const char* field) -> std::string {
      if (!j.contains(field) || !j[field].is_string()) {
        throw ParseError(line, field, "missing or not a string");
      }
      return j[field].get<std::string>();
    };
    EventRecord r;
    r.line = line;
    try {
      r.ts = parse_timestamp(require_string("ts"));
    } catch (const DomainError& e) {
      throw ParseError(line, "ts", e.what());
    }
    r.voter = require_string("voter");
    if (r.voter.empty()) throw ParseError(line, "voter", "empty voter id");
    auto kind = parse_event_kind(require_string("kind"));
    if (!kind) throw ParseError(line, "kind", "unknown kind '" + j["kind"].get<std::string>() + "'");
    r.kind = *kind;
    bool has_candidates = false;
    if (j.contains("candidates") && !j["candidates"].is_null()) {
      if (!j["candidates"].is_array()) throw ParseError(line, "candidates", "expected an array");
      has_candidates = true;
      for (const auto& c : j["candidates"]) {
        if (!c.is_string()) throw ParseError(line, "candidates", "expected string ids");
        r.candidates.push_back(c.get<std::string>());
      }
    }
    if (j.contains("target") && !j["target"].is_null()) {
      if (!j["target"].is_string()) throw ParseError(line, "target", "expected a string");
      r.target = j["target"].get<std::string>();
    }
    if (j.contains("coins") && !j["coins"].is_null()) {
      const auto& c = j["coins"];
      if (c.is_string()) {
        r.coins = detail::parse_coins(c.get<std::string>(), line);
      } else if (c.is_number_integer()) {
        r.coins = Rational(c.get<std::int64_t>());
      } else {
        throw ParseError(line, "coins", "expected a decimal string");
      }
    }
    detail::check_payload(r, has_candidates, line);
    log.records.push_back(std::move(r));
  }
  detail::finish(log, sort);
  return log;
}

inline EventLog parse_csv(std::istream& in, bool sort = false) {
  EventLog log;
  std::string text;
  std::size_t line = 0;
  std::map<std::string, std::size_t> column;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = detail::split_csv_row(text, line);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) column[cells[i]] = i;
      for (const char* name : {"ts", "voter", "kind", "candidates", "target", "coins"}) {
        if (!column.contains(name)) throw ParseError(line, name, "missing header column");
      }
      if (column.size() != 6) throw ParseError(line, "header", "unexpected extra column");
      have_header = true;
      continue;
    }
    if (cells.size() != column.size()) {
      throw ParseError(line, "row", "expected " + std::to_string(column.size()) + " cells, got " +
                                        std::to_string(cells.size()));
    }
    auto cell = [&](const char* name) -> const std::string& { return cells[column.at(name)]; };
    EventRecord r;
    r.line = line;
    try {
      r.ts = parse_timestamp(cell("ts"));
    } catch (const DomainError& e) {
      throw ParseError(line, "ts", e.what());
    }
    r.voter = cell("voter");
    if (r.voter.empty()) throw ParseError(line, "voter", "empty voter id");
    auto kind = parse_event_kind(cell("kind"));
    if (!kind) throw ParseError(line, "kind", "unknown kind '" + cell("kind") + "'");
    r.kind = *kind;
    const std::string& cands = cell("candidates");
    const bool has_candidates = !cands.empty();
    if (has_candidates) {
      std::stringstream ss(cands);
      std::string c;
      while (std::getline(ss, c, ';')) r.candidates.push_back(c);
    }
    if (!cell("target").empty()) r.target = cell("target");
    if (!cell("coins").empty()) r.coins = detail::parse_coins(cell("coins"), line);
    detail::check_payload(r, has_candidates, line);
    log.records.push_back(std::move(r));
  }
  detail::finish(log, sort);
  return log;
}

inline LogFormat format_for_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return LogFormat::Csv;
  return LogFormat::Jsonl;
}

inline EventLog ingest(const std::string& path, LogFormat format, bool sort = false) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open event log '" + path + "'");
  return format == LogFormat::Csv ? parse_csv(in, sort) : parse_jsonl(in, sort);
}

inline EventLog ingest(const std::string& path, bool sort = false) {
  return ingest(path, format_for_path(path), sort);
}

inline nlohmann::json to_json(const EventRecord& r) {
  nlohmann::json j;
  j["ts"] = format_timestamp(r.ts);
  j["voter"] = r.voter;
  j["kind"] = std::string(to_string(r.kind));
  if (r.is_voting() && (r.kind == EventKind::Vote || !r.candidates.empty())) {
    j["candidates"] = r.candidates;
  }
  if (r.target) j["target"] = *r.target;
  if (r.coins) j["coins"] = to_decimal_string(*r.coins);
  return j;
}

inline void write_jsonl(std::ostream& out, const EventLog& log) {
  for (const auto& r : log.records) out << to_json(r).dump() << '\n';
}

}  // namespace dpos::store

#endif  // DPOS_EVENTS_HPP_
