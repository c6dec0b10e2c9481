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

// Replays an event log into daily power and voting snapshots, and persists
// the result as a directory of JSONL files plus a manifest:
//
//   <chain>.power.jsonl     {"date": "YYYY-MM-DD", "voter": "...", "power": 12}
//   <chain>.voting.jsonl    {"date": "YYYY-MM-DD", "voter": "...", "candidates": [...]}
//   <chain>.events.jsonl    the normalised input log
//   <chain>.manifest.json   chain, preset, config, date range, sha256 of the above

#ifndef DPOS_SNAPSHOT_STORE_HPP_
#define DPOS_SNAPSHOT_STORE_HPP_

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpos/calendar.hpp"
#include "dpos/config.hpp"
#include "dpos/error.hpp"
#include "dpos/events.hpp"
#include "dpos/governance.hpp"
#include "dpos/snapshot.hpp"

namespace dpos::store {

struct DateRange {
  Date first;
  Date last;

  std::size_t days() const {
    return static_cast<std::size_t>((last - first).count() + 1);
  }
  bool contains(Date d) const { return first <= d && d <= last; }
};

struct ChainDataset {
  std::string chain = "chain";
  std::string preset;  // empty when the config was given explicitly
  SystemConfig config;
  EventLog log;
  std::optional<DateRange> range;  // nullopt for an empty dataset
  std::vector<PowerSnapshot> power;
  std::vector<VotingSnapshot> voting;
  std::vector<std::string> warnings;
};

struct ReplayOptions {
  std::string chain = "chain";
  std::string preset;
  std::optional<DateRange> range;  // defaults to the log's first..last day
  // Unstakes within this long of the voter's last stake raise a warning.
  std::chrono::seconds lockup{0};
};

// Mutable chain state while replaying. Single writer.
class ReplayState {
 public:
  explicit ReplayState(SystemConfig config) : config_(std::move(config)) {}

  void apply(const EventRecord& r) {
    power_.try_emplace(r.voter);
    switch (r.kind) {
      case EventKind::Stake:
        power_[r.voter] += stake(*r.coins, config_.lambda);
        last_stake_[r.voter] = r.ts;
        break;
      case EventKind::Unstake: {
        VotingPower amount = stake(*r.coins, config_.lambda);
        if (amount > power_[r.voter]) {
          throw ValidationError(where(r) + "voter '" + r.voter + "' unstakes " +
                                to_string(amount) + " but holds " + to_string(power_[r.voter]));
        }
        if (auto it = last_stake_.find(r.voter);
            it != last_stake_.end() && lockup_.count() > 0 &&
            r.ts - it->second < lockup_) {
          warnings_.push_back(where(r) + "voter '" + r.voter + "' unstakes inside the lockup window");
        }
        power_[r.voter] -= amount;
        break;
      }
      case EventKind::Delegate:
        power_.try_emplace(*r.target);
        if (*r.target == r.voter) {
          delegation_.erase(r.voter);
        } else {
          delegation_[r.voter] = *r.target;
        }
        break;
      case EventKind::Undelegate:
        delegation_.erase(r.voter);
        break;
      case EventKind::Vote: {
        // Appends: listed candidates keep their priority slot, new ones go
        // to the end in the order given.
        auto next = votes_[r.voter];
        for (const auto& c : r.candidates) {
          if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(c);
        }
        if (next.size() > static_cast<std::size_t>(config_.v)) {
          throw ValidationError(where(r) + "voter '" + r.voter + "' would back " +
                                std::to_string(next.size()) + " candidates, max is " +
                                std::to_string(config_.v));
        }
        votes_[r.voter] = std::move(next);
        break;
      }
      case EventKind::Unvote: {
        auto it = votes_.find(r.voter);
        if (it == votes_.end()) break;
        if (r.candidates.empty()) {
          votes_.erase(it);
          break;
        }
        std::erase_if(it->second, [&](const CandidateId& c) {
          return std::find(r.candidates.begin(), r.candidates.end(), c) != r.candidates.end();
        });
        if (it->second.empty()) votes_.erase(it);
        break;
      }
    }
  }

  PowerSnapshot power_snapshot(Date d) const {
    try {
      return {d, resolve_delegations(power_, delegation_)};
    } catch (const ValidationError& e) {
      throw ValidationError(format_date(d) + ": " + e.what());
    }
  }

  VotingSnapshot voting_snapshot(Date d) const {
    VotingSnapshot s{d, {}};
    for (const auto& [voter, list] : votes_) {
      if (delegation_.contains(voter) || list.empty()) continue;
      s.profiles[voter] = list;
    }
    return s;
  }

  // Candidate list a voter effectively backs: its guru's list.
  std::vector<CandidateId> effective_candidates(const VoterId& voter) const {
    VoterId cur = voter;
    for (std::size_t hops = 0; hops <= delegation_.size(); ++hops) {
      auto d = delegation_.find(cur);
      if (d == delegation_.end()) {
        auto v = votes_.find(cur);
        return v == votes_.end() ? std::vector<CandidateId>{} : v->second;
      }
      cur = d->second;
    }
    throw ValidationError("delegation cycle through '" + voter + "'");
  }

  bool knows(const VoterId& v) const { return power_.contains(v); }
  const PowerMap& raw_powers() const { return power_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void set_lockup(std::chrono::seconds lockup) { lockup_ = lockup; }

 private:
  static std::string where(const EventRecord& r) {
    return r.line > 0 ? "line " + std::to_string(r.line) + ": " : std::string();
  }

  SystemConfig config_;
  std::chrono::seconds lockup_{0};
  PowerMap power_;
  DelegationProfile delegation_;
  ApprovalProfile votes_;
  std::map<VoterId, Timestamp> last_stake_;
  std::vector<std::string> warnings_;
};

inline std::optional<DateRange> log_coverage(const EventLog& log) {
  if (log.empty()) return std::nullopt;
  return DateRange{day_of(log.records.front().ts), day_of(log.records.back().ts)};
}

// Materialises one snapshot pair per day of the range, each reflecting the
// state at 23:59:59 UTC. Records after the range are not applied.
inline ChainDataset replay(const EventLog& log, const SystemConfig& config,
                           const ReplayOptions& options = {}) {
  config.validate();
  for (std::size_t i = 1; i < log.records.size(); ++i) {
    if (log.records[i].ts < log.records[i - 1].ts) {
      throw ValidationError("event log is not sorted by timestamp");
    }
  }
  ChainDataset ds;
  ds.chain = options.chain;
  ds.preset = options.preset;
  ds.config = config;
  ds.log = log;
  ds.range = options.range ? options.range : log_coverage(log);
  if (!ds.range) return ds;
  if (ds.range->last < ds.range->first) throw ValidationError("date range ends before it starts");

  ReplayState state(config);
  state.set_lockup(options.lockup);
  std::size_t next = 0;
  for (Date d = ds.range->first; d <= ds.range->last; d += std::chrono::days(1)) {
    while (next < log.records.size() && day_of(log.records[next].ts) <= d) {
      state.apply(log.records[next]);
      ++next;
    }
    ds.power.push_back(state.power_snapshot(d));
    ds.voting.push_back(state.voting_snapshot(d));
  }
  ds.warnings = state.warnings();
  return ds;
}

struct DayView {
  const PowerSnapshot& power;
  const VotingSnapshot& voting;
};

inline DayView query(const ChainDataset& ds, Date date) {
  if (!ds.range || !ds.range->contains(date)) {
    throw LookupError("date " + format_date(date) + " is outside the dataset range");
  }
  auto i = static_cast<std::size_t>((date - ds.range->first).count());
  return {ds.power[i], ds.voting[i]};
}

// ------------------------------------------------------------ persistence

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

inline std::string power_jsonl(const ChainDataset& ds) {
  std::string out;
  for (const auto& snap : ds.power) {
    for (const auto& [voter, power] : snap.powers) {
      nlohmann::ordered_json j;
      j["date"] = format_date(snap.date);
      j["voter"] = voter;
      j["power"] = power.units();
      out += j.dump() + '\n';
    }
  }
  return out;
}

inline std::string voting_jsonl(const ChainDataset& ds) {
  std::string out;
  for (const auto& snap : ds.voting) {
    for (const auto& [voter, candidates] : snap.profiles) {
      nlohmann::ordered_json j;
      j["date"] = format_date(snap.date);
      j["voter"] = voter;
      j["candidates"] = candidates;
      out += j.dump() + '\n';
    }
  }
  return out;
}

inline std::string events_jsonl(const EventLog& log) {
  std::ostringstream os;
  write_jsonl(os, log);
  return os.str();
}

inline nlohmann::ordered_json config_json(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["rule"] = std::string(to_string(c.rule));
  j["v"] = c.v;
  j["t"] = c.t;
  j["n"] = c.n;
  j["lambda"] = to_decimal_string(c.lambda);
  j["delta"] = c.delta;
  return j;
}

inline SystemConfig config_from_json(const nlohmann::json& j) {
  SystemConfig c;
  c.rule = parse_rule(j.at("rule").get<std::string>());
  c.v = j.at("v").get<int>();
  c.t = j.at("t").get<int>();
  c.n = j.at("n").get<int>();
  c.lambda = parse_decimal(j.at("lambda").get<std::string>());
  c.delta = j.at("delta").get<std::int64_t>();
  c.validate();
  return c;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + p.string() + "'");
  out << body;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

inline nlohmann::ordered_json persist(const ChainDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string power = power_jsonl(ds);
  const std::string voting = voting_jsonl(ds);
  const std::string events = events_jsonl(ds.log);
  detail::write_file(dir / (ds.chain + ".power.jsonl"), power);
  detail::write_file(dir / (ds.chain + ".voting.jsonl"), voting);
  detail::write_file(dir / (ds.chain + ".events.jsonl"), events);

  nlohmann::ordered_json m;
  m["chain"] = ds.chain;
  m["preset"] = ds.preset;
  m["config"] = config_json(ds.config);
  m["first"] = ds.range ? format_date(ds.range->first) : "";
  m["last"] = ds.range ? format_date(ds.range->last) : "";
  m["days"] = ds.range ? ds.range->days() : 0;
  m["records"] = ds.log.size();
  m["sha256"] = sha256_hex(power + voting + events);
  detail::write_file(dir / (ds.chain + ".manifest.json"), m.dump(2) + "\n");
  return m;
}

// Reads a persisted dataset back, verifying the content hash.
inline ChainDataset load(const std::filesystem::path& dir, const std::string& chain) {
  using nlohmann::json;
  json m;
  try {
    m = json::parse(detail::read_file(dir / (chain + ".manifest.json")));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad manifest: ") + e.what());
  }
  const std::string power = detail::read_file(dir / (chain + ".power.jsonl"));
  const std::string voting = detail::read_file(dir / (chain + ".voting.jsonl"));
  const std::string events = detail::read_file(dir / (chain + ".events.jsonl"));
  if (sha256_hex(power + voting + events) != m.at("sha256").get<std::string>()) {
    throw ValidationError("dataset '" + chain + "' does not match its manifest hash");
  }

  ChainDataset ds;
  ds.chain = m.at("chain").get<std::string>();
  ds.preset = m.at("preset").get<std::string>();
  ds.config = config_from_json(m.at("config"));
  std::istringstream ev(events);
  ds.log = parse_jsonl(ev);
  if (m.at("days").get<std::size_t>() == 0) return ds;
  ds.range = DateRange{parse_date(m.at("first").get<std::string>()),
                       parse_date(m.at("last").get<std::string>())};
  for (Date d = ds.range->first; d <= ds.range->last; d += std::chrono::days(1)) {
    ds.power.push_back({d, {}});
    ds.voting.push_back({d, {}});
  }
  auto slot = [&](const json& j, std::size_t line) {
    Date d = parse_date(j.at("date").get<std::string>());
    if (!ds.range->contains(d)) {
      throw ParseError(line, "date", "outside the manifest range");
    }
    return static_cast<std::size_t>((d - ds.range->first).count());
  };
  std::istringstream pin(power);
  std::string text;
  std::size_t line = 0;
  while (std::getline(pin, text)) {
    ++line;
    json j = json::parse(text);
    ds.power[slot(j, line)].powers[j.at("voter").get<std::string>()] =
        VotingPower(j.at("power").get<std::int64_t>());
  }
  std::istringstream vin(voting);
  line = 0;
  while (std::getline(vin, text)) {
    ++line;
    json j = json::parse(text);
    ds.voting[slot(j, line)].profiles[j.at("voter").get<std::string>()] =
        j.at("candidates").get<std::vector<std::string>>();
  }
  return ds;
}

}  // namespace dpos::store

#endif  // DPOS_SNAPSHOT_STORE_HPP_
