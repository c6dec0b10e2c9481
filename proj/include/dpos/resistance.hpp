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

// Passive takeover resistance, the takeover risk index, takeover replay and
// resister classification over observed voting data.

#ifndef DPOS_RESISTANCE_HPP_
#define DPOS_RESISTANCE_HPP_

#include <algorithm>
#include <chrono>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dpos/config.hpp"
#include "dpos/conversion.hpp"
#include "dpos/error.hpp"
#include "dpos/events.hpp"
#include "dpos/governance.hpp"
#include "dpos/snapshot.hpp"
#include "dpos/snapshot_store.hpp"
#include "dpos/takeover_game.hpp"

namespace dpos::metrics {

// Score of the (n - t + 1)-th ranked candidate; 0 if there are fewer.
inline VotingPower blocking_score(const ScoreMap& scores, const SystemConfig& config) {
  std::vector<VotingPower> values;
  values.reserve(scores.size());
  for (const auto& [_, p] : scores) values.push_back(p);
  return game::blocking_power(std::move(values), config);
}

// Least attacker power that wins t seats against the observed scores:
// ceil(t * p_{n-t+1} / zeta_a).
inline VotingPower passive_resistance(const ScoreMap& scores, const SystemConfig& config) {
  config.validate();
  const auto zeta = game::amplification(config);
  return VotingPower(ceil_div(config.t * blocking_score(scores, config).units(), zeta.zeta_a));
}

struct RiskIndex {
  std::int64_t value = 0;
  bool reachable = true;  // false: even every voter together stays below R_P

  friend bool operator==(const RiskIndex&, const RiskIndex&) = default;
};

// Fewest top voters whose combined power reaches R_P. Reaching counts
// (>=), consistent with attackers winning ties.
inline RiskIndex risk_index(const PowerMap& powers, VotingPower r_p) {
  if (r_p.units() <= 0) return {0, true};
  std::vector<VotingPower> sorted;
  sorted.reserve(powers.size());
  for (const auto& [_, p] : powers) sorted.push_back(p);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  VotingPower sum;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    sum += sorted[i];
    if (sum >= r_p) return {static_cast<std::int64_t>(i + 1), true};
  }
  return {static_cast<std::int64_t>(sorted.size() + 1), false};
}

inline RiskIndex risk_index(const PowerSnapshot& snapshot, VotingPower r_p) {
  return risk_index(snapshot.powers, r_p);
}

// Candidate scores for one day under the config's rule. Voting snapshots
// only carry candidate lists, so cumulative-rule chains split each voter's
// power evenly over the list.
inline ScoreMap snapshot_scores(const PowerSnapshot& power, const VotingSnapshot& voting,
                                const SystemConfig& config) {
  if (config.rule == Rule::Approval) return tally_approval(power.powers, voting.profiles, config);
  CumulativeProfile profile;
  for (const auto& [voter, list] : voting.profiles) {
    auto it = power.powers.find(voter);
    if (it == power.powers.end()) {
      throw ValidationError("voting snapshot references unknown voter '" + voter + "'");
    }
    profile[voter] = sim::av_to_cv(list, it->second);
  }
  return tally_cumulative(power.powers, profile, config);
}

struct DailyResistance {
  Date date;
  VotingPower p_block;  // p_{n-t+1}
  VotingPower r_p;
  RiskIndex i_t;
};

inline std::vector<DailyResistance> resistance_series(std::span<const PowerSnapshot> power,
                                                      std::span<const VotingSnapshot> voting,
                                                      const SystemConfig& config) {
  if (power.size() != voting.size()) {
    throw ValidationError("power and voting snapshot series differ in length");
  }
  std::vector<DailyResistance> out;
  out.reserve(power.size());
  for (std::size_t i = 0; i < power.size(); ++i) {
    if (power[i].date != voting[i].date) {
      throw ValidationError("power and voting snapshots disagree on dates at " +
                            format_date(power[i].date));
    }
    ScoreMap scores = snapshot_scores(power[i], voting[i], config);
    DailyResistance d{power[i].date, blocking_score(scores, config), {}, {}};
    d.r_p = passive_resistance(scores, config);
    d.i_t = risk_index(power[i], d.r_p);
    out.push_back(d);
  }
  return out;
}

// ------------------------------------------------------------ takeover replay

struct TakeoverOutcome {
  Committee before;
  Committee after;
  std::vector<Seat> ranking_after;
  std::vector<Allocation> attacker_allocations;
  std::map<CandidateId, int> rank_shifts;  // new rank - old rank
  int attacker_seats = 0;
  bool success = false;
};

// How an attacker holding `power` backs its candidates. It spreads evenly
// over t of them, or over more when approval voting lets each extra
// candidate receive the same full-power vote (up to v).
inline std::vector<Allocation> attacker_allocation(VotingPower power,
                                                   const std::set<CandidateId>& candidates,
                                                   const SystemConfig& config) {
  const auto pool = static_cast<std::int64_t>(candidates.size());
  std::int64_t m = std::min<std::int64_t>(config.t, pool);
  std::int64_t budget = power.units();
  if (config.rule == Rule::Approval) {
    m = std::max(m, std::min<std::int64_t>(config.v, pool));
    budget = std::min<std::int64_t>(config.v, m) * power.units();
  }
  std::vector<Allocation> out;
  if (m == 0) return out;
  const std::int64_t base = budget / m;
  const std::int64_t rem = budget % m;
  std::int64_t i = 0;
  for (const auto& c : candidates) {
    if (i == m) break;
    out.push_back({c, VotingPower(std::min(power.units(), base + (i < rem ? 1 : 0)))});
    ++i;
  }
  return out;
}

inline TakeoverOutcome simulate_takeover(const ScoreMap& scores, VotingPower attacker_power,
                                         const std::set<CandidateId>& attacker_candidates,
                                         const SystemConfig& config) {
  config.validate();
  if (attacker_power.units() < 0) throw DomainError("attacker power must be non-negative");
  TakeoverOutcome out;
  out.before = elect(scores, config);
  for (const auto& c : attacker_candidates) {
    if (out.before.contains(c)) {
      throw ValidationError("attacker candidate '" + c + "' already sits on the committee");
    }
  }
  out.attacker_allocations = attacker_allocation(attacker_power, attacker_candidates, config);
  ScoreMap combined = scores;
  for (const auto& a : out.attacker_allocations) combined[a.candidate] += a.power;

  std::vector<Seat> ranking;
  for (const auto& [c, p] : combined) ranking.push_back({c, p});
  std::stable_sort(ranking.begin(), ranking.end(), [&](const Seat& a, const Seat& b) {
    if (a.power != b.power) return a.power > b.power;
    return attacker_candidates.contains(a.candidate) && !attacker_candidates.contains(b.candidate);
  });
  out.ranking_after = ranking;
  const auto seats = std::min(ranking.size(), static_cast<std::size_t>(config.n));
  out.after.seats.assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(seats));
  for (const auto& s : out.after.seats) {
    out.after.tau += s.power;
    if (attacker_candidates.contains(s.candidate)) ++out.attacker_seats;
  }
  out.success = out.attacker_seats >= config.t;

  std::map<CandidateId, int> new_rank;
  for (std::size_t i = 0; i < ranking.size(); ++i) new_rank[ranking[i].candidate] = static_cast<int>(i + 1);
  const auto old_ranking = rank_candidates(scores);
  for (std::size_t i = 0; i < old_ranking.size(); ++i) {
    const auto& c = old_ranking[i].candidate;
    out.rank_shifts[c] = new_rank.at(c) - static_cast<int>(i + 1);
  }
  return out;
}

inline TakeoverOutcome simulate_takeover(const VotingState& state, VotingPower attacker_power,
                                         const std::set<CandidateId>& attacker_candidates,
                                         const SystemConfig& config) {
  auto gurus = resolve_delegations(state.powers, state.delegations);
  return simulate_takeover(tally(gurus, state, config), attacker_power, attacker_candidates,
                           config);
}

// ------------------------------------------------------------ resisters

enum class Category { CoResister, IndResister, NonResister };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::CoResister: return "co-resister";
    case Category::IndResister: return "ind-resister";
    case Category::NonResister: return "non-resister";
  }
  return "?";
}

struct ResisterClassification {
  std::set<CandidateId> leader_set;
  std::map<VoterId, Category> categories;
  std::chrono::seconds window{86400};

  std::map<Category, std::size_t> counts() const {
    std::map<Category, std::size_t> out{
        {Category::CoResister, 0}, {Category::IndResister, 0}, {Category::NonResister, 0}};
    for (const auto& [_, c] : categories) ++out[c];
    return out;
  }
  Category of(const VoterId& v) const {
    auto it = categories.find(v);
    return it == categories.end() ? Category::NonResister : it->second;
  }
};

// A voter resists when it sends a voting or delegating transaction inside
// (event_time, event_time + window] and ends the window backing a different
// candidate set than before the event. Delegating voters back their guru's
// set. Co-resisters share at least one candidate with the leader's set.
inline ResisterClassification classify_resisters(const store::EventLog& log, Timestamp event_time,
                                                 std::chrono::seconds window,
                                                 const VoterId& leader) {
  SystemConfig permissive{Rule::Approval, INT_MAX, 1, 1, Rational(1), 1};
  store::ReplayState state(permissive);
  std::size_t next = 0;
  while (next < log.records.size() && log.records[next].ts <= event_time) {
    state.apply(log.records[next++]);
  }
  if (!state.knows(leader)) {
    throw ValidationError("leader '" + leader + "' has no voting state at the event time");
  }
  ResisterClassification out;
  out.window = window;
  for (const auto& c : state.effective_candidates(leader)) out.leader_set.insert(c);

  auto candidate_set = [&](const VoterId& v) {
    auto list = state.effective_candidates(v);
    return std::set<CandidateId>(list.begin(), list.end());
  };
  std::map<VoterId, std::set<CandidateId>> before;
  for (const auto& [v, _] : state.raw_powers()) before[v] = candidate_set(v);

  std::set<VoterId> active;
  const Timestamp end = event_time + window;
  while (next < log.records.size() && log.records[next].ts <= end) {
    const auto& r = log.records[next++];
    if (r.is_voting() || r.is_delegating()) active.insert(r.voter);
    state.apply(r);
  }
  for (const auto& [v, _] : state.raw_powers()) {
    Category cat = Category::NonResister;
    if (active.contains(v)) {
      auto after = candidate_set(v);
      if (after != before[v]) {
        bool overlaps = std::any_of(after.begin(), after.end(),
                                    [&](const CandidateId& c) { return out.leader_set.contains(c); });
        cat = overlaps ? Category::CoResister : Category::IndResister;
      }
    }
    out.categories[v] = cat;
  }
  return out;
}

struct DailyActivity {
  Date date;
  std::size_t voting_txs = 0;
  std::size_t delegating_txs = 0;

  friend bool operator==(const DailyActivity&, const DailyActivity&) = default;
};

// Voting and delegating transaction counts per UTC day, for days with any.
inline std::vector<DailyActivity> daily_activity(const store::EventLog& log) {
  std::map<Date, DailyActivity> days;
  for (const auto& r : log.records) {
    if (!r.is_voting() && !r.is_delegating()) continue;
    auto& d = days[day_of(r.ts)];
    d.date = day_of(r.ts);
    if (r.is_voting()) ++d.voting_txs;
    else ++d.delegating_txs;
  }
  std::vector<DailyActivity> out;
  for (auto& [_, d] : days) out.push_back(d);
  return out;
}

struct CategoryPower {
  Date date;
  VotingPower co;
  VotingPower ind;
  VotingPower non;
};

inline std::vector<CategoryPower> category_power_series(std::span<const PowerSnapshot> snapshots,
                                                        const ResisterClassification& cls) {
  std::vector<CategoryPower> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) {
    CategoryPower row{s.date, {}, {}, {}};
    for (const auto& [voter, p] : s.powers) {
      switch (cls.of(voter)) {
        case Category::CoResister: row.co += p; break;
        case Category::IndResister: row.ind += p; break;
        case Category::NonResister: row.non += p; break;
      }
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace dpos::metrics

#endif  // DPOS_RESISTANCE_HPP_
