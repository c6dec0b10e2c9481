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


// Deterministic synthetic event logs. The generator uses its own integer
// arithmetic on top of std::mt19937_64 (whose sequence is fixed by the
// standard) so output is identical across standard libraries.

#ifndef DPOS_TOOLS_FIXTURE_GEN_HPP_
#define DPOS_TOOLS_FIXTURE_GEN_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dpos/dpos.hpp"

namespace dpos::fixtures {

struct LogShape {
  std::uint64_t seed = 20240101;
  std::size_t records = 1000;
  int voters = 60;
  int proxies = 8;  // v00..v07 accept delegations and never delegate
  int candidates = 40;
  int days = 10;
  std::int64_t lambda = 2000;  // integer staking coefficient assumed by unstake sizing
  int max_vote = 30;
  std::string start = "2024-01-01";
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform-ish in [0, n).
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

inline std::string id(const char* prefix, int i, int width) {
  std::string s = std::to_string(i);
  return prefix + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

}  // namespace detail

// A valid, timestamp-sorted log: every voter stakes first, then a mix of
// votes, unvotes, delegations, undelegations, stakes and unstakes.
inline store::EventLog make_event_log(const LogShape& shape = {}) {
  detail::Rng rng(shape.seed);
  store::EventLog log;
  const Timestamp t0(parse_date(shape.start));
  const std::int64_t span = static_cast<std::int64_t>(shape.days) * 86400;

  std::vector<std::int64_t> times;
  const std::size_t initial = std::min<std::size_t>(shape.records, static_cast<std::size_t>(shape.voters));
  for (std::size_t i = 0; i < shape.records - initial; ++i) times.push_back(rng.between(3600, span - 1));
  std::sort(times.begin(), times.end());

  std::vector<std::int64_t> held(static_cast<std::size_t>(shape.voters), 0);  // power units
  std::vector<int> delegated_to(static_cast<std::size_t>(shape.voters), -1);
  std::vector<std::vector<std::string>> votes(static_cast<std::size_t>(shape.voters));

  auto voter = [&](int i) { return detail::id("v", i, 2); };
  auto candidate = [&](int i) { return detail::id("bp", i + 1, 2); };

  for (std::size_t i = 0; i < initial; ++i) {
    store::EventRecord r;
    r.ts = t0 + std::chrono::seconds(static_cast<std::int64_t>(i));
    r.voter = voter(static_cast<int>(i));
    r.kind = store::EventKind::Stake;
    const std::int64_t millis = rng.between(1000, 5'000'000);
    r.coins = Rational(millis, 1000);
    held[i] += stake(*r.coins, Rational(shape.lambda)).units();
    log.records.push_back(std::move(r));
  }

  for (auto t : times) {
    store::EventRecord r;
    r.ts = t0 + std::chrono::seconds(t);
    const int who = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.voters)));
    const auto w = static_cast<std::size_t>(who);
    r.voter = voter(who);
    const auto roll = rng.below(100);
    if (roll < 40) {
      r.kind = store::EventKind::Vote;
      const auto k = static_cast<std::size_t>(rng.between(1, shape.max_vote));
      std::vector<int> pool(static_cast<std::size_t>(shape.candidates));
      for (int c = 0; c < shape.candidates; ++c) pool[static_cast<std::size_t>(c)] = c;
      auto& list = votes[w];
      for (std::size_t j = 0; j < pool.size() && r.candidates.size() < k; ++j) {
        std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
        const auto c = candidate(pool[j]);
        const bool listed = std::find(list.begin(), list.end(), c) != list.end();
        if (!listed && list.size() >= static_cast<std::size_t>(shape.max_vote)) continue;
        if (!listed) list.push_back(c);
        r.candidates.push_back(c);
      }
    } else if (roll < 50) {
      r.kind = store::EventKind::Unvote;
      if (!votes[w].empty() && rng.below(2) == 0) {
        r.candidates.push_back(votes[w][rng.below(votes[w].size())]);
        std::erase(votes[w], r.candidates.front());
      } else {
        votes[w].clear();
      }
    } else if (roll < 62 && who >= shape.proxies) {
      r.kind = store::EventKind::Delegate;
      const int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.proxies)));
      r.target = voter(to);
      delegated_to[w] = to;
    } else if (roll < 68 && delegated_to[w] >= 0) {
      r.kind = store::EventKind::Undelegate;
      delegated_to[w] = -1;
    } else if (roll < 85 || held[w] < shape.lambda) {
      r.kind = store::EventKind::Stake;
      const std::int64_t millis = rng.between(1, 2'000'000);
      r.coins = Rational(millis, 1000);
      held[w] += stake(*r.coins, Rational(shape.lambda)).units();
    } else {
      r.kind = store::EventKind::Unstake;
      const std::int64_t coins = rng.between(1, std::max<std::int64_t>(1, held[w] / shape.lambda / 2));
      r.coins = Rational(coins);
      held[w] -= coins * shape.lambda;
    }
    log.records.push_back(std::move(r));
  }
  return log;
}

// ------------------------------------------------------------ voting states

// Random Steem-like state: 30 candidates, `voters` voters with random
// power and up to v votes each, some delegating to lower-numbered voters.
inline VotingState steem_like_state(std::uint64_t seed, int voters = 50, int candidates = 30,
                                    int max_vote = 30) {
  detail::Rng rng(seed);
  VotingState s;
  std::vector<bool> delegates(static_cast<std::size_t>(voters), false);
  for (int i = 0; i < voters; ++i) {
    const auto id = detail::id("u", i, 2);
    s.powers[id] = VotingPower(rng.between(1, 1'000'000));
    if (i > 0 && rng.below(5) == 0) {
      int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
      if (!delegates[static_cast<std::size_t>(to)]) {
        s.delegations[id] = detail::id("u", to, 2);
        delegates[static_cast<std::size_t>(i)] = true;
        continue;
      }
    }
    std::vector<int> pool(static_cast<std::size_t>(candidates));
    for (int c = 0; c < candidates; ++c) pool[static_cast<std::size_t>(c)] = c;
    const auto k = static_cast<std::size_t>(rng.between(1, std::min(max_vote, candidates)));
    auto& list = s.approvals[id];
    for (std::size_t j = 0; j < k; ++j) {
      std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
      list.push_back(detail::id("bp", pool[j] + 1, 2));
    }
  }
  return s;
}

// 2^4 * 3^3 * 5^2 * 7 * 11 * 13 * 17 * 19 * 23 * 29: divisible by every
// integer in 1..30.
inline constexpr std::int64_t kLcm30 = 2329089562800LL;

// Uniform behaviour: 40 voters, 40 candidates, every voter backs exactly
// min(v, 40) consecutive candidates. Powers are multiples of kLcm30 so every
// split and ratio below is exact.
inline VotingState uniform_state(const SystemConfig& config, int voters = 40, int candidates = 40) {
  VotingState s;
  const auto k = std::min(config.v, candidates);
  for (int i = 0; i < voters; ++i) {
    const auto id = detail::id("u", i, 2);
    const VotingPower p(kLcm30 * (1 + (i * 7) % 5));
    s.powers[id] = p;
    std::vector<CandidateId> list;
    for (int j = 0; j < k; ++j) list.push_back(detail::id("c", (i + j) % candidates + 1, 2));
    if (config.rule == Rule::Approval) {
      s.approvals[id] = list;
    } else {
      for (const auto& c : list) s.allocations[id].push_back({c, VotingPower(p.units() / k)});
    }
  }
  return s;
}

// ------------------------------------------------------------ event logs

inline store::EventRecord event(Timestamp ts, std::string voter, store::EventKind kind) {
  store::EventRecord r;
  r.ts = ts;
  r.voter = std::move(voter);
  r.kind = kind;
  return r;
}

inline store::EventRecord stake_event(Timestamp ts, std::string voter, std::int64_t coins) {
  auto r = event(ts, std::move(voter), store::EventKind::Stake);
  r.coins = Rational(coins);
  return r;
}

inline store::EventRecord vote_event(Timestamp ts, std::string voter, std::vector<CandidateId> list) {
  auto r = event(ts, std::move(voter), store::EventKind::Vote);
  r.candidates = std::move(list);
  return r;
}

struct TakeoverScenario {
  store::EventLog log;
  Timestamp attack;
  VoterId leader = "leader";
  std::set<VoterId> co_resisters;
  std::set<VoterId> ind_resisters;
};

// Steem-style history over three days (2024-03-01..03). Day 1: 60 voters
// back 25 candidates. Day 2 noon: an attacker stakes far more than all
// voters together and backs 20 fresh candidates. Within the next day 20
// voters switch to sets overlapping the leader's and 5 switch to disjoint
// fresh candidates.
inline TakeoverScenario steem_takeover_log(std::uint64_t seed = 7) {
  detail::Rng rng(seed);
  TakeoverScenario sc;
  const Timestamp day1(parse_date("2024-03-01"));
  const Timestamp day2 = day1 + std::chrono::hours(24);
  sc.attack = day2 + std::chrono::hours(12);
  auto& recs = sc.log.records;

  std::vector<CandidateId> leader_set;
  for (int c = 1; c <= 6; ++c) leader_set.push_back(detail::id("bp", c, 2));
  std::int64_t total = 0;
  recs.push_back(stake_event(day1 + std::chrono::seconds(60), sc.leader, 50'000));
  total += 50'000;
  recs.push_back(vote_event(day1 + std::chrono::seconds(61), sc.leader, leader_set));
  for (int i = 0; i < 60; ++i) {
    const auto id = detail::id("w", i, 2);
    const auto coins = rng.between(1'000, 40'000);
    total += coins;
    const Timestamp at = day1 + std::chrono::seconds(120 + 60 * i);
    recs.push_back(stake_event(at, id, coins));
    std::vector<int> pool(25);
    for (int c = 0; c < 25; ++c) pool[static_cast<std::size_t>(c)] = c;
    std::vector<CandidateId> list;
    const auto k = static_cast<std::size_t>(rng.between(3, 20));
    for (std::size_t j = 0; j < k; ++j) {
      std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
      list.push_back(detail::id("bp", pool[j] + 1, 2));
    }
    recs.push_back(vote_event(at + std::chrono::seconds(1), id, list));
  }
  std::vector<CandidateId> fresh;
  for (int c = 1; c <= 20; ++c) fresh.push_back(detail::id("x", c, 2));
  recs.push_back(stake_event(sc.attack - std::chrono::hours(1), "attacker", 100 * total));
  recs.push_back(vote_event(sc.attack, "attacker", fresh));

  for (int i = 0; i < 25; ++i) {
    const auto id = detail::id("w", i, 2);
    const Timestamp at = sc.attack + std::chrono::minutes(30 + 40 * i);
    recs.push_back(event(at - std::chrono::seconds(1), id, store::EventKind::Unvote));
    if (i < 20) {
      std::vector<CandidateId> list = leader_set;
      list.push_back(detail::id("bp", 7 + i % 10, 2));
      recs.push_back(vote_event(at, id, list));
      sc.co_resisters.insert(id);
    } else {
      recs.push_back(vote_event(at, id, {detail::id("y", i - 19, 2)}));
      sc.ind_resisters.insert(id);
    }
  }
  return sc;
}

struct WhaleScenario {
  store::EventLog log;
  SystemConfig config;
  Date crossing;  // first day on which the whale alone holds at least R_P
};

// Cumulative-voting history over ten days (2024-05-01..10). 40 voters
// stake and vote on day 1 only; a non-voting whale stakes the same amount
// every day and first reaches R_P on day 6.
inline WhaleScenario whale_log(std::uint64_t seed = 11) {
  detail::Rng rng(seed);
  WhaleScenario sc;
  sc.config = preset("tron");
  const Timestamp day1(parse_date("2024-05-01"));
  auto& recs = sc.log.records;
  for (int i = 0; i < 40; ++i) {
    const auto id = detail::id("h", i, 2);
    const Timestamp at = day1 + std::chrono::seconds(60 * (i + 1));
    recs.push_back(stake_event(at, id, rng.between(100, 5'000)));
    std::vector<int> pool(35);
    for (int c = 0; c < 35; ++c) pool[static_cast<std::size_t>(c)] = c;
    std::vector<CandidateId> list;
    const auto k = static_cast<std::size_t>(rng.between(1, 5));
    for (std::size_t j = 0; j < k; ++j) {
      std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
      list.push_back(detail::id("sr", pool[j] + 1, 2));
    }
    recs.push_back(vote_event(at + std::chrono::seconds(1), id, list));
  }
  // R_P is fixed after day 1 because nobody votes again.
  auto ds = store::replay(sc.log, sc.config, {});
  auto view = store::query(ds, ds.range->first);
  const auto r_p = metrics::passive_resistance(
      metrics::snapshot_scores(view.power, view.voting, sc.config), sc.config);
  const std::int64_t daily = r_p.units() / 6 + 1;  // 5 * daily < R_P <= 6 * daily
  for (int d = 0; d < 10; ++d) {
    recs.push_back(stake_event(day1 + std::chrono::hours(24 * d + 20), "whale", daily));
  }
  sc.crossing = parse_date("2024-05-06");
  return sc;
}

}  // namespace dpos::fixtures

#endif  // DPOS_TOOLS_FIXTURE_GEN_HPP_
