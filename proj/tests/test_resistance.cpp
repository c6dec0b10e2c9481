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


#include <gtest/gtest.h>

#include <random>

#include "dpos/dpos.hpp"
#include "fixture_gen.hpp"
#include "support/oracles.hpp"

namespace dpos::metrics {
namespace {

using P = VotingPower;
using namespace std::chrono_literals;

SystemConfig av(int v, int t, int n) { return {Rule::Approval, v, n, t, Rational(1), 1}; }

std::set<CandidateId> fresh(int count) {
  std::set<CandidateId> out;
  for (int i = 0; i < count; ++i) out.insert(game::slot_id('x', i, count));
  return out;
}

ScoreMap scores_for(const VotingState& s, const SystemConfig& cfg) {
  const auto gurus = resolve_delegations(s.powers, s.delegations);
  if (cfg.rule == Rule::Approval) return tally_approval(gurus, s.approvals, cfg);
  CumulativeProfile profile;
  for (const auto& [voter, list] : s.approvals) profile[voter] = sim::av_to_cv(list, gurus.at(voter));
  return tally_cumulative(gurus, profile, cfg);
}

TEST(PassiveResistance, Examples) {
  const auto eosio = preset("eosio");
  ScoreMap scores;
  for (int i = 0; i < 21; ++i) scores[game::slot_id('b', i, 21)] = P(1000 - 10 * i);
  EXPECT_EQ(blocking_score(scores, eosio), P(940));
  EXPECT_EQ(passive_resistance(scores, eosio), P(940));
  EXPECT_EQ(passive_resistance(ScoreMap{}, eosio), P(0));

  const auto cfg = av(3, 15, 21);
  ScoreMap s2;
  for (int i = 0; i < 21; ++i) s2[game::slot_id('b', i, 21)] = P(i < 7 ? 30 : 10);
  EXPECT_EQ(passive_resistance(s2, cfg), P(150));
  EXPECT_TRUE(simulate_takeover(s2, P(150), fresh(21), cfg).success);
  EXPECT_FALSE(simulate_takeover(s2, P(149), fresh(21), cfg).success);
}

TEST(PassiveResistance, FewerCandidatesThanBlockingRank) {
  const auto cfg = av(30, 15, 21);
  ScoreMap s{{"a", P(10)}, {"b", P(5)}};
  EXPECT_EQ(passive_resistance(s, cfg), P(0));
  EXPECT_TRUE(simulate_takeover(s, P(0), fresh(21), cfg).success);
}

TEST(RiskIndex, Examples) {
  EXPECT_EQ(risk_index(PowerMap{{"a", P(100)}, {"b", P(1)}}, P(50)), (RiskIndex{1, true}));
  EXPECT_EQ(risk_index(PowerMap{{"a", P(100)}}, P(0)), (RiskIndex{0, true}));
  PowerMap m{{"a", P(10)}, {"b", P(8)}, {"c", P(5)}, {"d", P(1)}};
  EXPECT_EQ(risk_index(m, P(18)), (RiskIndex{2, true}));
  EXPECT_EQ(risk_index(m, P(19)), (RiskIndex{3, true}));
  EXPECT_EQ(risk_index(m, P(25)), (RiskIndex{5, false}));
  EXPECT_EQ(risk_index(PowerMap{}, P(1)), (RiskIndex{1, false}));
}

TEST(RiskIndex, Monotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    PowerMap m;
    for (int i = 0; i < 30; ++i) m["v" + std::to_string(i)] = P(static_cast<std::int64_t>(rng() % 100));
    std::int64_t prev = 0;
    for (std::int64_t r = 0; r <= 3000; r += 37) {
      auto idx = risk_index(m, P(r));
      ASSERT_GE(idx.value, prev);
      prev = idx.value;
      std::int64_t positive = 0;
      for (const auto& [_, p] : m) positive += p.units() > 0;
      if (idx.reachable) {
        ASSERT_LE(idx.value, positive);
      }
    }
    const P r(static_cast<std::int64_t>(rng() % 2000));
    const auto before = risk_index(m, r);
    auto top = std::max_element(m.begin(), m.end(), [](auto& a, auto& b) { return a.second < b.second; });
    top->second += P(static_cast<std::int64_t>(rng() % 500));
    ASSERT_LE(risk_index(m, r).value, before.value);
  }
}

TEST(SimulateTakeover, OverwhelmingAttackerShiftsEveryoneByTwenty) {
  const auto cfg = preset("steem");
  auto state = fixtures::steem_like_state(1);
  const auto scores = scores_for(state, cfg);
  auto out = simulate_takeover(state, P(1'000'000'000'000), fresh(20), cfg);
  EXPECT_TRUE(out.success);
  EXPECT_EQ(out.attacker_seats, 20);
  for (const auto& [c, shift] : out.rank_shifts) EXPECT_EQ(shift, 20) << c;
  EXPECT_EQ(out.rank_shifts.size(), scores.size());
}

TEST(SimulateTakeover, Errors) {
  const auto cfg = av(30, 2, 3);
  ScoreMap s{{"a", P(10)}, {"b", P(5)}, {"c", P(1)}};
  EXPECT_THROW(simulate_takeover(s, P(5), {"a"}, cfg), ValidationError);
  EXPECT_THROW(simulate_takeover(s, P(-1), fresh(3), cfg), DomainError);
  EXPECT_FALSE(simulate_takeover(s, P(0), fresh(3), cfg).success);
}

TEST(SimulateTakeover, MinimalityAcrossConfigs) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 28);
    int t = n * 2 / 3 + 1;
    t += static_cast<int>(rng() % static_cast<std::uint64_t>(n - t + 1));
    const int v = 1 + static_cast<int>(rng() % 30);
    const Rule rule = rng() % 2 ? Rule::Approval : Rule::Cumulative;
    const SystemConfig cfg{rule, v, n, t, Rational(1), 1};
    auto state = fixtures::steem_like_state(rng(), 10 + static_cast<int>(rng() % 41), 30, v);
    const auto scores = scores_for(state, cfg);
    const auto r_p = passive_resistance(scores, cfg);
    const auto attackers = fresh(n);
    ASSERT_TRUE(simulate_takeover(scores, r_p, attackers, cfg).success);
    if (r_p.units() > 0) {
      ASSERT_FALSE(simulate_takeover(scores, r_p - P(1), attackers, cfg).success)
          << describe(cfg) << " R_P=" << r_p;
      ++checked;
    }
  }
  EXPECT_GT(checked, 250);
}

TEST(Classify, HandBuiltLog) {
  using fixtures::stake_event;
  using fixtures::vote_event;
  const Timestamp t0(parse_date("2024-01-01"));
  store::EventLog log;
  log.records = {
      stake_event(t0, "L", 10),
      vote_event(t0 + 1s, "L", {"c1", "c2"}),
      stake_event(t0 + 2s, "a", 1),
      vote_event(t0 + 3s, "a", {"c5"}),
      stake_event(t0 + 4s, "b", 1),
      vote_event(t0 + 5s, "b", {"c5"}),
      stake_event(t0 + 6s, "c", 1),
      vote_event(t0 + 7s, "c", {"c5"}),
      stake_event(t0 + 8s, "d", 1),
      stake_event(t0 + 9s, "e", 1),
      vote_event(t0 + 10s, "e", {"c7"}),
  };
  const Timestamp event = t0 + 1h;
  log.records.push_back(vote_event(event + 1min, "b", {"c1", "c9"}));
  log.records.push_back(vote_event(event + 2min, "c", {"c8"}));
  auto del = fixtures::event(event + 3min, "d", store::EventKind::Delegate);
  del.target = "L";
  log.records.push_back(del);
  log.records.push_back(vote_event(event + 4min, "e", {"c7"}));
  log.records.push_back(vote_event(event + 48h, "a", {"c1"}));  // outside the window

  auto cls = classify_resisters(log, event, 24h, "L");
  EXPECT_EQ(cls.leader_set, (std::set<CandidateId>{"c1", "c2"}));
  EXPECT_EQ(cls.of("a"), Category::NonResister);
  EXPECT_EQ(cls.of("b"), Category::CoResister);
  EXPECT_EQ(cls.of("c"), Category::IndResister);
  EXPECT_EQ(cls.of("d"), Category::CoResister);
  EXPECT_EQ(cls.of("e"), Category::NonResister);
  EXPECT_EQ(cls.of("L"), Category::NonResister);
  std::size_t total = 0;
  for (const auto& [_, n] : cls.counts()) total += n;
  EXPECT_EQ(total, cls.categories.size());

  auto none = classify_resisters(log, event, 0s, "L");
  for (const auto& [_, c] : none.categories) EXPECT_EQ(c, Category::NonResister);
  EXPECT_THROW(classify_resisters(log, event, 24h, "nobody"), ValidationError);
}

TEST(Classify, TakeoverScenario) {
  const auto sc = fixtures::steem_takeover_log();
  auto cls = classify_resisters(sc.log, sc.attack, 24h, sc.leader);
  for (const auto& [voter, cat] : cls.categories) {
    if (sc.co_resisters.contains(voter)) {
      EXPECT_EQ(cat, Category::CoResister) << voter;
    } else if (sc.ind_resisters.contains(voter)) {
      EXPECT_EQ(cat, Category::IndResister) << voter;
    } else {
      EXPECT_EQ(cat, Category::NonResister) << voter;
    }
  }
  const auto counts = cls.counts();
  EXPECT_EQ(counts.at(Category::CoResister), 20u);
  EXPECT_EQ(counts.at(Category::IndResister), 5u);
}

TEST(DailyActivity, Examples) {
  EXPECT_TRUE(daily_activity({}).empty());
  const Timestamp t0(parse_date("2024-01-01"));
  store::EventLog log;
  for (int i = 0; i < 3; ++i) log.records.push_back(fixtures::vote_event(t0 + std::chrono::seconds(i), "a", {"c"}));
  auto d = fixtures::event(t0 + 5s, "b", store::EventKind::Delegate);
  d.target = "a";
  log.records.push_back(d);
  log.records.push_back(fixtures::stake_event(t0 + 6s, "a", 1));
  auto a = daily_activity(log);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].voting_txs, 3u);
  EXPECT_EQ(a[0].delegating_txs, 1u);
}

TEST(DailyActivity, MatchesGroupBy) {
  const auto log = fixtures::make_event_log();
  std::map<std::string, std::pair<std::size_t, std::size_t>> expect;
  for (const auto& r : log.records) {
    const auto key = format_timestamp(r.ts).substr(0, 10);
    if (r.kind == store::EventKind::Vote || r.kind == store::EventKind::Unvote) ++expect[key].first;
    if (r.kind == store::EventKind::Delegate || r.kind == store::EventKind::Undelegate) ++expect[key].second;
  }
  auto got = daily_activity(log);
  ASSERT_EQ(got.size(), expect.size());
  for (const auto& row : got) {
    const auto& e = expect.at(format_date(row.date));
    EXPECT_EQ(row.voting_txs, e.first);
    EXPECT_EQ(row.delegating_txs, e.second);
  }
}

TEST(CategoryPower, Examples) {
  PowerSnapshot s{parse_date("2024-01-01"), {{"a", P(3)}, {"b", P(4)}}};
  std::vector<PowerSnapshot> snaps{s};
  ResisterClassification all_non;
  auto r = category_power_series(snaps, all_non);
  EXPECT_EQ(r[0].non, P(7));
  EXPECT_EQ(r[0].co, P(0));

  PowerSnapshot whale{parse_date("2024-01-01"), {{"a", P(9)}}};
  ResisterClassification co;
  co.categories["a"] = Category::CoResister;
  auto r2 = category_power_series(std::vector<PowerSnapshot>{whale}, co);
  EXPECT_EQ(r2[0].co, P(9));
  EXPECT_EQ(r2[0].ind + r2[0].non, P(0));
}

TEST(CategoryPower, MatchesIndependentFold) {
  const auto sc = fixtures::steem_takeover_log();
  auto ds = store::replay(sc.log, preset("steem"), {});
  auto cls = classify_resisters(sc.log, sc.attack, 24h, sc.leader);
  auto series = category_power_series(ds.power, cls);
  ASSERT_EQ(series.size(), ds.power.size());
  for (std::size_t d = 0; d < series.size(); ++d) {
    std::int64_t co = 0, ind = 0, non = 0;
    for (const auto& [voter, p] : ds.power[d].powers) {
      if (sc.co_resisters.contains(voter)) co += p.units();
      else if (sc.ind_resisters.contains(voter)) ind += p.units();
      else non += p.units();
    }
    EXPECT_EQ(series[d].co.units(), co);
    EXPECT_EQ(series[d].ind.units(), ind);
    EXPECT_EQ(series[d].non.units(), non);
  }
}

TEST(ResistanceSeries, MatchesDayByDay) {
  const auto log = fixtures::make_event_log();
  const auto cfg = preset("steem");
  auto ds = store::replay(log, cfg, {});
  auto series = resistance_series(ds.power, ds.voting, cfg);
  ASSERT_EQ(series.size(), 10u);
  for (std::size_t d = 0; d < series.size(); ++d) {
    const auto scores = tally_approval(ds.power[d].powers, ds.voting[d].profiles, cfg);
    EXPECT_EQ(series[d].r_p, passive_resistance(scores, cfg));
    EXPECT_EQ(series[d].i_t, risk_index(ds.power[d], series[d].r_p));
  }
}

}  // namespace
}  // namespace dpos::metrics
