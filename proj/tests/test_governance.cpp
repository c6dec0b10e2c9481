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
#include "support/oracles.hpp"

namespace dpos {
namespace {

using P = VotingPower;

SystemConfig av(int v, int t, int n) { return {Rule::Approval, v, n, t, Rational(1), 1}; }
SystemConfig cv(int v, int t, int n) { return {Rule::Cumulative, v, n, t, Rational(1), 1}; }

TEST(Config, PresetsAndValidation) {
  auto e = preset("eosio");
  EXPECT_EQ(e.rule, Rule::Approval);
  EXPECT_EQ(e.v, 30);
  EXPECT_EQ(e.n, 21);
  EXPECT_EQ(e.t, 15);
  EXPECT_TRUE(e.supermajority());
  auto s = preset("Steem");
  EXPECT_EQ(s.n, 20);
  EXPECT_EQ(s.t, 17);
  EXPECT_EQ(s.lambda, Rational(2000));
  auto t = preset("tron");
  EXPECT_EQ(t.rule, Rule::Cumulative);
  EXPECT_EQ(t.n, 27);
  EXPECT_EQ(t.t, 19);
  EXPECT_THROW(preset("bitshares"), ConfigError);
  EXPECT_THROW(av(0, 1, 1).validate(), ConfigError);
  EXPECT_THROW(av(1, 4, 3).validate(), ConfigError);
  EXPECT_THROW(av(1, 0, 3).validate(), ConfigError);
  EXPECT_TRUE(av(1, 3, 4).supermajority());
  EXPECT_FALSE(av(1, 3, 3).supermajority());  // t == n
  EXPECT_FALSE(av(1, 14, 21).supermajority());
  EXPECT_EQ(parse_rule("cumulative"), Rule::Cumulative);
  EXPECT_EQ(parse_rule("AV"), Rule::Approval);
  EXPECT_THROW(parse_rule("borda"), ConfigError);
}

TEST(Stake, Examples) {
  EXPECT_EQ(stake(Rational(100), Rational(1)), P(100));
  EXPECT_EQ(stake(Rational(1), Rational(2000)), P(2000));
  EXPECT_EQ(stake(Rational(0), Rational(7)), P(0));
  EXPECT_EQ(stake(Rational(7, 2), Rational(1)), P(3));  // floored
  EXPECT_THROW(stake(Rational(-1), Rational(1)), DomainError);
}

TEST(Unstake, Examples) {
  EXPECT_EQ(unstake(P(2000), Rational(2000)), Rational(1));
  EXPECT_EQ(unstake(P(100), Rational(1)), Rational(100));
  EXPECT_EQ(unstake(P(3), Rational(2)), Rational(3, 2));
}

TEST(Unstake, RoundTripNeverGainsPower) {
  for (std::int64_t lambda : {1, 2, 3}) {
    for (std::int64_t p = 0; p <= 1000; ++p) {
      const auto back = stake(unstake(P(p), Rational(lambda)), Rational(lambda));
      ASSERT_LE(back, P(p)) << "p=" << p << " lambda=" << lambda;
      ASSERT_EQ(back, P(p));  // exact rationals lose nothing
    }
  }
  // Fractional lambda: flooring can lose at most one unit.
  for (std::int64_t p = 0; p <= 1000; ++p) {
    const auto coins = unstake(P(p), Rational(3, 7));
    ASSERT_LE(stake(coins, Rational(3, 7)), P(p));
    ASSERT_GE(stake(coins, Rational(3, 7)) + P(1), P(p));
  }
}

TEST(Delegation, Examples) {
  EXPECT_EQ(resolve_delegations({{"a", P(5)}}, {{"a", "a"}}), (PowerMap{{"a", P(5)}}));
  EXPECT_EQ(resolve_delegations({{"a", P(1)}, {"b", P(2)}, {"c", P(3)}},
                                {{"a", "b"}, {"b", "c"}, {"c", "c"}}),
            (PowerMap{{"c", P(6)}}));
  PowerMap powers{{"a", P(1)}, {"b", P(2)}, {"c", P(4)}, {"d", P(8)}};
  DelegationProfile d{{"a", "c"}, {"b", "c"}, {"c", "c"}, {"d", "d"}};
  EXPECT_EQ(resolve_delegations(powers, d), (PowerMap{{"c", P(7)}, {"d", P(8)}}));
  EXPECT_EQ(resolve_delegations(powers, d), oracle::fold_delegations(powers, d));
}

TEST(Delegation, Errors) {
  try {
    resolve_delegations({{"a", P(1)}}, {{"a", "ghost"}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
  try {
    resolve_delegations({{"a", P(1)}, {"b", P(1)}, {"c", P(1)}},
                        {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cycle"), std::string::npos);
    for (const char* m : {"a", "b", "c"}) EXPECT_NE(what.find(m), std::string::npos);
  }
}

TEST(Delegation, RandomForestsConservePower) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 200);
    PowerMap powers;
    DelegationProfile d;
    std::int64_t total = 0;
    for (int i = 0; i < m; ++i) {
      const auto id = "v" + std::to_string(i);
      const auto p = static_cast<std::int64_t>(rng() % 1000);
      powers[id] = P(p);
      total += p;
      if (i > 0 && rng() % 3 != 0) {
        d[id] = "v" + std::to_string(rng() % static_cast<std::uint64_t>(i));
      } else if (rng() % 2 == 0) {
        d[id] = id;
      }
    }
    const auto gurus = resolve_delegations(powers, d);
    std::int64_t sum = 0;
    for (const auto& [_, p] : gurus) sum += p.units();
    ASSERT_EQ(sum, total);
    ASSERT_EQ(gurus, oracle::fold_delegations(powers, d));
  }
}

TEST(TallyApproval, Examples) {
  const auto cfg = av(30, 1, 2);
  EXPECT_EQ(tally_approval({{"A", P(40)}}, {{"A", {"c1", "c2"}}}, cfg),
            (ScoreMap{{"c1", P(40)}, {"c2", P(40)}}));
  EXPECT_TRUE(tally_approval({{"A", P(40)}}, {}, cfg).empty());
  PowerMap gurus{{"A", P(40)}, {"B", P(10)}};
  ApprovalProfile profile{{"A", {"c1", "c2"}}, {"B", {"c1"}}};
  EXPECT_EQ(tally_approval(gurus, profile, cfg), (ScoreMap{{"c1", P(50)}, {"c2", P(40)}}));
  EXPECT_EQ(tally_approval(gurus, profile, cfg), oracle::pair_sum(gurus, profile));
}

TEST(TallyApproval, Errors) {
  const auto cfg = av(2, 1, 2);
  EXPECT_THROW(tally_approval({{"A", P(1)}}, {{"B", {"c1"}}}, cfg), ValidationError);
  EXPECT_THROW(tally_approval({{"A", P(1)}}, {{"A", {"c1", "c2", "c3"}}}, cfg), ValidationError);
  EXPECT_THROW(tally_approval({{"A", P(1)}}, {{"A", {"c1", "c1"}}}, cfg), ValidationError);
}

TEST(TallyCumulative, Examples) {
  const auto cfg = cv(30, 1, 2);
  EXPECT_EQ(tally_cumulative({{"A", P(40)}}, {{"A", {{"c1", P(20)}, {"c2", P(20)}}}}, cfg),
            (ScoreMap{{"c1", P(20)}, {"c2", P(20)}}));
  EXPECT_TRUE(tally_cumulative({{"A", P(40)}}, {}, cfg).empty());
  EXPECT_EQ(tally_cumulative({{"A", P(40)}, {"B", P(5)}},
                             {{"A", {{"c1", P(30)}, {"c2", P(10)}}}, {"B", {{"c1", P(5)}}}}, cfg),
            (ScoreMap{{"c1", P(35)}, {"c2", P(10)}}));
}

TEST(TallyCumulative, ExcessNamesVoterAndAmount) {
  try {
    tally_cumulative({{"A", P(40)}}, {{"A", {{"c1", P(30)}, {"c2", P(15)}}}}, cv(30, 1, 2));
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("'A'"), std::string::npos);
    EXPECT_NE(what.find("by 5"), std::string::npos);
  }
  EXPECT_THROW(tally_cumulative({{"A", P(4)}}, {{"A", {{"c1", P(1)}, {"c2", P(1)}}}}, cv(1, 1, 2)),
               ValidationError);
}

TEST(Tally, AmplificationBound) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 5);
    PowerMap gurus;
    ApprovalProfile ap;
    CumulativeProfile cp;
    std::int64_t total = 0;
    for (int i = 0; i < 20; ++i) {
      const auto id = "g" + std::to_string(i);
      const auto p = static_cast<std::int64_t>(rng() % 100);
      gurus[id] = P(p);
      total += p;
      const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v));
      std::int64_t left = p;
      for (int j = 0; j < k; ++j) {
        const auto c = "c" + std::to_string((i + j) % 9);
        ap[id].push_back(c);
        const std::int64_t share = j + 1 == k ? left : left / 2;
        cp[id].push_back({c, P(share)});
        left -= share;
      }
    }
    std::int64_t sa = 0, sc = 0;
    for (const auto& [_, p] : tally_approval(gurus, ap, av(v, 1, 3))) sa += p.units();
    for (const auto& [_, p] : tally_cumulative(gurus, cp, cv(v, 1, 3))) sc += p.units();
    ASSERT_LE(sa, v * total);
    ASSERT_LE(sc, total);
  }
}

TEST(Elect, Examples) {
  auto c = elect({{"c1", P(50)}, {"c2", P(40)}, {"c3", P(10)}}, av(1, 1, 2));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.seats[0].candidate, "c1");
  EXPECT_EQ(c.seats[1].candidate, "c2");
  EXPECT_EQ(c.tau, P(90));
  EXPECT_EQ(elect({{"c1", P(3)}}, av(1, 1, 3)).size(), 1u);
  auto tie = elect({{"c2", P(5)}, {"c1", P(5)}}, av(1, 1, 1));
  ASSERT_EQ(tie.size(), 1u);
  EXPECT_EQ(tie.seats[0].candidate, "c1");
  EXPECT_TRUE(elect(ScoreMap{}, av(1, 1, 1)).seats.empty());
}

TEST(Elect, MaximisesTauOverAllSubsets) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int pool = 1 + static_cast<int>(rng() % 12);
    const int n = 1 + static_cast<int>(rng() % 8);
    ScoreMap scores;
    for (int i = 0; i < pool; ++i) scores["c" + std::to_string(i)] = P(static_cast<std::int64_t>(rng() % 20));
    const auto c = elect(scores, av(1, 1, n));
    ASSERT_EQ(c.tau, oracle::best_subset_tau(scores, n));
    ASSERT_EQ(c.size(), std::min<std::size_t>(scores.size(), static_cast<std::size_t>(n)));
    for (std::size_t i = 1; i < c.seats.size(); ++i) {
      ASSERT_GE(c.seats[i - 1].power, c.seats[i].power);
      if (c.seats[i - 1].power == c.seats[i].power) {
        ASSERT_LT(c.seats[i - 1].candidate, c.seats[i].candidate);
      }
    }
    ASSERT_EQ(elect(scores, av(1, 1, n)).seats, c.seats);
  }
}

TEST(Elect, FromVotingState) {
  VotingState s;
  s.powers = {{"a", P(1)}, {"b", P(2)}, {"c", P(4)}};
  s.delegations = {{"a", "c"}};
  s.approvals = {{"b", {"x"}}, {"c", {"y", "z"}}};
  auto c = elect(s, av(2, 1, 2));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.seats[0].candidate, "y");
  EXPECT_EQ(c.seats[0].power, P(5));
  EXPECT_EQ(c.seats[1].candidate, "z");
}

TEST(Passes, Examples) {
  const auto cfg = preset("eosio");
  ScoreMap scores;
  for (int i = 0; i < 21; ++i) scores[game::slot_id('b', i, 21)] = P(100 - i);
  const auto committee = elect(scores, cfg);
  std::set<CandidateId> approvals;
  for (int i = 0; i < 15; ++i) approvals.insert(game::slot_id('b', i, 21));
  EXPECT_TRUE(passes(approvals, committee, cfg));
  EXPECT_FALSE(passes({}, committee, cfg));
  std::set<CandidateId> mixed;
  for (int i = 0; i < 14; ++i) mixed.insert(game::slot_id('b', i, 21));
  mixed.insert("outsider1");
  mixed.insert("outsider2");
  ASSERT_EQ(mixed.size(), 16u);
  EXPECT_FALSE(passes(mixed, committee, cfg));
}

TEST(Rational, Formatting) {
  EXPECT_EQ(to_fraction_string(Rational(15, 7)), "15/7");
  EXPECT_EQ(to_fixed_string(Rational(15, 7)), "2.14");
  EXPECT_EQ(to_fixed_string(Rational(17, 4)), "4.25");
  EXPECT_EQ(to_fixed_string(Rational(19, 9)), "2.11");
  EXPECT_EQ(to_fixed_string(Rational(1, 200)), "0.01");
  EXPECT_EQ(to_fixed_string(Rational(-1, 200)), "-0.01");
  EXPECT_EQ(to_decimal_string(Rational(2000)), "2000");
  EXPECT_EQ(to_decimal_string(Rational(3, 2)), "1.5");
  EXPECT_EQ(parse_decimal("12.345"), Rational(12345, 1000));
  EXPECT_THROW(parse_decimal("1e3"), DomainError);
  EXPECT_THROW(parse_decimal("."), DomainError);
}

}  // namespace
}  // namespace dpos
