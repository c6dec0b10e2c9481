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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpos/dpos.hpp"
#include "fixture_gen.hpp"
#include "support/oracles.hpp"

namespace dpos::store {
namespace {

using P = VotingPower;
using namespace std::chrono_literals;

SystemConfig lambda1() { return {Rule::Approval, 30, 21, 15, Rational(1), 1}; }

EventLog parse(const std::string& text, bool sort = false) {
  std::istringstream in(text);
  return parse_jsonl(in, sort);
}

template <typename F>
void expect_parse_error(F&& f, std::size_t line, const std::string& field) {
  try {
    f();
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("dpos_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(Ingest, Examples) {
  EXPECT_TRUE(parse("").empty());
  auto one = parse(R"({"ts":"2024-01-01T00:00:00Z","voter":"a","kind":"stake","coins":"100"})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.counts(), (std::map<EventKind, std::size_t>{{EventKind::Stake, 1}}));
  EXPECT_EQ(*one.records[0].coins, Rational(100));

  const std::string six =
      R"({"ts":"2024-01-01T00:00:00Z","voter":"a","kind":"stake","coins":"10"}
{"ts":"2024-01-01T00:00:01Z","voter":"b","kind":"stake","coins":"2.5"}
{"ts":"2024-01-01T00:00:02Z","voter":"a","kind":"vote","candidates":["c1","c2"]}
{"ts":"2024-01-01T00:00:03Z","voter":"b","kind":"delegate","target":"a"}
{"ts":"2024-01-01T00:00:04Z","voter":"b","kind":"undelegate"}
{"ts":"2024-01-01T00:00:05Z","voter":"a","kind":"unvote","candidates":["c2"]}
)";
  auto log = parse(six);
  std::map<EventKind, std::size_t> recount;
  std::istringstream lines(six);
  std::string l;
  while (std::getline(lines, l)) {
    for (auto k : {"stake", "vote", "unvote", "delegate", "undelegate", "unstake"}) {
      if (l.find("\"kind\":\"" + std::string(k) + "\"") != std::string::npos) ++recount[*parse_event_kind(k)];
    }
  }
  EXPECT_EQ(log.counts(), recount);
}

TEST(Ingest, Errors) {
  expect_parse_error([] { parse("{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"stake\"}"); }, 1,
                     "coins");
  expect_parse_error(
      [] {
        parse("\n{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"vote\",\"candidates\":[]}");
      },
      2, "candidates");
  expect_parse_error([] { parse("{\"ts\":\"2024-13-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"undelegate\"}"); },
                     1, "ts");
  expect_parse_error([] { parse("{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"bribe\"}"); }, 1,
                     "kind");
  expect_parse_error(
      [] { parse("{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"undelegate\",\"extra\":1}"); }, 1,
      "extra");
  expect_parse_error(
      [] {
        parse("{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"stake\",\"coins\":\"1\",\"target\":\"b\"}");
      },
      1, "target");
  expect_parse_error([] { parse("not json"); }, 1, "record");
  expect_parse_error(
      [] {
        parse("{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"a\",\"kind\":\"stake\",\"coins\":\"-1\"}");
      },
      1, "coins");
  const std::string unordered =
      "{\"ts\":\"2024-01-02T00:00:00Z\",\"voter\":\"a\",\"kind\":\"undelegate\"}\n"
      "{\"ts\":\"2024-01-01T00:00:00Z\",\"voter\":\"b\",\"kind\":\"undelegate\"}\n";
  expect_parse_error([&] { parse(unordered); }, 2, "ts");
  auto sorted = parse(unordered, true);
  EXPECT_EQ(sorted.records[0].voter, "b");
}

TEST(Ingest, CsvMatchesJsonl) {
  const std::string csv =
      "ts,voter,kind,candidates,target,coins\n"
      "2024-01-01T00:00:00Z,a,stake,,,10\n"
      "2024-01-01T00:00:01Z,a,vote,c1;c2,,\n"
      "2024-01-01T00:00:02Z,b,stake,,,\"2.5\"\n"
      "2024-01-01T00:00:03Z,b,delegate,,a,\n";
  std::istringstream in(csv);
  auto log = parse_csv(in);
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(log.records[1].candidates, (std::vector<CandidateId>{"c1", "c2"}));
  EXPECT_EQ(*log.records[2].coins, Rational(5, 2));
  EXPECT_EQ(*log.records[3].target, "a");
  std::istringstream bad("ts,voter,kind,candidates,target,coins\n2024-01-01T00:00:00Z,a,stake,,\n");
  expect_parse_error([&] { parse_csv(bad); }, 2, "row");
}

TEST(Replay, Examples) {
  const Timestamp t0(parse_date("2024-01-01"));
  EventLog log;
  log.records = {fixtures::stake_event(t0 + 1h, "a", 100)};
  auto ds = replay(log, lambda1());
  ASSERT_EQ(ds.power.size(), 1u);
  EXPECT_EQ(ds.power[0].powers, (PowerMap{{"a", P(100)}}));

  log.records.push_back(fixtures::vote_event(t0 + 2h, "a", {"c1"}));
  log.records.push_back(fixtures::vote_event(t0 + 3h, "a", {"c2"}));
  log.records.push_back(fixtures::vote_event(t0 + 4h, "a", {"c1", "c3"}));
  ds = replay(log, lambda1());
  EXPECT_EQ(ds.voting[0].profiles.at("a"), (std::vector<CandidateId>{"c1", "c2", "c3"}));

  // stake, delegate, unstake
  EventLog fold;
  fold.records = {fixtures::stake_event(t0, "a", 30), fixtures::stake_event(t0 + 1s, "g", 5)};
  auto d = fixtures::event(t0 + 2s, "a", EventKind::Delegate);
  d.target = "g";
  fold.records.push_back(d);
  auto u = fixtures::event(t0 + 3s, "a", EventKind::Unstake);
  u.coins = Rational(12);
  fold.records.push_back(u);
  ds = replay(fold, lambda1());
  EXPECT_EQ(ds.power[0].powers, (PowerMap{{"g", P(5 + 30 - 12)}}));
}

TEST(Replay, UnvoteAndDayBoundaries) {
  const Timestamp t0(parse_date("2024-01-01"));
  EventLog log;
  log.records = {fixtures::stake_event(t0, "a", 10), fixtures::vote_event(t0 + 1s, "a", {"c1", "c2", "c3"})};
  auto uv = fixtures::event(t0 + 23h + 59min + 59s, "a", EventKind::Unvote);
  uv.candidates = {"c2"};
  log.records.push_back(uv);
  log.records.push_back(fixtures::event(t0 + 24h, "a", EventKind::Unvote));
  auto ds = replay(log, lambda1());
  ASSERT_EQ(ds.voting.size(), 2u);
  EXPECT_EQ(ds.voting[0].profiles.at("a"), (std::vector<CandidateId>{"c1", "c3"}));
  EXPECT_TRUE(ds.voting[1].profiles.empty());
}

TEST(Replay, Errors) {
  const Timestamp t0(parse_date("2024-01-01"));
  EventLog over;
  over.records = {fixtures::stake_event(t0, "a", 10)};
  auto u = fixtures::event(t0 + 1s, "a", EventKind::Unstake);
  u.coins = Rational(11);
  over.records.push_back(u);
  EXPECT_THROW(replay(over, lambda1()), ValidationError);

  EventLog many;
  std::vector<CandidateId> list;
  for (int i = 0; i < 31; ++i) list.push_back("c" + std::to_string(i));
  many.records = {fixtures::stake_event(t0, "a", 10), fixtures::vote_event(t0 + 1s, "a", list)};
  try {
    replay(many, lambda1());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
  }
}

TEST(Replay, LockupWarning) {
  const Timestamp t0(parse_date("2024-01-01"));
  EventLog log;
  log.records = {fixtures::stake_event(t0, "a", 10)};
  auto u = fixtures::event(t0 + 1h, "a", EventKind::Unstake);
  u.coins = Rational(1);
  log.records.push_back(u);
  ReplayOptions opt;
  opt.lockup = 72h;
  auto ds = replay(log, lambda1(), opt);
  ASSERT_EQ(ds.warnings.size(), 1u);
  EXPECT_EQ(ds.power[0].powers.at("a"), P(9));
  EXPECT_TRUE(replay(log, lambda1()).warnings.empty());
}

TEST(Query, MatchesPrefixReplay) {
  const auto log = fixtures::make_event_log();
  const auto cfg = preset("steem");
  auto ds = replay(log, cfg);
  ASSERT_TRUE(ds.range);
  for (Date d = ds.range->first; d <= ds.range->last; d += std::chrono::days(1)) {
    auto got = query(ds, d);
    auto expect = oracle::prefix_replay(log, cfg, d);
    ASSERT_EQ(got.power.powers, expect.power.powers) << format_date(d);
    ASSERT_EQ(got.voting.profiles, expect.voting.profiles) << format_date(d);
    auto again = query(ds, d);
    ASSERT_EQ(&again.power, &got.power);
  }
  EXPECT_EQ(query(ds, ds.range->first).power.date, ds.range->first);
  EXPECT_THROW(query(ds, ds.range->last + std::chrono::days(1)), LookupError);
  EXPECT_THROW(query(ChainDataset{}, ds.range->first), LookupError);
}

TEST(Replay, PowerConservation) {
  const auto log = fixtures::make_event_log();
  const auto cfg = preset("steem");
  auto ds = replay(log, cfg);
  std::size_t next = 0;
  std::int64_t staked = 0;
  for (std::size_t i = 0; i < ds.power.size(); ++i) {
    while (next < log.records.size() && day_of(log.records[next].ts) <= ds.power[i].date) {
      const auto& r = log.records[next++];
      if (r.kind == EventKind::Stake) staked += stake(*r.coins, cfg.lambda).units();
      if (r.kind == EventKind::Unstake) staked -= stake(*r.coins, cfg.lambda).units();
    }
    ASSERT_EQ(ds.power[i].total().units(), staked);
  }
}

TEST(Persist, RoundTripAndHash) {
  const auto log = fixtures::make_event_log();
  ReplayOptions opt;
  opt.chain = "demo";
  opt.preset = "steem";
  auto ds = replay(log, preset("steem"), opt);
  const auto dir = temp_dir("persist");
  auto m1 = persist(ds, dir);
  auto loaded = load(dir, "demo");
  EXPECT_EQ(loaded.config, ds.config);
  EXPECT_EQ(loaded.preset, "steem");
  ASSERT_EQ(loaded.power.size(), ds.power.size());
  for (std::size_t i = 0; i < ds.power.size(); ++i) {
    EXPECT_EQ(loaded.power[i].powers, ds.power[i].powers);
    EXPECT_EQ(loaded.voting[i].profiles, ds.voting[i].profiles);
  }
  EXPECT_EQ(loaded.log.size(), log.size());
  auto m2 = persist(loaded, temp_dir("persist2"));
  EXPECT_EQ(m1["sha256"], m2["sha256"]);

  std::ofstream(dir / "demo.power.jsonl", std::ios::app) << "{\"date\":\"2024-01-01\",\"voter\":\"zz\",\"power\":1}\n";
  EXPECT_THROW(load(dir, "demo"), ValidationError);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(temp_dir("persist2"));
}

TEST(Persist, SnapshotLineFormat) {
  const Timestamp t0(parse_date("2024-01-01"));
  EventLog log;
  log.records = {fixtures::stake_event(t0, "a", 7), fixtures::vote_event(t0 + 1s, "a", {"c2", "c1"})};
  auto ds = replay(log, lambda1());
  EXPECT_EQ(power_jsonl(ds), "{\"date\":\"2024-01-01\",\"voter\":\"a\",\"power\":7}\n");
  EXPECT_EQ(voting_jsonl(ds), "{\"date\":\"2024-01-01\",\"voter\":\"a\",\"candidates\":[\"c2\",\"c1\"]}\n");
}

TEST(Fixtures, BundledFilesMatchGenerator) {
  const std::filesystem::path data(DPOS_TEST_DATA);
  auto read = [&](const char* name) {
    std::ifstream in(data / name, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  EXPECT_EQ(read("events_1000.jsonl"), events_jsonl(fixtures::make_event_log()));
  EXPECT_EQ(read("steem_takeover.jsonl"), events_jsonl(fixtures::steem_takeover_log().log));
  EXPECT_EQ(read("whale.jsonl"), events_jsonl(fixtures::whale_log().log));
  EXPECT_EQ(ingest((data / "events_1000.jsonl").string()).size(), 1000u);
}

TEST(Calendar, Parsing) {
  EXPECT_EQ(format_timestamp(parse_timestamp("2024-02-29T23:59:59Z")), "2024-02-29T23:59:59Z");
  EXPECT_EQ(parse_timestamp("2024-03-01"), Timestamp(parse_date("2024-03-01")));
  EXPECT_THROW(parse_date("2023-02-29"), DomainError);
  EXPECT_THROW(parse_timestamp("2024-01-01T24:00:00Z"), DomainError);
  EXPECT_EQ(parse_duration("1d"), 86400s);
  EXPECT_EQ(parse_duration("12h"), 43200s);
  EXPECT_EQ(parse_duration("90s"), 90s);
  EXPECT_EQ(parse_duration("30"), 30s);
  EXPECT_THROW(parse_duration("-1d"), DomainError);
}

}  // namespace
}  // namespace dpos::store
