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

// Re-runs a chain's history under alternative voting systems. Every voter
// follows the same heuristics: approval voters withdraw their most recent
// votes first when v shrinks, approval voters moving to cumulative voting
// split their power evenly, and cumulative voters moving to approval voting
// give every vote their full power.

#ifndef DPOS_PREFERENCE_SIM_HPP_
#define DPOS_PREFERENCE_SIM_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dpos/config.hpp"
#include "dpos/conversion.hpp"
#include "dpos/error.hpp"
#include "dpos/governance.hpp"
#include "dpos/resistance.hpp"
#include "dpos/snapshot.hpp"

namespace dpos::sim {

struct DesignChoice {
  Rule rule = Rule::Approval;
  int v = 30;

  // "(AV,k)" or "CV"
  std::string name() const {
    if (rule == Rule::Cumulative) return "CV";
    return "(AV," + std::to_string(v) + ")";
  }

  friend bool operator==(const DesignChoice&, const DesignChoice&) = default;
};

// Accepts "(AV,3)", "AV3", "av:3" and "CV".
inline DesignChoice parse_choice(std::string text) {
  std::string s;
  for (char c : text) {
    if (c == '(' || c == ')' || c == ',' || c == ':' || c == ' ') continue;
    s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (s == "CV") return {Rule::Cumulative, 30};
  if (s.size() > 2 && s.substr(0, 2) == "AV") {
    try {
      std::size_t used = 0;
      int v = std::stoi(s.substr(2), &used);
      if (used == s.size() - 2 && v >= 1) return {Rule::Approval, v};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown design choice '" + text + "'");
}

// (AV,1) .. (AV,max_v) followed by CV.
inline std::vector<DesignChoice> standard_choices(int max_v = 30) {
  std::vector<DesignChoice> out;
  for (int k = 1; k <= max_v; ++k) out.push_back({Rule::Approval, k});
  out.push_back({Rule::Cumulative, max_v});
  return out;
}

inline SystemConfig config_for(const SystemConfig& base, const DesignChoice& choice) {
  SystemConfig c = base;
  c.rule = choice.rule;
  c.v = choice.v;
  return c;
}

// Scores for one day after applying a design choice to the chain's
// observed votes.
inline ScoreMap simulate_day(const PowerSnapshot& power, const VotingSnapshot& voting,
                             const SystemConfig& base, const DesignChoice& choice) {
  const SystemConfig cfg = config_for(base, choice);
  ApprovalProfile vectors;
  for (const auto& [voter, list] : voting.profiles) {
    auto it = power.powers.find(voter);
    if (it == power.powers.end()) {
      throw ValidationError("voting snapshot references unknown voter '" + voter + "'");
    }
    PriorityVector vec = list;
    if (base.rule == Rule::Cumulative) vec = cv_to_av(av_to_cv(list, it->second));
    vectors[voter] = withdraw_votes(vec, choice.v);
  }
  if (choice.rule == Rule::Approval) return tally_approval(power.powers, vectors, cfg);
  CumulativeProfile profile;
  for (const auto& [voter, vec] : vectors) profile[voter] = av_to_cv(vec, power.powers.at(voter));
  return tally_cumulative(power.powers, profile, cfg);
}

struct DecayPoint {
  Date date;
  VotingPower p_block;
  VotingPower r_p;
  metrics::RiskIndex i_t;
};

struct DecayCurve {
  std::vector<DesignChoice> choices;
  std::vector<Date> dates;
  std::vector<std::vector<DecayPoint>> series;  // [choice][day]

  const std::vector<DecayPoint>& of(const DesignChoice& c) const {
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (choices[i] == c) return series[i];
    }
    throw LookupError("design choice " + c.name() + " is not part of the curve");
  }
};

inline DecayCurve simulate_design_grid(std::span<const PowerSnapshot> power,
                                       std::span<const VotingSnapshot> voting,
                                       const SystemConfig& base,
                                       const std::vector<DesignChoice>& choices) {
  base.validate();
  if (power.size() != voting.size()) {
    throw ValidationError("power and voting snapshot series differ in length");
  }
  DecayCurve curve;
  curve.choices = choices;
  for (std::size_t d = 0; d < power.size(); ++d) {
    if (power[d].date != voting[d].date) {
      throw ValidationError("power and voting snapshots disagree on dates at " +
                            format_date(power[d].date));
    }
    curve.dates.push_back(power[d].date);
  }
  curve.series.resize(choices.size());
  for (std::size_t c = 0; c < choices.size(); ++c) {
    const SystemConfig cfg = config_for(base, choices[c]);
    cfg.validate();
    for (std::size_t d = 0; d < power.size(); ++d) {
      ScoreMap scores = simulate_day(power[d], voting[d], base, choices[c]);
      DecayPoint p{power[d].date, metrics::blocking_score(scores, cfg), {}, {}};
      p.r_p = metrics::passive_resistance(scores, cfg);
      p.i_t = metrics::risk_index(power[d], p.r_p);
      curve.series[c].push_back(p);
    }
  }
  return curve;
}

enum class Relation { Better, SlightlyBetter, Same };

inline std::string_view symbol(Relation r) {
  switch (r) {
    case Relation::Better: return ">";
    case Relation::SlightlyBetter: return "≥";
    case Relation::Same: return "≈";
  }
  return "?";
}

struct RankedChoice {
  DesignChoice choice;
  double mean_r_p = 0.0;
};

struct Ranking {
  std::vector<RankedChoice> order;  // best first
  std::vector<Relation> relations;  // relations[i] links order[i] and order[i+1]

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0) s += " " + std::string(symbol(relations[i - 1])) + " ";
      s += order[i].choice.name();
    }
    return s;
  }
};

// Relative gap between two adjacent means, measured against the larger.
inline Relation relation_for(double hi, double lo, double tolerance) {
  if (hi <= 0.0) return Relation::Same;
  const double gap = (hi - lo) / hi;
  if (gap <= tolerance) return Relation::Same;
  if (gap <= 2.0 * tolerance) return Relation::SlightlyBetter;
  return Relation::Better;
}

// Orders design choices by mean daily R_P, best first. Equal means keep the
// curve's choice order.
inline Ranking rank_choices(const DecayCurve& curve, double tolerance = 0.02) {
  if (curve.dates.empty()) throw ValidationError("cannot rank an empty decay curve");
  Ranking r;
  for (std::size_t c = 0; c < curve.choices.size(); ++c) {
    long double sum = 0;
    for (const auto& p : curve.series[c]) sum += static_cast<long double>(p.r_p.units());
    r.order.push_back({curve.choices[c],
                       static_cast<double>(sum / static_cast<long double>(curve.series[c].size()))});
  }
  std::stable_sort(r.order.begin(), r.order.end(),
                   [](const RankedChoice& a, const RankedChoice& b) { return a.mean_r_p > b.mean_r_p; });
  for (std::size_t i = 0; i + 1 < r.order.size(); ++i) {
    r.relations.push_back(relation_for(r.order[i].mean_r_p, r.order[i + 1].mean_r_p, tolerance));
  }
  return r;
}

struct CandidateBreakdown {
  CandidateId candidate;
  VotingPower total;
  std::vector<VotingPower> segments;  // segments[i]: power from voters ranking it at priority i+1
};

// Splits each top-k candidate's approval score by the priority voters
// assign to it.
inline std::vector<CandidateBreakdown> priority_breakdown(const PowerSnapshot& power,
                                                          const VotingSnapshot& voting,
                                                          int top_k) {
  if (top_k < 1) throw DomainError("top_k must be >= 1");
  std::size_t depth = 0;
  for (const auto& [_, list] : voting.profiles) depth = std::max(depth, list.size());
  std::map<CandidateId, CandidateBreakdown> all;
  for (const auto& [voter, list] : voting.profiles) {
    auto it = power.powers.find(voter);
    if (it == power.powers.end()) {
      throw ValidationError("voting snapshot references unknown voter '" + voter + "'");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto& b = all[list[i]];
      b.candidate = list[i];
      b.segments.resize(depth);
      b.segments[i] += it->second;
      b.total += it->second;
    }
  }
  std::vector<CandidateBreakdown> out;
  for (auto& [_, b] : all) out.push_back(std::move(b));
  std::stable_sort(out.begin(), out.end(), [](const CandidateBreakdown& a, const CandidateBreakdown& b) {
    return a.total > b.total;
  });
  if (out.size() > static_cast<std::size_t>(top_k)) out.resize(static_cast<std::size_t>(top_k));
  return out;
}

}  // namespace dpos::sim

#endif  // DPOS_PREFERENCE_SIM_HPP_
