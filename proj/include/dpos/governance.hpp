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

// The three-phase coin-voting governance model:
//   phase 1  stake / unstake coins into voting power
//   phase 2  liquid-democracy delegation, approval or cumulative tally, and
//            top-n committee election
//   phase 3  proposal adoption with at least t committee approvals

#ifndef DPOS_GOVERNANCE_HPP_
#define DPOS_GOVERNANCE_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dpos/config.hpp"
#include "dpos/error.hpp"
#include "dpos/power.hpp"
#include "dpos/rational.hpp"

namespace dpos {

using PowerMap = std::map<VoterId, VotingPower>;
using ScoreMap = std::map<CandidateId, VotingPower>;

// d_i = j: voter i hands all of its power to j. Voters without an entry, or
// with d_i = i, vote for themselves.
using DelegationProfile = std::map<VoterId, VoterId>;

// Per-voter candidate list in priority order (earliest-supported first).
using ApprovalProfile = std::map<VoterId, std::vector<CandidateId>>;

struct Allocation {
  CandidateId candidate;
  VotingPower power;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

using CumulativeProfile = std::map<VoterId, std::vector<Allocation>>;

struct Seat {
  CandidateId candidate;
  VotingPower power;

  friend bool operator==(const Seat&, const Seat&) = default;
};

// Election outcome: seats sorted by received power, tau = sum of seat power.
struct Committee {
  std::vector<Seat> seats;
  VotingPower tau;

  bool contains(const CandidateId& c) const {
    return std::any_of(seats.begin(), seats.end(),
                       [&](const Seat& s) { return s.candidate == c; });
  }
  std::size_t size() const { return seats.size(); }

  friend bool operator==(const Committee&, const Committee&) = default;
};

// Raw inputs of one election day.
struct VotingState {
  PowerMap powers;
  DelegationProfile delegations;
  ApprovalProfile approvals;
  CumulativeProfile allocations;
};

// ---------------------------------------------------------------- phase 1

inline VotingPower stake(const Rational& coins, const Rational& lambda) {
  if (coins < 0) throw DomainError("cannot stake a negative coin amount");
  if (lambda <= 0) throw DomainError("lambda must be positive");
  return VotingPower(floor(coins * lambda));
}

inline Rational unstake(VotingPower power, const Rational& lambda) {
  if (power.units() < 0) throw DomainError("cannot unstake negative power");
  if (lambda <= 0) throw DomainError("lambda must be positive");
  return Rational(power.units()) / lambda;
}

// ---------------------------------------------------------------- phase 2

// Liquid democracy: folds every delegation chain into its root (guru).
// Delegating voters are absent from the result; total power is conserved.
inline PowerMap resolve_delegations(const PowerMap& powers,
                                    const DelegationProfile& delegations) {
  for (const auto& [voter, target] : delegations) {
    if (!powers.contains(voter)) {
      throw ValidationError("delegating voter '" + voter + "' has no power entry");
    }
    if (!powers.contains(target)) {
      throw ValidationError("voter '" + voter + "' delegates to unknown voter '" +
                            target + "'");
    }
  }
  auto next = [&](const VoterId& v) -> const VoterId* {
    auto it = delegations.find(v);
    if (it == delegations.end() || it->second == v) return nullptr;
    return &it->second;
  };

  std::map<VoterId, VoterId> root_of;
  for (const auto& [voter, _] : powers) {
    if (root_of.contains(voter)) continue;
    std::vector<VoterId> path;
    std::set<VoterId> on_path;
    VoterId cur = voter;
    VoterId root;
    while (true) {
      if (auto it = root_of.find(cur); it != root_of.end()) {
        root = it->second;
        break;
      }
      if (on_path.contains(cur)) {
        auto first = std::find(path.begin(), path.end(), cur);
        std::string members;
        for (auto it = first; it != path.end(); ++it) {
          if (!members.empty()) members += " -> ";
          members += *it;
        }
        throw ValidationError("delegation cycle: " + members + " -> " + cur);
      }
      path.push_back(cur);
      on_path.insert(cur);
      const VoterId* n = next(cur);
      if (n == nullptr) {
        root = cur;
        break;
      }
      cur = *n;
    }
    for (const auto& p : path) root_of[p] = root;
  }

  PowerMap gurus;
  for (const auto& [voter, power] : powers) {
    gurus[root_of.at(voter)] += power;
  }
  return gurus;
}

// Each listed candidate receives the voter's full aggregated power.
inline ScoreMap tally_approval(const PowerMap& gurus, const ApprovalProfile& profile,
                               const SystemConfig& config) {
  ScoreMap scores;
  for (const auto& [voter, candidates] : profile) {
    auto it = gurus.find(voter);
    if (it == gurus.end()) {
      throw ValidationError("approval profile references unknown voter '" + voter + "'");
    }
    if (candidates.size() > static_cast<std::size_t>(config.v)) {
      throw ValidationError("voter '" + voter + "' lists " +
                            std::to_string(candidates.size()) + " candidates, max is " +
                            std::to_string(config.v));
    }
    std::set<CandidateId> seen;
    for (const auto& c : candidates) {
      if (!seen.insert(c).second) {
        throw ValidationError("voter '" + voter + "' lists candidate '" + c + "' twice");
      }
      scores[c] += it->second;
    }
  }
  return scores;
}

// Each candidate receives exactly the share allocated to it.
inline ScoreMap tally_cumulative(const PowerMap& gurus, const CumulativeProfile& profile,
                                 const SystemConfig& config) {
  ScoreMap scores;
  for (const auto& [voter, allocations] : profile) {
    auto it = gurus.find(voter);
    if (it == gurus.end()) {
      throw ValidationError("cumulative profile references unknown voter '" + voter + "'");
    }
    if (allocations.size() > static_cast<std::size_t>(config.v)) {
      throw ValidationError("voter '" + voter + "' allocates to " +
                            std::to_string(allocations.size()) + " candidates, max is " +
                            std::to_string(config.v));
    }
    std::set<CandidateId> seen;
    VotingPower sum;
    for (const auto& a : allocations) {
      if (a.power.units() < 0) {
        throw ValidationError("voter '" + voter + "' allocates negative power");
      }
      if (!seen.insert(a.candidate).second) {
        throw ValidationError("voter '" + voter + "' allocates to '" + a.candidate +
                              "' twice");
      }
      sum += a.power;
    }
    if (sum > it->second) {
      throw ValidationError("voter '" + voter + "' allocates " + to_string(sum) +
                            ", exceeding power " + to_string(it->second) + " by " +
                            to_string(sum - it->second));
    }
    for (const auto& a : allocations) scores[a.candidate] += a.power;
  }
  return scores;
}

inline ScoreMap tally(const PowerMap& gurus, const VotingState& state,
                      const SystemConfig& config) {
  return config.rule == Rule::Approval ? tally_approval(gurus, state.approvals, config)
                                       : tally_cumulative(gurus, state.allocations, config);
}

// Full ranking: score descending, then candidate id ascending.
inline std::vector<Seat> rank_candidates(const ScoreMap& scores) {
  std::vector<Seat> ranking;
  ranking.reserve(scores.size());
  for (const auto& [c, p] : scores) ranking.push_back({c, p});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const Seat& a, const Seat& b) { return a.power > b.power; });
  return ranking;
}

inline Committee elect(const ScoreMap& scores, const SystemConfig& config) {
  auto ranking = rank_candidates(scores);
  if (ranking.size() > static_cast<std::size_t>(config.n)) {
    ranking.resize(static_cast<std::size_t>(config.n));
  }
  Committee committee;
  for (const auto& s : ranking) committee.tau += s.power;
  committee.seats = std::move(ranking);
  return committee;
}

// Delegation resolution, tally and election in one call.
inline Committee elect(const VotingState& state, const SystemConfig& config) {
  return elect(tally(resolve_delegations(state.powers, state.delegations), state, config),
               config);
}

// ---------------------------------------------------------------- phase 3

inline bool passes(const std::set<CandidateId>& approvals, const Committee& committee,
                   const SystemConfig& config) {
  std::int64_t members = 0;
  for (const auto& c : approvals) {
    if (committee.contains(c)) ++members;
  }
  return members >= config.t;
}

}  // namespace dpos

#endif  // DPOS_GOVERNANCE_HPP_
