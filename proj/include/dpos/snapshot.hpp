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

#ifndef DPOS_SNAPSHOT_HPP_
#define DPOS_SNAPSHOT_HPP_

#include <map>
#include <vector>

#include "dpos/calendar.hpp"
#include "dpos/governance.hpp"

namespace dpos {

// End-of-day <voter, voting power> pairs. Powers are delegation-resolved:
// each entry is the voter's own power plus everything delegated to it, and
// voters who delegate away are absent.
struct PowerSnapshot {
  Date date;
  PowerMap powers;

  VotingPower total() const {
    VotingPower sum;
    for (const auto& [_, p] : powers) sum += p;
    return sum;
  }

  friend bool operator==(const PowerSnapshot&, const PowerSnapshot&) = default;
};

// End-of-day <voter, candidates> pairs, candidates in priority order.
struct VotingSnapshot {
  Date date;
  ApprovalProfile profiles;

  friend bool operator==(const VotingSnapshot&, const VotingSnapshot&) = default;
};

}  // namespace dpos

#endif  // DPOS_SNAPSHOT_HPP_
