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

// Voter-behaviour heuristics used when a chain switches voting system.

#ifndef DPOS_CONVERSION_HPP_
#define DPOS_CONVERSION_HPP_

#include <algorithm>
#include <vector>

#include "dpos/error.hpp"
#include "dpos/governance.hpp"

namespace dpos::sim {

// Candidates in the order the voter first backed them.
using PriorityVector = std::vector<CandidateId>;

// Keeps the first v_new entries: the most recently added candidates are
// withdrawn first.
inline PriorityVector withdraw_votes(const PriorityVector& vector, int v_new) {
  if (v_new < 1) throw DomainError("v_new must be >= 1");
  auto keep = std::min(vector.size(), static_cast<std::size_t>(v_new));
  return PriorityVector(vector.begin(), vector.begin() + static_cast<std::ptrdiff_t>(keep));
}

// Even split of the voter's power; remainder units go to the earliest
// candidates so the allocations always sum to `power`.
inline std::vector<Allocation> av_to_cv(const PriorityVector& vector, VotingPower power) {
  if (vector.empty()) throw ValidationError("cannot split power over an empty candidate list");
  const auto len = static_cast<std::int64_t>(vector.size());
  const std::int64_t base = power.units() / len;
  const std::int64_t rem = power.units() % len;
  std::vector<Allocation> out;
  out.reserve(vector.size());
  for (std::int64_t i = 0; i < len; ++i) {
    out.push_back({vector[static_cast<std::size_t>(i)], VotingPower(base + (i < rem ? 1 : 0))});
  }
  return out;
}

// Drops the weights. Unallocated residual power is ignored; the approval
// tally weights every listed candidate with the voter's full power.
inline PriorityVector cv_to_av(const std::vector<Allocation>& allocations) {
  PriorityVector out;
  out.reserve(allocations.size());
  for (const auto& a : allocations) out.push_back(a.candidate);
  return out;
}

}  // namespace dpos::sim

#endif  // DPOS_CONVERSION_HPP_
