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

#ifndef DPOS_POWER_HPP_
#define DPOS_POWER_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace dpos {

using VoterId = std::string;
using CandidateId = std::string;

// A non-negative count of delta units. Every voting-power quantity in the
// library is one of these; there is no floating-point power anywhere.
class VotingPower {
 public:
  constexpr VotingPower() = default;
  constexpr explicit VotingPower(std::int64_t units) : units_(units) {}

  constexpr std::int64_t units() const { return units_; }

  constexpr VotingPower& operator+=(VotingPower o) {
    units_ += o.units_;
    return *this;
  }
  constexpr VotingPower& operator-=(VotingPower o) {
    units_ -= o.units_;
    return *this;
  }
  friend constexpr VotingPower operator+(VotingPower a, VotingPower b) {
    return VotingPower(a.units_ + b.units_);
  }
  friend constexpr VotingPower operator-(VotingPower a, VotingPower b) {
    return VotingPower(a.units_ - b.units_);
  }
  friend constexpr VotingPower operator*(std::int64_t k, VotingPower p) {
    return VotingPower(k * p.units_);
  }
  friend constexpr VotingPower operator*(VotingPower p, std::int64_t k) {
    return VotingPower(k * p.units_);
  }

  friend constexpr auto operator<=>(VotingPower, VotingPower) = default;

  friend std::ostream& operator<<(std::ostream& os, VotingPower p) {
    return os << p.units_;
  }

 private:
  std::int64_t units_ = 0;
};

inline std::string to_string(VotingPower p) { return std::to_string(p.units()); }

}  // namespace dpos

#endif  // DPOS_POWER_HPP_
