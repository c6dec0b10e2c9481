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

#ifndef DPOS_CONFIG_HPP_
#define DPOS_CONFIG_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "dpos/error.hpp"
#include "dpos/rational.hpp"

namespace dpos {

enum class Rule { Approval, Cumulative };

inline std::string_view to_string(Rule rule) {
  return rule == Rule::Approval ? "AV" : "CV";
}

inline Rule parse_rule(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "av" || s == "approval") return Rule::Approval;
  if (s == "cv" || s == "cumulative") return Rule::Cumulative;
  throw ConfigError("unknown voting rule '" + std::string(text) + "'");
}

// One governance design choice: voting rule plus (v, t, n, lambda, delta).
//   v      MaxVote, distinct candidates a voter may back
//   n      CmteSize, committee seats
//   t      MinApprov, approvals a proposal needs
//   lambda voting-power units minted per staked coin
//   delta  size of one power unit; all VotingPower values count deltas
struct SystemConfig {
  Rule rule = Rule::Approval;
  int v = 1;
  int n = 1;
  int t = 1;
  Rational lambda{1};
  std::int64_t delta = 1;

  void validate() const {
    if (v < 1) throw ConfigError("v must be >= 1, got " + std::to_string(v));
    if (n < 1) throw ConfigError("n must be >= 1, got " + std::to_string(n));
    if (t < 1 || t > n) {
      throw ConfigError("t must satisfy 1 <= t <= n, got t=" + std::to_string(t) +
                        " n=" + std::to_string(n));
    }
    if (lambda <= 0) throw ConfigError("lambda must be positive");
    if (delta < 1) throw ConfigError("delta must be >= 1");
  }

  // 2n/3 < t < n. Reported, never enforced.
  bool supermajority() const { return 2 * n < 3 * t && t < n; }

  // Seats the resisting side must hold to block a takeover: n - t + 1.
  int blocking_seats() const { return n - t + 1; }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct Preset {
  std::string_view name;
  SystemConfig config;
};

// Steem elects 20 seats; the rotating 21st seat is not modelled.
inline const std::array<Preset, 3>& presets() {
  static const std::array<Preset, 3> kPresets = {{
      {"eosio", SystemConfig{Rule::Approval, 30, 21, 15, Rational(1), 1}},
      {"steem", SystemConfig{Rule::Approval, 30, 20, 17, Rational(2000), 1}},
      {"tron", SystemConfig{Rule::Cumulative, 30, 27, 19, Rational(1), 1}},
  }};
  return kPresets;
}

inline SystemConfig preset(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (const auto& p : presets()) {
    if (p.name == s) return p.config;
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (expected eosio, steem or tron)");
}

inline std::string describe(const SystemConfig& c) {
  return "rule=" + std::string(to_string(c.rule)) + " v=" + std::to_string(c.v) +
         " t=" + std::to_string(c.t) + " n=" + std::to_string(c.n) +
         " lambda=" + to_decimal_string(c.lambda) + " delta=" + std::to_string(c.delta);
}

}  // namespace dpos

#endif  // DPOS_CONFIG_HPP_
