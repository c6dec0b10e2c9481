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

// Two-player takeover game. The resisting coalition (power p_r, candidates
// C_l) moves first and spreads its amplified power over its candidates; the
// attacker observes the allocation and buys the least power p_a that still
// wins t seats. Attackers win exact ties.
//
// Closed forms live next to an exhaustive backward-induction solver that
// shares none of their arithmetic: it only knows the realisability rule for
// an allocation (each candidate <= own power, total <= v * own power under
// approval voting, total <= own power under cumulative voting) and the
// election itself.

#ifndef DPOS_TAKEOVER_GAME_HPP_
#define DPOS_TAKEOVER_GAME_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpos/config.hpp"
#include "dpos/error.hpp"
#include "dpos/governance.hpp"
#include "dpos/power.hpp"
#include "dpos/rational.hpp"

namespace dpos::game {

struct Amplification {
  int zeta_a = 1;
  int zeta_r = 1;

  friend bool operator==(const Amplification&, const Amplification&) = default;
};

inline Amplification amplification(const SystemConfig& config) {
  if (config.rule == Rule::Cumulative) return {1, 1};
  return {std::min(config.v, config.t), std::min(config.v, config.blocking_seats())};
}

enum class Side { Attacker, Resister };

struct Strategy {
  Side side = Side::Resister;
  std::vector<Allocation> allocations;

  VotingPower total() const {
    VotingPower sum;
    for (const auto& a : allocations) sum += a.power;
    return sum;
  }
  std::vector<VotingPower> powers() const {
    std::vector<VotingPower> out;
    for (const auto& a : allocations) out.push_back(a.power);
    return out;
  }
};

// "r01".."r21": zero-padded so lexicographic order equals slot order.
inline std::string slot_id(char prefix, int index, int count) {
  std::string digits = std::to_string(index + 1);
  std::size_t width = std::to_string(std::max(count, 1)).size();
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(1, prefix) + digits;
}

// Even split of zeta_r * p_r over n - t + 1 candidates. Remainder units go
// to the earliest slots; no slot exceeds p_r.
inline Strategy resister_strategy(VotingPower p_r, const SystemConfig& config) {
  config.validate();
  const int k = config.blocking_seats();
  if (k < 1) throw ConfigError("n - t + 1 must be >= 1");
  if (p_r.units() < 0) throw DomainError("p_r must be non-negative");
  const auto zeta = amplification(config);
  const std::int64_t budget = zeta.zeta_r * p_r.units();
  const std::int64_t base = budget / k;
  const std::int64_t rem = budget % k;
  Strategy s{Side::Resister, {}};
  for (int i = 0; i < k; ++i) {
    std::int64_t units = std::min(p_r.units(), base + (i < rem ? 1 : 0));
    s.allocations.push_back({slot_id('r', i, k), VotingPower(units)});
  }
  return s;
}

// The (n - t + 1)-th largest allocation, 0 when fewer allocations exist.
inline VotingPower blocking_power(std::vector<VotingPower> allocations,
                                  const SystemConfig& config) {
  const auto k = static_cast<std::size_t>(config.blocking_seats());
  if (allocations.size() < k) return VotingPower(0);
  std::nth_element(allocations.begin(), allocations.begin() + (k - 1), allocations.end(),
                   std::greater<>());
  return allocations[k - 1];
}

struct AttackerResponse {
  Strategy strategy;
  VotingPower p_a;
};

// Match the blocking allocation on exactly t fresh candidates; the attacker
// buys ceil(t * p_block / zeta_a).
inline AttackerResponse attacker_best_response(const Strategy& resister,
                                               const SystemConfig& config) {
  config.validate();
  const VotingPower block = blocking_power(resister.powers(), config);
  const auto zeta = amplification(config);
  AttackerResponse out;
  out.strategy.side = Side::Attacker;
  for (int i = 0; i < config.t; ++i) {
    out.strategy.allocations.push_back({slot_id('a', i, config.t), block});
  }
  out.p_a = VotingPower(ceil_div(config.t * block.units(), zeta.zeta_a));
  return out;
}

// Active resistance as an exact rational: zeta_r t p_r / (zeta_a (n-t+1)).
inline Rational active_resistance_exact(VotingPower p_r, const SystemConfig& config) {
  config.validate();
  const auto zeta = amplification(config);
  return Rational(zeta.zeta_r * config.t * p_r.units(),
                  std::int64_t{zeta.zeta_a} * config.blocking_seats());
}

// Equilibrium value of the quantised game: the attacker's best response to
// the resister's even split. Equals active_resistance_exact whenever
// zeta_r p_r and t p_block divide evenly.
inline VotingPower active_resistance(VotingPower p_r, const SystemConfig& config) {
  return attacker_best_response(resister_strategy(p_r, config), config).p_a;
}

struct UpperBound {
  Rational factor;     // t / (n - t + 1)
  bool supermajority;  // 2n/3 < t < n
  bool attainable;     // v <= n - t + 1
};

inline UpperBound upper_bound_factor(const SystemConfig& config) {
  config.validate();
  return {Rational(config.t, config.blocking_seats()), config.supermajority(),
          config.v <= config.blocking_seats()};
}

// floor(t p_r / (n - t + 1)).
inline VotingPower upper_bound(VotingPower p_r, const SystemConfig& config) {
  return VotingPower(floor(upper_bound_factor(config).factor * p_r.units()));
}

// Both sides are communities coordinating through the fewest "simple"
// calls-to-action: z pools of v votes each, z * v >= seats needed.
struct CommunityResistance {
  VotingPower r_a;
  Rational exact;
  int z_attacker = 0;
  int z_resister = 0;
  int upper_factor = 0;  // ceil(t / (n - t + 1))
};

inline CommunityResistance c2c_resistance(VotingPower p_r, const SystemConfig& config) {
  config.validate();
  if (config.rule != Rule::Approval) {
    throw UnsupportedRuleError(
        "community-to-community resistance is defined for approval voting only");
  }
  CommunityResistance out;
  out.z_attacker = static_cast<int>(ceil_div(config.t, config.v));
  out.z_resister = static_cast<int>(ceil_div(config.blocking_seats(), config.v));
  out.upper_factor = static_cast<int>(ceil_div(config.t, config.blocking_seats()));
  out.exact = Rational(out.z_attacker * p_r.units(), out.z_resister);
  out.r_a = VotingPower(floor(out.exact));
  return out;
}

struct Payoffs {
  std::int64_t resister = 0;  // u_r =  zeta_a p_a
  std::int64_t attacker = 0;  // u_a = -zeta_a p_a
};

struct EquilibriumReport {
  Strategy s_r_hat;
  Strategy s_a_hat;
  VotingPower r_a;
  VotingPower upper_bound;
  Amplification amplification;
  Payoffs payoffs;
  bool at_upper_bound = false;
  std::uint64_t strategies_examined = 0;  // x_r, brute force only
};

inline Payoffs payoffs_for(VotingPower p_a, const Amplification& zeta) {
  return {zeta.zeta_a * p_a.units(), -zeta.zeta_a * p_a.units()};
}

// Equilibrium path from the closed forms.
inline EquilibriumReport equilibrium(VotingPower p_r, const SystemConfig& config) {
  EquilibriumReport r;
  r.s_r_hat = resister_strategy(p_r, config);
  auto response = attacker_best_response(r.s_r_hat, config);
  r.s_a_hat = std::move(response.strategy);
  r.r_a = response.p_a;
  r.amplification = amplification(config);
  r.upper_bound = upper_bound(p_r, config);
  r.payoffs = payoffs_for(r.r_a, r.amplification);
  r.at_upper_bound = r.r_a == r.upper_bound;
  return r;
}

// ------------------------------------------------------------ brute force

// Seats won by the attacker when both sides' candidate powers are known.
// Ties go to the attacker.
inline int attacker_seats(std::vector<std::int64_t> attacker,
                          std::vector<std::int64_t> resister, int n) {
  std::sort(attacker.begin(), attacker.end(), std::greater<>());
  std::sort(resister.begin(), resister.end(), std::greater<>());
  std::size_t i = 0, j = 0;
  int seats = 0;
  for (int seat = 0; seat < n; ++seat) {
    const bool has_a = i < attacker.size();
    const bool has_r = j < resister.size();
    if (!has_a && !has_r) break;
    if (has_a && (!has_r || attacker[i] >= resister[j])) {
      ++seats;
      ++i;
    } else {
      ++j;
    }
  }
  return seats;
}

// Total budget a side with `own` raw power may spread under the rule.
inline std::int64_t allocation_budget(std::int64_t own, const SystemConfig& config) {
  return config.rule == Rule::Approval ? config.v * own : own;
}

namespace detail {

// Visits every non-increasing vector of `len` entries in [0, max_value]
// whose sum is <= sum_cap, in lexicographically ascending order. The
// visitor returns true to stop.
inline bool for_each_nonincreasing(int len, std::int64_t max_value, std::int64_t sum_cap,
                                   const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> buf(static_cast<std::size_t>(len), 0);
  std::function<bool(int, std::int64_t, std::int64_t)> rec =
      [&](int pos, std::int64_t cap_value, std::int64_t remaining) -> bool {
    if (pos == len) return visit(buf);
    const std::int64_t hi = std::min(cap_value, remaining);
    for (std::int64_t x = 0; x <= hi; ++x) {
      buf[static_cast<std::size_t>(pos)] = x;
      if (rec(pos + 1, x, remaining - x)) return true;
    }
    buf[static_cast<std::size_t>(pos)] = 0;
    return false;
  };
  // First slot is the largest, so it takes the full range.
  return rec(0, max_value, sum_cap);
}

// Exact count of the vectors above, saturating at `saturate`; nullopt when
// the counting table would be too large.
inline std::optional<std::uint64_t> count_nonincreasing(int len, std::int64_t max_value,
                                                        std::int64_t sum_cap,
                                                        std::uint64_t saturate) {
  sum_cap = std::min(sum_cap, max_value * len);
  const std::int64_t cells = (max_value + 1) * (sum_cap + 1);
  if (cells > 4'000'000) return std::nullopt;
  const auto w = static_cast<std::size_t>(sum_cap + 1);
  auto at = [w](std::vector<std::uint64_t>& t, std::int64_t m, std::int64_t r) -> std::uint64_t& {
    return t[static_cast<std::size_t>(m) * w + static_cast<std::size_t>(r)];
  };
  // f_s(m, r): sequences of length s, entries <= m, sum <= r.
  std::vector<std::uint64_t> prev(static_cast<std::size_t>(cells), 1);
  std::vector<std::uint64_t> cur(static_cast<std::size_t>(cells), 0);
  for (int s = 1; s <= len; ++s) {
    for (std::int64_t m = 0; m <= max_value; ++m) {
      for (std::int64_t r = 0; r <= sum_cap; ++r) {
        std::uint64_t v = m == 0 ? 0 : at(cur, m - 1, r);
        if (m <= r) {
          const std::uint64_t add = at(prev, m, r - m);
          v = v > saturate - add ? saturate : v + add;
        }
        at(cur, m, r) = std::min(v, saturate);
      }
    }
    std::swap(prev, cur);
  }
  return at(prev, max_value, sum_cap);
}

}  // namespace detail

// Least attacker power winning t seats against a fixed resister
// allocation, found by enumerating every attacker allocation over n
// candidates for p_a = 0, 1, 2, ...
inline std::int64_t brute_force_attacker_power(const std::vector<std::int64_t>& resister,
                                               const SystemConfig& config,
                                               std::vector<std::int64_t>* best_allocation = nullptr) {
  std::int64_t strongest = 0;
  for (auto x : resister) strongest = std::max(strongest, x);
  // t candidates each matching the strongest resister candidate always wins.
  const std::int64_t limit = config.t * strongest;
  for (std::int64_t p_a = 0; p_a <= limit; ++p_a) {
    bool found = detail::for_each_nonincreasing(
        config.n, p_a, allocation_budget(p_a, config), [&](const std::vector<std::int64_t>& a) {
          if (attacker_seats(a, resister, config.n) >= config.t) {
            if (best_allocation != nullptr) *best_allocation = a;
            return true;
          }
          return false;
        });
    if (found) return p_a;
  }
  throw std::logic_error("attacker search exhausted its bound");
}

struct GameInstance {
  SystemConfig config;
  VotingPower p_r;
  std::uint64_t max_strategies = 1'000'000;
};

// Backward induction over every resister pure strategy (non-increasing
// allocations over the n candidates of C_l, which is exhaustive up to
// relabelling). The resister keeps the strategy that maximises the
// attacker's least winning power; ties keep the lexicographically smallest.
inline EquilibriumReport brute_force_equilibrium(const GameInstance& instance) {
  const auto& config = instance.config;
  config.validate();
  const std::int64_t p_r = instance.p_r.units();
  if (p_r < 0) throw DomainError("p_r must be non-negative");
  const std::int64_t budget = allocation_budget(p_r, config);

  std::uint64_t x_r = 0;
  detail::for_each_nonincreasing(config.n, p_r, budget, [&](const std::vector<std::int64_t>&) {
    return ++x_r > instance.max_strategies;
  });
  if (x_r > instance.max_strategies) {
    auto exact = detail::count_nonincreasing(config.n, p_r, budget,
                                             std::numeric_limits<std::uint64_t>::max());
    std::string count = exact ? std::to_string(*exact)
                              : "more than " + std::to_string(instance.max_strategies);
    throw ResourceError("resister strategy count x_r = " + count + " exceeds bound " +
                            std::to_string(instance.max_strategies),
                        exact);
  }

  std::int64_t best_p_a = -1;
  std::vector<std::int64_t> best_resister;
  std::vector<std::int64_t> best_attacker;
  detail::for_each_nonincreasing(config.n, p_r, budget, [&](const std::vector<std::int64_t>& r) {
    std::vector<std::int64_t> attacker;
    std::int64_t p_a = brute_force_attacker_power(r, config, &attacker);
    if (p_a > best_p_a) {
      best_p_a = p_a;
      best_resister = r;
      best_attacker = std::move(attacker);
    }
    return false;
  });

  EquilibriumReport report;
  report.amplification = amplification(config);
  report.strategies_examined = x_r;
  report.r_a = VotingPower(best_p_a);
  report.upper_bound = upper_bound(instance.p_r, config);
  report.payoffs = payoffs_for(report.r_a, report.amplification);
  report.at_upper_bound = report.r_a == report.upper_bound;
  report.s_r_hat.side = Side::Resister;
  report.s_a_hat.side = Side::Attacker;
  for (std::size_t i = 0; i < best_resister.size(); ++i) {
    if (best_resister[i] == 0) continue;
    report.s_r_hat.allocations.push_back(
        {slot_id('r', static_cast<int>(i), config.n), VotingPower(best_resister[i])});
  }
  for (std::size_t i = 0; i < best_attacker.size(); ++i) {
    if (best_attacker[i] == 0) continue;
    report.s_a_hat.allocations.push_back(
        {slot_id('a', static_cast<int>(i), config.n), VotingPower(best_attacker[i])});
  }
  return report;
}

}  // namespace dpos::game

#endif  // DPOS_TAKEOVER_GAME_HPP_
