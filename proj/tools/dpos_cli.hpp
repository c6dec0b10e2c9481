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

// Command-line front end. Exit codes: 0 success, 1 oracle mismatch,
// 2 input or validation error, 3 enumeration bound exceeded.

#ifndef DPOS_TOOLS_DPOS_CLI_HPP_
#define DPOS_TOOLS_DPOS_CLI_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dpos/dpos.hpp"

namespace dpos::cli {

using ojson = nlohmann::ordered_json;

enum class Format { Table, Csv, Json };

struct GlobalOptions {
  std::string preset;
  std::string rule;
  std::optional<int> v, t, n;
  std::optional<std::int64_t> delta;
  std::string lambda;
  std::string format = "table";
  std::string out_dir;
};

struct DataOptions {
  std::string events;
  std::string dataset;
  std::string chain = "chain";
  bool sort = false;
  std::string from;
  std::string to;
};

// Resolved settings for one run; printed in the run header.
struct RunConfig {
  std::string subcommand;
  std::string preset;
  SystemConfig config;
  Format format = Format::Table;
  std::string out_dir;
  std::vector<std::pair<std::string, std::string>> extras;

  std::string header() const {
    std::string h = "# dpos " + subcommand;
    if (!preset.empty()) h += " preset=" + preset;
    h += " " + describe(config);
    for (const auto& [k, v] : extras) h += " " + k + "=" + v;
    return h;
  }
  ojson header_json() const {
    ojson j;
    j["subcommand"] = subcommand;
    j["preset"] = preset;
    j["config"] = store::config_json(config);
    for (const auto& [k, v] : extras) j[k] = v;
    return j;
  }
};

namespace detail {

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("unknown format '" + s + "' (expected table, csv or json)");
}

inline RunConfig resolve(const std::string& subcommand, const GlobalOptions& g) {
  RunConfig rc;
  rc.subcommand = subcommand;
  rc.format = parse_format(g.format);
  rc.out_dir = g.out_dir;
  if (!g.preset.empty()) {
    rc.config = preset(g.preset);
    rc.preset = g.preset;
    std::transform(rc.preset.begin(), rc.preset.end(), rc.preset.begin(),
                   [](unsigned char c) { return std::tolower(c); });
  } else if (g.rule.empty() || !g.v || !g.t || !g.n) {
    throw ConfigError("specify --preset or all of --rule, --v, --t and --n");
  }
  if (!g.rule.empty()) rc.config.rule = parse_rule(g.rule);
  if (g.v) rc.config.v = *g.v;
  if (g.t) rc.config.t = *g.t;
  if (g.n) rc.config.n = *g.n;
  if (g.delta) rc.config.delta = *g.delta;
  if (!g.lambda.empty()) rc.config.lambda = parse_decimal(g.lambda);
  rc.config.validate();
  return rc;
}

inline std::string cell_text(const ojson& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;

  void render_table(std::ostream& os) const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], cell_text(r[c]).size());
    }
    auto line = [&](auto get) {
      std::string s;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string cell = get(c);
        if (c + 1 < columns.size()) cell.resize(width[c] + 2, ' ');
        s += cell;
      }
      os << s << '\n';
    };
    line([&](std::size_t c) { return columns[c]; });
    for (const auto& r : rows) line([&](std::size_t c) { return cell_text(r[c]); });
  }

  void render_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        std::string s = cell_text(r[c]);
        if (s.find_first_of(",\"\n") != std::string::npos) {
          std::string q = "\"";
          for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          s = q + "\"";
        }
        os << (c ? "," : "") << s;
      }
      os << '\n';
    }
  }

  ojson to_json() const {
    ojson arr = ojson::array();
    for (const auto& r : rows) {
      ojson o;
      for (std::size_t c = 0; c < columns.size(); ++c) o[columns[c]] = r[c];
      arr.push_back(o);
    }
    return arr;
  }
};

inline void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write '" + (std::filesystem::path(dir) / name).string() + "'");
  f << body;
}

// Writes a table into --out (csv, or json when --format json) and renders
// it on stdout in the requested format.
inline void emit(const RunConfig& rc, std::ostream& out, const std::string& name, const Table& table,
                 ojson* json_doc) {
  if (!rc.out_dir.empty()) {
    std::ostringstream body;
    if (rc.format == Format::Json) {
      body << table.to_json().dump(2) << '\n';
      write_file(rc.out_dir, name + ".json", body.str());
    } else {
      table.render_csv(body);
      write_file(rc.out_dir, name + ".csv", body.str());
    }
  }
  switch (rc.format) {
    case Format::Table: table.render_table(out); break;
    case Format::Csv: table.render_csv(out); break;
    case Format::Json: (*json_doc)[name] = table.to_json(); break;
  }
}

inline store::ChainDataset load_data(const RunConfig& rc, const DataOptions& d) {
  if (d.events.empty() == d.dataset.empty()) {
    throw ConfigError("specify exactly one of --events or --dataset");
  }
  store::ChainDataset ds;
  if (!d.dataset.empty()) {
    ds = store::load(d.dataset, d.chain);
    // Explicit flags decide the analysis config; the stored one is ignored.
    ds.config = rc.config;
  } else {
    store::ReplayOptions opt;
    opt.chain = d.chain;
    opt.preset = rc.preset;
    auto log = store::ingest(d.events, d.sort);
    ds = store::replay(log, rc.config, opt);
  }
  if (!d.from.empty() || !d.to.empty()) {
    if (!ds.range) throw LookupError("dataset is empty; no dates to select");
    Date first = d.from.empty() ? ds.range->first : parse_date(d.from);
    Date last = d.to.empty() ? ds.range->last : parse_date(d.to);
    if (!ds.range->contains(first) || !ds.range->contains(last) || last < first) {
      throw LookupError("requested range " + format_date(first) + ".." + format_date(last) +
                        " is outside the dataset range " + format_date(ds.range->first) + ".." +
                        format_date(ds.range->last));
    }
    auto a = static_cast<std::ptrdiff_t>((first - ds.range->first).count());
    auto b = static_cast<std::ptrdiff_t>((last - ds.range->first).count()) + 1;
    ds.power = {ds.power.begin() + a, ds.power.begin() + b};
    ds.voting = {ds.voting.begin() + a, ds.voting.begin() + b};
    ds.range = store::DateRange{first, last};
  }
  return ds;
}

inline ojson power_json(VotingPower p) { return p.units(); }

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == ';') && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string strategy_text(const game::Strategy& s) {
  std::string out;
  for (const auto& a : s.allocations) {
    if (!out.empty()) out += " ";
    out += a.candidate + ":" + to_string(a.power);
  }
  return out.empty() ? "-" : out;
}

inline ojson strategy_json(const game::Strategy& s) {
  ojson arr = ojson::array();
  for (const auto& a : s.allocations) arr.push_back({{"candidate", a.candidate}, {"power", a.power.units()}});
  return arr;
}

}  // namespace detail

// --------------------------------------------------------------- commands

inline int cmd_elect(const RunConfig& rc, const DataOptions& d, const std::string& date,
                     std::ostream& out) {
  auto ds = detail::load_data(rc, d);
  ojson doc;
  doc["run"] = rc.header_json();
  if (rc.format != Format::Json) out << rc.header() << '\n';
  detail::Table table{{"rank", "candidate", "power"}, {}};
  Committee committee;
  std::string day = "-";
  if (ds.range) {
    Date when = date.empty() ? ds.range->last : parse_date(date);
    auto view = store::query(ds, when);
    committee = elect(metrics::snapshot_scores(view.power, view.voting, rc.config), rc.config);
    day = format_date(when);
  } else if (!date.empty()) {
    throw LookupError("date " + date + " is outside the (empty) dataset");
  }
  for (std::size_t i = 0; i < committee.seats.size(); ++i) {
    table.rows.push_back({static_cast<std::int64_t>(i + 1), committee.seats[i].candidate,
                          committee.seats[i].power.units()});
  }
  if (rc.format == Format::Table) out << "date " << day << '\n';
  doc["date"] = day;
  detail::emit(rc, out, "committee", table, &doc);
  if (rc.format == Format::Table) out << "tau " << committee.tau << '\n';
  doc["tau"] = committee.tau.units();
  if (rc.format == Format::Json) out << doc.dump(2) << '\n';
  return 0;
}

struct GameOptions {
  std::int64_t p_r = 0;
  bool c2c = false;
  bool oracle = false;
  std::uint64_t max_strategies = 1'000'000;
};

inline int cmd_game(const RunConfig& rc, const GameOptions& g, std::ostream& out) {
  const auto& cfg = rc.config;
  const VotingPower p_r(g.p_r);
  if (g.p_r < 0) throw DomainError("--pr must be non-negative");
  ojson doc;
  doc["run"] = rc.header_json();
  std::vector<std::pair<std::string, ojson>> lines;
  auto add = [&](const std::string& k, ojson v) { lines.emplace_back(k, std::move(v)); };

  const auto report = game::equilibrium(p_r, cfg);
  const auto bound = game::upper_bound_factor(cfg);
  add("p_r", g.p_r);
  add("zeta_a", report.amplification.zeta_a);
  add("zeta_r", report.amplification.zeta_r);
  add("s_r_hat", detail::strategy_text(report.s_r_hat));
  add("s_a_hat", detail::strategy_text(report.s_a_hat));
  add("upper_factor", to_fraction_string(bound.factor) + " = " + to_fixed_string(bound.factor));
  add("upper_bound", report.upper_bound.units());
  add("supermajority", bound.supermajority ? "yes" : "no");
  add("v_attains_bound", bound.attainable ? "yes" : "no");
  int code = 0;
  if (g.c2c) {
    const auto c = game::c2c_resistance(p_r, cfg);
    add("z_attacker", c.z_attacker);
    add("z_resister", c.z_resister);
    add("c2c_exact", to_fraction_string(c.exact) + " = " + to_fixed_string(c.exact));
    add("c2c_upper_factor", c.upper_factor);
    add("c2c_upper_bound", c.upper_factor * g.p_r);
    add("R_A", c.r_a.units());
    add("at_upper_bound", c.r_a.units() == c.upper_factor * g.p_r ? "yes" : "no");
  } else {
    const auto exact = game::active_resistance_exact(p_r, cfg);
    add("R_A_exact", to_fraction_string(exact) + " = " + to_fixed_string(exact));
    add("R_A", report.r_a.units());
    add("at_upper_bound", report.at_upper_bound ? "yes" : "no");
    add("payoffs", "u_r=" + std::to_string(report.payoffs.resister) +
                       " u_a=" + std::to_string(report.payoffs.attacker));
  }
  std::string oracle_line;
  if (g.oracle) {
    auto bf = game::brute_force_equilibrium({cfg, p_r, g.max_strategies});
    const bool match = bf.r_a == report.r_a;
    oracle_line = match ? "oracle: MATCH, R_A = " + to_string(bf.r_a)
                        : "oracle: MISMATCH, brute force R_A = " + to_string(bf.r_a) +
                              ", closed form R_A = " + to_string(report.r_a);
    doc["oracle"] = {{"match", match},
                     {"R_A", bf.r_a.units()},
                     {"strategies", bf.strategies_examined},
                     {"s_r_hat", detail::strategy_json(bf.s_r_hat)}};
    if (!match) code = 1;
  }
  if (rc.format == Format::Json) {
    for (auto& [k, v] : lines) doc[k] = v;
    out << doc.dump(2) << '\n';
  } else if (rc.format == Format::Csv) {
    out << rc.header() << '\n' << "key,value\n";
    for (auto& [k, v] : lines) out << k << ',' << detail::cell_text(v) << '\n';
    if (!oracle_line.empty()) out << "# " << oracle_line << '\n';
  } else {
    out << rc.header() << '\n';
    std::size_t w = 0;
    for (auto& [k, _] : lines) w = std::max(w, k.size());
    for (auto& [k, v] : lines) {
      std::string key = k;
      key.resize(w, ' ');
      out << key << " = " << detail::cell_text(v) << '\n';
    }
    if (!oracle_line.empty()) out << oracle_line << '\n';
  }
  return code;
}

inline int cmd_resist(const RunConfig& rc, const DataOptions& d, std::ostream& out) {
  auto ds = detail::load_data(rc, d);
  auto series = metrics::resistance_series(ds.power, ds.voting, rc.config);
  ojson doc;
  doc["run"] = rc.header_json();
  if (rc.format != Format::Json) out << rc.header() << '\n';
  detail::Table table{{"date", "p_block", "R_P", "I_t", "reachable"}, {}};
  std::vector<std::string> alerts;
  for (const auto& s : series) {
    table.rows.push_back({format_date(s.date), s.p_block.units(), s.r_p.units(), s.i_t.value,
                          s.i_t.reachable ? "yes" : "no"});
    if (s.i_t.reachable && s.i_t.value == 1) {
      alerts.push_back("ALERT " + format_date(s.date) + " I_t=1 (one voter alone reaches R_P=" +
                       to_string(s.r_p) + ")");
    }
  }
  detail::emit(rc, out, "resist", table, &doc);
  if (rc.format == Format::Json) {
    doc["alerts"] = alerts;
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& a : alerts) out << (rc.format == Format::Csv ? "# " : "") << a << '\n';
  }
  return 0;
}

inline int cmd_decay(const RunConfig& rc, const DataOptions& d, const std::string& choices_arg,
                     double tolerance, std::ostream& out) {
  auto ds = detail::load_data(rc, d);
  std::vector<sim::DesignChoice> choices;
  if (choices_arg.empty() || choices_arg == "all") {
    choices = sim::standard_choices(30);
  } else {
    for (const auto& c : detail::split_list(choices_arg)) choices.push_back(sim::parse_choice(c));
  }
  for (const auto& c : choices) sim::config_for(rc.config, c).validate();
  auto curve = sim::simulate_design_grid(ds.power, ds.voting, rc.config, choices);
  ojson doc;
  doc["run"] = rc.header_json();
  if (rc.format != Format::Json) out << rc.header() << '\n';

  detail::Table longform{{"choice", "date", "metric", "value"}, {}};
  for (std::size_t c = 0; c < curve.choices.size(); ++c) {
    for (const auto& p : curve.series[c]) {
      const auto name = curve.choices[c].name();
      const auto date = format_date(p.date);
      longform.rows.push_back({name, date, "p_block", p.p_block.units()});
      longform.rows.push_back({name, date, "R_P", p.r_p.units()});
      longform.rows.push_back({name, date, "I_t", p.i_t.value});
    }
  }
  std::string ranking = "-";
  detail::Table means{{"choice", "mean_R_P"}, {}};
  if (!curve.dates.empty()) {
    auto r = sim::rank_choices(curve, tolerance);
    ranking = r.to_string();
    for (const auto& rc_ : r.order) {
      std::ostringstream m;
      m.setf(std::ios::fixed);
      m.precision(2);
      m << rc_.mean_r_p;
      means.rows.push_back({rc_.choice.name(), m.str()});
    }
  }
  if (!rc.out_dir.empty()) {
    std::ostringstream body;
    if (rc.format == Format::Json) {
      body << longform.to_json().dump(2) << '\n';
      detail::write_file(rc.out_dir, "decay.json", body.str());
    } else {
      longform.render_csv(body);
      detail::write_file(rc.out_dir, "decay.csv", body.str());
    }
    detail::write_file(rc.out_dir, "ranking.txt", ranking + "\n");
  }
  switch (rc.format) {
    case Format::Table:
      means.render_table(out);
      break;
    case Format::Csv:
      longform.render_csv(out);
      break;
    case Format::Json:
      doc["curve"] = longform.to_json();
      doc["means"] = means.to_json();
      doc["ranking"] = ranking;
      out << doc.dump(2) << '\n';
      return 0;
  }
  out << (rc.format == Format::Csv ? "# " : "") << "ranking: " << ranking << '\n';
  return 0;
}

struct AttackerOptions {
  std::string power = "rp";  // integer, or rp / rp-K / rp+K
  std::string candidates;
  int count = 0;  // 0: n fresh candidates
  std::string date;
};

inline VotingPower parse_attacker_power(const std::string& s, VotingPower r_p) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t.rfind("rp", 0) == 0) {
    std::int64_t offset = 0;
    if (t.size() > 2) {
      if (t[2] != '+' && t[2] != '-') throw ConfigError("malformed --attacker-power '" + s + "'");
      offset = parse_decimal(t.substr(3)).numerator();
      if (t[2] == '-') offset = -offset;
    }
    std::int64_t v = r_p.units() + offset;
    if (v < 0) throw DomainError("attacker power would be negative");
    return VotingPower(v);
  }
  Rational r = parse_decimal(t);
  if (r.denominator() != 1 || r < 0) throw DomainError("attacker power must be a non-negative integer");
  return VotingPower(r.numerator());
}

inline int cmd_replay_takeover(const RunConfig& rc, const DataOptions& d, const AttackerOptions& a,
                               std::ostream& out) {
  auto ds = detail::load_data(rc, d);
  if (!ds.range) throw LookupError("dataset is empty");
  Date when = a.date.empty() ? ds.range->last : parse_date(a.date);
  auto view = store::query(ds, when);
  const auto scores = metrics::snapshot_scores(view.power, view.voting, rc.config);
  const auto r_p = metrics::passive_resistance(scores, rc.config);
  const VotingPower power = parse_attacker_power(a.power, r_p);

  std::set<CandidateId> attackers;
  if (!a.candidates.empty()) {
    for (const auto& c : detail::split_list(a.candidates)) attackers.insert(c);
  } else {
    int count = a.count > 0 ? a.count : rc.config.n;
    for (int i = 0; i < count; ++i) attackers.insert(game::slot_id('x', i, count));
  }
  for (const auto& c : attackers) {
    if (scores.contains(c)) {
      throw ValidationError("attacker candidate '" + c + "' overlaps an existing candidate");
    }
  }
  auto outcome = metrics::simulate_takeover(scores, power, attackers, rc.config);
  std::set<CandidateId> approvals;
  for (const auto& s : outcome.after.seats) {
    if (attackers.contains(s.candidate)) approvals.insert(s.candidate);
  }
  const bool adopted = passes(approvals, outcome.after, rc.config);

  ojson doc;
  doc["run"] = rc.header_json();
  doc["date"] = format_date(when);
  doc["R_P"] = r_p.units();
  doc["attacker_power"] = power.units();
  if (rc.format != Format::Json) {
    out << rc.header() << '\n';
    out << "date " << format_date(when) << '\n';
    out << "phase 1 (stake): attacker power " << power << " (R_P " << r_p << ")\n";
    out << "phase 2 (vote): attacker backs " << outcome.attacker_allocations.size() << " of "
        << attackers.size() << " candidates";
    if (!outcome.attacker_allocations.empty()) {
      out << ", " << outcome.attacker_allocations.front().candidate << " receives "
          << outcome.attacker_allocations.front().power;
    }
    out << '\n';
  }
  detail::Table shifts{{"candidate", "power", "old_rank", "new_rank", "shift"}, {}};
  const auto old_ranking = rank_candidates(scores);
  for (std::size_t i = 0; i < old_ranking.size(); ++i) {
    const auto& c = old_ranking[i].candidate;
    const int shift = outcome.rank_shifts.at(c);
    shifts.rows.push_back({c, old_ranking[i].power.units(), static_cast<std::int64_t>(i + 1),
                           static_cast<std::int64_t>(i + 1) + shift, shift});
  }
  detail::emit(rc, out, "rank_shifts", shifts, &doc);
  doc["attacker_seats"] = outcome.attacker_seats;
  doc["passes"] = adopted;
  doc["success"] = outcome.success;
  if (rc.format == Format::Json) {
    out << doc.dump(2) << '\n';
  } else {
    const char* prefix = rc.format == Format::Csv ? "# " : "";
    out << prefix << "phase 3 (govern): attacker seats " << outcome.attacker_seats << " of "
        << rc.config.n << ", t " << rc.config.t << ", attacker proposal "
        << (adopted ? "passes" : "fails") << '\n';
    out << prefix << "success " << (outcome.success ? "true" : "false") << '\n';
  }
  return 0;
}

struct ClassifyOptions {
  std::string event_time;
  std::string window = "1d";
  std::string leader;
};

inline int cmd_classify(const RunConfig& rc, const DataOptions& d, const ClassifyOptions& c,
                        std::ostream& out) {
  auto ds = detail::load_data(rc, d);
  const Timestamp when = parse_timestamp(c.event_time);
  const auto window = parse_duration(c.window);
  auto cls = metrics::classify_resisters(ds.log, when, window, c.leader);
  ojson doc;
  doc["run"] = rc.header_json();
  if (rc.format != Format::Json) out << rc.header() << '\n';

  detail::Table counts{{"category", "voters"}, {}};
  for (const auto& [cat, n] : cls.counts()) {
    counts.rows.push_back({std::string(metrics::to_string(cat)), static_cast<std::int64_t>(n)});
  }
  detail::Table activity{{"date", "voting_txs", "delegating_txs"}, {}};
  for (const auto& a : metrics::daily_activity(ds.log)) {
    activity.rows.push_back({format_date(a.date), static_cast<std::int64_t>(a.voting_txs),
                             static_cast<std::int64_t>(a.delegating_txs)});
  }
  detail::Table power{{"date", "co_resister", "ind_resister", "non_resister"}, {}};
  for (const auto& p : metrics::category_power_series(ds.power, cls)) {
    power.rows.push_back({format_date(p.date), p.co.units(), p.ind.units(), p.non.units()});
  }
  std::string leader_set;
  for (const auto& x : cls.leader_set) leader_set += (leader_set.empty() ? "" : ";") + x;
  doc["leader_set"] = leader_set;
  if (rc.format == Format::Table) out << "leader " << c.leader << " backs " << leader_set << '\n';
  detail::emit(rc, out, "categories", counts, &doc);
  if (rc.format == Format::Table) out << '\n';
  detail::emit(rc, out, "activity", activity, &doc);
  if (rc.format == Format::Table) out << '\n';
  detail::emit(rc, out, "category_power", power, &doc);
  if (rc.format == Format::Json) out << doc.dump(2) << '\n';
  return 0;
}

inline int cmd_ingest(const RunConfig& rc, const DataOptions& d, std::ostream& out) {
  if (d.events.empty()) throw ConfigError("ingest needs --events");
  auto ds = detail::load_data(rc, d);
  ojson doc;
  doc["run"] = rc.header_json();
  detail::Table counts{{"kind", "records"}, {}};
  for (const auto& [k, n] : ds.log.counts()) {
    counts.rows.push_back({std::string(store::to_string(k)), static_cast<std::int64_t>(n)});
  }
  if (rc.format != Format::Json) out << rc.header() << '\n';
  if (rc.format == Format::Table) {
    out << "records " << ds.log.size() << '\n';
    out << "days " << (ds.range ? ds.range->days() : 0) << '\n';
  }
  doc["records"] = ds.log.size();
  doc["days"] = ds.range ? ds.range->days() : 0;
  // Persisting the dataset replaces the generic table dump under --out.
  RunConfig quiet = rc;
  quiet.out_dir.clear();
  detail::emit(quiet, out, "counts", counts, &doc);
  if (!rc.out_dir.empty()) {
    auto manifest = store::persist(ds, rc.out_dir);
    doc["sha256"] = manifest["sha256"];
    if (rc.format != Format::Json) {
      out << (rc.format == Format::Csv ? "# " : "") << "sha256 " << manifest["sha256"].get<std::string>()
          << '\n';
    }
  }
  for (const auto& w : ds.warnings) {
    if (rc.format != Format::Json) out << (rc.format == Format::Csv ? "# " : "") << "warning: " << w << '\n';
  }
  doc["warnings"] = ds.warnings;
  if (rc.format == Format::Json) out << doc.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- driver

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DPoS governance takeover-resistance toolkit", "dpos"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GlobalOptions g;
  DataOptions d;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--preset", g.preset, "chain preset: eosio, steem or tron");
    sub->add_option("--rule", g.rule, "voting rule: av or cv");
    sub->add_option("--v", g.v, "MaxVote");
    sub->add_option("--t", g.t, "MinApprov");
    sub->add_option("--n", g.n, "CmteSize");
    sub->add_option("--delta", g.delta, "size of one voting-power unit");
    sub->add_option("--lambda", g.lambda, "staking coefficient (decimal)");
    sub->add_option("--format", g.format, "table, csv or json");
    sub->add_option("--out", g.out_dir, "output directory");
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--events", d.events, "event log (.jsonl or .csv)");
    sub->add_option("--dataset", d.dataset, "directory written by `dpos ingest --out`");
    sub->add_option("--chain", d.chain, "chain name used for dataset files");
    sub->add_flag("--sort", d.sort, "reorder out-of-order records instead of failing");
    sub->add_option("--from", d.from, "first day (YYYY-MM-DD)");
    sub->add_option("--to", d.to, "last day (YYYY-MM-DD)");
  };

  std::string date;
  auto* elect_cmd = app.add_subcommand("elect", "elect the committee for one day");
  add_globals(elect_cmd);
  add_data(elect_cmd);
  elect_cmd->add_option("--date", date, "day to elect (default: last day)");

  GameOptions go;
  auto* game_cmd = app.add_subcommand("game", "equilibrium of the takeover game");
  add_globals(game_cmd);
  game_cmd->add_option("--pr", go.p_r, "co-resister voting power p_r")->required();
  game_cmd->add_flag("--c2c", go.c2c, "community-to-community variant");
  game_cmd->add_flag("--oracle", go.oracle, "cross-check with exhaustive backward induction");
  game_cmd->add_option("--max-strategies", go.max_strategies, "oracle enumeration bound");

  auto* resist_cmd = app.add_subcommand("resist", "daily passive resistance and risk index");
  add_globals(resist_cmd);
  add_data(resist_cmd);

  std::string choices;
  double tolerance = 0.02;
  auto* decay_cmd = app.add_subcommand("decay", "voting-power decay across design choices");
  add_globals(decay_cmd);
  add_data(decay_cmd);
  decay_cmd->add_option("--choices", choices, "e.g. \"(AV,1),(AV,30),CV\" (default: all)");
  decay_cmd->add_option("--tolerance", tolerance, "relative gap treated as equal");

  AttackerOptions ao;
  auto* takeover_cmd = app.add_subcommand("replay-takeover", "inject an attacker and re-elect");
  add_globals(takeover_cmd);
  add_data(takeover_cmd);
  takeover_cmd->add_option("--date", ao.date, "day to attack (default: last day)");
  takeover_cmd->add_option("--attacker-power", ao.power, "integer, rp, rp-K or rp+K");
  takeover_cmd->add_option("--attacker-candidates", ao.candidates, "comma-separated fresh ids");
  takeover_cmd->add_option("--attacker-count", ao.count, "number of fresh attacker candidates");

  ClassifyOptions co;
  auto* classify_cmd = app.add_subcommand("classify", "classify voters after a takeover event");
  add_globals(classify_cmd);
  add_data(classify_cmd);
  classify_cmd->add_option("--event-time", co.event_time, "takeover time (ISO-8601 UTC)")->required();
  classify_cmd->add_option("--window", co.window, "reaction window, e.g. 1d or 3600s");
  classify_cmd->add_option("--leader", co.leader, "voter id of the resistance leader")->required();

  auto* ingest_cmd = app.add_subcommand("ingest", "validate, replay and persist an event log");
  add_globals(ingest_cmd);
  add_data(ingest_cmd);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    RunConfig rc = detail::resolve(sub->get_name(), g);
    if (sub == elect_cmd) return cmd_elect(rc, d, date, out);
    if (sub == game_cmd) {
      rc.extras = {{"p_r", std::to_string(go.p_r)}};
      if (go.oracle) rc.extras.emplace_back("max_strategies", std::to_string(go.max_strategies));
      return cmd_game(rc, go, out);
    }
    if (sub == resist_cmd) return cmd_resist(rc, d, out);
    if (sub == decay_cmd) {
      std::ostringstream tol;
      tol << tolerance;
      rc.extras = {{"tolerance", tol.str()}};
      return cmd_decay(rc, d, choices, tolerance, out);
    }
    if (sub == takeover_cmd) {
      rc.extras = {{"attacker_power", ao.power}};
      return cmd_replay_takeover(rc, d, ao, out);
    }
    if (sub == classify_cmd) {
      rc.extras = {{"window", std::to_string(parse_duration(co.window).count()) + "s"}};
      return cmd_classify(rc, d, co, out);
    }
    if (sub == ingest_cmd) return cmd_ingest(rc, d, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dpos::cli

#endif  // DPOS_TOOLS_DPOS_CLI_HPP_
