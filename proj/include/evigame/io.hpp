// Copyright 2026 The evigame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON and CSV boundaries. Rationals travel as "n" or "n/d" strings; parsing
// also accepts decimals. Saving is canonical, so canonical files round-trip
// byte for byte.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "evigame/check.hpp"
#include "evigame/game.hpp"
#include "evigame/perturbation.hpp"
#include "evigame/star.hpp"

namespace evigame {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational json_rational(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const std::invalid_argument&) {
  }
  throw FormatError("expected a rational at " + where);
}

inline const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError("missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<Rational> item_map(const Json& j, const EvidenceSpace& space,
                                      const std::string& field) {
  if (!j.is_object()) throw FormatError(field + " must be an object");
  std::vector<Rational> out(space.size(), 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto idx = space.find(it.key());
    if (!idx) throw FormatError(field + " names unknown evidence '" + it.key() + "'");
    out[*idx] = json_rational(it.value(), field + "." + it.key());
  }
  return out;
}

inline Index action_key(const EvidenceGame& game, const std::string& key,
                        const std::string& field) {
  Rational value;
  try {
    value = parse_rational(key);
  } catch (const std::invalid_argument&) {
    throw FormatError(field + " has non-numeric action '" + key + "'");
  }
  auto a = game.find_action(value);
  if (!a) throw FormatError(field + " names unknown action '" + key + "'");
  return *a;
}

inline std::vector<Rational> action_map(const Json& j, const EvidenceGame& game,
                                        const std::string& field) {
  if (!j.is_object()) throw FormatError(field + " must be an object");
  std::vector<Rational> out(game.num_actions(), 0);
  std::vector<bool> seen(game.num_actions(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Index a = action_key(game, it.key(), field);
    out[a] = json_rational(it.value(), field + "." + it.key());
    seen[a] = true;
  }
  for (Index a = 0; a < game.num_actions(); ++a)
    if (!seen[a]) throw FormatError(field + " misses action " + to_string(game.actions[a]));
  return out;
}

}  // namespace detail

/// Parses a game document. Structural problems (missing fields, unknown
/// identifiers) throw FormatError; model assumptions are left to
/// validate_game so they can be reported as data.
inline EvidenceGame game_from_json(const Json& j) {
  using namespace detail;
  EvidenceGame g;
  g.prior = json_rational(require(j, "prior"), "prior");
  const Json& ev = require(j, "evidence");
  if (!ev.is_array()) throw FormatError("evidence must be an array");
  std::vector<std::string> items;
  for (const auto& e : ev) {
    if (!e.is_string()) throw FormatError("evidence identifiers must be strings");
    items.push_back(e.get<std::string>());
  }
  const Json& fe = require(j, "feasible");
  if (!fe.is_array() || fe.size() != items.size())
    throw FormatError("feasible must list one row per evidence item");
  std::vector<std::vector<bool>> mat(items.size(), std::vector<bool>(items.size(), false));
  for (Index e = 0; e < items.size(); ++e) {
    if (!fe[e].is_array()) throw FormatError("feasible rows must be arrays");
    for (const auto& m : fe[e]) {
      if (!m.is_string()) throw FormatError("feasible entries must be strings");
      Index mi = items.size();
      for (Index i = 0; i < items.size(); ++i)
        if (items[i] == m.get<std::string>()) mi = i;
      if (mi == items.size())
        throw FormatError("feasible names unknown evidence '" + m.get<std::string>() + "'");
      mat[mi][e] = true;
    }
  }
  g.space = EvidenceSpace(items, mat);
  g.f_good = item_map(require(j, "fG"), g.space, "fG");
  g.f_bad = item_map(require(j, "fB"), g.space, "fB");
  const Json& acts = require(j, "actions");
  if (!acts.is_array()) throw FormatError("actions must be an array");
  for (Index a = 0; a < acts.size(); ++a)
    g.actions.push_back(json_rational(acts[a], "actions[" + std::to_string(a) + "]"));
  g.payoff_good = action_map(require(j, "payoffG"), g, "payoffG");
  g.payoff_bad = action_map(require(j, "payoffB"), g, "payoffB");
  return g;
}

inline Json game_to_json(const EvidenceGame& g) {
  Json j;
  j["prior"] = to_string(g.prior);
  Json ev = Json::array(), fe = Json::array();
  for (Index e = 0; e < g.num_items(); ++e) {
    ev.push_back(g.space.name(e));
    Json row = Json::array();
    for (Index m : g.space.lower_contour(e)) row.push_back(g.space.name(m));
    fe.push_back(row);
  }
  j["evidence"] = ev;
  j["feasible"] = fe;
  Json fg = Json::object(), fb = Json::object();
  for (Index e = 0; e < g.num_items(); ++e) {
    fg[g.space.name(e)] = to_string(g.f_good[e]);
    fb[g.space.name(e)] = to_string(g.f_bad[e]);
  }
  j["fG"] = fg;
  j["fB"] = fb;
  Json acts = Json::array(), pg = Json::object(), pb = Json::object();
  for (Index a = 0; a < g.num_actions(); ++a) {
    acts.push_back(to_string(g.actions[a]));
    pg[to_string(g.actions[a])] = to_string(g.payoff_good[a]);
    pb[to_string(g.actions[a])] = to_string(g.payoff_bad[a]);
  }
  j["actions"] = acts;
  j["payoffG"] = pg;
  j["payoffB"] = pb;
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

inline EvidenceGame load_game(const std::string& path) {
  return game_from_json(read_json_file(path));
}

inline void save_game(const EvidenceGame& g, const std::string& path) {
  write_text_file(path, dump(game_to_json(g)));
}

// ---- assessments ---------------------------------------------------------

inline Json sender_to_json(const EvidenceGame& g, const SenderStrategy& s) {
  Json j = Json::object();
  for (Index e = 0; e < g.num_items(); ++e) {
    Json row = Json::object();
    for (Index m : g.space.lower_contour(e))
      if (s(m, e) != 0) row[g.space.name(m)] = to_string(s(m, e));
    j[g.space.name(e)] = row;
  }
  return j;
}

inline Json receiver_to_json(const EvidenceGame& g, const ReceiverStrategy& r) {
  Json j = Json::object();
  for (Index m = 0; m < g.num_items(); ++m) {
    Json row = Json::object();
    for (Index a = 0; a < g.num_actions(); ++a)
      if (r(a, m) != 0) row[to_string(g.actions[a])] = to_string(r(a, m));
    j[g.space.name(m)] = row;
  }
  return j;
}

inline Json beliefs_to_json(const EvidenceGame& g, const BeliefSystem& mu) {
  Json j = Json::object();
  for (Index m = 0; m < g.num_items(); ++m) j[g.space.name(m)] = to_string(mu[m]);
  return j;
}

inline Json assessment_to_json(const EvidenceGame& g, const Assessment& a) {
  Json j;
  j["sigma"] = sender_to_json(g, a.sigma);
  j["rho"] = receiver_to_json(g, a.rho);
  j["mu"] = beliefs_to_json(g, a.mu);
  return j;
}

/// Missing entries read as zero; rows must be present for every item.
inline Assessment assessment_from_json(const EvidenceGame& g, const Json& j) {
  using namespace detail;
  const Index n = g.num_items(), k = g.num_actions();
  Assessment a{SenderStrategy{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))},
               ReceiverStrategy{std::vector<std::vector<Rational>>(n, std::vector<Rational>(k, 0))},
               BeliefSystem{std::vector<Rational>(n, 0)}};
  const Json& sj = require(j, "sigma");
  const Json& rj = require(j, "rho");
  for (Index e = 0; e < n; ++e) {
    const std::string& name = g.space.name(e);
    a.sigma.rows[e] = item_map(require(sj, name), g.space, "sigma." + name);
    const Json& row = require(rj, name);
    if (!row.is_object()) throw FormatError("rho." + name + " must be an object");
    for (auto it = row.begin(); it != row.end(); ++it)
      a.rho(action_key(g, it.key(), "rho." + name), e) =
          json_rational(it.value(), "rho." + name + "." + it.key());
  }
  a.mu.beliefs = item_map(require(j, "mu"), g.space, "mu");
  for (Index m = 0; m < n; ++m)
    if (!require(j, "mu").contains(g.space.name(m)))
      throw FormatError("mu misses evidence '" + g.space.name(m) + "'");
  return a;
}

// ---- star solution -------------------------------------------------------

inline Json star_to_json(const EvidenceGame& g, const StarSolution& star) {
  Json j;
  j["muStar"] = beliefs_to_json(g, star.mu_star);
  j["sigmaStar"] = sender_to_json(g, star.sigma_star);
  Json rows = Json::array();
  for (const auto& r : star.polytope.rows) {
    Json row;
    row["type"] = g.space.name(r.type);
    row["truthful"] = r.truthful;
    Json sup = Json::array();
    for (Index m : r.support) sup.push_back(g.space.name(m));
    row["support"] = sup;
    rows.push_back(row);
  }
  Json eqs = Json::array();
  for (const auto& eq : star.polytope.equalities) {
    Json e;
    e["message"] = g.space.name(eq.message);
    e["constant"] = to_string(eq.constant);
    Json terms = Json::object();
    for (const auto& [type, coef] : eq.terms) terms[g.space.name(type)] = to_string(coef);
    e["coefficients"] = terms;
    eqs.push_back(e);
  }
  Json poly;
  poly["rows"] = rows;
  poly["equalities"] = eqs;
  j["polytope"] = poly;
  Json levels = Json::array();
  for (Index l = 0; l < star.level_belief.size(); ++l) {
    Json lv;
    lv["belief"] = to_string(star.level_belief[l]);
    Json members = Json::array();
    for (Index e = 0; e < g.num_items(); ++e)
      if (star.level_of[e] == l) members.push_back(g.space.name(e));
    lv["members"] = members;
    levels.push_back(lv);
  }
  j["levels"] = levels;
  return j;
}

inline Json perturbation_to_json(const EvidenceGame& g, const Perturbation& eps) {
  Json j, r = Json::object(), f = Json::object();
  for (Index e = 0; e < g.num_items(); ++e) {
    r[g.space.name(e)] = to_string(eps.reward[e]);
    f[g.space.name(e)] = to_string(eps.floor[e]);
  }
  j["reward"] = r;
  j["floor"] = f;
  return j;
}

inline Json check_to_json(const CheckResult& c) {
  Json j;
  j["pass"] = c.pass();
  Json v = Json::array();
  for (const auto& x : c.violations) {
    Json e;
    e["condition"] = x.condition;
    e["where"] = x.where;
    e["witness"] = x.witness;
    v.push_back(e);
  }
  j["violations"] = v;
  return j;
}

/// Twelve significant digits, the CSV convention for real columns.
inline std::string real12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace evigame
