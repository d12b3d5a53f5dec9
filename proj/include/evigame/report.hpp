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

// JSON and CSV emission for solver results, plus the small parsers the
// command line needs for perturbations and schedules.

#include <sstream>
#include <string>
#include <vector>

#include "evigame/disturbed.hpp"
#include "evigame/io.hpp"
#include "evigame/oracle.hpp"
#include "evigame/perturbed.hpp"
#include "evigame/perturbed_lab.hpp"
#include "evigame/truth_leaning.hpp"

namespace evigame {

// ---- parsing ----------------------------------------------------------------

/// Either one rational for every item or "item:value" pairs. Items left out
/// of a pair list get `fallback`.
inline std::vector<Rational> parse_item_values(const EvidenceGame& game, const std::string& text,
                                               const Rational& fallback) {
  const Index n = game.num_items();
  if (text.find(':') == std::string::npos) return std::vector<Rational>(n, parse_rational(text));
  std::vector<Rational> out(n, fallback);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("entry needs item:value, got '" + item + "'");
    out[game.space.index_of(item.substr(0, colon))] = parse_rational(item.substr(colon + 1));
  }
  return out;
}

/// Comma separated positive reals, as given on the command line.
inline std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

/// Scale 1 on every action above the lowest. With two actions this is a
/// single shock on the higher one.
inline std::vector<double> default_action_scales(const EvidenceGame& game) {
  std::vector<double> s(game.num_actions(), 1.0);
  s[0] = 0.0;
  return s;
}

// ---- families ---------------------------------------------------------------

inline std::string relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLe: return "<=";
    case Relation::kEq: return "=";
    case Relation::kGe: return ">=";
    case Relation::kLt: return "<";
    case Relation::kGt: return ">";
  }
  return "?";
}

/// Variables with their exact ranges, a member point, and the defining
/// constraints as {coefficients, relation, rhs} over named variables.
inline Json family_to_json(const EvidenceGame& g, const Family& f) {
  Json j;
  j["label"] = f.label;
  Json ranges = Json::object(), point = Json::object();
  for (Index v = 0; v < f.layout.size(); ++v) {
    ranges[f.layout.name(v)] = to_string(variable_range(f, v));
    point[f.layout.name(v)] = to_string(f.point[v]);
  }
  j["ranges"] = ranges;
  j["point"] = point;
  Json off = Json::object();
  for (Index m = 0; m < f.off_path.size(); ++m) off[g.space.name(m)] = to_string(f.off_path[m]);
  j["offPathBeliefs"] = off;
  Json rows = Json::array();
  for (const auto& c : f.rows) {
    Json terms = Json::object();
    for (Index v = 0; v < c.coef.size(); ++v)
      if (c.coef[v] != 0) terms[f.layout.name(v)] = to_string(c.coef[v]);
    if (terms.empty()) continue;
    rows.push_back({{"coefficients", terms}, {"relation", relation_symbol(c.rel)}, {"rhs", to_string(c.rhs)}});
  }
  j["constraints"] = rows;
  return j;
}

inline Json families_to_json(const EvidenceGame& g, const std::vector<Family>& fams) {
  Json out = Json::array();
  for (const auto& f : fams) out.push_back(family_to_json(g, f));
  return out;
}

inline Json truth_leaning_to_json(const EvidenceGame& g, const TruthLeaningResult& r) {
  Json j;
  j["found"] = r.found();
  j["families"] = families_to_json(g, r.families);
  j["refuted"] = r.refuted;
  j["structuresExamined"] = r.structures;
  return j;
}

inline Json genericity_to_json(const EvidenceGame& g, const GenericityReport& r) {
  Json j;
  j["generic"] = r.generic;
  Json ties = Json::array();
  for (const auto& t : r.ties) {
    Json acts = Json::array();
    for (Index a : t.actions) acts.push_back(to_string(g.actions[a]));
    ties.push_back({{"message", g.space.name(t.message)}, {"belief", to_string(t.belief)}, {"actions", acts}});
  }
  j["ties"] = ties;
  return j;
}

// ---- homotopy ---------------------------------------------------------------

inline Json homotopy_to_json(const EvidenceGame& g, const std::string& name, const HomotopyPath& path,
                             const HomotopyResult& r) {
  Json j;
  j["path"] = name;
  j["base"] = perturbation_to_json(g, path.base);
  j["factor"] = to_string(path.factor);
  j["steps"] = path.steps;
  j["stepsTaken"] = r.trace.size();
  j["verdict"] = r.verdict();
  j["lastChange"] = real12(to_double(r.last_change));
  if (r.limit) {
    j["limit"] = assessment_to_json(g, *r.limit);
    j["limitPbe"] = check_to_json(r.limit_pbe);
  } else {
    j["limit"] = nullptr;
  }
  return j;
}

/// Columns: step, epsilon_scale, then one column per variable.
inline std::string homotopy_csv(const HomotopyResult& r) {
  std::string out = "step,epsilon_scale";
  for (Index v = 0; v < r.layout.size(); ++v) out += "," + r.layout.name(v);
  out += "\n";
  for (const auto& s : r.trace) {
    out += std::to_string(s.step) + "," + to_string(s.scale);
    for (const auto& x : s.point) out += "," + to_string(x);
    out += "\n";
  }
  return out;
}

// ---- disturbed sweeps -------------------------------------------------------

/// Columns: scale, message, belief, action, probability, stderr.
inline std::string sweep_csv(const EvidenceGame& g, const PurificationTrace& t) {
  std::string out = "scale,message,belief,action,probability,stderr\n";
  for (const auto& p : t.points)
    for (Index m = 0; m < g.num_items(); ++m) {
      const auto& r = p.outcome.rho[m];
      for (Index a = 0; a < g.num_actions(); ++a)
        out += real12(p.scale) + "," + g.space.name(m) + "," + to_string(p.outcome.mu[m]) + "," +
               to_string(g.actions[a]) + "," + real12(r.probs[a]) + "," +
               real12(r.stderr_.empty() ? 0.0 : r.stderr_[a]) + "\n";
    }
  return out;
}

inline Json trace_summary_to_json(const EvidenceGame& g, const PurificationTrace& t) {
  Json j;
  j["points"] = t.points.size();
  j["lastChange"] = real12(t.last_change);
  j["converged"] = t.converged;
  j["generic"] = t.generic;
  if (!t.generic) j["note"] = "family-dependent limit";
  j["limit"] = assessment_to_json(g, t.limit);
  j["limitPbe"] = check_to_json(t.limit_pbe);
  j["limitPurifiable"] = check_to_json(t.limit_purifiable);
  return j;
}

// ---- relations and the full analysis ---------------------------------------

inline Json verdict_to_json(const ImplicationVerdict& v) {
  return {{"status", v.status}, {"witnesses", v.witnesses}};
}

inline Json game_summary_to_json(const EvidenceGame& g) {
  Json j;
  j["items"] = g.num_items();
  j["actions"] = g.num_actions();
  j["prior"] = to_string(g.prior);
  Json nu = Json::object();
  for (Index m = 0; m < g.num_items(); ++m) nu[g.space.name(m)] = to_string(face_value_belief(g, m));
  j["faceValue"] = nu;
  Json thr = Json::array();
  for (const auto& t : indifference_thresholds(g))
    thr.push_back({{"belief", to_string(t.belief)},
                   {"lower", to_string(g.actions[t.lower])},
                   {"upper", to_string(g.actions[t.upper])}});
  j["thresholds"] = thr;
  return j;
}

/// Every embedded assessment is checked against its own predicate first; a
/// failure is a solver defect, never a silent report.
inline Json relations_to_json(const EvidenceGame& g, const RelationsReport& r) {
  Json j;
  j["game"] = game_summary_to_json(g);
  j["star"] = star_to_json(g, r.star);
  j["genericity"] = genericity_to_json(g, r.genericity);
  j["truthLeaning"] = truth_leaning_to_json(g, r.truth_leaning);
  for (const auto& f : r.truth_leaning.families)
    if (!verify_truth_leaning(g, assessment_at(g, f.layout, f.point, f.off_path)).pass())
      throw SolverDefect("reported truth-leaning point fails its check");
  Json pur;
  Json levels = Json::array();
  for (Index l = 0; l < r.star.level_belief.size(); ++l) {
    const Rational& b = r.star.level_belief[l];
    Json acts = Json::array();
    for (Index a : best_response_set(g, b)) acts.push_back(to_string(g.actions[a]));
    levels.push_back({{"belief", to_string(b)}, {"bestResponses", acts}});
  }
  pur["levels"] = levels;
  pur["description"] = r.genericity.generic
                           ? "unique receiver behaviour at every level"
                           : "receiver mixes freely over the tied actions at tied levels";
  Json reps = Json::array();
  for (const auto& a : r.purifiable) {
    if (!verify_purifiable(g, a, r.star).pass() || !verify_pbe(g, a).pass())
      throw SolverDefect("reported purifiable equilibrium fails its check");
    reps.push_back(assessment_to_json(g, a));
  }
  pur["representatives"] = reps;
  j["purifiable"] = pur;
  Json paths = Json::array();
  for (const auto& p : r.paths) {
    if (p.result.limit && p.result.converged && !p.result.limit_pbe.pass())
      throw SolverDefect("reported weakly truth-leaning limit fails its check");
    paths.push_back(homotopy_to_json(g, p.name, p.path, p.result));
  }
  j["weaklyTruthLeaning"] = paths;
  Json rel;
  rel["weaklyAndPurifiableImpliesTruthLeaning"] = verdict_to_json(r.weakly_and_purifiable_implies_tl);
  rel["truthLeaningAndPurifiableImpliesWeakly"] = verdict_to_json(r.tl_and_purifiable_implies_weakly);
  j["relations"] = rel;
  return j;
}

inline Json comparison_to_json(const OracleComparison& c) {
  Json j;
  j["pass"] = c.pass();
  j["solverSamples"] = c.solver_samples;
  j["oraclePoints"] = c.oracle_points;
  Json d = Json::array();
  for (const auto& x : c.discrepancies)
    d.push_back({{"side", x.side}, {"detail", x.detail},
                 {"distance", x.distance < 0 ? std::string("none") : to_string(x.distance)}});
  j["discrepancies"] = d;
  return j;
}

}  // namespace evigame
