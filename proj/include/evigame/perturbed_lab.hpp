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

// Paths of perturbed games shrinking to zero, the lift of a purifiable
// truth-leaning equilibrium into a perturbed game, and the report that
// cross-checks the refinements against each other.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/disturbed.hpp"
#include "evigame/perturbed.hpp"

namespace evigame {

struct HomotopyPath {
  Perturbation base;
  Rational factor;  // gamma in (0,1)
  int steps = 30;

  Perturbation at(int k) const {
    Rational scale = 1;
    for (int i = 0; i < k; ++i) scale *= factor;
    return base.scaled(scale);
  }
};

struct HomotopyStep {
  int step;
  Rational scale;
  std::vector<Rational> point;
  Assessment assessment;
  std::string family;
};

struct HomotopyResult {
  std::vector<HomotopyStep> trace;
  VariableLayout layout;
  bool converged = false;
  Rational last_change;
  std::optional<Assessment> limit;
  CheckResult limit_pbe;

  std::string verdict() const { return converged ? "converged" : "divergent"; }
};

namespace detail {

inline Assessment rationalized_limit(const EvidenceGame& game, const Assessment& a) {
  const Index n = game.num_items();
  Assessment out = a;
  for (Index e = 0; e < n; ++e) {
    auto lc = game.space.lower_contour(e);
    std::vector<double> p;
    for (Index m : lc) p.push_back(to_double(a.sigma(m, e)));
    auto r = rationalize_distribution(p);
    for (Index i = 0; i < lc.size(); ++i) out.sigma(lc[i], e) = r[i];
  }
  for (Index m = 0; m < n; ++m) {
    std::vector<double> p;
    for (const auto& x : a.rho.rows[m]) p.push_back(to_double(x));
    out.rho.rows[m] = rationalize_distribution(p);
  }
  for (Index m = 0; m < n; ++m) {
    auto post = posterior_from_strategy(game, out.sigma, m);
    out.mu[m] = post ? *post : rationalize(a.mu[m]);
  }
  return out;
}

inline bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Rational l1_distance(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational d = 0;
  for (Index i = 0; i < x.size(); ++i) d += abs(x[i] - y[i]);
  return d;
}

}  // namespace detail

/// Follows perturbed equilibria along base * factor^k, k = 0..steps-1,
/// taking the lexicographically smallest equilibrium first and then the
/// nearest one (sup norm over strategy entries) at every step. The walk
/// stops early once consecutive points differ by less than 1e-8.
inline HomotopyResult homotopy_weakly_tl(const EvidenceGame& game, const HomotopyPath& path) {
  if (!(path.factor > 0 && path.factor < 1)) throw std::invalid_argument("factor must lie in (0,1)");
  if (path.steps < 3) throw std::invalid_argument("a path needs at least 3 steps");
  const Rational tolerance = rationalize(1e-8, 1000000000);
  HomotopyResult result;
  Rational scale = 1;
  for (int k = 0; k < path.steps; ++k) {
    if (k > 0) scale *= path.factor;
    Perturbation eps = path.base.scaled(scale);
    auto solved = solve_perturbed(game, eps);
    result.layout = solved.families.front().layout;
    std::optional<std::vector<Rational>> chosen;
    std::string label;
    std::vector<Rational> off_path;
    if (k == 0) {
      for (const auto& f : solved.families) {
        auto x = lexmin(f);
        if (!x) continue;
        if (!chosen || detail::lex_less(*x, *chosen)) {
          chosen = x;
          label = f.label;
          off_path = f.off_path;
        }
      }
    } else {
      const auto& prev = result.trace.back().point;
      Rational best_d, best_l1;
      for (const auto& f : solved.families) {
        auto p = project(f, prev);
        if (!p) continue;
        Rational l1 = detail::l1_distance(p->point, prev);
        bool better = !chosen || p->distance < best_d ||
                      (p->distance == best_d &&
                       (l1 < best_l1 || (l1 == best_l1 && detail::lex_less(p->point, *chosen))));
        if (better) {
          chosen = p->point;
          best_d = p->distance;
          best_l1 = l1;
          label = f.label;
          off_path = f.off_path;
        }
      }
    }
    if (!chosen) throw SolverDefect("no selectable perturbed equilibrium at step " + std::to_string(k));
    Assessment a = assessment_at(game, result.layout, *chosen, off_path);
    auto check = verify_perturbed_pbe(game, eps, a);
    if (!check.pass()) throw SolverDefect("homotopy selection fails the perturbed check");
    result.trace.push_back({k, scale, *chosen, a, label});
    if (k > 0) {
      result.last_change = sup_distance(result.trace[k].point, result.trace[k - 1].point);
      if (result.last_change < tolerance) {
        result.converged = true;
        break;
      }
    }
  }
  if (result.converged) {
    result.limit = detail::rationalized_limit(game, result.trace.back().assessment);
    result.limit_pbe = verify_pbe(game, *result.limit);
  }
  return result;
}

// ---- lift ------------------------------------------------------------------

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LiftResult {
  Assessment assessment;
  CheckResult check;
};

namespace detail {

inline Assessment lift_strategies(const EvidenceGame& game, const Assessment& a,
                                  const Perturbation& eps) {
  const Index n = game.num_items();
  Assessment out = a;
  for (Index e = 0; e < n; ++e) {
    if (a.sigma(e, e) == 1) continue;
    for (Index m = 0; m < n; ++m) out.sigma(m, e) = a.sigma(m, e) * (1 - eps.floor[e]);
    out.sigma(e, e) += eps.floor[e];
  }
  for (Index m = 0; m < n; ++m) out.mu[m] = *posterior_from_strategy(game, out.sigma, m);
  return out;
}

/// First failed smallness condition, or empty.
inline std::string lift_obstacle(const EvidenceGame& game, const Assessment& a,
                                 const Assessment& lifted, const Perturbation& eps) {
  for (Index e = 0; e < game.num_items(); ++e) {
    if (a.sigma(e, e) == 1) continue;
    Rational best = detail::best_disclosure_value(game, a.rho, e);
    Rational gap = best - sender_value(game, a.rho, e);
    if (!(eps.reward[e] < gap))
      return "reward at " + game.space.name(e) + " is not below the disclosure gap " + to_string(gap);
  }
  for (Index m = 0; m < game.num_items(); ++m) {
    auto br = best_response_set(game, lifted.mu[m]);
    for (Index act = 0; act < game.num_actions(); ++act)
      if (a.rho(act, m) > 0 && std::find(br.begin(), br.end(), act) == br.end())
        return "belief at " + game.space.name(m) + " leaves the constant best-response region";
  }
  return "";
}

}  // namespace detail

/// Lifts a purifiable truth-leaning equilibrium of a generic game into the
/// perturbed game: truthful types stay put, the others put the floor on
/// the truth and scale the rest, the receiver keeps its strategy.
inline LiftResult lift_witness(const EvidenceGame& game, const StarSolution& star, const Assessment& a,
                               const Perturbation& eps) {
  auto errors = perturbation_errors(game, eps);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  if (!genericity_check(game, star).generic) throw PreconditionError("genericity precondition fails");
  if (!verify_truth_leaning(game, a).pass() || !verify_purifiable(game, a, star).pass())
    throw PreconditionError("assessment is not a purifiable truth-leaning equilibrium");
  Assessment lifted = detail::lift_strategies(game, a, eps);
  std::string obstacle = detail::lift_obstacle(game, a, lifted, eps);
  if (!obstacle.empty()) {
    std::string hint = "no halving of the perturbation below 2^-60 suffices";
    Rational factor = 1;
    for (int j = 1; j <= 60; ++j) {
      factor /= 2;
      Perturbation small = eps.scaled(factor);
      if (detail::lift_obstacle(game, a, detail::lift_strategies(game, a, small), small).empty()) {
        hint = "scaling the perturbation by 1/2^" + std::to_string(j) + " suffices";
        break;
      }
    }
    throw PreconditionError("perturbation not small enough: " + obstacle + "; " + hint);
  }
  LiftResult r{lifted, verify_perturbed_pbe(game, eps, lifted)};
  if (!r.check.pass()) throw SolverDefect("lifted assessment fails the perturbed check");
  return r;
}

/// Finds the purifiable truth-leaning equilibrium itself, then lifts it.
inline LiftResult lift_witness(const EvidenceGame& game, const Perturbation& eps) {
  StarSolution star = solve_star(game);
  if (!genericity_check(game, star).generic) throw PreconditionError("genericity precondition fails");
  Assessment a = construct_purifiable(game, star);
  if (!verify_truth_leaning(game, a).pass())
    throw PreconditionError("no purifiable truth-leaning equilibrium exists");
  return lift_witness(game, star, a, eps);
}

// ---- relations among the refinements --------------------------------------

struct PathOutcome {
  std::string name;
  HomotopyPath path;
  HomotopyResult result;
};

/// Equal rewards, rewards rising with the item index, and falling; floors
/// 1/20 throughout.
inline std::vector<std::pair<std::string, HomotopyPath>> canonical_paths(const EvidenceGame& game) {
  const Index n = game.num_items();
  std::vector<std::pair<std::string, HomotopyPath>> out;
  auto make = [&](const std::string& name, auto reward) {
    Perturbation p;
    for (Index i = 0; i < n; ++i) {
      p.reward.push_back(reward(i));
      p.floor.push_back(ratio(1, 20));
    }
    out.push_back({name, HomotopyPath{p, ratio(1, 2), 40}});
  };
  const long d = 10 * static_cast<long>(n);
  make("equal", [&](Index) { return ratio(1, 10); });
  make("increasing", [&](Index i) { return ratio(static_cast<long>(i) + 1, d); });
  make("decreasing", [&](Index i) { return ratio(static_cast<long>(n - i), d); });
  return out;
}

struct ImplicationVerdict {
  std::string status;  // holds, fails, vacuous, not applicable
  std::vector<std::string> witnesses;
};

struct RelationsReport {
  TruthLeaningResult truth_leaning;
  StarSolution star;
  GenericityReport genericity;
  std::vector<Assessment> purifiable;  // representatives; one per extreme tie-break
  std::vector<PathOutcome> paths;
  ImplicationVerdict weakly_and_purifiable_implies_tl;  // (i)
  ImplicationVerdict tl_and_purifiable_implies_weakly;  // (ii)
};

namespace detail {

inline bool same_play(const EvidenceGame& game, const Assessment& a, const Assessment& b) {
  if (a.sigma != b.sigma || a.rho != b.rho) return false;
  for (Index m = 0; m < game.num_items(); ++m)
    if (posterior_from_strategy(game, a.sigma, m) && a.mu[m] != b.mu[m]) return false;
  return true;
}

}  // namespace detail

inline RelationsReport relations_report(const EvidenceGame& game) {
  RelationsReport r;
  r.truth_leaning = find_truth_leaning(game);
  r.star = solve_star(game);
  r.genericity = genericity_check(game, r.star);
  if (r.genericity.generic) {
    r.purifiable.push_back(construct_purifiable(game, r.star));
  } else {
    TieWeights low = lowest_action_weights(game, r.star), high = low;
    for (auto& [level, w] : high) {
      auto br = best_response_set(game, level);
      std::fill(w.begin(), w.end(), Rational(0));
      w[br.back()] = 1;
    }
    r.purifiable.push_back(construct_purifiable(game, r.star, low));
    r.purifiable.push_back(construct_purifiable(game, r.star, high));
  }
  for (auto& [name, path] : canonical_paths(game))
    r.paths.push_back({name, path, homotopy_weakly_tl(game, path)});

  auto& first = r.weakly_and_purifiable_implies_tl;
  for (const auto& p : r.paths) {
    if (!p.result.limit || !p.result.limit_pbe.pass()) continue;
    const Assessment& lim = *p.result.limit;
    if (!verify_purifiable(game, lim, r.star).pass()) continue;
    bool tl = verify_truth_leaning(game, lim).pass();
    first.witnesses.push_back(p.name + (tl ? ": limit is truth-leaning" : ": limit is not truth-leaning"));
    if (!tl) first.status = "fails";
  }
  if (first.status.empty()) first.status = first.witnesses.empty() ? "vacuous" : "holds";

  auto& second = r.tl_and_purifiable_implies_weakly;
  if (!r.genericity.generic) {
    second.status = "not applicable";
    second.witnesses.push_back("game is not generic");
    return r;
  }
  const Assessment& pure = r.purifiable.front();
  if (!verify_truth_leaning(game, pure).pass()) {
    second.status = "vacuous";
    return r;
  }
  for (const auto& p : r.paths)
    if (p.result.limit && detail::same_play(game, *p.result.limit, pure))
      second.witnesses.push_back(p.name + " path converges to it");
  if (second.witnesses.empty()) {
    const HomotopyPath& base = r.paths.front().path;
    for (int k = 0; k < 60 && second.witnesses.empty(); ++k) {
      try {
        lift_witness(game, r.star, pure, base.at(k));
        second.witnesses.push_back("lifted path from step " + std::to_string(k) + " of the " +
                                   r.paths.front().name + " path");
      } catch (const PreconditionError&) {
      }
    }
  }
  second.status = second.witnesses.empty() ? "fails" : "holds";
  return r;
}

}  // namespace evigame
