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

// Disturbed games: receiver payoff shocks, their truth-leaning outcomes,
// purification traces as the shocks vanish, and the purifiable equilibria
// built directly from the star solution.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/check.hpp"
#include "evigame/response.hpp"
#include "evigame/star.hpp"

namespace evigame {

struct DisturbedOutcome {
  SenderStrategy sigma;
  BeliefSystem mu;
  std::vector<SmoothedResponse> rho;  // per message
};

namespace detail {

inline std::vector<Rational> distinct_levels(const BeliefSystem& mu) {
  std::vector<Rational> out = mu.beliefs;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline DisturbedOutcome solve_disturbed(const EvidenceGame& game, const Disturbance& eta,
                                        const StarSolution& star) {
  auto errors = disturbance_errors(game, eta);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  const Index n = game.num_items();
  if (star.mu_star.beliefs.size() != n) throw std::invalid_argument("star solution does not match game");
  DisturbedOutcome out{star.sigma_star, star.mu_star, {}};
  std::map<Rational, SmoothedResponse> by_level;
  for (const auto& v : detail::distinct_levels(star.mu_star))
    by_level.emplace(v, smoothed_response(game, eta, v));
  for (Index m = 0; m < n; ++m) out.rho.push_back(by_level.at(star.mu_star[m]));

  for (Index e = 0; e < n; ++e) {
    double best = -INFINITY, best_se = 0.0;
    for (Index m : game.space.lower_contour(e))
      if (out.rho[m].value > best) {
        best = out.rho[m].value;
        best_se = out.rho[m].value_stderr;
      }
    for (Index m = 0; m < n; ++m) {
      if (out.sigma(m, e) <= 0) continue;
      const auto& r = out.rho[m];
      double slack = r.closed_form ? 1e-12 : 3.0 * std::hypot(r.value_stderr, best_se);
      if (r.value < best - slack)
        throw SolverDefect("disturbed outcome: " + game.space.name(e) + " sends " +
                           game.space.name(m) + " below the best available value");
    }
  }
  return out;
}

struct GenericityReport {
  struct Tie {
    Index message;
    Rational belief;
    std::vector<Index> actions;
  };
  bool generic = true;
  std::vector<Tie> ties;
};

inline GenericityReport genericity_check(const EvidenceGame& game, const StarSolution& star) {
  GenericityReport r;
  for (Index m = 0; m < game.num_items(); ++m) {
    auto br = best_response_set(game, star.mu_star[m]);
    if (br.size() > 1) {
      r.generic = false;
      r.ties.push_back({m, star.mu_star[m], br});
    }
  }
  return r;
}

/// Mixed receiver behaviour at each tied belief level, keyed by the level.
using TieWeights = std::map<Rational, std::vector<Rational>>;

inline Assessment construct_purifiable(const EvidenceGame& game, const StarSolution& star,
                                       const TieWeights& weights = {}) {
  const Index n = game.num_items(), k = game.num_actions();
  auto levels = detail::distinct_levels(star.mu_star);
  for (const auto& [level, w] : weights) {
    if (std::find(levels.begin(), levels.end(), level) == levels.end())
      throw std::invalid_argument("weights given for belief " + to_string(level) +
                                  ", which is not a level of mu*");
    auto br = best_response_set(game, level);
    if (br.size() < 2)
      throw std::invalid_argument("weights given at belief " + to_string(level) +
                                  ", where the best response is unique");
    if (w.size() != k) throw std::invalid_argument("weights must list every action");
    Rational total = 0;
    for (Index a = 0; a < k; ++a) {
      if (w[a] < 0) throw std::invalid_argument("negative weight");
      if (w[a] > 0 && std::find(br.begin(), br.end(), a) == br.end())
        throw std::invalid_argument("weights supplied off the tied set at belief " + to_string(level));
      total += w[a];
    }
    if (total != 1) throw std::invalid_argument("weights at belief " + to_string(level) + " must sum to 1");
  }
  Assessment a;
  a.sigma = star.sigma_star;
  a.mu = star.mu_star;
  a.rho.rows.assign(n, std::vector<Rational>(k, 0));
  for (Index m = 0; m < n; ++m) {
    auto br = best_response_set(game, star.mu_star[m]);
    if (br.size() == 1) {
      a.rho(br.front(), m) = 1;
      continue;
    }
    auto it = weights.find(star.mu_star[m]);
    if (it == weights.end())
      throw std::invalid_argument("missing weights for tied belief level " + to_string(star.mu_star[m]));
    a.rho.rows[m] = it->second;
  }
  auto purifiable = verify_purifiable(game, a, star);
  auto pbe = verify_pbe(game, a);
  if (!purifiable.pass() || !pbe.pass())
    throw SolverDefect("constructed purifiable equilibrium fails its check");
  return a;
}

/// Every tie broken toward the lowest action; always a valid weight map.
inline TieWeights lowest_action_weights(const EvidenceGame& game, const StarSolution& star) {
  TieWeights w;
  for (const auto& t : genericity_check(game, star).ties) {
    std::vector<Rational> row(game.num_actions(), 0);
    row[t.actions.front()] = 1;
    w[t.belief] = row;
  }
  return w;
}

// ---- purification traces --------------------------------------------------

struct TracePoint {
  double scale;
  DisturbedOutcome outcome;
};

struct PurificationTrace {
  std::vector<TracePoint> points;
  double last_change = 0.0;  // sup-norm change in rho over the last two points
  bool converged = false;
  bool generic = true;  // false: the limit may depend on the shock family
  Assessment limit;
  CheckResult limit_pbe;
  CheckResult limit_purifiable;
};

/// Rounds a probability vector to denominators at most 10^6, keeping the
/// sum at exactly one by absorbing the difference in the largest entry.
inline std::vector<Rational> rationalize_distribution(const std::vector<double>& p) {
  std::vector<Rational> out(p.size(), 0);
  if (p.empty()) return out;
  Index big = static_cast<Index>(std::max_element(p.begin(), p.end()) - p.begin());
  Rational rest = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (i == big) continue;
    out[i] = rationalize(std::clamp(p[i], 0.0, 1.0));
    rest += out[i];
  }
  out[big] = 1 - rest;
  return out;
}

/// `base.scales` are multiplied by each schedule entry. Point k draws its
/// Monte Carlo samples from seed (base.seed, k).
inline PurificationTrace purification_trace(const EvidenceGame& game, const Disturbance& base,
                                            const std::vector<double>& schedule,
                                            const StarSolution& star) {
  if (schedule.size() < 3) throw std::invalid_argument("schedule needs at least 3 scales");
  for (Index i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0)) throw std::invalid_argument("schedule scales must be positive");
    if (i > 0 && !(schedule[i] < schedule[i - 1]))
      throw std::invalid_argument("schedule must be strictly decreasing");
  }
  PurificationTrace trace;
  for (Index i = 0; i < schedule.size(); ++i) {
    Disturbance eta = base.scaled(schedule[i]);
    std::uint64_t s = base.seed;
    eta.seed = splitmix64(s) ^ static_cast<std::uint64_t>(i);
    trace.points.push_back({schedule[i], solve_disturbed(game, eta, star)});
  }
  const auto& last = trace.points.back().outcome;
  const auto& prev = trace.points[trace.points.size() - 2].outcome;
  for (Index m = 0; m < game.num_items(); ++m)
    for (Index a = 0; a < game.num_actions(); ++a)
      trace.last_change = std::max(trace.last_change, std::abs(last.rho[m].probs[a] - prev.rho[m].probs[a]));
  trace.generic = genericity_check(game, star).generic;

  trace.limit.sigma = star.sigma_star;
  trace.limit.mu = star.mu_star;
  for (Index m = 0; m < game.num_items(); ++m)
    trace.limit.rho.rows.push_back(rationalize_distribution(last.rho[m].probs));
  trace.limit_pbe = verify_pbe(game, trace.limit);
  trace.limit_purifiable = verify_purifiable(game, trace.limit, star);
  trace.converged = trace.last_change < 1e-6 && trace.limit_pbe.pass();
  return trace;
}

}  // namespace evigame
