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

// The universal belief system mu* and sender-strategy set Sigma* shared by
// every truth-leaning equilibrium of every disturbed game.
//
// mu* is computed by peeling: the highest equilibrium belief is the largest
// pooled posterior over up-sets of the evidence order, attained by the
// largest maximizing up-set U. Inside U, evidence whose face value is at
// least that belief is disclosed truthfully (targets); the rest pools into
// targets below it. Removing U leaves a smaller game with a strictly lower
// top belief. The top belief is found by Dinkelbach iteration over
// maximum-weight closures, and the pooling flows by exact max-flow.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evigame/flow.hpp"
#include "evigame/game.hpp"

namespace evigame {

/// Sigma* constraints for one evidence type.
struct PolytopeRow {
  Index type;
  bool truthful;               // sigma(e|e) = 1 forced
  std::vector<Index> support;  // permitted messages when not truthful
};

/// constant + sum_e coef_e * sigma(message|e) = 0, the Bayes condition
/// pinning the posterior of a reached message to mu*.
struct BayesEquality {
  Index message;
  Rational constant;
  std::vector<std::pair<Index, Rational>> terms;
};

struct StarPolytope {
  std::vector<PolytopeRow> rows;
  std::vector<BayesEquality> equalities;
};

struct StarSolution {
  BeliefSystem mu_star;
  SenderStrategy sigma_star;  // representative element of Sigma*
  StarPolytope polytope;
  std::vector<Index> level_of;         // pool index per evidence
  std::vector<Rational> level_belief;  // strictly decreasing
};

namespace detail {

inline Rational pooled_posterior(const EvidenceGame& game, const std::vector<bool>& set) {
  Rational good = 0, total = 0;
  for (Index e = 0; e < game.num_items(); ++e)
    if (set[e]) {
      good += game.mass_good(e);
      total += game.mass(e);
    }
  return good / total;
}

/// Largest up-set (within `alive`) maximizing sum of PG - v * P, and that max.
inline std::pair<Rational, std::vector<bool>> max_weight_upset(
    const EvidenceGame& game, const std::vector<bool>& alive, const Rational& v) {
  const Index n = game.num_items();
  const std::size_t source = n, sink = n + 1;
  FlowNetwork net(n + 2);
  Rational positive = 0;
  for (Index u = 0; u < n; ++u) {
    if (!alive[u]) continue;
    Rational w = game.mass_good(u) - v * game.mass(u);
    if (w > 0) {
      net.add_edge(source, u, w);
      positive += w;
    } else if (w < 0) {
      net.add_edge(u, sink, -w);
    }
    for (Index x = 0; x < n; ++x)
      if (x != u && alive[x] && game.space.can_disclose(u, x)) net.add_edge(u, x, 0, true);
  }
  Rational cut = net.max_flow(source, sink);
  auto to_sink = net.reaching(sink);
  std::vector<bool> upset(n, false);
  for (Index u = 0; u < n; ++u) upset[u] = alive[u] && !to_sink[u];
  return {positive - cut, upset};
}

}  // namespace detail

/// Conditions (a)-(d) of a truth-leaning equilibrium of the auxiliary game
/// where the sender's payoff is the belief itself. Empty means satisfied.
inline std::vector<std::string> auxiliary_conditions(const EvidenceGame& game,
                                                     const SenderStrategy& sigma,
                                                     const BeliefSystem& mu) {
  std::vector<std::string> out;
  const Index n = game.num_items();
  for (Index e = 0; e < n; ++e) {
    Rational best = -1;
    for (Index m : game.space.lower_contour(e)) best = std::max(best, mu[m]);
    for (Index m = 0; m < n; ++m)
      if (sigma(m, e) > 0 && mu[m] != best)
        out.push_back("(a) " + game.space.name(e) + " sends suboptimal " + game.space.name(m));
    if (mu[e] == best && sigma(e, e) != 1)
      out.push_back("(b) " + game.space.name(e) + " attains the max but is not truthful");
  }
  for (Index m = 0; m < n; ++m) {
    auto post = posterior_from_strategy(game, sigma, m);
    if (post && *post != mu[m]) out.push_back("(c) Bayes fails at " + game.space.name(m));
    if (!post && mu[m] != face_value_belief(game, m))
      out.push_back("(d) off-path belief at " + game.space.name(m) + " is not face value");
  }
  return out;
}

inline StarSolution solve_star(const EvidenceGame& game) {
  auto report = validate_game(game);
  if (!report.ok())
    throw std::invalid_argument("invalid game: " + report.violations.front().invariant);
  const Index n = game.num_items();
  StarSolution star;
  star.mu_star.beliefs.assign(n, 0);
  star.sigma_star.rows.assign(n, std::vector<Rational>(n, 0));
  star.level_of.assign(n, 0);
  star.polytope.rows.resize(n);

  std::vector<Rational> nu(n);
  for (Index e = 0; e < n; ++e) nu[e] = face_value_belief(game, e);

  std::vector<bool> alive(n, true);
  Index remaining = n;
  while (remaining > 0) {
    Rational v = detail::pooled_posterior(game, alive);
    std::vector<bool> top;
    while (true) {
      auto [gain, upset] = detail::max_weight_upset(game, alive, v);
      if (gain > 0) {
        v = detail::pooled_posterior(game, upset);
        continue;
      }
      top = std::move(upset);
      break;
    }
    const Index level = star.level_belief.size();
    star.level_belief.push_back(v);

    std::vector<Index> targets, pooled;
    for (Index e = 0; e < n; ++e) {
      if (!top[e]) continue;
      star.level_of[e] = level;
      (nu[e] >= v ? targets : pooled).push_back(e);
    }
    if (targets.empty()) throw SolverDefect("top pool has no truthful evidence");

    // source -> pooled type (deficit) -> target below it -> sink (surplus)
    const std::size_t source = n, sink = n + 1;
    FlowNetwork net(n + 2);
    Rational deficit = 0;
    std::vector<std::vector<std::pair<Index, std::size_t>>> arcs(n);
    for (Index e : pooled) {
      Rational d = v * game.mass(e) - game.mass_good(e);
      deficit += d;
      net.add_edge(source, e, d);
      for (Index t : targets)
        if (game.space.can_disclose(t, e)) arcs[e].push_back({t, net.add_edge(e, t, 0, true)});
    }
    for (Index t : targets) {
      Rational s = game.mass_good(t) - v * game.mass(t);
      if (s > 0) net.add_edge(t, sink, s);
    }
    if (net.max_flow(source, sink) != deficit)
      throw SolverDefect("pooling flow infeasible at belief " + to_string(v));

    for (Index t : targets) {
      star.mu_star[t] = v;
      star.sigma_star(t, t) = 1;
      star.polytope.rows[t] = {t, true, {}};
    }
    for (Index e : pooled) {
      star.mu_star[e] = nu[e];
      Rational d = v * game.mass(e) - game.mass_good(e);
      PolytopeRow row{e, false, {}};
      for (auto [t, id] : arcs[e]) {
        row.support.push_back(t);
        if (net.flow(id) > 0) star.sigma_star(t, e) = net.flow(id) / d;
      }
      star.polytope.rows[e] = std::move(row);
    }
    for (Index t : targets) {
      BayesEquality eq{t, game.mass_good(t) * (1 - v) - game.mass_bad(t) * v, {}};
      for (Index e : pooled)
        for (auto [target, id] : arcs[e])
          if (target == t)
            eq.terms.push_back({e, game.mass_good(e) * (1 - v) - game.mass_bad(e) * v});
      star.polytope.equalities.push_back(std::move(eq));
    }
    for (Index e = 0; e < n; ++e)
      if (top[e]) {
        alive[e] = false;
        --remaining;
      }
  }
  std::sort(star.polytope.equalities.begin(), star.polytope.equalities.end(),
            [](const BayesEquality& a, const BayesEquality& b) { return a.message < b.message; });

  auto failures = auxiliary_conditions(game, star.sigma_star, star.mu_star);
  if (!failures.empty()) throw SolverDefect("star verification failed: " + failures.front());
  return star;
}

inline bool sigma_star_membership(const StarSolution& star, const SenderStrategy& sigma) {
  const Index n = star.mu_star.beliefs.size();
  if (sigma.rows.size() != n) throw std::invalid_argument("dimension mismatch");
  for (const auto& row : sigma.rows)
    if (row.size() != n) throw std::invalid_argument("dimension mismatch");
  for (const auto& row : star.polytope.rows) {
    const Index e = row.type;
    Rational total = 0;
    for (Index m = 0; m < n; ++m) {
      if (sigma(m, e) < 0) return false;
      total += sigma(m, e);
    }
    if (total != 1) return false;
    if (row.truthful) {
      if (sigma(e, e) != 1) return false;
      continue;
    }
    for (Index m = 0; m < n; ++m)
      if (sigma(m, e) != 0 &&
          std::find(row.support.begin(), row.support.end(), m) == row.support.end())
        return false;
  }
  for (const auto& eq : star.polytope.equalities) {
    Rational lhs = eq.constant;
    for (const auto& [e, coef] : eq.terms) lhs += coef * sigma(eq.message, e);
    if (lhs != 0) return false;
  }
  return true;
}

struct A2Diagnostic {
  Index message;
  Rational face_value;
  Rational mu_star;
  std::optional<Rational> bayes;  // nullopt: 0/0 under sigma*
  bool min_matches = true;        // only meaningful when bayes is defined
  bool indicator = false;         // 1{mu*(m) <= nu(m)}
  Rational truthful_mass;         // sigma*(m|m)
  bool indicator_matches = false;
};

/// Substitutes the star solution into the min-formula for beliefs and the
/// truthfulness indicator. Mismatches are reported, not raised.
inline std::vector<A2Diagnostic> check_a2_diagnostics(const EvidenceGame& game,
                                                      const StarSolution& star) {
  std::vector<A2Diagnostic> out;
  for (Index m = 0; m < game.num_items(); ++m) {
    A2Diagnostic d;
    d.message = m;
    d.face_value = face_value_belief(game, m);
    d.mu_star = star.mu_star[m];
    Rational good = 0, total = 0;
    for (Index e = 0; e < game.num_items(); ++e) {
      good += star.sigma_star(m, e) * game.mass_good(e);
      total += star.sigma_star(m, e) * game.mass(e);
    }
    if (total > 0) {
      d.bayes = good / total;
      d.min_matches = std::min(d.face_value, *d.bayes) == d.mu_star;
    }
    d.indicator = d.mu_star <= d.face_value;
    d.truthful_mass = star.sigma_star(m, m);
    d.indicator_matches = (d.indicator ? Rational(1) : Rational(0)) == d.truthful_mass;
    out.push_back(std::move(d));
  }
  return out;
}

/// Vertices of Sigma*: basic solutions of the pooling flows, whose supports
/// are forests solved by leaf elimination. Stops after `limit` results.
inline std::vector<SenderStrategy> sigma_star_vertices(const EvidenceGame& game,
                                                       const StarSolution& star,
                                                       std::size_t limit = 4096) {
  const Index n = game.num_items();
  struct Arc {
    Index from, to;
  };
  std::vector<std::vector<SenderStrategy>> per_level;
  for (Index level = 0; level < star.level_belief.size(); ++level) {
    const Rational& v = star.level_belief[level];
    std::vector<Arc> arcs;
    std::vector<Rational> need(n, 0);  // outflow for pooled types, inflow for targets
    std::vector<bool> in_level(n, false);
    for (const auto& row : star.polytope.rows) {
      if (star.level_of[row.type] != level) continue;
      in_level[row.type] = true;
      if (row.truthful) {
        need[row.type] = game.mass_good(row.type) - v * game.mass(row.type);
      } else {
        need[row.type] = v * game.mass(row.type) - game.mass_good(row.type);
        for (Index t : row.support) arcs.push_back({row.type, t});
      }
    }
    std::vector<SenderStrategy> found;
    if (arcs.size() > 20) throw std::domain_error("too many pooling arcs for vertex enumeration");
    for (std::uint32_t mask = 0; mask < (1u << arcs.size()); ++mask) {
      std::vector<Arc> chosen;
      for (std::size_t i = 0; i < arcs.size(); ++i)
        if (mask & (1u << i)) chosen.push_back(arcs[i]);
      std::vector<Rational> rest = need;
      std::vector<std::optional<Rational>> flow(chosen.size());
      std::vector<bool> used(chosen.size(), false);
      bool progress = true, ok = true;
      while (progress && ok) {
        progress = false;
        for (Index node = 0; node < n && ok; ++node) {
          if (!in_level[node]) continue;
          std::size_t degree = 0, only = 0;
          for (std::size_t i = 0; i < chosen.size(); ++i)
            if (!used[i] && (chosen[i].from == node || chosen[i].to == node)) {
              ++degree;
              only = i;
            }
          if (degree != 1) continue;
          Rational f = rest[node];
          if (f <= 0) {
            ok = false;
            break;
          }
          flow[only] = f;
          used[only] = true;
          Index other = chosen[only].from == node ? chosen[only].to : chosen[only].from;
          rest[node] = 0;
          rest[other] -= f;
          progress = true;
        }
      }
      if (!ok) continue;
      bool complete = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
      for (Index node = 0; node < n && complete; ++node)
        if (in_level[node] && rest[node] != 0) complete = false;
      if (!complete) continue;
      SenderStrategy s{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))};
      for (const auto& row : star.polytope.rows)
        if (star.level_of[row.type] == level && row.truthful) s(row.type, row.type) = 1;
      for (std::size_t i = 0; i < chosen.size(); ++i)
        s(chosen[i].to, chosen[i].from) = *flow[i] / need[chosen[i].from];
      found.push_back(std::move(s));
    }
    per_level.push_back(std::move(found));
  }
  std::vector<SenderStrategy> out{
      SenderStrategy{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))}};
  for (const auto& options : per_level) {
    std::vector<SenderStrategy> next;
    for (const auto& base : out)
      for (const auto& opt : options) {
        if (next.size() >= limit) break;
        SenderStrategy merged = base;
        for (Index e = 0; e < n; ++e)
          for (Index m = 0; m < n; ++m)
            if (opt(m, e) != 0) merged(m, e) = opt(m, e);
        next.push_back(std::move(merged));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace evigame
