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

// Predicates judging a proposed assessment against each solution concept.
// Every comparison is exact; there are no tolerances here.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/game.hpp"
#include "evigame/perturbation.hpp"
#include "evigame/response.hpp"
#include "evigame/star.hpp"

namespace evigame {

/// rho(a|m) stored as rows[m][a].
struct ReceiverStrategy {
  std::vector<std::vector<Rational>> rows;

  const Rational& operator()(Index a, Index m) const { return rows[m][a]; }
  Rational& operator()(Index a, Index m) { return rows[m][a]; }

  bool operator==(const ReceiverStrategy&) const = default;
};

struct Assessment {
  SenderStrategy sigma;
  ReceiverStrategy rho;
  BeliefSystem mu;

  bool operator==(const Assessment&) const = default;
};

struct CheckViolation {
  std::string condition;
  std::string where;
  std::string witness;
};

struct CheckResult {
  std::vector<CheckViolation> violations;

  bool pass() const { return violations.empty(); }
  bool failed(const std::string& condition) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const CheckViolation& v) { return v.condition == condition; });
  }
  void add(std::string condition, std::string where, std::string witness) {
    violations.push_back({std::move(condition), std::move(where), std::move(witness)});
  }
  void merge(const CheckResult& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

inline ReceiverStrategy pure_receiver(const EvidenceGame& game, const std::vector<Index>& actions) {
  ReceiverStrategy r{std::vector<std::vector<Rational>>(
      game.num_items(), std::vector<Rational>(game.num_actions(), 0))};
  for (Index m = 0; m < game.num_items(); ++m) r(actions.at(m), m) = 1;
  return r;
}

/// Expected action after message m, which is the sender's payoff.
inline Rational sender_value(const EvidenceGame& game, const ReceiverStrategy& rho, Index m) {
  Rational v = 0;
  for (Index a = 0; a < game.num_actions(); ++a)
    if (rho(a, m) != 0) v += game.actions[a] * rho(a, m);
  return v;
}

inline void check_dimensions(const EvidenceGame& game, const Assessment& a) {
  const Index n = game.num_items(), k = game.num_actions();
  bool ok = a.sigma.rows.size() == n && a.rho.rows.size() == n && a.mu.beliefs.size() == n;
  for (Index i = 0; ok && i < n; ++i)
    ok = a.sigma.rows[i].size() == n && a.rho.rows[i].size() == k;
  if (!ok) throw std::invalid_argument("dimension mismatch between assessment and game");
}

namespace detail {

inline void check_components(const EvidenceGame& game, const Assessment& a, CheckResult& out) {
  for (const auto& err : sender_strategy_errors(game, a.sigma)) out.add("sender strategy", "", err);
  for (Index m = 0; m < game.num_items(); ++m) {
    Rational total = 0;
    for (Index act = 0; act < game.num_actions(); ++act) {
      if (a.rho(act, m) < 0) out.add("receiver strategy", game.space.name(m), "negative probability");
      total += a.rho(act, m);
    }
    if (total != 1) out.add("receiver strategy", game.space.name(m), "sums to " + to_string(total));
    if (a.mu[m] < 0 || a.mu[m] > 1)
      out.add("belief range", game.space.name(m), to_string(a.mu[m]));
  }
}

inline void check_receiver(const EvidenceGame& game, const Assessment& a, CheckResult& out) {
  for (Index m = 0; m < game.num_items(); ++m) {
    auto br = best_response_set(game, a.mu[m]);
    for (Index act = 0; act < game.num_actions(); ++act)
      if (a.rho(act, m) > 0 && std::find(br.begin(), br.end(), act) == br.end())
        out.add("receiver optimality", game.space.name(m),
                "action " + to_string(game.actions[act]) + " not optimal at belief " +
                    to_string(a.mu[m]));
  }
}

inline void check_bayes(const EvidenceGame& game, const Assessment& a, CheckResult& out) {
  for (Index m = 0; m < game.num_items(); ++m) {
    auto post = posterior_from_strategy(game, a.sigma, m);
    if (post && *post != a.mu[m])
      out.add("bayesian consistency", game.space.name(m),
              "belief " + to_string(a.mu[m]) + " but Bayes gives " + to_string(*post));
  }
}

inline Rational best_disclosure_value(const EvidenceGame& game, const ReceiverStrategy& rho,
                                      Index e) {
  Rational best;
  bool first = true;
  for (Index m : game.space.lower_contour(e)) {
    Rational v = sender_value(game, rho, m);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

}  // namespace detail

inline CheckResult verify_pbe(const EvidenceGame& game, const Assessment& a) {
  check_dimensions(game, a);
  CheckResult out;
  detail::check_components(game, a, out);
  for (Index e = 0; e < game.num_items(); ++e) {
    Rational best = detail::best_disclosure_value(game, a.rho, e);
    for (Index m = 0; m < game.num_items(); ++m) {
      if (a.sigma(m, e) <= 0) continue;
      Rational v = sender_value(game, a.rho, m);
      if (v != best)
        out.add("sender optimality", game.space.name(e),
                "sends " + game.space.name(m) + " worth " + to_string(v) + " < " + to_string(best));
    }
  }
  detail::check_receiver(game, a, out);
  detail::check_bayes(game, a, out);
  return out;
}

inline CheckResult verify_truth_leaning(const EvidenceGame& game, const Assessment& a) {
  CheckResult out = verify_pbe(game, a);
  for (Index e = 0; e < game.num_items(); ++e) {
    Rational best = detail::best_disclosure_value(game, a.rho, e);
    if (sender_value(game, a.rho, e) == best && a.sigma(e, e) != 1)
      out.add("truth-leaning", game.space.name(e),
              "truth is optimal but sigma(e|e) = " + to_string(a.sigma(e, e)));
  }
  for (Index m = 0; m < game.num_items(); ++m) {
    if (posterior_from_strategy(game, a.sigma, m)) continue;
    Rational nu = face_value_belief(game, m);
    if (a.mu[m] != nu)
      out.add("off-path beliefs", game.space.name(m),
              "belief " + to_string(a.mu[m]) + " but face value " + to_string(nu));
  }
  return out;
}

/// Purifiability through its characterization: sigma in Sigma*, mu = mu*,
/// receiver optimal at mu*, and equal beliefs get equal receiver behavior.
inline CheckResult verify_purifiable(const EvidenceGame& game, const Assessment& a,
                                     const StarSolution& star) {
  check_dimensions(game, a);
  if (star.mu_star.beliefs.size() != game.num_items())
    throw std::invalid_argument("star solution does not match game");
  CheckResult out;
  detail::check_components(game, a, out);
  if (!sigma_star_membership(star, a.sigma)) out.add("sigma in Sigma*", "", "membership fails");
  for (Index m = 0; m < game.num_items(); ++m) {
    if (a.mu[m] != star.mu_star[m])
      out.add("mu = mu*", game.space.name(m),
              to_string(a.mu[m]) + " != " + to_string(star.mu_star[m]));
    auto br = best_response_set(game, star.mu_star[m]);
    for (Index act = 0; act < game.num_actions(); ++act)
      if (a.rho(act, m) > 0 && std::find(br.begin(), br.end(), act) == br.end())
        out.add("receiver optimality", game.space.name(m),
                "action " + to_string(game.actions[act]) + " not optimal at mu*");
  }
  for (Index m = 0; m < game.num_items(); ++m)
    for (Index m2 = m + 1; m2 < game.num_items(); ++m2)
      if (star.mu_star[m] == star.mu_star[m2] && a.rho.rows[m] != a.rho.rows[m2])
        out.add("equal beliefs, equal response", game.space.name(m) + "," + game.space.name(m2),
                "receiver behavior differs at common belief " + to_string(star.mu_star[m]));
  return out;
}

/// PBE of the game with truth reward and truth floor. A type whose truthful
/// probability sits exactly at its floor is not required to find truth optimal.
inline CheckResult verify_perturbed_pbe(const EvidenceGame& game, const Perturbation& eps,
                                        const Assessment& a) {
  auto errors = perturbation_errors(game, eps);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  check_dimensions(game, a);
  CheckResult out;
  detail::check_components(game, a, out);
  const Index n = game.num_items();
  for (Index e = 0; e < n; ++e) {
    if (a.sigma(e, e) < eps.floor[e])
      out.add("truth floor", game.space.name(e),
              to_string(a.sigma(e, e)) + " < " + to_string(eps.floor[e]));
    auto payoff = [&](Index m) {
      Rational v = sender_value(game, a.rho, m);
      if (m == e) v += eps.reward[e];
      return v;
    };
    Rational best;
    bool first = true;
    for (Index m : game.space.lower_contour(e)) {
      Rational v = payoff(m);
      if (first || v > best) best = v;
      first = false;
    }
    for (Index m = 0; m < n; ++m) {
      if (a.sigma(m, e) <= 0) continue;
      if (m == e && a.sigma(e, e) <= eps.floor[e]) continue;
      Rational v = payoff(m);
      if (v != best)
        out.add("sender optimality", game.space.name(e),
                "sends " + game.space.name(m) + " worth " + to_string(v) + " < " + to_string(best));
    }
  }
  detail::check_receiver(game, a, out);
  detail::check_bayes(game, a, out);
  for (Index m = 0; m < n; ++m)
    if (!posterior_from_strategy(game, a.sigma, m))
      out.add("bayesian consistency", game.space.name(m), "message unreached in perturbed game");
  return out;
}

}  // namespace evigame
