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

// Finite evidence games: the evidence preorder, the two state-contingent
// evidence distributions, the receiver's action set and payoffs, plus the
// belief arithmetic every solver shares.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/rational.hpp"

namespace evigame {

using Index = std::size_t;

/// Raised when a solver reaches a state its own invariants rule out.
class SolverDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Evidence identifiers plus the disclosure relation. `feasible[m][e]` is
/// true when evidence e allows disclosing m.
class EvidenceSpace {
 public:
  EvidenceSpace() = default;
  EvidenceSpace(std::vector<std::string> items,
                std::vector<std::vector<bool>> feasible)
      : items_(std::move(items)), feasible_(std::move(feasible)) {}

  Index size() const { return items_.size(); }
  const std::vector<std::string>& items() const { return items_; }
  const std::string& name(Index e) const { return items_.at(e); }
  const std::vector<std::vector<bool>>& matrix() const { return feasible_; }

  bool can_disclose(Index m, Index e) const { return feasible_[m][e]; }

  std::optional<Index> find(const std::string& id) const {
    for (Index i = 0; i < items_.size(); ++i)
      if (items_[i] == id) return i;
    return std::nullopt;
  }

  Index index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw std::out_of_range("unknown evidence identifier: " + id);
    return *i;
  }

  /// LC(e), ascending by index.
  std::vector<Index> lower_contour(Index e) const {
    check(e);
    std::vector<Index> out;
    for (Index m = 0; m < size(); ++m)
      if (feasible_[m][e]) out.push_back(m);
    return out;
  }

  /// UC(m): every evidence from which m can be disclosed.
  std::vector<Index> upper_contour(Index m) const {
    check(m);
    std::vector<Index> out;
    for (Index e = 0; e < size(); ++e)
      if (feasible_[m][e]) out.push_back(e);
    return out;
  }

 private:
  void check(Index e) const {
    if (e >= size())
      throw std::out_of_range("evidence index out of range: " +
                              std::to_string(e));
  }

  std::vector<std::string> items_;
  std::vector<std::vector<bool>> feasible_;
};

struct EvidenceGame {
  Rational prior;  // probability of the good state
  EvidenceSpace space;
  std::vector<Rational> f_good;
  std::vector<Rational> f_bad;
  std::vector<Rational> actions;  // strictly increasing; sender value = action
  std::vector<Rational> payoff_good;
  std::vector<Rational> payoff_bad;

  Index num_items() const { return space.size(); }
  Index num_actions() const { return actions.size(); }

  Rational mass_good(Index e) const { return f_good[e] * prior; }
  Rational mass_bad(Index e) const { return f_bad[e] * (1 - prior); }
  Rational mass(Index e) const { return mass_good(e) + mass_bad(e); }

  /// Expected receiver payoff of action a at belief mu.
  Rational receiver_utility(Index a, const Rational& mu) const {
    return mu * payoff_good[a] + (1 - mu) * payoff_bad[a];
  }

  std::optional<Index> find_action(const Rational& value) const {
    for (Index a = 0; a < actions.size(); ++a)
      if (actions[a] == value) return a;
    return std::nullopt;
  }
};

/// sigma(m|e) stored as rows[e][m].
struct SenderStrategy {
  std::vector<std::vector<Rational>> rows;

  const Rational& operator()(Index m, Index e) const { return rows[e][m]; }
  Rational& operator()(Index m, Index e) { return rows[e][m]; }

  bool operator==(const SenderStrategy&) const = default;
};

struct BeliefSystem {
  std::vector<Rational> beliefs;

  const Rational& operator[](Index m) const { return beliefs[m]; }
  Rational& operator[](Index m) { return beliefs[m]; }

  bool operator==(const BeliefSystem&) const = default;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& invariant) const {
    for (const auto& v : violations)
      if (v.invariant == invariant) return true;
    return false;
  }
};

inline ValidationReport validate_game(const EvidenceGame& game) {
  ValidationReport report;
  auto flag = [&](std::string inv, std::string detail) {
    report.violations.push_back({std::move(inv), std::move(detail)});
  };
  const auto& items = game.space.items();
  const Index n = items.size();

  if (game.prior <= 0 || game.prior >= 1)
    flag("prior", "prior " + to_string(game.prior) + " not in (0,1)");

  if (n == 0) flag("identifiers", "evidence list is empty");
  for (Index i = 0; i < n; ++i) {
    if (items[i].empty()) flag("identifiers", "empty identifier at " + std::to_string(i));
    for (Index j = i + 1; j < n; ++j)
      if (items[i] == items[j]) flag("identifiers", "duplicate identifier " + items[i]);
  }

  const auto& rel = game.space.matrix();
  bool square = rel.size() == n;
  for (const auto& row : rel) square = square && row.size() == n;
  if (!square) {
    flag("relation shape", "feasibility matrix is not |E| x |E|");
  } else {
    for (Index e = 0; e < n; ++e)
      if (!rel[e][e]) flag("reflexivity", items[e] + " cannot disclose itself");
    for (Index m = 0; m < n; ++m)
      for (Index mid = 0; mid < n; ++mid)
        for (Index e = 0; e < n; ++e)
          if (rel[m][mid] && rel[mid][e] && !rel[m][e])
            flag("transitivity", items[m] + " <= " + items[mid] + " <= " +
                                     items[e] + " but not " + items[m] +
                                     " <= " + items[e]);
  }

  auto check_distribution = [&](const std::vector<Rational>& f,
                                const std::string& label) {
    if (f.size() != n) {
      flag("distribution " + label, "wrong number of masses");
      return;
    }
    Rational total = 0;
    for (Index e = 0; e < n; ++e) {
      if (f[e] < 0) flag("distribution " + label, "negative mass at " + items[e]);
      total += f[e];
    }
    if (total != 1)
      flag("distribution " + label, "masses sum to " + to_string(total));
  };
  check_distribution(game.f_good, "fG");
  check_distribution(game.f_bad, "fB");
  if (game.f_good.size() == n && game.f_bad.size() == n)
    for (Index e = 0; e < n; ++e)
      if (game.f_good[e] + game.f_bad[e] <= 0)
        flag("zero-mass evidence", items[e] + " has fG+fB = 0");

  const Index k = game.actions.size();
  if (k == 0) flag("actions", "action set is empty");
  for (Index a = 1; a < k; ++a)
    if (game.actions[a] <= game.actions[a - 1])
      flag("actions", "actions not strictly increasing at position " +
                          std::to_string(a));
  if (game.payoff_good.size() != k || game.payoff_bad.size() != k) {
    flag("payoff table", "payoff maps do not cover the action set");
  } else {
    for (Index a = 1; a < k; ++a) {
      Rational lo = game.payoff_good[a - 1] - game.payoff_bad[a - 1];
      Rational hi = game.payoff_good[a] - game.payoff_bad[a];
      if (hi <= lo)
        flag("increasing differences",
             "u(G)-u(B) is " + to_string(lo) + " at " +
                 to_string(game.actions[a - 1]) + " but " + to_string(hi) +
                 " at " + to_string(game.actions[a]));
    }
  }
  return report;
}

inline std::vector<Index> feasible_set(const EvidenceSpace& space, Index e) {
  return space.lower_contour(e);
}

inline std::vector<Index> feasible_set(const EvidenceSpace& space,
                                       const std::string& e) {
  return space.lower_contour(space.index_of(e));
}

/// nu(m): the belief held if m is taken to be the sender's actual evidence.
inline Rational face_value_belief(const EvidenceGame& game, Index m) {
  if (m >= game.num_items()) throw std::out_of_range("unknown evidence index");
  Rational total = game.mass(m);
  if (total == 0) throw std::domain_error("face value undefined for zero-mass evidence");
  return game.mass_good(m) / total;
}

inline Rational face_value_belief(const EvidenceGame& game, const std::string& m) {
  return face_value_belief(game, game.space.index_of(m));
}

/// Probability that message m is sent under sigma.
inline Rational message_probability(const EvidenceGame& game,
                                    const SenderStrategy& sigma, Index m) {
  Rational total = 0;
  for (Index e = 0; e < game.num_items(); ++e)
    if (sigma(m, e) != 0) total += sigma(m, e) * game.mass(e);
  return total;
}

/// Bayes posterior on m, or nullopt when sigma never sends m.
inline std::optional<Rational> posterior_from_strategy(
    const EvidenceGame& game, const SenderStrategy& sigma, Index m) {
  if (m >= game.num_items()) throw std::out_of_range("unknown evidence index");
  Rational good = 0, total = 0;
  for (Index e = 0; e < game.num_items(); ++e) {
    if (!game.space.can_disclose(m, e) || sigma(m, e) == 0) continue;
    good += sigma(m, e) * game.mass_good(e);
    total += sigma(m, e) * game.mass(e);
  }
  if (total == 0) return std::nullopt;
  return Rational(good / total);
}

inline SenderStrategy truthful_strategy(const EvidenceGame& game) {
  const Index n = game.num_items();
  SenderStrategy s{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))};
  for (Index e = 0; e < n; ++e) s(e, e) = 1;
  return s;
}

/// Problems with sigma as a strategy of `game` (row sums, feasibility).
inline std::vector<std::string> sender_strategy_errors(
    const EvidenceGame& game, const SenderStrategy& sigma) {
  std::vector<std::string> out;
  const Index n = game.num_items();
  if (sigma.rows.size() != n) {
    out.push_back("sender strategy has wrong number of rows");
    return out;
  }
  for (Index e = 0; e < n; ++e) {
    if (sigma.rows[e].size() != n) {
      out.push_back("row " + game.space.name(e) + " has wrong length");
      continue;
    }
    Rational total = 0;
    for (Index m = 0; m < n; ++m) {
      const Rational& p = sigma(m, e);
      if (p < 0) out.push_back("negative probability in row " + game.space.name(e));
      if (p > 0 && !game.space.can_disclose(m, e))
        out.push_back(game.space.name(e) + " cannot disclose " + game.space.name(m));
      total += p;
    }
    if (total != 1) out.push_back("row " + game.space.name(e) + " sums to " + to_string(total));
  }
  return out;
}

}  // namespace evigame
