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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/game.hpp"
#include "evigame/sampling.hpp"

namespace evigame {

struct RandomGameParams {
  Index items = 3;
  double density = 0.5;  // chance that a lower-indexed item is below a higher one
  Index actions = 2;
  std::uint64_t seed = 1;
};

namespace detail {

class GameDice {
 public:
  explicit GameDice(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, stream) {}
  long between(long lo, long hi) {
    return lo + static_cast<long>(rng_.next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return rng_.uniform(); }

 private:
  IndexedStream rng_;
};

inline void sample_payoffs(EvidenceGame& g, GameDice& dice) {
  const Index k = g.num_actions();
  g.payoff_good.assign(k, 0);
  g.payoff_bad.assign(k, 0);
  // differences start anywhere and rise by a positive step, which is the
  // increasing-differences requirement built in rather than repaired
  Rational diff = ratio(dice.between(-12, 4), 4);
  for (Index a = 0; a < k; ++a) {
    if (a > 0) diff += ratio(dice.between(1, 8), 4);
    g.payoff_bad[a] = ratio(dice.between(-12, 12), 4);
    g.payoff_good[a] = g.payoff_bad[a] + diff;
  }
}

}  // namespace detail

/// Deterministic random valid game. Masses have denominators at most 100.
inline EvidenceGame random_game(const RandomGameParams& p) {
  if (p.items < 1) throw std::invalid_argument("need at least one evidence item");
  if (p.actions < 2) throw std::invalid_argument("need at least two actions");
  detail::GameDice dice(p.seed);
  const Index n = p.items;
  EvidenceGame g;
  g.prior = ratio(dice.between(5, 95), 100);

  std::vector<std::string> names;
  for (Index i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (Index i = 0; i < n; ++i) below[i][i] = true;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i)
      if (dice.unit() < p.density) below[i][j] = true;
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (below[i][k] && below[k][j]) below[i][j] = true;
  g.space = EvidenceSpace(names, below);

  const long cap = std::max<long>(1, 100 / static_cast<long>(n));
  std::vector<long> wg(n), wb(n);
  long sg = 0, sb = 0;
  while (true) {
    sg = sb = 0;
    bool every_item = true;
    for (Index e = 0; e < n; ++e) {
      wg[e] = dice.between(0, cap);
      wb[e] = dice.between(0, cap);
      sg += wg[e];
      sb += wb[e];
      every_item = every_item && wg[e] + wb[e] > 0;
    }
    if (every_item && sg > 0 && sb > 0) break;
  }
  for (Index e = 0; e < n; ++e) {
    g.f_good.push_back(ratio(wg[e], sg));
    g.f_bad.push_back(ratio(wb[e], sb));
  }

  Rational a = 0;
  for (Index i = 0; i < p.actions; ++i) {
    if (i > 0) a += dice.between(1, 3);
    g.actions.push_back(a);
  }
  detail::sample_payoffs(g, dice);
  return g;
}

/// Same game with fresh receiver payoffs (actions kept).
inline EvidenceGame resample_payoffs(const EvidenceGame& game, std::uint64_t seed) {
  EvidenceGame g = game;
  detail::GameDice dice(seed, 1);
  detail::sample_payoffs(g, dice);
  return g;
}

}  // namespace evigame
