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

#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/game.hpp"

namespace evigame {

/// Truth-telling reward and minimum truthful probability per evidence.
struct Perturbation {
  std::vector<Rational> reward;
  std::vector<Rational> floor;

  static Perturbation uniform(Index n, const Rational& reward, const Rational& floor) {
    return {std::vector<Rational>(n, reward), std::vector<Rational>(n, floor)};
  }

  Perturbation scaled(const Rational& factor) const {
    Perturbation p = *this;
    for (auto& r : p.reward) r *= factor;
    for (auto& f : p.floor) f *= factor;
    return p;
  }
};

inline std::vector<std::string> perturbation_errors(const EvidenceGame& game,
                                                    const Perturbation& eps) {
  std::vector<std::string> out;
  if (eps.reward.size() != game.num_items() || eps.floor.size() != game.num_items()) {
    out.push_back("perturbation must cover every evidence item");
    return out;
  }
  for (Index e = 0; e < game.num_items(); ++e) {
    if (eps.reward[e] <= 0) out.push_back("reward at " + game.space.name(e) + " must be positive");
    if (eps.floor[e] <= 0 || eps.floor[e] >= 1)
      out.push_back("floor at " + game.space.name(e) + " must lie in (0,1)");
  }
  return out;
}

}  // namespace evigame
