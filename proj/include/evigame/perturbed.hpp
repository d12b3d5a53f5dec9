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

// Exhaustive solver for the perturbed game: truth earns a bonus and must
// carry at least a floor probability. A structure fixes, per type, the
// messages sent besides the truth and whether truth sits exactly at its
// floor, plus a belief region for every message (all are reached).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/perturbation.hpp"
#include "evigame/structures.hpp"
#include "evigame/truth_leaning.hpp"

namespace evigame {

struct PerturbedResult {
  std::vector<Family> families;
  std::uint64_t structures = 0;
};

namespace detail {

struct TypeOption {
  std::uint32_t others = 0;  // messages besides truth, as a bitmask
  bool at_floor = false;
};

}  // namespace detail

inline PerturbedResult solve_perturbed(const EvidenceGame& game, const Perturbation& eps) {
  if (!validate_game(game).ok()) throw std::invalid_argument("invalid game");
  auto errors = perturbation_errors(game, eps);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  const Index n = game.num_items(), k = game.num_actions();
  if (n > 6 || k > 4) throw RegimeError("perturbed solver covers at most 6 items and 4 actions");

  const auto regions = belief_regions(game);
  const VariableLayout layout(game);
  std::vector<Rational> nu(n);
  for (Index m = 0; m < n; ++m) nu[m] = face_value_belief(game, m);

  std::vector<std::vector<Index>> choices(n);
  for (Index m = 0; m < n; ++m) {
    std::vector<Rational> low(n, 0), high(n, 0);
    for (Index e : game.space.upper_contour(m)) high[e] = 1 - eps.floor[e];
    low[m] = eps.floor[m];
    high[m] = 1;
    auto b = posterior_bounds(game, m, low, high);
    for (Index r = 0; r < regions.size(); ++r)
      if (regions[r].meets(b.lo, b.hi)) choices[m].push_back(r);
  }

  PerturbedResult result;
  std::vector<Index> pick(n, 0);
  while (true) {
    std::vector<ValueRange> v(n);
    for (Index m = 0; m < n; ++m) v[m] = value_range(game, regions[choices[m][pick[m]]]);
    std::vector<std::vector<detail::TypeOption>> options(n);
    bool ok = true;
    for (Index e = 0; e < n && ok; ++e) {
      std::uint32_t avail = 0;
      for (Index m : game.space.lower_contour(e))
        if (m != e) avail |= 1u << m;
      bool truth_alone = true;
      for (Index m : game.space.lower_contour(e)) truth_alone = truth_alone && can_reach(v[e], v[m], -eps.reward[e]);
      if (truth_alone) options[e].push_back({0, false});
      for (std::uint32_t sub = avail; sub; sub = (sub - 1) & avail) {
        auto items = detail::bits_to_items(sub, n);
        bool base = true;
        for (Index s : items) {
          for (Index m : game.space.lower_contour(e))
            if (m != e) base = base && can_reach(v[s], v[m]);
          for (Index s2 : items) base = base && can_equal(v[s], v[s2]);
        }
        if (!base) continue;
        bool floor_ok = true, interior_ok = true;
        for (Index s : items) {
          floor_ok = floor_ok && can_reach(v[s], v[e], eps.reward[e]);
          interior_ok = interior_ok && can_equal(v[s], v[e], eps.reward[e]);
        }
        if (floor_ok) options[e].push_back({sub, true});
        if (interior_ok) options[e].push_back({sub, false});
      }
      ok = !options[e].empty();
    }
    if (ok) {
      std::vector<Index> op(n, 0);
      while (true) {
        RowBuilder rb(game, layout);
        std::string label = "regions";
        for (Index m = 0; m < n; ++m)
          label += " " + game.space.name(m) + ":" + to_string(regions[choices[m][pick[m]]]);
        for (Index e = 0; e < n; ++e) {
          const auto& o = options[e][op[e]];
          auto items = detail::bits_to_items(o.others, n);
          label += " " + game.space.name(e) + "->" + detail::set_label(game, items) +
                   (o.at_floor ? "@floor" : "");
          for (Index m : game.space.lower_contour(e)) {
            if (m == e) continue;
            rb.fix_sigma(m, e, 0, (o.others >> m & 1) ? Relation::kGt : Relation::kEq);
          }
          rb.sigma_row_sums_to_one(e);
          if (o.others == 0) {
            rb.fix_sigma(e, e, 1);
            for (Index m : game.space.lower_contour(e))
              if (m != e) rb.value_gap(m, e, Relation::kLe, eps.reward[e]);
            continue;
          }
          rb.fix_sigma(e, e, eps.floor[e], o.at_floor ? Relation::kEq : Relation::kGt);
          for (Index s : items) {
            rb.value_gap(s, e, o.at_floor ? Relation::kGe : Relation::kEq, eps.reward[e]);
            for (Index m : game.space.lower_contour(e))
              if (m != e) rb.value_gap(s, m, Relation::kGe, 0);
          }
        }
        for (Index m = 0; m < n; ++m) {
          rb.belief_in(m, regions[choices[m][pick[m]]]);
          rb.receiver_row(m, regions[choices[m][pick[m]]]);
        }
        ++result.structures;
        auto point = strict_point(rb.rows, layout.size());
        if (point) {
          Family f{layout, std::move(rb.rows), label, *point, nu};
          auto a = assessment_at(game, layout, f.point, nu);
          auto check = verify_perturbed_pbe(game, eps, a);
          if (!check.pass())
            throw SolverDefect("perturbed structure " + label + " produced a point failing " +
                               check.violations.front().condition);
          result.families.push_back(std::move(f));
        }
        Index i = 0;
        while (i < n && ++op[i] == options[i].size()) op[i++] = 0;
        if (i == n) break;
      }
    }
    Index i = 0;
    while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  if (result.families.empty())
    throw SolverDefect("no equilibrium of the perturbed game found");
  return result;
}

}  // namespace evigame
