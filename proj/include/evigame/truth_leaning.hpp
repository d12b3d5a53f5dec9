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

// Exhaustive search for truth-leaning equilibria. In such an equilibrium
// every reached message is sent truthfully by its own type, so a candidate
// structure is: the truthful set T, for every other type a support inside
// T, and a belief region for every message of T. Each structure is an
// exact linear system solved by LP.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/structures.hpp"

namespace evigame {

class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TruthLeaningResult {
  std::vector<Family> families;
  std::vector<std::string> refuted;  // every structure ruled out, with the reason
  std::uint64_t structures = 0;      // full structures examined by LP

  bool found() const { return !families.empty(); }
};

namespace detail {

inline std::string set_label(const EvidenceGame& g, const std::vector<Index>& items) {
  std::string s = "{";
  for (Index i = 0; i < items.size(); ++i) s += (i ? "," : "") + g.space.name(items[i]);
  return s + "}";
}

inline std::vector<Index> bits_to_items(std::uint32_t mask, Index n) {
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

}  // namespace detail

inline TruthLeaningResult find_truth_leaning(const EvidenceGame& game) {
  if (!validate_game(game).ok()) throw std::invalid_argument("invalid game");
  const Index n = game.num_items(), k = game.num_actions();
  if (n > 8 || k > 5) throw RegimeError("truth-leaning search covers at most 8 items and 5 actions");
  using detail::set_label;

  const auto regions = belief_regions(game);
  const VariableLayout layout(game);
  std::vector<Rational> nu(n);
  std::vector<Index> nu_region(n);
  for (Index m = 0; m < n; ++m) {
    nu[m] = face_value_belief(game, m);
    nu_region[m] = region_of(regions, nu[m]);
  }
  TruthLeaningResult result;

  for (std::uint32_t tmask = 1; tmask < (1u << n); ++tmask) {
    auto truthful = detail::bits_to_items(tmask, n);
    std::string tlabel = "T=" + set_label(game, truthful);
    std::vector<Index> pooled;
    std::vector<std::uint32_t> reach(n, 0);  // truthful messages each type can send
    bool stranded = false;
    for (Index e = 0; e < n; ++e) {
      if (tmask >> e & 1) continue;
      pooled.push_back(e);
      for (Index t : truthful)
        if (game.space.can_disclose(t, e)) reach[e] |= 1u << t;
      if (reach[e] == 0) {
        result.refuted.push_back(tlabel + ": " + game.space.name(e) + " has no truthful message");
        stranded = true;
        break;
      }
    }
    if (stranded) continue;

    // belief bounds and candidate regions per truthful message
    std::vector<std::vector<Index>> choices(truthful.size());
    bool empty = false;
    for (Index i = 0; i < truthful.size(); ++i) {
      Index t = truthful[i];
      std::vector<Rational> low(n, 0), high(n, 0);
      low[t] = high[t] = 1;
      for (Index e : pooled)
        if (reach[e] >> t & 1) high[e] = 1;
      auto b = posterior_bounds(game, t, low, high);
      for (Index r = 0; r < regions.size(); ++r)
        if (regions[r].meets(b.lo, b.hi)) choices[i].push_back(r);
      if (choices[i].empty()) empty = true;
    }
    if (empty) {
      result.refuted.push_back(tlabel + ": no feasible belief region");
      continue;
    }

    std::vector<Index> pick(truthful.size(), 0);
    while (true) {
      std::vector<Index> region(nu_region);
      for (Index i = 0; i < truthful.size(); ++i) region[truthful[i]] = choices[i][pick[i]];
      std::vector<ValueRange> v(n);
      for (Index m = 0; m < n; ++m) v[m] = value_range(game, regions[region[m]]);
      std::string rlabel = tlabel + " regions";
      for (Index t : truthful) rlabel += " " + game.space.name(t) + ":" + to_string(regions[region[t]]);

      bool ok = true;
      for (Index t : truthful)
        for (Index m : game.space.lower_contour(t))
          ok = ok && can_reach(v[t], v[m]);
      std::vector<std::vector<std::uint32_t>> supports(pooled.size());
      for (Index i = 0; ok && i < pooled.size(); ++i) {
        Index e = pooled[i];
        for (std::uint32_t sub = reach[e]; sub; sub = (sub - 1) & reach[e]) {
          bool fine = true;
          for (Index s : detail::bits_to_items(sub, n)) {
            fine = fine && can_exceed(v[s], v[e]);
            for (Index m : game.space.lower_contour(e)) fine = fine && can_reach(v[s], v[m]);
            for (Index s2 : detail::bits_to_items(sub, n)) fine = fine && can_equal(v[s], v[s2]);
          }
          if (fine) supports[i].push_back(sub);
        }
        ok = !supports[i].empty();
      }
      if (!ok) {
        result.refuted.push_back(rlabel + ": sender values cannot be consistent");
      } else {
        std::vector<Index> sp(pooled.size(), 0);
        while (true) {
          RowBuilder rb(game, layout);
          std::string label = rlabel;
          for (Index t : truthful) {
            for (Index m : game.space.lower_contour(t)) {
              rb.fix_sigma(m, t, m == t ? 1 : 0);
              rb.value_gap(t, m, Relation::kGe, 0);
            }
            rb.belief_in(t, regions[region[t]]);
          }
          for (Index i = 0; i < pooled.size(); ++i) {
            Index e = pooled[i];
            std::uint32_t sub = supports[i][sp[i]];
            auto items = detail::bits_to_items(sub, n);
            label += " S(" + game.space.name(e) + ")=" + set_label(game, items);
            for (Index m : game.space.lower_contour(e))
              rb.fix_sigma(m, e, 0, (sub >> m & 1) ? Relation::kGt : Relation::kEq);
            rb.sigma_row_sums_to_one(e);
            for (Index s : items) {
              rb.value_gap(s, e, Relation::kGt, 0);
              for (Index m : game.space.lower_contour(e)) rb.value_gap(s, m, Relation::kGe, 0);
            }
          }
          for (Index m = 0; m < n; ++m) rb.receiver_row(m, regions[region[m]]);
          ++result.structures;
          auto point = strict_point(rb.rows, layout.size());
          if (point) {
            Family f{layout, std::move(rb.rows), label, *point, nu};
            auto a = assessment_at(game, layout, f.point, nu);
            auto check = verify_truth_leaning(game, a);
            if (!check.pass())
              throw SolverDefect("truth-leaning structure " + label + " produced a point failing " +
                                 check.violations.front().condition);
            result.families.push_back(std::move(f));
          } else {
            result.refuted.push_back(label + ": infeasible");
          }
          Index i = 0;
          while (i < sp.size() && ++sp[i] == supports[i].size()) sp[i++] = 0;
          if (i == sp.size()) break;
        }
      }
      Index i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return result;
}

}  // namespace evigame
