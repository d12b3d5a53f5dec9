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

// Shared pieces of the structure enumerators: belief regions between
// indifference thresholds and the linear rows that pin a structure down.

#include <algorithm>
#include <string>
#include <vector>

#include "evigame/families.hpp"
#include "evigame/response.hpp"

namespace evigame {

/// A maximal belief set on which the receiver's best-response set is
/// constant: an open interval between thresholds (closed at 0 or 1), or a
/// single threshold.
struct BeliefRegion {
  bool point = false;
  Rational lo, hi;          // for a point region lo == hi == threshold
  bool lo_open = false, hi_open = false;
  std::vector<Index> actions;  // best responses throughout the region

  bool contains(const Rational& mu) const {
    if (point) return mu == lo;
    return (lo_open ? mu > lo : mu >= lo) && (hi_open ? mu < hi : mu <= hi);
  }
  /// Whether the region meets the closed interval [a, b].
  bool meets(const Rational& a, const Rational& b) const {
    if (point) return a <= lo && lo <= b;
    bool below_hi = hi_open ? a < hi : a <= hi;
    bool above_lo = lo_open ? b > lo : b >= lo;
    return below_hi && above_lo;
  }
};

inline std::string to_string(const BeliefRegion& r) {
  if (r.point) return "{" + to_string(r.lo) + "}";
  return std::string(r.lo_open ? "(" : "[") + to_string(r.lo) + "," + to_string(r.hi) +
         (r.hi_open ? ")" : "]");
}

inline std::vector<BeliefRegion> belief_regions(const EvidenceGame& game) {
  std::vector<Rational> cuts;
  for (const auto& t : indifference_thresholds(game)) cuts.push_back(t.belief);
  std::vector<BeliefRegion> out;
  Rational lo = 0;
  bool lo_open = false;
  auto interval = [&](const Rational& hi, bool hi_open) {
    if (lo > hi || (lo == hi && (lo_open || hi_open))) return;
    BeliefRegion r;
    r.lo = lo;
    r.hi = hi;
    r.lo_open = lo_open;
    r.hi_open = hi_open;
    r.actions = best_response_set(game, (lo + hi) / 2);
    out.push_back(r);
  };
  for (const auto& c : cuts) {
    interval(c, true);
    BeliefRegion p;
    p.point = true;
    p.lo = p.hi = c;
    p.actions = best_response_set(game, c);
    out.push_back(p);
    lo = c;
    lo_open = true;
  }
  interval(1, false);
  return out;
}

inline Index region_of(const std::vector<BeliefRegion>& regions, const Rational& mu) {
  for (Index i = 0; i < regions.size(); ++i)
    if (regions[i].contains(mu)) return i;
  throw SolverDefect("belief " + to_string(mu) + " outside every region");
}

struct ValueRange {
  Rational lo, hi;
};

inline ValueRange value_range(const EvidenceGame& game, const BeliefRegion& r) {
  return {game.actions[r.actions.front()], game.actions[r.actions.back()]};
}

/// Extreme posteriors of message m when each type e may contribute any
/// weight in [low[e], high[e]] (weights on masses). Exact: the optimum of a
/// ratio over a box takes every contributor whose own ratio improves it.
inline ValueRange posterior_bounds(const EvidenceGame& game, Index m,
                                   const std::vector<Rational>& low,
                                   const std::vector<Rational>& high) {
  struct Item {
    Rational ratio, good, total;
  };
  Rational base_good = 0, base_total = 0;
  std::vector<Item> extra;
  for (Index e = 0; e < game.num_items(); ++e) {
    if (!game.space.can_disclose(m, e)) continue;
    base_good += low[e] * game.mass_good(e);
    base_total += low[e] * game.mass(e);
    Rational w = high[e] - low[e];
    if (w > 0) extra.push_back({face_value_belief(game, e), w * game.mass_good(e), w * game.mass(e)});
  }
  std::sort(extra.begin(), extra.end(), [](const Item& a, const Item& b) { return a.ratio < b.ratio; });
  auto sweep = [&](bool lower) {
    Rational g = base_good, t = base_total;
    auto consider = [&](const Item& it) {
      if (t == 0 || (lower ? it.ratio < g / t : it.ratio > g / t)) {
        g += it.good;
        t += it.total;
        return true;
      }
      return false;
    };
    if (lower) {
      for (const auto& it : extra)
        if (!consider(it)) break;
    } else {
      for (auto it = extra.rbegin(); it != extra.rend(); ++it)
        if (!consider(*it)) break;
    }
    if (t == 0) throw SolverDefect("posterior bound with no mass");
    return Rational(g / t);
  };
  return {sweep(true), sweep(false)};
}

/// Row builders over a VariableLayout.
class RowBuilder {
 public:
  RowBuilder(const EvidenceGame& game, const VariableLayout& layout)
      : game_(game), layout_(layout) {}

  std::vector<Constraint> rows;

  Constraint blank(Relation rel, Rational rhs = 0) const {
    return {std::vector<Rational>(layout_.size(), 0), rel, std::move(rhs)};
  }

  void fix_sigma(Index m, Index e, const Rational& value, Relation rel = Relation::kEq) {
    auto c = blank(rel, value);
    c.coef[layout_.sigma(m, e)] = 1;
    rows.push_back(std::move(c));
  }

  void sigma_row_sums_to_one(Index e) {
    auto c = blank(Relation::kEq, 1);
    for (Index m : game_.space.lower_contour(e)) c.coef[layout_.sigma(m, e)] = 1;
    rows.push_back(std::move(c));
  }

  /// rho(.|m) is a distribution over the region's actions.
  void receiver_row(Index m, const BeliefRegion& region) {
    auto sum = blank(Relation::kEq, 1);
    for (Index a = 0; a < game_.num_actions(); ++a) {
      bool allowed = std::find(region.actions.begin(), region.actions.end(), a) != region.actions.end();
      if (allowed) {
        sum.coef[layout_.rho(a, m)] = 1;
      } else {
        auto z = blank(Relation::kEq, 0);
        z.coef[layout_.rho(a, m)] = 1;
        rows.push_back(std::move(z));
      }
    }
    rows.push_back(std::move(sum));
  }

  /// The Bayes posterior of reached message m lies in `region`.
  void belief_in(Index m, const BeliefRegion& region) {
    auto side = [&](const Rational& theta, Relation rel) {
      auto c = blank(rel, 0);
      for (Index e : game_.space.upper_contour(m))
        c.coef[layout_.sigma(m, e)] = game_.mass_good(e) - theta * game_.mass(e);
      rows.push_back(std::move(c));
    };
    if (region.point) {
      side(region.lo, Relation::kEq);
      return;
    }
    if (region.lo_open) side(region.lo, Relation::kGt);
    if (region.hi_open) side(region.hi, Relation::kLt);
  }

  /// V(x) - V(y) rel rhs, where V is the expected action.
  void value_gap(Index x, Index y, Relation rel, const Rational& rhs) {
    auto c = blank(rel, rhs);
    for (Index a = 0; a < game_.num_actions(); ++a) {
      c.coef[layout_.rho(a, x)] += game_.actions[a];
      c.coef[layout_.rho(a, y)] -= game_.actions[a];
    }
    rows.push_back(std::move(c));
  }

 private:
  const EvidenceGame& game_;
  const VariableLayout& layout_;
};

/// Rational interval test helpers for pruning with value ranges.
inline bool can_reach(const ValueRange& x, const ValueRange& y, const Rational& gap = 0) {
  return x.hi >= y.lo + gap;  // some V(x) - V(y) >= gap
}
inline bool can_exceed(const ValueRange& x, const ValueRange& y, const Rational& gap = 0) {
  return x.hi > y.lo + gap;
}
inline bool can_equal(const ValueRange& x, const ValueRange& y, const Rational& gap = 0) {
  return x.hi >= y.lo + gap && x.lo <= y.hi + gap;
}

}  // namespace evigame
