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

// Equilibrium families: sets of assessments cut out by linear equalities,
// weak inequalities and strict inequalities over the strategy entries.
// Beliefs are not variables; they follow from sigma by Bayes' rule (or sit at
// face value off path), so every condition below is linear once the belief
// region of each message is fixed.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "evigame/check.hpp"
#include "evigame/lp.hpp"

namespace evigame {

enum class Relation { kLe, kEq, kGe, kLt, kGt };

struct Constraint {
  std::vector<Rational> coef;
  Relation rel = Relation::kEq;
  Rational rhs;
};

/// Positions of sigma(m|e) (m in LC(e)) and rho(a|m) in a flat vector.
class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(const EvidenceGame& game) : n_(game.num_items()), k_(game.num_actions()) {
    sigma_.assign(n_ * n_, kNone);
    for (Index e = 0; e < n_; ++e)
      for (Index m : game.space.lower_contour(e)) {
        sigma_[e * n_ + m] = names_.size();
        names_.push_back("sigma(" + game.space.name(m) + "|" + game.space.name(e) + ")");
      }
    rho_begin_ = names_.size();
    for (Index m = 0; m < n_; ++m)
      for (Index a = 0; a < k_; ++a)
        names_.push_back("rho(" + to_string(game.actions[a]) + "|" + game.space.name(m) + ")");
  }

  static constexpr Index kNone = static_cast<Index>(-1);

  Index size() const { return names_.size(); }
  Index items() const { return n_; }
  Index actions() const { return k_; }
  Index sigma(Index m, Index e) const { return sigma_[e * n_ + m]; }
  Index rho(Index a, Index m) const { return rho_begin_ + m * k_ + a; }
  bool is_sigma(Index i) const { return i < rho_begin_; }
  const std::string& name(Index i) const { return names_.at(i); }

 private:
  Index n_ = 0, k_ = 0, rho_begin_ = 0;
  std::vector<Index> sigma_;
  std::vector<std::string> names_;
};

struct Range {
  Rational lo, hi;
  bool lo_closed = true, hi_closed = true;

  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const {
    return (lo < x || (lo_closed && lo == x)) && (x < hi || (hi_closed && hi == x));
  }
};

inline std::string to_string(const Range& r) {
  if (r.degenerate()) return to_string(r.lo);
  return std::string(r.lo_closed ? "[" : "(") + to_string(r.lo) + ", " + to_string(r.hi) +
         (r.hi_closed ? "]" : ")");
}

struct Family {
  VariableLayout layout;
  std::vector<Constraint> rows;
  std::string label;
  std::vector<Rational> point;     // a member, strictly inside every strict row
  std::vector<Rational> off_path;  // beliefs for messages the point leaves unreached

  Constraint blank() const { return {std::vector<Rational>(layout.size(), 0), Relation::kEq, 0}; }
};

namespace detail {

/// LP over the closure, with an optional slack column t added to every
/// strict row (t <= 1). `extra` rows are appended as given.
inline LinearProgram family_lp(const std::vector<Constraint>& rows, Index dims, bool with_slack,
                               const std::vector<Constraint>& extra = {}) {
  LinearProgram lp;
  lp.num_vars = dims + (with_slack ? 1 : 0);
  auto push = [&](const Constraint& c) {
    std::vector<Rational> coef = c.coef;
    coef.resize(lp.num_vars, 0);
    Sense s = Sense::kEq;
    switch (c.rel) {
      case Relation::kLe: s = Sense::kLe; break;
      case Relation::kGe: s = Sense::kGe; break;
      case Relation::kEq: s = Sense::kEq; break;
      case Relation::kLt:
        s = Sense::kLe;
        if (with_slack) coef[dims] = 1;
        break;
      case Relation::kGt:
        s = Sense::kGe;
        if (with_slack) coef[dims] = -1;
        break;
    }
    lp.add(std::move(coef), s, c.rhs);
  };
  for (const auto& c : rows) push(c);
  for (const auto& c : extra) push(c);
  if (with_slack) {
    std::vector<Rational> cap(lp.num_vars, 0);
    cap[dims] = 1;
    lp.add(std::move(cap), Sense::kLe, 1);
  }
  return lp;
}

inline bool has_strict(const std::vector<Constraint>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const Constraint& c) {
    return c.rel == Relation::kLt || c.rel == Relation::kGt;
  });
}

}  // namespace detail

/// A point satisfying every row (strict ones strictly), or nullopt.
inline std::optional<std::vector<Rational>> strict_point(const std::vector<Constraint>& rows,
                                                         Index dims,
                                                         const std::vector<Constraint>& extra = {}) {
  bool strict = detail::has_strict(rows) || detail::has_strict(extra);
  LinearProgram lp = detail::family_lp(rows, dims, strict, extra);
  if (strict) {
    lp.objective.assign(lp.num_vars, 0);
    lp.objective[dims] = 1;
  }
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::kOptimal) return std::nullopt;
  if (strict && r.value <= 0) return std::nullopt;
  r.x.resize(dims);
  return r.x;
}

/// Optimum of `objective` over the closure (maximization).
inline LpResult optimize_closure(const Family& f, const std::vector<Rational>& objective,
                                 const std::vector<Constraint>& extra = {}) {
  LinearProgram lp = detail::family_lp(f.rows, f.layout.size(), false, extra);
  lp.objective = objective;
  return solve_lp(lp);
}

/// Exact range of one coordinate over the family, with open or closed ends.
inline Range variable_range(const Family& f, Index var) {
  const Index d = f.layout.size();
  std::vector<Rational> obj(d, 0);
  obj[var] = 1;
  LpResult hi = optimize_closure(f, obj);
  obj[var] = -1;
  LpResult lo = optimize_closure(f, obj);
  if (hi.status != LpStatus::kOptimal || lo.status != LpStatus::kOptimal)
    throw SolverDefect("range requested for an empty or unbounded family: " + f.label);
  Range r{-lo.value, hi.value, true, true};
  auto attained = [&](const Rational& v) {
    Constraint fix{std::vector<Rational>(d, 0), Relation::kEq, v};
    fix.coef[var] = 1;
    return strict_point(f.rows, d, {fix}).has_value();
  };
  r.lo_closed = attained(r.lo);
  r.hi_closed = r.lo == r.hi ? r.lo_closed : attained(r.hi);
  return r;
}

inline std::vector<Range> family_ranges(const Family& f) {
  std::vector<Range> out;
  for (Index i = 0; i < f.layout.size(); ++i) out.push_back(variable_range(f, i));
  return out;
}

inline bool is_singleton(const Family& f) {
  for (Index i = 0; i < f.layout.size(); ++i)
    if (!variable_range(f, i).degenerate()) return false;
  return true;
}

/// Membership of an exact point.
inline bool family_contains(const Family& f, const std::vector<Rational>& x) {
  for (const auto& c : f.rows) {
    Rational lhs = 0;
    for (Index i = 0; i < x.size(); ++i)
      if (c.coef[i] != 0) lhs += c.coef[i] * x[i];
    bool ok = false;
    switch (c.rel) {
      case Relation::kLe: ok = lhs <= c.rhs; break;
      case Relation::kEq: ok = lhs == c.rhs; break;
      case Relation::kGe: ok = lhs >= c.rhs; break;
      case Relation::kLt: ok = lhs < c.rhs; break;
      case Relation::kGt: ok = lhs > c.rhs; break;
    }
    if (!ok) return false;
  }
  return true;
}

/// Union of the ranges of one coordinate across several families.
inline std::vector<Range> combined_range(const std::vector<Family>& families, Index var) {
  std::vector<Range> parts;
  for (const auto& f : families) parts.push_back(variable_range(f, var));
  std::sort(parts.begin(), parts.end(), [](const Range& a, const Range& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Range> out;
  for (const auto& r : parts) {
    if (!out.empty()) {
      Range& last = out.back();
      bool touches = r.lo < last.hi || (r.lo == last.hi && (last.hi_closed || r.lo_closed));
      if (touches) {
        if (r.hi > last.hi) {
          last.hi = r.hi;
          last.hi_closed = r.hi_closed;
        } else if (r.hi == last.hi) {
          last.hi_closed = last.hi_closed || r.hi_closed;
        }
        if (r.lo == last.lo) last.lo_closed = last.lo_closed || r.lo_closed;
        continue;
      }
    }
    out.push_back(r);
  }
  return out;
}

/// Assessment at a point of the layout. Reached messages get Bayes beliefs,
/// the rest get `off_path[m]`.
inline Assessment assessment_at(const EvidenceGame& game, const VariableLayout& layout,
                                const std::vector<Rational>& x,
                                const std::vector<Rational>& off_path) {
  const Index n = game.num_items(), k = game.num_actions();
  Assessment a;
  a.sigma.rows.assign(n, std::vector<Rational>(n, 0));
  a.rho.rows.assign(n, std::vector<Rational>(k, 0));
  a.mu.beliefs.assign(n, 0);
  for (Index e = 0; e < n; ++e)
    for (Index m = 0; m < n; ++m)
      if (layout.sigma(m, e) != VariableLayout::kNone) a.sigma(m, e) = x[layout.sigma(m, e)];
  for (Index m = 0; m < n; ++m)
    for (Index act = 0; act < k; ++act) a.rho(act, m) = x[layout.rho(act, m)];
  for (Index m = 0; m < n; ++m) {
    auto post = posterior_from_strategy(game, a.sigma, m);
    a.mu[m] = post ? *post : off_path[m];
  }
  return a;
}

inline std::vector<Rational> point_of(const VariableLayout& layout, const Assessment& a) {
  std::vector<Rational> x(layout.size(), 0);
  for (Index e = 0; e < layout.items(); ++e)
    for (Index m = 0; m < layout.items(); ++m)
      if (layout.sigma(m, e) != VariableLayout::kNone) x[layout.sigma(m, e)] = a.sigma(m, e);
  for (Index m = 0; m < layout.items(); ++m)
    for (Index act = 0; act < layout.actions(); ++act) x[layout.rho(act, m)] = a.rho(act, m);
  return x;
}

inline Rational sup_distance(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational d = 0;
  for (Index i = 0; i < x.size(); ++i) d = std::max(d, Rational(abs(x[i] - y[i])));
  return d;
}

/// Point of the family nearest to `target` in sup norm, ties broken by L1
/// distance. Returns the distance and the point, or nullopt if the nearest
/// closure point lies outside the family itself.
struct Projection {
  Rational distance;
  std::vector<Rational> point;
};

namespace detail {

/// Rows of the sup-distance program around `target`: x (d), r, s (d).
inline std::vector<Constraint> projection_rows(const Family& f, const std::vector<Rational>& target) {
  const Index d = f.layout.size();
  // variables: x (d), r = sup distance, s (d) absolute deviations
  const Index r = d, s0 = d + 1, dims = 2 * d + 1;
  auto widen = [&](const Constraint& c) {
    Constraint w = c;
    w.coef.resize(dims, 0);
    return w;
  };
  std::vector<Constraint> rows;
  for (const auto& c : f.rows) rows.push_back(widen(c));
  for (Index i = 0; i < d; ++i) {
    Constraint up{std::vector<Rational>(dims, 0), Relation::kLe, target[i]};
    up.coef[i] = 1;
    up.coef[s0 + i] = -1;  // x - s <= target
    Constraint dn{std::vector<Rational>(dims, 0), Relation::kGe, target[i]};
    dn.coef[i] = 1;
    dn.coef[s0 + i] = 1;  // x + s >= target
    Constraint cap{std::vector<Rational>(dims, 0), Relation::kLe, 0};
    cap.coef[s0 + i] = 1;
    cap.coef[r] = -1;  // s <= r
    rows.push_back(up);
    rows.push_back(dn);
    rows.push_back(cap);
  }
  return rows;
}

}  // namespace detail

/// Sup-norm distance from `target` to the closure of the family.
inline std::optional<Rational> closure_distance(const Family& f, const std::vector<Rational>& target) {
  const Index d = f.layout.size(), dims = 2 * d + 1;
  LinearProgram lp = detail::family_lp(detail::projection_rows(f, target), dims, false);
  lp.objective.assign(dims, 0);
  lp.objective[d] = -1;
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) return std::nullopt;
  return res.x[d];
}

inline std::optional<Projection> project(const Family& f, const std::vector<Rational>& target) {
  const Index d = f.layout.size();
  const Index r = d, s0 = d + 1, dims = 2 * d + 1;
  auto rows = detail::projection_rows(f, target);
  auto first_distance = closure_distance(f, target);
  if (!first_distance) return std::nullopt;
  Rational best = *first_distance;
  LinearProgram lp;
  Constraint bound{std::vector<Rational>(dims, 0), Relation::kLe, best};
  bound.coef[r] = 1;
  rows.push_back(bound);
  lp = detail::family_lp(rows, dims, false);
  lp.objective.assign(dims, 0);
  for (Index i = 0; i < d; ++i) lp.objective[s0 + i] = -1;
  LpResult second = solve_lp(lp);
  if (second.status != LpStatus::kOptimal) throw SolverDefect("projection lost feasibility");
  std::vector<Rational> x(second.x.begin(), second.x.begin() + d);
  if (family_contains(f, x)) return Projection{best, x};
  // the L1 choice sits on an open face; take the most interior nearest point
  auto inner = strict_point(rows, dims);
  if (!inner) return std::nullopt;
  inner->resize(d);
  return Projection{best, *inner};
}

/// Lexicographically smallest point of the closure; nullopt if it is not a
/// member of the family.
inline std::optional<std::vector<Rational>> lexmin(const Family& f) {
  const Index d = f.layout.size();
  std::vector<Constraint> fixed;
  std::vector<Rational> x(d, 0);
  for (Index i = 0; i < d; ++i) {
    std::vector<Rational> obj(d, 0);
    obj[i] = -1;
    LpResult r = optimize_closure(f, obj, fixed);
    if (r.status != LpStatus::kOptimal) return std::nullopt;
    x[i] = -r.value;
    Constraint c{std::vector<Rational>(d, 0), Relation::kEq, x[i]};
    c.coef[i] = 1;
    fixed.push_back(c);
  }
  if (!family_contains(f, x)) return std::nullopt;
  return x;
}

}  // namespace evigame
