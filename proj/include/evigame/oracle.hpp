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

// Brute-force grid oracle and its comparison against solver families. The
// oracle shares no code with the structure enumerators: it scans sender
// strategies on a grid, derives beliefs by Bayes' rule in scaled integers,
// and keeps every point that passes the equilibrium conditions.

#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/families.hpp"
#include "evigame/perturbation.hpp"
#include "evigame/response.hpp"
#include "evigame/truth_leaning.hpp"

namespace evigame {

/// step: grid spacing 1/S. tolerance: payoff slack on every optimality
/// condition. radius: half-width of the strategy box around a grid point
/// within which each condition may be met (0 means at the point itself).
struct OracleGrid {
  Rational step = ratio(1, 20);
  Rational tolerance = 0;
  Rational radius = 0;
};

enum class OracleMode { kPbe, kTruthLeaning, kPerturbed };

struct OracleResult {
  VariableLayout layout;
  std::vector<std::vector<Rational>> points;
  std::uint64_t profiles = 0;  // sender profiles scanned
  Rational radius = 0;         // box radius the points were accepted with
};

namespace detail {

inline long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw RegimeError("oracle values exceed 64-bit range");
  return z.get_si();
}

inline mpz_class common_denominator(const std::vector<Rational>& xs) {
  mpz_class d = 1;
  for (const auto& x : xs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
  return d;
}

inline std::vector<long> scale_all(const std::vector<Rational>& xs, const mpz_class& d) {
  std::vector<long> out;
  for (const auto& x : xs) {
    Rational y = x * Rational(d);
    if (y.get_den() != 1) throw SolverDefect("scaling did not clear a denominator");
    out.push_back(to_long(y.get_num()));
  }
  return out;
}

/// All compositions of `total` into `parts` nonnegative parts.
inline void compositions(int total, int parts, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    compositions(total - i, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline OracleResult oracle_pbe_grid(const EvidenceGame& game, const OracleGrid& grid,
                                    OracleMode mode, const Perturbation& eps = {}) {
  using detail::to_long;
  if (!validate_game(game).ok()) throw std::invalid_argument("invalid game");
  const Index n = game.num_items(), k = game.num_actions();
  if (n > 3 || k > 3) throw RegimeError("grid oracle covers at most 3 items and 3 actions");
  if (grid.step <= 0 || grid.step > ratio(1, 4) || grid.step.get_num() != 1)
    throw std::invalid_argument("grid step must be 1/S with S >= 4");
  if (grid.tolerance < 0 || grid.radius < 0) throw std::invalid_argument("negative tolerance");
  Rational r_units = grid.radius / grid.step;
  if (r_units.get_den() != 1) throw std::invalid_argument("radius must be a multiple of the step");
  const bool perturbed = mode == OracleMode::kPerturbed;
  if (perturbed) {
    auto errors = perturbation_errors(game, eps);
    if (!errors.empty()) throw std::invalid_argument(errors.front());
  }
  const int S = static_cast<int>(to_long(grid.step.get_den()));
  const long r = to_long(r_units.get_num());

  // sender rows on the grid, per type, over LC(e)
  std::vector<std::vector<Index>> lc(n);
  std::vector<std::vector<std::vector<int>>> rows(n);
  std::uint64_t total_profiles = 1;
  for (Index e = 0; e < n; ++e) {
    lc[e] = game.space.lower_contour(e);
    std::vector<int> cur;
    std::vector<std::vector<int>> all;
    detail::compositions(S, static_cast<int>(lc[e].size()), cur, all);
    for (auto& row : all) {
      Index self = std::find(lc[e].begin(), lc[e].end(), e) - lc[e].begin();
      if (perturbed && Rational(row[self]) + r < eps.floor[e] * S) continue;
      rows[e].push_back(row);
    }
    total_profiles *= rows[e].size();
  }
  if (total_profiles > 5000000) throw RegimeError("grid oracle would scan too many sender profiles");

  // receiver comparisons: coefficient of sigma(m|e) in u(a) - u(b) + tol
  std::vector<Rational> coef_q;
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      for (Index e = 0; e < n; ++e)
        coef_q.push_back(game.mass_good(e) * (game.payoff_good[a] - game.payoff_good[b]) +
                         game.mass_bad(e) * (game.payoff_bad[a] - game.payoff_bad[b]) +
                         grid.tolerance * game.mass(e));
  auto coef = detail::scale_all(coef_q, detail::common_denominator(coef_q));
  auto C = [&](Index a, Index b, Index e) { return coef[(a * k + b) * n + e]; };

  // values in units of 1/(Dv*S)
  std::vector<Rational> value_terms = game.actions;
  value_terms.push_back(grid.tolerance);
  if (perturbed)
    for (const auto& x : eps.reward) value_terms.push_back(x);
  mpz_class dv = detail::common_denominator(value_terms);
  auto act = detail::scale_all(game.actions, dv);
  const long tol_w = to_long(mpz_class(grid.tolerance * Rational(dv) * S));
  std::vector<long> reward(n, 0);
  std::vector<Rational> floor_s(n, 0);
  if (perturbed)
    for (Index e = 0; e < n; ++e) {
      reward[e] = to_long(mpz_class(eps.reward[e] * Rational(dv) * S));
      floor_s[e] = eps.floor[e] * S;
    }
  // floors in integer units of 1/(S*fd)
  const long fd = to_long(detail::common_denominator(floor_s));
  std::vector<long> floor_fd(n, 0);
  for (Index e = 0; e < n; ++e) floor_fd[e] = to_long(mpz_class(floor_s[e] * fd));

  // receiver rows on the grid
  std::vector<std::vector<int>> rho_rows;
  {
    std::vector<int> cur;
    detail::compositions(S, static_cast<int>(k), cur, rho_rows);
  }
  // For each allowed-action mask and row: the value range over rows within
  // the box whose support stays inside the mask. Empty when none exists.
  struct Span {
    long lo, hi;
    bool any = false;
  };
  std::vector<std::vector<Span>> span(1u << k, std::vector<Span>(rho_rows.size()));
  for (unsigned mask = 1; mask < (1u << k); ++mask)
    for (Index i = 0; i < rho_rows.size(); ++i) {
      const auto& j = rho_rows[i];
      Span s;
      std::vector<long> x(k, 0);
      std::function<void(Index, long)> walk = [&](Index a, long left) {
        if (a + 1 == k) {
          if (std::labs(left - j[a]) > r || (left > 0 && !(mask >> a & 1))) return;
          x[a] = left;
          long w = 0;
          for (Index b = 0; b < k; ++b) w += act[b] * x[b];
          if (!s.any || w < s.lo) s.lo = w;
          if (!s.any || w > s.hi) s.hi = w;
          s.any = true;
          return;
        }
        long from = std::max<long>(0, j[a] - r), to = std::min<long>(left, j[a] + r);
        if (!(mask >> a & 1)) to = std::min<long>(to, 0);
        for (long v = from; v <= to; ++v) {
          x[a] = v;
          walk(a + 1, left - v);
        }
      };
      walk(0, S);
      span[mask][i] = s;
    }
  auto br_mask = [&](const Rational& mu) {
    unsigned mask = 0;
    std::vector<Rational> u(k);
    Rational best;
    for (Index a = 0; a < k; ++a) {
      u[a] = game.receiver_utility(a, mu);
      if (a == 0 || u[a] > best) best = u[a];
    }
    for (Index a = 0; a < k; ++a)
      if (u[a] >= best - grid.tolerance) mask |= 1u << a;
    return mask;
  };
  std::vector<unsigned> nu_mask(n);
  for (Index m = 0; m < n; ++m) nu_mask[m] = br_mask(face_value_belief(game, m));
  std::vector<unsigned> free_masks;
  {
    std::vector<Rational> beliefs;
    for (int i = 0; i <= S; ++i) beliefs.push_back(ratio(i, S));
    for (const auto& t : indifference_thresholds(game)) beliefs.push_back(t.belief);
    for (const auto& b : beliefs) {
      unsigned m = br_mask(b);
      if (std::find(free_masks.begin(), free_masks.end(), m) == free_masks.end()) free_masks.push_back(m);
    }
  }

  OracleResult out;
  out.layout = VariableLayout(game);
  out.radius = grid.radius;
  std::set<std::vector<Rational>> seen;
  std::vector<Index> pick(n, 0);
  std::vector<std::vector<long>> col(n, std::vector<long>(n, 0));  // col[m][e] = units of sigma(m|e)
  struct Option {
    Index row;
    long lo, hi;
    unsigned mask;
    bool vanish;  // m taken as unreached
  };
  while (true) {
    ++out.profiles;
    for (Index m = 0; m < n; ++m) std::fill(col[m].begin(), col[m].end(), 0);
    for (Index e = 0; e < n; ++e)
      for (Index i = 0; i < lc[e].size(); ++i) col[lc[e][i]][e] = rows[e][pick[e]][i];

    // a type either tells the truth or never sends its own item
    bool shape_ok = true;
    if (mode == OracleMode::kTruthLeaning)
      for (Index e = 0; e < n; ++e)
        if (col[e][e] != 0 && col[e][e] != S) shape_ok = false;

    // the box around each sender row; a truthful row is pinned in TL mode
    std::vector<long> re(n, r);
    if (mode == OracleMode::kTruthLeaning)
      for (Index e = 0; e < n; ++e)
        if (col[e][e] == S) re[e] = 0;

    // zero[m][e]: sigma(m|e) must vanish at any nearby equilibrium; in TL
    // mode a type that never sends its own item keeps it at zero
    std::vector<std::vector<char>> base_zero(n, std::vector<char>(n, 0));
    if (mode == OracleMode::kTruthLeaning)
      for (Index e = 0; e < n; ++e) base_zero[e][e] = col[e][e] == 0;
    auto zero = base_zero;
    // Range of sigma(m|e) in units of 1/(S*fd) over the box: zeroed entries
    // vanish, the floor holds the truth up and every other entry down, and
    // the row must still sum to one.
    auto entry_range = [&](Index m, Index e) {
      long lo_sum = 0, hi_sum = 0, lo_m = 0, hi_m = 0;
      for (Index x : lc[e]) {
        long lo = 0, hi = 0;
        if (!zero[x][e]) {
          lo = fd * std::max<long>(col[x][e] - re[e], 0);
          hi = fd * std::min<long>(col[x][e] + re[e], S);
          if (perturbed && x == e) lo = std::max(lo, floor_fd[e]);
          if (perturbed && x != e) hi = std::min(hi, fd * S - floor_fd[e]);
        }
        lo_sum += lo;
        hi_sum += hi;
        if (x == m) lo_m = lo, hi_m = hi;
      }
      return std::pair<long, long>{std::max(lo_m, fd * S - (hi_sum - hi_m)),
                                   std::min(hi_m, fd * S - (lo_sum - lo_m))};
    };
    // actions optimal at some reached column of the box
    auto reached_mask = [&](Index m) {
      std::vector<std::pair<long, long>> range(n, {0, 0});
      for (Index e = 0; e < n; ++e)
        if (game.space.can_disclose(m, e)) range[e] = entry_range(m, e);
      unsigned mask = 0;
      for (Index a = 0; a < k; ++a) {
        bool ok = true;
        for (Index b = 0; b < k && ok; ++b) {
          if (a == b) continue;
          long best = 0;             // in units of 1/(S*fd)
          bool nonzero = perturbed;  // the floor keeps every message reached
          for (Index e = 0; e < n; ++e) {
            const auto [down, up] = range[e];
            if (up < down || up == 0) continue;
            long c = C(a, b, e);
            long x = c >= 0 ? up : down;
            best += c * x;
            nonzero = nonzero || x > 0;
          }
          ok = best >= 0 && nonzero;
        }
        if (ok) mask |= 1u << a;
      }
      return mask;
    };

    // receiver options per message
    std::vector<std::vector<Option>> options(n);
    for (Index m = 0; m < n && shape_ok; ++m) {
      bool may_vanish = true;  // the box holds a column that leaves m unreached
      for (Index e = 0; e < n; ++e)
        if (col[m][e] > re[e]) may_vanish = false;
      if (may_vanish && !perturbed) {
        std::vector<unsigned> masks{nu_mask[m]};
        if (mode == OracleMode::kPbe) masks = free_masks;
        for (unsigned mk : masks)
          for (Index i = 0; i < rho_rows.size(); ++i)
            if (span[mk][i].any) options[m].push_back({i, span[mk][i].lo, span[mk][i].hi, mk, true});
      }
      unsigned mask = reached_mask(m);
      for (Index i = 0; mask && i < rho_rows.size(); ++i)
        if (span[mask][i].any) options[m].push_back({i, span[mask][i].lo, span[mask][i].hi, mask, false});
      if (options[m].empty()) shape_ok = false;
    }

    // sender constraints: value(m) - value(m2) + offset >= 0 at some box point
    struct Pair {
      Index m, m2;
      long offset;
    };
    std::vector<Pair> pairs;
    std::vector<Index> liars;  // types that never send their own item (TL)
    for (Index e = 0; e < n && shape_ok; ++e) {
      long self = col[e][e];
      if (perturbed && Rational(self) + r < floor_s[e]) shape_ok = false;
      auto bonus = [&](Index x) { return perturbed && x == e ? reward[e] : 0L; };
      for (Index m : lc[e]) {
        if (col[m][e] <= re[e]) continue;
        if (perturbed && m == e && !(Rational(self - r) > floor_s[e])) continue;
        for (Index m2 : lc[e])
          if (m2 != m) pairs.push_back({m, m2, bonus(m) - bonus(m2) + tol_w});
      }
      if (mode == OracleMode::kTruthLeaning && self == 0) liars.push_back(e);
    }
    auto pairs_hold = [&](const std::vector<Option>& ch, Index upto) {
      for (const auto& p : pairs) {
        if (p.m > upto || p.m2 > upto || (p.m != upto && p.m2 != upto && upto + 1 != n)) continue;
        if (ch[p.m].hi - ch[p.m2].lo + p.offset < 0) return false;
      }
      return true;
    };
    // Light entries (zero ones included) whose message cannot be optimal
    // must vanish; that narrows beliefs, hence admissible actions and
    // values, and may make further entries vanish. Iterates to a fixed point.
    auto refine = [&](std::vector<Option>& ch) {
      zero = base_zero;
      for (Index m = 0; m < n; ++m)
        if (ch[m].vanish)
          for (Index e = 0; e < n; ++e) zero[m][e] = 1;
      for (bool changed = true; changed;) {
        changed = false;
        for (Index e = 0; e < n; ++e) {
          auto bonus = [&](Index y) { return perturbed && y == e ? reward[e] : 0L; };
          for (Index m1 : lc[e]) {
            long x = col[m1][e];
            if (x > re[e] || zero[m1][e] || (perturbed && m1 == e)) continue;
            for (Index m2 : lc[e])
              if (m2 != m1 && ch[m1].hi - ch[m2].lo + bonus(m1) - bonus(m2) + tol_w < 0) {
                zero[m1][e] = 1;
                changed = true;
                break;
              }
          }
        }
        if (!changed) break;
        for (Index m = 0; m < n; ++m) {
          if (ch[m].vanish) continue;
          unsigned mask = reached_mask(m) & ch[m].mask;
          const Span& s = span[mask][ch[m].row];
          if (!mask || !s.any) return false;
          ch[m] = {ch[m].row, s.lo, s.hi, mask, false};
        }
        if (!pairs_hold(ch, n - 1)) return false;
      }
      // each row must still sum to one with every entry in its range:
      // vanishing entries at zero, a truth that is not optimal at the floor
      for (Index e = 0; e < n; ++e) {
        Rational lo_sum = 0, hi_sum = 0;
        for (Index m1 : lc[e]) {
          long x = col[m1][e];
          Rational lo = std::max<long>(x - re[e], 0), hi = std::min<long>(x + re[e], S);
          if (zero[m1][e]) {
            lo = hi = 0;
          } else if (perturbed && m1 == e) {
            bool optimal = true;
            for (Index m2 : lc[e])
              if (m2 != e && ch[e].hi + reward[e] - ch[m2].lo + tol_w < 0) optimal = false;
            if (optimal) lo = std::max(lo, floor_s[e]);
            else lo = hi = floor_s[e];
            if (floor_s[e] > x + re[e]) return false;
            if (!optimal && floor_s[e] < x - re[e]) return false;
          }
          lo_sum += lo;
          hi_sum += hi;
        }
        if (lo_sum > S || hi_sum < S) return false;
      }
      return true;
    };
    if (shape_ok) {
      std::vector<Option> chosen(n);
      std::function<void(Index)> assign = [&](Index m) {
        if (m == n) {
          std::vector<Option> ch = chosen;
          if (!refine(ch)) return;
          for (Index e : liars) {
            // truth must fall strictly short somewhere in the box; a heavy
            // message is sent at any nearby point, so it attains the best
            // value and every one of them has to beat the truth
            bool heavy = false, beaten = false, all_heavy_beat = true;
            for (Index m2 : lc[e]) {
              if (m2 == e) continue;
              bool beats = ch[m2].hi - ch[e].lo + tol_w > 0;
              beaten = beaten || beats;
              if (col[m2][e] > re[e]) {
                heavy = true;
                all_heavy_beat = all_heavy_beat && beats;
              }
            }
            if (heavy ? !all_heavy_beat : !beaten) return;
          }
          std::vector<Rational> x(out.layout.size(), 0);
          for (Index e = 0; e < n; ++e)
            for (Index i = 0; i < lc[e].size(); ++i)
              x[out.layout.sigma(lc[e][i], e)] = ratio(rows[e][pick[e]][i], S);
          for (Index mm = 0; mm < n; ++mm)
            for (Index a = 0; a < k; ++a)
              x[out.layout.rho(a, mm)] = ratio(rho_rows[chosen[mm].row][a], S);
          if (seen.insert(x).second) out.points.push_back(std::move(x));
          return;
        }
        for (const auto& o : options[m]) {
          chosen[m] = o;
          if (pairs_hold(chosen, m)) assign(m + 1);
        }
      };
      assign(0);
    }

    Index i = 0;
    while (i < n && ++pick[i] == rows[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// ---- comparison -----------------------------------------------------------

struct Discrepancy {
  std::string side;  // "solver" or "oracle"
  std::string detail;
  Rational distance;
};

struct OracleComparison {
  std::vector<Discrepancy> discrepancies;
  std::size_t solver_samples = 0;
  std::size_t oracle_points = 0;

  bool pass() const { return discrepancies.empty(); }
  std::size_t count(const std::string& side) const {
    std::size_t c = 0;
    for (const auto& d : discrepancies) c += d.side == side;
    return c;
  }
};

namespace detail {

inline std::string point_label(const VariableLayout& layout, const std::vector<Rational>& x) {
  std::string s;
  for (Index i = 0; i < x.size(); ++i) {
    if (!s.empty()) s += " ";
    s += layout.name(i) + "=" + to_string(x[i]);
  }
  return s;
}

/// Points spread over a family's closure: the extremes of every
/// coordinate, the stored member, and chords between them no longer than
/// one step apart.
inline std::vector<std::vector<Rational>> family_samples(const Family& f, const Rational& step) {
  const Index d = f.layout.size();
  std::vector<std::vector<Rational>> anchors{f.point};
  for (Index i = 0; i < d; ++i)
    for (int sign : {1, -1}) {
      std::vector<Rational> obj(d, 0);
      obj[i] = sign;
      auto r = optimize_closure(f, obj);
      if (r.status == LpStatus::kOptimal &&
          std::find(anchors.begin(), anchors.end(), r.x) == anchors.end())
        anchors.push_back(r.x);
    }
  std::vector<std::vector<Rational>> out = anchors;
  for (Index a = 1; a < anchors.size(); ++a) {
    Rational dist = sup_distance(anchors[0], anchors[a]);
    Rational pieces = dist / step;
    mpz_class count = pieces.get_num() / pieces.get_den() + 1;
    long c = count.get_si();
    for (long t = 1; t < c; ++t) {
      std::vector<Rational> x(d);
      Rational w = ratio(t, c);
      for (Index i = 0; i < d; ++i) x[i] = anchors[0][i] * (1 - w) + anchors[a][i] * w;
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace detail

/// Every solver point must lie within one grid step (sup norm) of an oracle
/// point. Every oracle point must lie within one step plus the box radius of
/// a solver family, since the box is applied to each condition separately.
inline OracleComparison oracle_compare(const std::vector<Family>& families, const OracleResult& oracle,
                                       const Rational& step) {
  OracleComparison cmp;
  cmp.oracle_points = oracle.points.size();
  const Rational reach = step + oracle.radius;
  std::vector<std::vector<Rational>> samples;
  for (const auto& f : families) {
    auto s = detail::family_samples(f, step);
    for (const auto& x : s) {
      ++cmp.solver_samples;
      Rational best = -1;
      for (const auto& y : oracle.points) {
        Rational d = sup_distance(x, y);
        if (best < 0 || d < best) best = d;
        if (best <= step) break;
      }
      if (best < 0 || best > step) {
        cmp.discrepancies.push_back({"solver", f.label + " at " + detail::point_label(f.layout, x), best});
        break;  // one entry per family
      }
    }
    samples.insert(samples.end(), s.begin(), s.end());
  }
  for (const auto& y : oracle.points) {
    bool near = false;
    for (const auto& x : samples)
      if (sup_distance(x, y) <= reach) {
        near = true;
        break;
      }
    Rational best = -1;
    for (Index i = 0; i < families.size() && !near; ++i) {
      auto dist = closure_distance(families[i], y);
      if (!dist) continue;
      const Rational& d = *dist;
      if (best < 0 || d < best) best = d;
      near = best <= reach;
    }
    if (!near)
      cmp.discrepancies.push_back({"oracle", detail::point_label(oracle.layout, y), best});
  }
  return cmp;
}

}  // namespace evigame
