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

// Small dense two-phase simplex over exact rationals. Bland's rule keeps it
// cycle-free; the problems here have a few dozen variables at most.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "evigame/rational.hpp"

namespace evigame {

enum class Sense { kLe, kEq, kGe };

struct LpRow {
  std::vector<Rational> coef;
  Sense sense = Sense::kLe;
  Rational rhs;
};

/// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LpRow> rows;
  std::vector<Rational> objective;

  void add(std::vector<Rational> coef, Sense sense, Rational rhs) {
    coef.resize(num_vars);
    rows.push_back({std::move(coef), sense, std::move(rhs)});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows, std::vector<Rational>(cols + 1, 0)), basis_(rows, 0), cols_(cols) {}

  std::vector<Rational>& row(std::size_t i) { return cells_[i]; }
  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  Rational& rhs(std::size_t i) { return cells_[i][cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = cells_[r][c];
    auto& pr = cells_[r];
    for (auto& v : pr)
      if (v != 0) v /= p;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i == r) continue;
      Rational f = cells_[i][c];
      if (f == 0) continue;
      auto& row = cells_[i];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (pr[j] != 0) row[j] -= f * pr[j];
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Maximizes cost . x over columns < `active`; returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, std::size_t active) {
    while (true) {
      std::size_t enter = active;
      for (std::size_t j = 0; j < active; ++j) {
        Rational reduced = -cost[j];
        for (std::size_t i = 0; i < rows(); ++i)
          if (cells_[i][j] != 0 && cost[basis_[i]] != 0)
            reduced += cost[basis_[i]] * cells_[i][j];
        if (reduced < 0) {
          enter = j;
          break;
        }
      }
      if (enter == active) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (cells_[i][enter] <= 0) continue;
        Rational ratio = cells_[i][cols_] / cells_[i][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  std::size_t slacks = 0, artificials = 0;
  std::vector<Sense> senses(m);
  std::vector<bool> flip(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].coef.size() != n) throw std::invalid_argument("LP row has wrong width");
    Sense s = lp.rows[i].sense;
    if (lp.rows[i].rhs < 0) {
      flip[i] = true;
      if (s == Sense::kLe) s = Sense::kGe;
      else if (s == Sense::kGe) s = Sense::kLe;
    }
    senses[i] = s;
    if (s != Sense::kEq) ++slacks;
    if (s != Sense::kLe) ++artificials;
  }
  const std::size_t art_begin = n + slacks;
  const std::size_t cols = art_begin + artificials;
  detail::Tableau t(m, cols);
  std::size_t next_slack = n, next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = t.row(i);
    for (std::size_t j = 0; j < n; ++j)
      row[j] = flip[i] ? Rational(-lp.rows[i].coef[j]) : lp.rows[i].coef[j];
    t.rhs(i) = flip[i] ? Rational(-lp.rows[i].rhs) : lp.rows[i].rhs;
    switch (senses[i]) {
      case Sense::kLe:
        row[next_slack] = 1;
        t.basis()[i] = next_slack++;
        break;
      case Sense::kGe:
        row[next_slack++] = -1;
        row[next_art] = 1;
        t.basis()[i] = next_art++;
        break;
      case Sense::kEq:
        row[next_art] = 1;
        t.basis()[i] = next_art++;
        break;
    }
  }

  LpResult result;
  if (artificials > 0) {
    std::vector<Rational> phase1(cols, 0);
    for (std::size_t j = art_begin; j < cols; ++j) phase1[j] = -1;
    t.optimize(phase1, cols);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t.basis()[i] >= art_begin) infeasibility += t.rhs(i);
    if (infeasibility != 0) return result;
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis()[i] < art_begin) {
        ++i;
        continue;
      }
      std::size_t col = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (t.row(i)[j] != 0) {
          col = j;
          break;
        }
      if (col == art_begin) {
        t.erase_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<Rational> cost(cols, 0);
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
  if (!t.optimize(cost, art_begin)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis()[i] < n) result.x[t.basis()[i]] = t.rhs(i);
  result.value = 0;
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j)
    result.value += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace evigame
