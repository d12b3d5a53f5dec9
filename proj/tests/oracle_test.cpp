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


#include <gtest/gtest.h>

#include "evigame/oracle.hpp"
#include "evigame/perturbed.hpp"
#include "evigame/random_game.hpp"
#include "evigame/truth_leaning.hpp"
#include "test_util.hpp"

namespace evigame {
namespace {

using testing::fixture;
using testing::q;

// A single-point family; stands in for a solver answer.
Family point_family(const VariableLayout& layout, const std::vector<Rational>& x) {
  Family f{layout, {}, "point", x, {}};
  for (Index i = 0; i < x.size(); ++i) {
    Constraint c = f.blank();
    c.coef[i] = 1;
    c.rhs = x[i];
    f.rows.push_back(c);
  }
  return f;
}

TEST(Oracle, FaaPbeGrid) {
  auto g = fixture("faa");
  auto res = oracle_pbe_grid(g, {q("1/20")}, OracleMode::kPbe);
  const auto& L = res.layout;
  std::vector<Rational> ps;
  for (const auto& x : res.points) {
    EXPECT_EQ(x[L.rho(1, 0)], 0);
    ps.push_back(x[L.sigma(0, 1)]);
  }
  std::sort(ps.begin(), ps.end());
  std::vector<Rational> expected;
  for (int i = 5; i <= 20; ++i) expected.push_back(ratio(i, 20));
  EXPECT_EQ(ps, expected);
  // every grid point passes the exact check
  // an unreached message may carry any belief, so try 0, 1 and each threshold
  std::vector<Rational> candidates{0, 1};
  for (const auto& t : indifference_thresholds(g)) candidates.push_back(t.belief);
  for (const auto& x : res.points) {
    bool ok = false;
    for (const auto& off : candidates) {
      Assessment a = assessment_at(g, L, x, std::vector<Rational>(g.num_items(), off));
      ok = ok || verify_pbe(g, a).pass();
    }
    EXPECT_TRUE(ok);
  }
}

TEST(Oracle, FaaTruthLeaningEmpty) {
  EXPECT_TRUE(oracle_pbe_grid(fixture("faa"), {q("1/20")}, OracleMode::kTruthLeaning).points.empty());
}

TEST(Oracle, FaaPerturbedMatchesSolver) {
  auto g = fixture("faa");
  auto eps = Perturbation::uniform(2, q("1/10"), q("1/20"));
  auto res = oracle_pbe_grid(g, {q("1/20")}, OracleMode::kPerturbed, eps);
  ASSERT_EQ(res.points.size(), 1u);
  EXPECT_EQ(res.points[0][res.layout.sigma(0, 1)], q("1/4"));
  EXPECT_EQ(res.points[0][res.layout.rho(1, 0)], q("1/10"));
  auto cmp = oracle_compare(solve_perturbed(g, eps).families, res, q("1/20"));
  EXPECT_TRUE(cmp.pass());
}

TEST(Oracle, CorruptedSolverAnswerIsFlagged) {
  auto g = fixture("faa");
  auto eps = Perturbation::uniform(2, q("1/10"), q("1/20"));
  auto res = oracle_pbe_grid(g, {q("1/20")}, OracleMode::kPerturbed, eps);
  auto good = solve_perturbed(g, eps).families.front().point;
  auto bad = good;
  bad[res.layout.rho(1, 0)] = q("1/5");
  bad[res.layout.rho(0, 0)] = q("4/5");
  auto cmp = oracle_compare({point_family(res.layout, bad)}, res, q("1/20"));
  EXPECT_FALSE(cmp.pass());
  EXPECT_EQ(cmp.count("solver"), 1u);
  EXPECT_EQ(cmp.count("oracle"), 1u);
  EXPECT_EQ(cmp.discrepancies[0].distance, q("1/10"));
  EXPECT_TRUE(oracle_compare({point_family(res.layout, good)}, res, q("1/20")).pass());
}

TEST(Oracle, FixturesAgreeWithSolvers) {
  for (const char* name : {"faa", "v1-good-bad", "v2-lenient", "v3-two-types", "v4-truthful"}) {
    auto g = fixture(name);
    OracleGrid grid{q("1/20")};
    auto tl = oracle_pbe_grid(g, grid, OracleMode::kTruthLeaning);
    EXPECT_TRUE(oracle_compare(find_truth_leaning(g).families, tl, grid.step).pass()) << name;
    auto eps = Perturbation::uniform(g.num_items(), q("1/10"), q("1/20"));
    auto pert = oracle_pbe_grid(g, grid, OracleMode::kPerturbed, eps);
    EXPECT_TRUE(oracle_compare(solve_perturbed(g, eps).families, pert, grid.step).pass()) << name;
  }
}

TEST(Oracle, V2TruthLeaningSegment) {
  auto g = fixture("v2-lenient");
  auto res = oracle_pbe_grid(g, {q("1/20")}, OracleMode::kTruthLeaning);
  // q in (0,1] on the grid
  ASSERT_EQ(res.points.size(), 20u);
  for (const auto& x : res.points) {
    EXPECT_EQ(x[res.layout.sigma(0, 1)], 1);
    EXPECT_GT(x[res.layout.rho(1, 0)], 0);
  }
}

TEST(Oracle, BoxedRandomGamesAgree) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto g = random_game({Index(2 + seed % 2), 0.6, Index(2 + seed / 2 % 2), seed});
    OracleGrid grid{q("1/50"), 0, q("1/50")};
    auto tl = oracle_pbe_grid(g, grid, OracleMode::kTruthLeaning);
    auto cmp = oracle_compare(find_truth_leaning(g).families, tl, grid.step);
    EXPECT_TRUE(cmp.pass()) << "seed " << seed;
    auto eps = Perturbation::uniform(g.num_items(), q("1/5"), q("1/10"));
    auto pert = oracle_pbe_grid(g, grid, OracleMode::kPerturbed, eps);
    EXPECT_TRUE(oracle_compare(solve_perturbed(g, eps).families, pert, grid.step).pass()) << "seed " << seed;
  }
}

// The truth floor keeps every message reached, so a box that shrinks a
// column to zero must not make a dominated action look optimal.
TEST(Oracle, BoxKeepsTheTruthFloor) {
  auto g = fixture("faa");
  g.payoff_good = {0, 2};
  g.payoff_bad = {0, 1};
  ASSERT_TRUE(validate_game(g).ok());
  OracleGrid grid{q("1/20"), 0, q("1/20")};
  auto eps = Perturbation::uniform(g.num_items(), q("1/5"), q("1/10"));
  auto res = oracle_pbe_grid(g, grid, OracleMode::kPerturbed, eps);
  ASSERT_FALSE(res.points.empty());
  for (const auto& x : res.points)
    for (Index m = 0; m < g.num_items(); ++m) EXPECT_LE(x[res.layout.rho(0, m)], grid.radius);
  EXPECT_TRUE(oracle_compare(solve_perturbed(g, eps).families, res, grid.step).pass());
}

// Action 1 is optimal at every belief, tying with action 2 only at belief
// one, so all messages are worth the same and truth-leaning forces truth.
// A box that reaches belief one at e1 must not let e2 lie toward e0.
TEST(Oracle, LiarMustLoseToWhatItSends) {
  auto g = random_game({3, 0.6, 3, 619});
  ASSERT_EQ(indifference_thresholds(g).size(), 1u);
  ASSERT_EQ(indifference_thresholds(g).front().belief, 1);
  OracleGrid grid{q("1/20"), 0, q("1/20")};
  auto res = oracle_pbe_grid(g, grid, OracleMode::kTruthLeaning);
  ASSERT_FALSE(res.points.empty());
  for (const auto& x : res.points)
    for (Index e = 0; e < g.num_items(); ++e) EXPECT_EQ(x[res.layout.sigma(e, e)], 1);
  EXPECT_TRUE(oracle_compare(find_truth_leaning(g).families, res, grid.step).pass());
}

// No truth-leaning equilibrium exists here: e2 gains by claiming e0 only
// while e0 keeps a favourable belief, and pooling on e0 destroys it. A box
// that splits e2 between e0 and a worthless e1 must not call that a lie.
TEST(Oracle, EveryHeavyMessageBeatsTheTruth) {
  auto g = random_game({3, 0.6, 2, 1013});
  ASSERT_TRUE(find_truth_leaning(g).families.empty());
  OracleGrid grid{q("1/100"), 0, q("1/100")};
  auto res = oracle_pbe_grid(g, grid, OracleMode::kTruthLeaning);
  EXPECT_TRUE(res.points.empty());
  EXPECT_TRUE(oracle_compare(find_truth_leaning(g).families, res, grid.step).pass());
}

TEST(Oracle, Regime) {
  auto g = random_game({4, 0.5, 2, 1});
  EXPECT_THROW(oracle_pbe_grid(g, {q("1/20")}, OracleMode::kPbe), RegimeError);
  auto faa = fixture("faa");
  EXPECT_THROW(oracle_pbe_grid(faa, {q("2/7")}, OracleMode::kPbe), std::invalid_argument);
  EXPECT_THROW(oracle_pbe_grid(faa, {q("1/20"), 0, q("1/30")}, OracleMode::kPbe), std::invalid_argument);
  EXPECT_THROW(oracle_pbe_grid(faa, {q("1/20")}, OracleMode::kPerturbed), std::invalid_argument);
}

}  // namespace
}  // namespace evigame
