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

#include "evigame/perturbed.hpp"
#include "evigame/random_game.hpp"
#include "evigame/truth_leaning.hpp"
#include "test_util.hpp"

namespace evigame {
namespace {

using testing::fixture;
using testing::q;

Range closed(const char* lo, const char* hi) { return Range{q(lo), q(hi), true, true}; }

TEST(TruthLeaning, FaaHasNone) {
  auto r = find_truth_leaning(fixture("faa"));
  EXPECT_FALSE(r.found());
  EXPECT_FALSE(r.refuted.empty());
}

TEST(TruthLeaning, V1IsTruthful) {
  auto g = fixture("v1-good-bad");
  auto r = find_truth_leaning(g);
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  ASSERT_TRUE(is_singleton(f));
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], 0);
  auto a = assessment_at(g, f.layout, f.point, f.off_path);
  EXPECT_EQ(a.mu.beliefs, (std::vector<Rational>{q("3/5"), q("3/7")}));
  EXPECT_TRUE(verify_truth_leaning(g, a).pass());
}

TEST(TruthLeaning, V2FamilyOpenAtZero) {
  auto g = fixture("v2-lenient");
  auto r = find_truth_leaning(g);
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  auto qn = variable_range(f, f.layout.rho(1, 0));
  EXPECT_EQ(qn.lo, 0);
  EXPECT_FALSE(qn.lo_closed);
  EXPECT_EQ(qn.hi, 1);
  EXPECT_TRUE(qn.hi_closed);
  EXPECT_TRUE(variable_range(f, f.layout.sigma(0, 1)).degenerate());
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], 1);
  // q = 0 is the limit of the family but not a member
  auto outside = f.point;
  outside[f.layout.rho(1, 0)] = 0;
  outside[f.layout.rho(0, 0)] = 1;
  EXPECT_FALSE(family_contains(f, outside));
  EXPECT_FALSE(verify_truth_leaning(g, assessment_at(g, f.layout, outside, f.off_path)).pass());
}

TEST(TruthLeaning, V4Truthful) {
  auto g = fixture("v4-truthful");
  auto r = find_truth_leaning(g);
  ASSERT_EQ(r.families.size(), 1u);
  auto a = assessment_at(g, r.families[0].layout, r.families[0].point, r.families[0].off_path);
  EXPECT_EQ(a.sigma, truthful_strategy(g));
}

TEST(TruthLeaning, EveryFamilyMemberChecks) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto g = random_game({3, 0.6, 2, seed});
    auto r = find_truth_leaning(g);
    for (const auto& f : r.families) {
      EXPECT_TRUE(verify_truth_leaning(g, assessment_at(g, f.layout, f.point, f.off_path)).pass())
          << "seed " << seed << " " << f.label;
      auto lo = lexmin(f);
      if (lo && family_contains(f, *lo))
        EXPECT_TRUE(verify_truth_leaning(g, assessment_at(g, f.layout, *lo, f.off_path)).pass());
    }
  }
}

TEST(TruthLeaning, RegimeAndValidation) {
  RandomGameParams big{9, 0.3, 2, 3};
  EXPECT_THROW(find_truth_leaning(random_game(big)), RegimeError);
  EXPECT_THROW(find_truth_leaning(fixture("bad-transitivity")), std::invalid_argument);
}

TEST(Perturbed, FaaUnique) {
  auto g = fixture("faa");
  auto r = solve_perturbed(g, Perturbation::uniform(2, q("1/10"), q("1/20")));
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  ASSERT_TRUE(is_singleton(f));
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], q("1/4"));
  EXPECT_EQ(f.point[f.layout.rho(1, 0)], q("1/10"));
  auto a = assessment_at(g, f.layout, f.point, f.off_path);
  EXPECT_EQ(a.mu[0], q("2/3"));
}

TEST(Perturbed, V1) {
  auto g = fixture("v1-good-bad");
  auto r = solve_perturbed(g, Perturbation::uniform(2, q("1/10"), q("1/20")));
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], 0);
  auto a = assessment_at(g, f.layout, f.point, f.off_path);
  EXPECT_EQ(a.mu.beliefs, (std::vector<Rational>{q("3/5"), q("3/7")}));
}

TEST(Perturbed, V2FloorBinds) {
  auto g = fixture("v2-lenient");
  auto r = solve_perturbed(g, Perturbation::uniform(2, q("1/10"), q("1/20")));
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], q("19/20"));
  EXPECT_EQ(f.point[f.layout.rho(1, 0)], 1);
  EXPECT_EQ(assessment_at(g, f.layout, f.point, f.off_path).mu[0], q("30/59"));
}

TEST(Perturbed, V3EqualRewardsCombinedRange) {
  auto g = fixture("v3-two-types");
  auto r = solve_perturbed(g, Perturbation::uniform(3, q("1/10"), q("1/100")));
  ASSERT_EQ(r.families.size(), 3u);
  const VariableLayout& layout = r.families[0].layout;
  auto p1 = combined_range(r.families, layout.sigma(0, 1));
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].lo, 0);
  EXPECT_EQ(p1[0].hi, q("1/2"));
  EXPECT_TRUE(p1[0].lo_closed && p1[0].hi_closed);
  auto qn = combined_range(r.families, layout.rho(1, 0));
  ASSERT_EQ(qn.size(), 1u);
  EXPECT_TRUE(qn[0].degenerate());
  EXPECT_EQ(qn[0].lo, q("1/10"));
  for (const auto& f : r.families)
    EXPECT_TRUE(verify_perturbed_pbe(g, Perturbation::uniform(3, q("1/10"), q("1/100")),
                                     assessment_at(g, f.layout, f.point, f.off_path))
                    .pass());
}

TEST(Perturbed, V3UnequalRewardsUnique) {
  auto g = fixture("v3-two-types");
  Perturbation eps{{q("1/10"), q("1/20"), q("1/10")}, {q("1/100"), q("1/100"), q("1/100")}};
  auto r = solve_perturbed(g, eps);
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  ASSERT_TRUE(is_singleton(f));
  EXPECT_EQ(f.point[f.layout.sigma(0, 1)], q("1/2"));
  EXPECT_EQ(f.point[f.layout.rho(1, 0)], q("1/20"));
}

TEST(Perturbed, RandomGamesAlwaysSolved) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto g = random_game({3, 0.6, 2, seed});
    auto eps = Perturbation::uniform(3, q("1/20"), q("1/40"));
    auto r = solve_perturbed(g, eps);
    ASSERT_FALSE(r.families.empty()) << "seed " << seed;
    for (const auto& f : r.families)
      EXPECT_TRUE(verify_perturbed_pbe(g, eps, assessment_at(g, f.layout, f.point, f.off_path)).pass())
          << "seed " << seed << " " << f.label;
  }
}

TEST(Perturbed, RejectsBadPerturbation) {
  auto g = fixture("faa");
  EXPECT_THROW(solve_perturbed(g, Perturbation::uniform(2, 0, q("1/20"))), std::invalid_argument);
  EXPECT_THROW(solve_perturbed(g, Perturbation::uniform(2, q("1/10"), 0)), std::invalid_argument);
  EXPECT_THROW(solve_perturbed(g, Perturbation::uniform(3, q("1/10"), q("1/20"))), std::invalid_argument);
}

TEST(Families, RangeFormatting) {
  EXPECT_EQ(to_string(closed("0", "1/2")), "[0, 1/2]");
  EXPECT_EQ(to_string(Range{0, 1, false, true}), "(0, 1]");
}

}  // namespace
}  // namespace evigame
