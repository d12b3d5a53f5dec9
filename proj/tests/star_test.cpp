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

#include <algorithm>

#include "evigame/random_game.hpp"
#include "evigame/star.hpp"
#include "star_oracle.hpp"
#include "test_util.hpp"

namespace evigame {
namespace {

using testing::fixture;
using testing::q;

TEST(SolveStar, Faa) {
  auto g = fixture("faa");
  auto s = solve_star(g);
  EXPECT_EQ(s.mu_star.beliefs, (std::vector<Rational>{q("1/2"), 0}));
  EXPECT_EQ(s.sigma_star(0, 1), 1);
  auto vertices = sigma_star_vertices(g, s);
  ASSERT_EQ(vertices.size(), 1u);
  EXPECT_EQ(vertices[0], s.sigma_star);
}

TEST(SolveStar, V1) {
  auto s = solve_star(fixture("v1-good-bad"));
  EXPECT_EQ(s.mu_star.beliefs, (std::vector<Rational>{q("1/2"), q("3/7")}));
  EXPECT_EQ(s.sigma_star(0, 1), 1);
}

TEST(SolveStar, V3) {
  auto g = fixture("v3-two-types");
  auto s = solve_star(g);
  EXPECT_EQ(s.mu_star.beliefs, (std::vector<Rational>{q("1/2"), 0, 0}));
  EXPECT_EQ(s.sigma_star(0, 1), 1);
  EXPECT_EQ(s.sigma_star(0, 2), 1);
  EXPECT_EQ(sigma_star_vertices(g, s).size(), 1u);
}

TEST(SolveStar, V4Truthful) {
  auto g = fixture("v4-truthful");
  auto s = solve_star(g);
  EXPECT_EQ(s.mu_star.beliefs, (std::vector<Rational>{q("1/3"), 1}));
  EXPECT_EQ(s.sigma_star, truthful_strategy(g));
}

TEST(SolveStar, RejectsInvalidGame) {
  EXPECT_THROW(solve_star(fixture("bad-transitivity")), std::invalid_argument);
}

TEST(Membership, Examples) {
  auto faa = fixture("faa");
  auto s = solve_star(faa);
  EXPECT_TRUE(sigma_star_membership(s, testing::two_item(1, 0, 0, 0).sigma));
  EXPECT_FALSE(sigma_star_membership(s, testing::two_item(q("1/4"), 0, 0, 0).sigma));
  auto v3 = solve_star(fixture("v3-two-types"));
  EXPECT_TRUE(sigma_star_membership(v3, testing::three_item(1, 1, 0, 0, 0, 0).sigma));
  EXPECT_FALSE(
      sigma_star_membership(v3, testing::three_item(1, q("999/1000"), 0, 0, 0, 0).sigma));
  SenderStrategy wrong{{{1}}};
  EXPECT_THROW(sigma_star_membership(s, wrong), std::invalid_argument);
}

TEST(A2Diagnostics, Faa) {
  auto g = fixture("faa");
  auto d = check_a2_diagnostics(g, solve_star(g));
  ASSERT_EQ(d.size(), 2u);
  ASSERT_TRUE(d[0].bayes.has_value());
  EXPECT_TRUE(d[0].min_matches);
  EXPECT_EQ(std::min(d[0].face_value, *d[0].bayes), q("1/2"));
  EXPECT_FALSE(d[1].bayes.has_value());
  EXPECT_TRUE(d[1].indicator);
  EXPECT_EQ(d[1].truthful_mass, 0);
  EXPECT_FALSE(d[1].indicator_matches);
}

TEST(A2Diagnostics, V1AndV4) {
  auto v1 = fixture("v1-good-bad");
  auto d = check_a2_diagnostics(v1, solve_star(v1));
  EXPECT_TRUE(d[0].min_matches);
  EXPECT_EQ(d[0].face_value, q("3/5"));
  EXPECT_FALSE(d[1].indicator_matches);
  auto v4 = fixture("v4-truthful");
  for (const auto& x : check_a2_diagnostics(v4, solve_star(v4))) {
    ASSERT_TRUE(x.bayes.has_value());
    EXPECT_EQ(*x.bayes, x.face_value);
    EXPECT_TRUE(x.min_matches);
    EXPECT_TRUE(x.indicator_matches);
  }
}

// Pooling where two pooled types share targets and the representative mixes.
TEST(SolveStar, MixedPoolingAgreesWithOracle) {
  EvidenceGame g = fixture("v3-two-types");
  // b1 and b2 may both disclose n; add a fourth item c above b1 and b2
  EvidenceSpace space({"n", "b1", "b2", "c"}, {{true, true, true, true},
                                                {false, true, false, true},
                                                {false, false, true, true},
                                                {false, false, false, true}});
  g.space = space;
  g.f_good = {q("1/2"), q("1/4"), 0, q("1/4")};
  g.f_bad = {q("1/10"), q("1/5"), q("1/2"), q("1/5")};
  ASSERT_TRUE(validate_game(g).ok());
  auto s = solve_star(g);
  auto found = testing::star_oracle(g);
  ASSERT_FALSE(found.empty());
  for (const auto& c : found) {
    EXPECT_EQ(c.mu, s.mu_star);
    EXPECT_TRUE(sigma_star_membership(s, c.sigma));
  }
}

class StarRandom : public ::testing::TestWithParam<int> {};

TEST_P(StarRandom, AgreesWithEnumeration) {
  int seed = GetParam();
  RandomGameParams p;
  p.items = 1 + seed % 5;
  p.density = 0.2 + 0.15 * (seed % 5);
  p.actions = 2 + seed % 3;
  p.seed = 1000 + seed;
  auto g = random_game(p);
  ASSERT_TRUE(validate_game(g).ok());
  auto s = solve_star(g);
  EXPECT_TRUE(testing::oracle_detail::auxiliary_equilibrium(g, s.sigma_star, s.mu_star));
  auto found = testing::star_oracle(g);
  ASSERT_FALSE(found.empty());
  for (const auto& c : found) {
    EXPECT_EQ(c.mu, s.mu_star);
    EXPECT_TRUE(sigma_star_membership(s, c.sigma));
  }
  auto vertices = sigma_star_vertices(g, s);
  for (const auto& v : vertices) {
    EXPECT_TRUE(sigma_star_membership(s, v));
    bool listed = std::any_of(found.begin(), found.end(),
                              [&](const testing::StarCandidate& c) { return c.sigma == v; });
    EXPECT_TRUE(listed);
    for (Index m = 0; m < g.num_items(); ++m) {
      auto post = posterior_from_strategy(g, v, m);
      if (post) EXPECT_EQ(*post, s.mu_star[m]);
    }
  }
  EXPECT_EQ(vertices.size(), found.size());
  for (Index m = 0; m < g.num_items(); ++m) EXPECT_LE(s.mu_star[m], face_value_belief(g, m));
}

INSTANTIATE_TEST_SUITE_P(Seeds, StarRandom, ::testing::Range(0, 80));

}  // namespace
}  // namespace evigame
