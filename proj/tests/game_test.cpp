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

TEST(ValidateGame, FaaIsValid) { EXPECT_TRUE(validate_game(fixture("faa")).ok()); }

TEST(ValidateGame, AllFixturesValid) {
  for (const char* name : {"faa", "v1-good-bad", "v2-lenient", "v3-two-types", "v4-truthful"})
    EXPECT_TRUE(validate_game(fixture(name)).ok()) << name;
}

TEST(ValidateGame, DecreasingDifferences) {
  auto g = fixture("faa");
  g.payoff_good[1] = -3;
  auto r = validate_game(g);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has("increasing differences"));
}

TEST(ValidateGame, Transitivity) {
  auto r = validate_game(fixture("bad-transitivity"));
  EXPECT_TRUE(r.has("transitivity"));
}

TEST(ValidateGame, OtherInvariants) {
  auto g = fixture("faa");
  g.prior = 1;
  EXPECT_TRUE(validate_game(g).has("prior"));
  g = fixture("faa");
  g.f_good = {q("1/2"), q("1/3")};
  EXPECT_TRUE(validate_game(g).has("distribution fG"));
  g = fixture("v3-two-types");
  g.f_good = {1, 0, 0};
  g.f_bad = {q("1/2"), q("1/2"), 0};
  EXPECT_TRUE(validate_game(g).has("zero-mass evidence"));
  g = fixture("faa");
  g.actions = {1, 0};
  EXPECT_TRUE(validate_game(g).has("actions"));
  g = fixture("faa");
  auto m = g.space.matrix();
  m[1][1] = false;
  g.space = EvidenceSpace(g.space.items(), m);
  EXPECT_TRUE(validate_game(g).has("reflexivity"));
}

TEST(FeasibleSet, Examples) {
  auto faa = fixture("faa");
  EXPECT_EQ(feasible_set(faa.space, "b"), (std::vector<Index>{0, 1}));
  EXPECT_EQ(feasible_set(faa.space, "n"), (std::vector<Index>{0}));
  auto v3 = fixture("v3-two-types");
  EXPECT_EQ(feasible_set(v3.space, "b1"), (std::vector<Index>{0, 1}));
  EXPECT_THROW(feasible_set(faa.space, "zzz"), std::out_of_range);
}

TEST(FaceValue, Examples) {
  auto faa = fixture("faa");
  EXPECT_EQ(face_value_belief(faa, "n"), q("3/4"));
  EXPECT_EQ(face_value_belief(faa, "b"), 0);
  EXPECT_EQ(face_value_belief(fixture("v1-good-bad"), "b"), q("3/7"));
  EXPECT_THROW(face_value_belief(faa, "x"), std::out_of_range);
}

TEST(Posterior, Examples) {
  auto faa = fixture("faa");
  auto s = testing::two_item(q("1/2"), 0, 0, 0).sigma;
  EXPECT_EQ(*posterior_from_strategy(faa, s, 0), q("3/5"));
  s = testing::two_item(1, 0, 0, 0).sigma;
  EXPECT_EQ(*posterior_from_strategy(faa, s, 0), q("1/2"));
  EXPECT_FALSE(posterior_from_strategy(faa, s, 1).has_value());
  s = testing::two_item(0, 0, 0, 0).sigma;
  EXPECT_EQ(*posterior_from_strategy(faa, s, 1), 0);
  EXPECT_EQ(*posterior_from_strategy(faa, s, 0), q("3/4"));
}

TEST(Posterior, TruthfulEqualsFaceValue) {
  for (const char* name : {"faa", "v1-good-bad", "v3-two-types", "v4-truthful"}) {
    auto g = fixture(name);
    auto t = truthful_strategy(g);
    for (Index m = 0; m < g.num_items(); ++m)
      EXPECT_EQ(*posterior_from_strategy(g, t, m), face_value_belief(g, m));
  }
}

TEST(Posterior, Martingale) {
  auto g = fixture("v3-two-types");
  auto a = testing::three_item(q("1/3"), q("5/7"), 0, 0, 0, 0);
  Rational total = 0;
  for (Index m = 0; m < g.num_items(); ++m) {
    auto post = posterior_from_strategy(g, a.sigma, m);
    if (post) total += message_probability(g, a.sigma, m) * *post;
  }
  EXPECT_EQ(total, g.prior);
}

TEST(GameIo, FixturesRoundTripByteForByte) {
  for (const char* name :
       {"faa", "v1-good-bad", "v2-lenient", "v3-two-types", "v4-truthful", "bad-transitivity"}) {
    std::string path = std::string(EVIGAME_FIXTURES) + "/" + name + ".json";
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(dump(game_to_json(load_game(path))), buf.str()) << name;
  }
}

TEST(GameIo, DecimalsAccepted) {
  auto j = game_to_json(fixture("faa"));
  j["prior"] = "0.5";
  EXPECT_EQ(game_from_json(j).prior, q("1/2"));
  j["prior"] = "abc";
  EXPECT_THROW(game_from_json(j), FormatError);
}

TEST(Rationals, LimitDenominator) {
  EXPECT_EQ(rationalize(0.3333333333), q("1/3"));
  EXPECT_EQ(rationalize(0.25), q("1/4"));
  EXPECT_EQ(to_string(q("6/8")), "3/4");
  EXPECT_EQ(to_string(q("-2")), "-2");
}

bool canonical(const Rational& r) {
  return r.get_den() > 0 && gcd(mpz_class(abs(r.get_num())), r.get_den()) == 1;
}

TEST(RandomGame, PayoffsAreCanonical) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto g = random_game({Index(2 + seed % 2), 0.6, Index(2 + (seed / 2) % 3), seed});
    for (Index a = 0; a < g.num_actions(); ++a) {
      EXPECT_TRUE(canonical(g.payoff_good[a])) << "seed " << seed;
      EXPECT_TRUE(canonical(g.payoff_bad[a])) << "seed " << seed;
    }
  }
}

// Once produced a non-canonical payoff, which hid the only threshold.
TEST(RandomGame, Seed111FindsItsThreshold) {
  auto g = random_game({3, 0.6, 3, 111});
  auto thr = indifference_thresholds(g);
  ASSERT_EQ(thr.size(), 1u);
  // 2 + mu = 15/4 mu - (1 - mu) / 2 by hand
  EXPECT_EQ(thr.front().belief, q("10/13"));
  // no truth-leaning equilibrium, which the boxed grid oracle confirms
  auto tl = find_truth_leaning(g);
  EXPECT_TRUE(tl.families.empty());
  EXPECT_FALSE(tl.refuted.empty());
  EXPECT_TRUE(oracle_pbe_grid(g, {q("1/20"), 0, q("1/20")}, OracleMode::kTruthLeaning).points.empty());
  auto eps = Perturbation::uniform(g.num_items(), q("1/5"), q("1/10"));
  EXPECT_FALSE(solve_perturbed(g, eps).families.empty());
}

}  // namespace
}  // namespace evigame
