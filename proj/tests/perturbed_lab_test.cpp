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

#include "evigame/perturbed_lab.hpp"
#include "test_util.hpp"

namespace evigame {
namespace {

using testing::fixture;
using testing::q;

HomotopyPath standard_path(Index n) {
  return {Perturbation::uniform(n, q("1/10"), q("1/20")), q("1/2"), 30};
}

// FAA with a milder loss from approving the bad state: pooling on n wins approval.
EvidenceGame lenient_pooling() {
  auto g = fixture("faa");
  g.payoff_bad[1] = q("-1/2");
  return g;
}

TEST(Homotopy, FaaLimit) {
  auto g = fixture("faa");
  auto h = homotopy_weakly_tl(g, standard_path(2));
  ASSERT_TRUE(h.converged);
  EXPECT_EQ(h.verdict(), "converged");
  // stops once consecutive points agree to 1e-8
  ASSERT_LT(h.trace.size(), 30u);
  EXPECT_LT(h.last_change, q("1/100000000"));
  EXPECT_EQ(h.trace[3].scale, q("1/8"));
  for (const auto& step : h.trace) {
    // along the path: p = 1/4 and q equals the reward
    EXPECT_EQ(step.assessment.sigma(0, 1), q("1/4"));
    EXPECT_EQ(step.assessment.rho(1, 0), q("1/10") * step.scale);
  }
  ASSERT_TRUE(h.limit.has_value());
  EXPECT_EQ(h.limit->sigma(0, 1), q("1/4"));
  EXPECT_EQ(h.limit->rho(1, 0), 0);
  EXPECT_EQ(h.limit->mu[0], q("2/3"));
  EXPECT_TRUE(h.limit_pbe.pass());
}

TEST(Homotopy, V1Truthful) {
  auto g = fixture("v1-good-bad");
  auto h = homotopy_weakly_tl(g, standard_path(2));
  ASSERT_TRUE(h.converged);
  EXPECT_EQ(h.limit->sigma, truthful_strategy(g));
  EXPECT_TRUE(verify_truth_leaning(g, *h.limit).pass());
}

TEST(Homotopy, V2Limit) {
  auto g = fixture("v2-lenient");
  auto h = homotopy_weakly_tl(g, standard_path(2));
  ASSERT_TRUE(h.converged);
  EXPECT_EQ(h.limit->sigma(0, 1), 1);
  EXPECT_EQ(h.limit->rho(1, 0), 1);
  EXPECT_EQ(h.limit->mu[0], q("1/2"));
  EXPECT_TRUE(verify_truth_leaning(g, *h.limit).pass());
}

TEST(Homotopy, V3UnequalRewards) {
  auto g = fixture("v3-two-types");
  Perturbation eps{{q("1/10"), q("1/20"), q("1/10")}, {q("1/100"), q("1/100"), q("1/100")}};
  auto h = homotopy_weakly_tl(g, {eps, q("1/2"), 30});
  ASSERT_TRUE(h.converged);
  EXPECT_EQ(h.limit->sigma(0, 1), q("1/2"));
  EXPECT_EQ(h.limit->sigma(0, 2), 0);
  EXPECT_EQ(h.limit->rho(1, 0), 0);
  EXPECT_EQ(h.limit->mu[0], q("2/3"));
  EXPECT_TRUE(h.limit_pbe.pass());
}

TEST(Homotopy, PathValidation) {
  auto g = fixture("faa");
  auto path = standard_path(2);
  path.factor = 1;
  EXPECT_THROW(homotopy_weakly_tl(g, path), std::invalid_argument);
  path = standard_path(2);
  path.steps = 2;
  EXPECT_THROW(homotopy_weakly_tl(g, path), std::invalid_argument);
}

TEST(Lift, TruthfulGame) {
  auto g = fixture("v4-truthful");
  auto eps = Perturbation::uniform(2, q("1/10"), q("1/20"));
  auto lifted = lift_witness(g, eps);
  EXPECT_TRUE(lifted.check.pass());
  EXPECT_EQ(lifted.assessment.sigma, truthful_strategy(g));
  EXPECT_TRUE(verify_perturbed_pbe(g, eps, lifted.assessment).pass());
}

TEST(Lift, PoolingGame) {
  auto g = lenient_pooling();
  auto eps = Perturbation::uniform(2, q("1/10"), q("1/20"));
  auto lifted = lift_witness(g, eps);
  EXPECT_EQ(lifted.assessment.sigma(1, 1), q("1/20"));
  EXPECT_EQ(lifted.assessment.sigma(0, 1), q("19/20"));
  EXPECT_EQ(lifted.assessment.rho(1, 0), 1);
  EXPECT_TRUE(verify_perturbed_pbe(g, eps, lifted.assessment).pass());
}

TEST(Lift, TooLargeNamesScaling) {
  auto g = lenient_pooling();
  try {
    lift_witness(g, Perturbation::uniform(2, q("3/2"), q("1/20")));
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("perturbation not small enough"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1/2^1"), std::string::npos) << e.what();
  }
}

TEST(Lift, Preconditions) {
  auto eps = Perturbation::uniform(2, q("1/10"), q("1/20"));
  EXPECT_THROW(lift_witness(fixture("faa"), eps), PreconditionError);
  EXPECT_THROW(lift_witness(fixture("v2-lenient"), eps), PreconditionError);
  try {
    lift_witness(fixture("v2-lenient"), eps);
  } catch (const PreconditionError& e) {
    EXPECT_STREQ(e.what(), "genericity precondition fails");
  }
  // an assessment that is not truth-leaning
  auto g = lenient_pooling();
  auto star = solve_star(g);
  Assessment wrong = testing::two_item(0, 0, q("3/5"), q("3/7"));
  EXPECT_THROW(lift_witness(g, star, wrong, eps), PreconditionError);
}

TEST(Relations, CanonicalPaths) {
  auto paths = canonical_paths(fixture("faa"));
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[1].second.base.reward, (std::vector<Rational>{q("1/20"), q("1/10")}));
  EXPECT_EQ(paths[2].second.base.reward, (std::vector<Rational>{q("1/10"), q("1/20")}));
  EXPECT_EQ(paths[0].second.steps, 40);
}

TEST(Relations, Fixtures) {
  struct Case {
    const char* name;
    const char* first;
    const char* second;
  };
  for (const auto& c : {Case{"faa", "vacuous", "vacuous"}, Case{"v1-good-bad", "vacuous", "vacuous"},
                        Case{"v4-truthful", "holds", "holds"}, Case{"v2-lenient", "holds", "not applicable"}}) {
    auto r = relations_report(fixture(c.name));
    EXPECT_EQ(r.weakly_and_purifiable_implies_tl.status, c.first) << c.name;
    EXPECT_EQ(r.tl_and_purifiable_implies_weakly.status, c.second) << c.name;
  }
}

TEST(Relations, PoolingGameHolds) {
  auto r = relations_report(lenient_pooling());
  EXPECT_EQ(r.weakly_and_purifiable_implies_tl.status, "holds");
  EXPECT_EQ(r.tl_and_purifiable_implies_weakly.status, "holds");
}

}  // namespace
}  // namespace evigame
