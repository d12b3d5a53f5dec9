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

#include <cmath>

#include "evigame/response.hpp"
#include "test_util.hpp"

namespace evigame {
namespace {

using testing::fixture;
using testing::q;
using testing::phi_reference;

Disturbance gaussian(const EvidenceGame& g, const std::string& scales) {
  Disturbance d;
  d.scales = parse_scales(g, scales);
  d.seed = 42;
  return d;
}

TEST(BestResponse, Faa) {
  auto g = fixture("faa");
  EXPECT_EQ(best_response_set(g, q("1/2")), (std::vector<Index>{0}));
  EXPECT_EQ(best_response_set(g, q("2/3")), (std::vector<Index>{0, 1}));
  EXPECT_EQ(best_response_set(g, q("4/5")), (std::vector<Index>{1}));
}

TEST(Thresholds, Examples) {
  auto faa = indifference_thresholds(fixture("faa"));
  ASSERT_EQ(faa.size(), 1u);
  EXPECT_EQ(faa[0].belief, q("2/3"));
  EXPECT_EQ(faa[0].lower, 0u);
  EXPECT_EQ(faa[0].upper, 1u);
  auto v2 = indifference_thresholds(fixture("v2-lenient"));
  ASSERT_EQ(v2.size(), 1u);
  EXPECT_EQ(v2[0].belief, q("1/2"));
  auto single = fixture("faa");
  single.actions = {0};
  single.payoff_good = {0};
  single.payoff_bad = {0};
  EXPECT_TRUE(indifference_thresholds(single).empty());
}

TEST(Thresholds, ThreeActionsSorted) {
  auto g = fixture("faa");
  g.actions = {0, 1, 2};
  g.payoff_good = {0, 1, 2};
  g.payoff_bad = {0, -2, -5};
  auto t = indifference_thresholds(g);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].belief, q("2/3"));
  EXPECT_EQ(t[1].belief, q("3/4"));
  for (const auto& th : t) EXPECT_GT(best_response_set(g, th.belief).size(), 1u);
}

TEST(ShockedResponse, Examples) {
  auto g = fixture("faa");
  EXPECT_EQ(shocked_best_response(g, q("1/2"), {0, 0}), best_response_set(g, q("1/2")));
  EXPECT_EQ(shocked_best_response(g, q("2/3"), {0, 0}), best_response_set(g, q("2/3")));
  EXPECT_EQ(shocked_best_response(g, q("1/2"), {0, 0.6}), (std::vector<Index>{1}));
  EXPECT_EQ(shocked_best_response(g, q("1/2"), {0, 0.5}), (std::vector<Index>{0, 1}));
}

TEST(Smoothed, ClosedFormGaussian) {
  auto g = fixture("faa");
  auto eta = gaussian(g, "1:0.25,0:0");
  auto r = smoothed_response(g, eta, q("1/2"));
  EXPECT_NEAR(r.probs[1], phi_reference(-2), 1e-10);
  EXPECT_NEAR(r.probs[1], 0.0227501, 1e-7);
  EXPECT_EQ(r.stderr_[1], 0.0);
  EXPECT_DOUBLE_EQ(smoothed_response(g, eta, q("2/3")).probs[1], 0.5);
  EXPECT_NEAR(smoothed_response(g, gaussian(g, "1:0.5"), q("1/2")).probs[1], 0.158655, 1e-6);
  EXPECT_EQ(r.probs[0] + r.probs[1], 1.0);
}

TEST(Smoothed, DegenerateRejected) {
  auto g = fixture("faa");
  EXPECT_THROW(smoothed_response(g, gaussian(g, "1:0,0:0"), q("1/2")), std::invalid_argument);
}

TEST(Smoothed, MonteCarloMatchesClosedForm) {
  auto g = fixture("faa");
  auto eta = gaussian(g, "1:0.5,0:0");
  for (const char* mu : {"1/2", "2/3", "4/5"}) {
    auto exact = smoothed_response(g, eta, q(mu));
    auto mc = monte_carlo_response(g, eta, q(mu));
    double se = std::sqrt(exact.probs[1] * (1 - exact.probs[1]) / eta.samples);
    EXPECT_LE(std::abs(mc.probs[1] - exact.probs[1]), 4 * se) << mu;
  }
}

TEST(Smoothed, UniformClosedFormMatchesMonteCarlo) {
  auto g = fixture("faa");
  Disturbance eta;
  eta.family = ShockFamily::kUniform;
  eta.scales = {0.7, 0.9};
  eta.seed = 3;
  for (const char* mu : {"1/3", "1/2", "2/3", "3/4"}) {
    auto exact = smoothed_response(g, eta, q(mu));
    auto mc = monte_carlo_response(g, eta, q(mu));
    double se = std::sqrt(exact.probs[1] * (1 - exact.probs[1]) / eta.samples) + 1e-12;
    EXPECT_LE(std::abs(mc.probs[1] - exact.probs[1]), 4 * se) << mu;
  }
}

TEST(Smoothed, MonteCarloIndependentOfThreads) {
  auto g = fixture("faa");
  g.actions = {0, 1, 2};
  g.payoff_good = {0, 1, 2};
  g.payoff_bad = {0, -2, -5};
  Disturbance eta;
  eta.scales = {0.3, 0.3, 0.3};
  eta.seed = 9;
  eta.samples = 100000;
  setenv("EVIGAME_THREADS", "1", 1);
  auto one = smoothed_response(g, eta, q("7/10"));
  setenv("EVIGAME_THREADS", "4", 1);
  auto four = smoothed_response(g, eta, q("7/10"));
  unsetenv("EVIGAME_THREADS");
  EXPECT_EQ(one.probs, four.probs);
  EXPECT_FALSE(one.closed_form);
  double total = one.probs[0] + one.probs[1] + one.probs[2];
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Curve, FaaValues) {
  auto g = fixture("faa");
  auto eta = gaussian(g, "1:0.25");
  auto c = expected_action_curve(g, eta, {q("1/2"), q("2/3"), q("4/5")});
  EXPECT_NEAR(c.points[0].value, 0.02275, 1e-5);
  EXPECT_NEAR(c.points[1].value, 0.5, 1e-12);
  EXPECT_NEAR(c.points[2].value, 0.94520, 1e-5);
  EXPECT_TRUE(c.increasing);
  auto ends = expected_action_curve(g, eta, {Rational(0), Rational(1)});
  EXPECT_NEAR(ends.points[0].value, 6.2e-16, 1e-17);
  EXPECT_NEAR(ends.points[1].value, 0.999968, 1e-6);
  auto same = expected_action_curve(g, eta, {q("1/3"), q("1/3")});
  EXPECT_EQ(same.points[0].value, same.points[1].value);
  EXPECT_THROW(expected_action_curve(g, eta, {q("1/2"), q("1/3")}), std::invalid_argument);
}

// Near belief one every sample picks the top action: zero error, equal values.
TEST(Curve, SaturatedMonteCarloIsMonotone) {
  auto g = fixture("faa");
  g.actions = {0, 1, 2};
  g.payoff_good = {0, 10, 20};
  g.payoff_bad = {0, -20, -50};
  Disturbance eta;
  eta.scales = {0.1, 0.1, 0.1};
  eta.seed = 5;
  eta.samples = 2000;
  auto c = expected_action_curve(g, eta, {q("99/100"), Rational(1)});
  ASSERT_FALSE(c.points[0].closed_form);
  EXPECT_EQ(c.points[0].value, 2.0);
  EXPECT_EQ(c.points[1].value, 2.0);
  EXPECT_EQ(c.points[0].stderr_, 0.0);
  EXPECT_TRUE(c.increasing);
}

}  // namespace
}  // namespace evigame
