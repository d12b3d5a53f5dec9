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

#include <cmath>
#include <string>
#include <vector>

#include "evigame/check.hpp"
#include "evigame/io.hpp"

namespace evigame::testing {

inline EvidenceGame fixture(const std::string& name) {
  return load_game(std::string(EVIGAME_FIXTURES) + "/" + name + ".json");
}

inline Rational q(const char* s) { return parse_rational(s); }

/// Independent reference: Phi(x) by Simpson integration of the density.
inline double phi_reference(double x) {
  if (x < 0) return 1.0 - phi_reference(-x);
  const int n = 20000;
  double h = x / n, sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = i * h;
    double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * std::exp(-t * t / 2);
  }
  return 0.5 + sum * h / 3 / std::sqrt(2 * M_PI);
}

/// Two-item game n <= b: sigma(n|b) = p, rho(1|n) = q_n, rho(1|b) = q_b.
inline Assessment two_item(const Rational& p, const Rational& q_n, const Rational& mu_n,
                           const Rational& mu_b, const Rational& q_b = 0) {
  Assessment a;
  a.sigma.rows = {{1, 0}, {p, 1 - p}};
  a.rho.rows = {{1 - q_n, q_n}, {1 - q_b, q_b}};
  a.mu.beliefs = {mu_n, mu_b};
  return a;
}

/// Three-item game n <= b1, n <= b2 with sigma(n|bi) = p_i.
inline Assessment three_item(const Rational& p1, const Rational& p2, const Rational& q_n,
                             const Rational& mu_n, const Rational& mu_b1, const Rational& mu_b2) {
  Assessment a;
  a.sigma.rows = {{1, 0, 0}, {p1, 1 - p1, 0}, {p2, 0, 1 - p2}};
  a.rho.rows = {{1 - q_n, q_n}, {1, 0}, {1, 0}};
  a.mu.beliefs = {mu_n, mu_b1, mu_b2};
  return a;
}

}  // namespace evigame::testing
