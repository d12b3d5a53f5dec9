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

// Receiver side: exact best responses, indifference thresholds, best
// responses of a shocked receiver type, and the action distribution induced
// by a payoff-shock family.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evigame/game.hpp"
#include "evigame/sampling.hpp"

namespace evigame {

/// Exact argmax of the expected receiver payoff at belief mu, ascending.
inline std::vector<Index> best_response_set(const EvidenceGame& game,
                                            const Rational& mu) {
  std::vector<Index> best;
  Rational top;
  for (Index a = 0; a < game.num_actions(); ++a) {
    Rational u = game.receiver_utility(a, mu);
    if (best.empty() || u > top) {
      best.assign(1, a);
      top = u;
    } else if (u == top) {
      best.push_back(a);
    }
  }
  return best;
}

struct Threshold {
  Rational belief;
  Index lower;  // lowest tied action
  Index upper;  // highest tied action

  bool operator==(const Threshold&) const = default;
};

/// Every belief in [0,1] where the receiver is indifferent, ascending.
inline std::vector<Threshold> indifference_thresholds(const EvidenceGame& game) {
  std::vector<Threshold> out;
  const Index k = game.num_actions();
  for (Index i = 0; i < k; ++i) {
    for (Index j = i + 1; j < k; ++j) {
      Rational di = game.payoff_good[i] - game.payoff_bad[i];
      Rational dj = game.payoff_good[j] - game.payoff_bad[j];
      if (di == dj) continue;
      Rational mu = (game.payoff_bad[j] - game.payoff_bad[i]) / (di - dj);
      if (mu < 0 || mu > 1) continue;
      bool seen = false;
      for (const auto& t : out) seen = seen || t.belief == mu;
      if (seen) continue;
      auto br = best_response_set(game, mu);
      if (br.size() > 1) out.push_back({mu, br.front(), br.back()});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Threshold& a, const Threshold& b) { return a.belief < b.belief; });
  return out;
}

/// Argmax of u(a, mu) + zeta(a). The shock is converted exactly, so ties
/// are detected without rounding.
inline std::vector<Index> shocked_best_response(const EvidenceGame& game,
                                                const Rational& mu,
                                                const std::vector<double>& zeta) {
  if (zeta.size() != game.num_actions())
    throw std::invalid_argument("shock vector has wrong length");
  std::vector<Index> best;
  Rational top;
  for (Index a = 0; a < game.num_actions(); ++a) {
    Rational u = game.receiver_utility(a, mu) + from_double(zeta[a]);
    if (best.empty() || u > top) {
      best.assign(1, a);
      top = u;
    } else if (u == top) {
      best.push_back(a);
    }
  }
  return best;
}

enum class ShockFamily { kGaussian, kUniform };

inline std::string family_name(ShockFamily f) {
  return f == ShockFamily::kGaussian ? "gaussian" : "uniform";
}

inline ShockFamily parse_family(const std::string& s) {
  if (s == "gaussian" || s == "gaussian-iid") return ShockFamily::kGaussian;
  if (s == "uniform" || s == "uniform-iid") return ShockFamily::kUniform;
  throw std::invalid_argument("unknown shock family: " + s);
}

/// Independent per-action payoff shocks. `scales[a]` is the standard
/// deviation (gaussian) or half-width (uniform) of the shock on action a.
struct Disturbance {
  ShockFamily family = ShockFamily::kGaussian;
  std::vector<double> scales;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000000;

  Disturbance scaled(double factor) const {
    Disturbance d = *this;
    for (auto& s : d.scales) s *= factor;
    return d;
  }
};

/// Problems that make the shock family unusable for `game`. Every pair of
/// actions needs a positive combined scale so that ties have probability 0.
inline std::vector<std::string> disturbance_errors(const EvidenceGame& game,
                                                   const Disturbance& eta) {
  std::vector<std::string> out;
  if (eta.scales.size() != game.num_actions()) {
    out.push_back("scales must cover every action");
    return out;
  }
  if (eta.samples < 1) out.push_back("samples must be positive");
  Index zeros = 0;
  for (double s : eta.scales) {
    if (!std::isfinite(s) || s < 0) out.push_back("scales must be finite and nonnegative");
    if (s == 0) ++zeros;
  }
  if (game.num_actions() >= 2 && zeros > 1)
    out.push_back("degenerate disturbance: some action pair has zero combined scale");
  return out;
}

/// Parses "1:0.25,0:0" (action value : scale). Unlisted actions get 0.
inline std::vector<double> parse_scales(const EvidenceGame& game,
                                        const std::string& text) {
  std::vector<double> scales(game.num_actions(), 0.0);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("scale entry needs action:scale, got '" + item + "'");
    Rational action = parse_rational(item.substr(0, colon));
    auto a = game.find_action(action);
    if (!a) throw std::invalid_argument("scale given for unknown action " + item.substr(0, colon));
    scales[*a] = std::stod(item.substr(colon + 1));
  }
  return scales;
}

struct SmoothedResponse {
  std::vector<double> probs;
  double value = 0.0;
  std::vector<double> stderr_;  // per action; zero when closed form
  double value_stderr = 0.0;
  bool closed_form = true;
};

namespace detail {

inline double ramp_sq(double x) { return x > 0 ? x * x : 0.0; }

/// P(X + Y <= t) for X ~ U(-b, b), Y ~ U(-a, a), with a or b possibly 0.
inline double uniform_sum_cdf(double t, double a, double b) {
  if (a > b) std::swap(a, b);
  if (b == 0) return t >= 0 ? 1.0 : 0.0;
  if (a == 0) return std::clamp((t + b) / (2 * b), 0.0, 1.0);
  double s = ramp_sq(t + a + b) - ramp_sq(t + a - b) - ramp_sq(t - a + b) +
             ramp_sq(t - a - b);
  return std::clamp(s / (8 * a * b), 0.0, 1.0);
}

inline SmoothedResponse finish(const EvidenceGame& game, SmoothedResponse r) {
  double v = 0.0;
  for (Index a = 0; a < game.num_actions(); ++a)
    v += to_double(game.actions[a]) * r.probs[a];
  r.value = v;
  return r;
}

}  // namespace detail

/// Seeded Monte Carlo estimate of the shocked receiver's action frequencies.
/// Exact ties among shocked utilities go to the lower action.
inline SmoothedResponse monte_carlo_response(const EvidenceGame& game,
                                             const Disturbance& eta,
                                             const Rational& mu) {
  auto errors = disturbance_errors(game, eta);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  const Index k = game.num_actions();
  std::vector<double> base(k);
  for (Index a = 0; a < k; ++a) base[a] = to_double(game.receiver_utility(a, mu));

  unsigned chunks = thread_count();
  std::vector<std::vector<std::uint64_t>> counts(chunks, std::vector<std::uint64_t>(k, 0));
  parallel_chunks(eta.samples, chunks,
                  [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
                    auto& local = counts[c];
                    for (std::uint64_t i = begin; i < end; ++i) {
                      IndexedStream rng(eta.seed, i);
                      Index best = 0;
                      double top = 0.0;
                      for (Index a = 0; a < k; ++a) {
                        double z = eta.family == ShockFamily::kGaussian
                                       ? rng.normal()
                                       : rng.symmetric_uniform();
                        double u = base[a] + eta.scales[a] * z;
                        if (a == 0 || u > top) {
                          top = u;
                          best = a;
                        }
                      }
                      ++local[best];
                    }
                  });
  SmoothedResponse r;
  r.closed_form = false;
  r.probs.assign(k, 0.0);
  r.stderr_.assign(k, 0.0);
  const double n = static_cast<double>(eta.samples);
  std::vector<std::uint64_t> total(k, 0);
  for (const auto& local : counts)
    for (Index a = 0; a < k; ++a) total[a] += local[a];
  double mean = 0.0, second = 0.0;
  for (Index a = 0; a < k; ++a) {
    double p = static_cast<double>(total[a]) / n;
    r.probs[a] = p;
    r.stderr_[a] = std::sqrt(p * (1.0 - p) / n);
    double x = to_double(game.actions[a]);
    mean += x * p;
    second += x * x * p;
  }
  r.value = mean;
  r.value_stderr = std::sqrt(std::max(0.0, second - mean * mean) / n);
  return r;
}

/// Action distribution of the shocked receiver at belief mu. Two-action
/// games have closed forms for both families; otherwise Monte Carlo.
inline SmoothedResponse smoothed_response(const EvidenceGame& game,
                                          const Disturbance& eta,
                                          const Rational& mu) {
  auto errors = disturbance_errors(game, eta);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  const Index k = game.num_actions();
  if (k == 1) {
    SmoothedResponse r;
    r.probs = {1.0};
    r.stderr_ = {0.0};
    r.value = to_double(game.actions[0]);
    return r;
  }
  if (k != 2) return monte_carlo_response(game, eta, mu);

  double gap = to_double(game.receiver_utility(1, mu) - game.receiver_utility(0, mu));
  double upper;
  if (eta.family == ShockFamily::kGaussian) {
    double s = std::hypot(eta.scales[0], eta.scales[1]);
    upper = normal_cdf(gap / s);
  } else {
    // Upper action wins iff zeta1 - zeta0 > -gap; the difference is symmetric.
    upper = detail::uniform_sum_cdf(gap, eta.scales[0], eta.scales[1]);
  }
  SmoothedResponse r;
  r.probs = {1.0 - upper, upper};
  r.stderr_ = {0.0, 0.0};
  return detail::finish(game, std::move(r));
}

struct CurvePoint {
  Rational belief;
  double value;
  double stderr_;
  bool closed_form = true;
};

struct ActionCurve {
  std::vector<CurvePoint> points;
  bool increasing = true;  // strictly for closed forms, within 3 pooled SE otherwise
};

inline ActionCurve expected_action_curve(const EvidenceGame& game,
                                         const Disturbance& eta,
                                         const std::vector<Rational>& grid) {
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0 || grid[i] > 1) throw std::invalid_argument("belief grid outside [0,1]");
    if (i > 0 && grid[i] < grid[i - 1]) throw std::invalid_argument("belief grid not ascending");
  }
  ActionCurve curve;
  for (const auto& mu : grid) {
    auto r = smoothed_response(game, eta, mu);
    curve.points.push_back({mu, r.value, r.value_stderr, r.closed_form});
  }
  for (size_t i = 1; i < curve.points.size(); ++i) {
    const auto& lo = curve.points[i - 1];
    const auto& hi = curve.points[i];
    if (lo.belief == hi.belief) continue;
    // a saturated Monte Carlo estimate has zero error but may repeat
    bool exact = lo.closed_form && hi.closed_form;
    double pooled = std::hypot(lo.stderr_, hi.stderr_);
    bool ok = exact ? hi.value > lo.value : hi.value - lo.value >= -3.0 * pooled;
    curve.increasing = curve.increasing && ok;
  }
  return curve;
}

}  // namespace evigame
