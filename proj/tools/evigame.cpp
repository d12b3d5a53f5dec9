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


// Command line front end. Exit codes: 0 success, 1 validation or check
// failure, 2 usage error.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evigame/random_game.hpp"
#include "evigame/report.hpp"

namespace evigame {
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// A flag value that parses but makes no sense for the command.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Perturbation flag_perturbation(const EvidenceGame& g, const std::string& reward, const std::string& floor) {
  Perturbation eps;
  try {
    eps.reward = parse_item_values(g, reward, 0);
  } catch (const std::exception& e) {
    throw UsageError("--reward: " + std::string(e.what()));
  }
  try {
    eps.floor = parse_item_values(g, floor, 0);
  } catch (const std::exception& e) {
    throw UsageError("--floor: " + std::string(e.what()));
  }
  auto errors = perturbation_errors(g, eps);
  if (!errors.empty()) throw UsageError("--reward/--floor: " + errors.front());
  return eps;
}

struct Options {
  std::string game, out, assessment, solution_concept = "pbe";
  std::string reward = "1/10", floor = "1/20";
  std::string scales, action_scales, family = "gaussian", trace;
  std::string factor = "1/2", path, tie = "lowest", mode = "perturbed";
  std::string step = "1/20", tolerance = "0", radius = "0", density = "0.5";
  std::uint64_t seed = 1, samples = 1000000;
  int steps = 40;
  Index items = 3, actions = 2;
  bool timing = false;
};

int run_validate(const Options& o) {
  auto g = game_from_json(read_json_file(o.game));
  auto report = validate_game(g);
  Json j;
  j["valid"] = report.ok();
  Json v = Json::array();
  for (const auto& x : report.violations) v.push_back({{"invariant", x.invariant}, {"detail", x.detail}});
  j["violations"] = v;
  emit(dump(j), o.out);
  return report.ok() ? kOk : kFailed;
}

/// Loads and validates; a bad game is reported on stderr.
std::optional<EvidenceGame> load_valid(const std::string& path) {
  auto g = game_from_json(read_json_file(path));
  auto report = validate_game(g);
  if (report.ok()) return g;
  for (const auto& v : report.violations) std::cerr << "invalid game: " << v.invariant << ": " << v.detail << "\n";
  return std::nullopt;
}

int run_analyze(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  auto t0 = std::chrono::steady_clock::now();
  Json j = relations_to_json(*g, relations_report(*g));
  if (o.timing)
    j["timing"] = {{"seconds", real12(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())}};
  emit(dump(j), o.out);
  return kOk;
}

int run_solve_star(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  auto star = solve_star(*g);
  Json j = star_to_json(*g, star);
  j["genericity"] = genericity_to_json(*g, genericity_check(*g, star));
  emit(dump(j), o.out);
  return kOk;
}

int run_truth_leaning(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  emit(dump(truth_leaning_to_json(*g, find_truth_leaning(*g))), o.out);
  return kOk;
}

int run_purifiable(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  if (o.tie != "lowest" && o.tie != "highest") throw UsageError("--tie: expected lowest or highest");
  auto star = solve_star(*g);
  TieWeights w = lowest_action_weights(*g, star);
  if (o.tie == "highest")
    for (auto& [level, row] : w) {
      auto br = best_response_set(*g, level);
      std::fill(row.begin(), row.end(), Rational(0));
      row[br.back()] = 1;
    }
  auto a = construct_purifiable(*g, star, w);
  Json j;
  j["genericity"] = genericity_to_json(*g, genericity_check(*g, star));
  j["tieBreak"] = o.tie;
  j["assessment"] = assessment_to_json(*g, a);
  j["truthLeaning"] = verify_truth_leaning(*g, a).pass();
  emit(dump(j), o.out);
  return kOk;
}

int run_disturbed_sweep(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  std::vector<double> schedule;
  try {
    schedule = parse_schedule(o.scales);
  } catch (const std::exception& e) {
    throw UsageError("--scales: " + std::string(e.what()));
  }
  Disturbance eta;
  try {
    eta.family = parse_family(o.family);
  } catch (const std::exception& e) {
    throw UsageError("--family: " + std::string(e.what()));
  }
  try {
    eta.scales = o.action_scales.empty() ? default_action_scales(*g) : parse_scales(*g, o.action_scales);
  } catch (const std::exception& e) {
    throw UsageError("--action-scales: " + std::string(e.what()));
  }
  eta.seed = o.seed;
  eta.samples = o.samples;
  auto errors = disturbance_errors(*g, eta);
  if (!errors.empty()) throw UsageError("--action-scales: " + errors.front());
  if (schedule.size() < 3) throw UsageError("--scales: need at least 3 scales");
  for (Index i = 0; i < schedule.size(); ++i)
    if (!(schedule[i] > 0) || (i > 0 && !(schedule[i] < schedule[i - 1])))
      throw UsageError("--scales: must be positive and strictly decreasing");
  auto trace = purification_trace(*g, eta, schedule, solve_star(*g));
  emit(sweep_csv(*g, trace), o.out);
  std::string summary = dump(trace_summary_to_json(*g, trace));
  if (o.trace.empty())
    std::cerr << summary;
  else
    write_text_file(o.trace, summary);
  return kOk;
}

int run_perturbed(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  auto eps = flag_perturbation(*g, o.reward, o.floor);
  auto r = solve_perturbed(*g, eps);
  Json j;
  j["perturbation"] = perturbation_to_json(*g, eps);
  j["families"] = families_to_json(*g, r.families);
  j["structuresExamined"] = r.structures;
  emit(dump(j), o.out);
  return kOk;
}

int run_weakly_tl(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  std::string name = "custom";
  HomotopyPath path;
  if (!o.path.empty()) {
    bool found = false;
    for (auto& [n, p] : canonical_paths(*g))
      if (n == o.path) {
        name = n;
        path = p;
        found = true;
      }
    if (!found) throw UsageError("--path: expected equal, increasing or decreasing");
  } else {
    path.base = flag_perturbation(*g, o.reward, o.floor);
    path.factor = flag_rational("--factor", o.factor);
    path.steps = o.steps;
    if (!(path.factor > 0 && path.factor < 1)) throw UsageError("--factor: must lie in (0,1)");
    if (path.steps < 3) throw UsageError("--steps: need at least 3");
  }
  auto r = homotopy_weakly_tl(*g, path);
  if (!o.trace.empty()) write_text_file(o.trace, homotopy_csv(r));
  emit(dump(homotopy_to_json(*g, name, path, r)), o.out);
  return r.converged ? kOk : kFailed;
}

int run_lift(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  auto eps = flag_perturbation(*g, o.reward, o.floor);
  try {
    LiftResult r;
    if (o.assessment.empty()) {
      r = lift_witness(*g, eps);
    } else {
      auto a = assessment_from_json(*g, read_json_file(o.assessment));
      r = lift_witness(*g, solve_star(*g), a, eps);
    }
    Json j;
    j["perturbation"] = perturbation_to_json(*g, eps);
    j["assessment"] = assessment_to_json(*g, r.assessment);
    j["perturbedPbe"] = check_to_json(r.check);
    emit(dump(j), o.out);
    return r.check.pass() ? kOk : kFailed;
  } catch (const PreconditionError& e) {
    std::cerr << "lift: " << e.what() << "\n";
    return kFailed;
  }
}

int run_check(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  auto a = assessment_from_json(*g, read_json_file(o.assessment));
  CheckResult c;
  if (o.solution_concept == "pbe")
    c = verify_pbe(*g, a);
  else if (o.solution_concept == "truth-leaning")
    c = verify_truth_leaning(*g, a);
  else if (o.solution_concept == "purifiable")
    c = verify_purifiable(*g, a, solve_star(*g));
  else if (o.solution_concept == "perturbed")
    c = verify_perturbed_pbe(*g, flag_perturbation(*g, o.reward, o.floor), a);
  else
    throw UsageError("--concept: expected pbe, truth-leaning, purifiable or perturbed");
  Json j = check_to_json(c);
  j["concept"] = o.solution_concept;
  emit(dump(j), o.out);
  return c.pass() ? kOk : kFailed;
}

int run_random(const Options& o) {
  double density = 0;
  try {
    density = std::stod(o.density);
  } catch (const std::exception&) {
    throw UsageError("--density: not a number");
  }
  if (!(density >= 0 && density <= 1)) throw UsageError("--density: must lie in [0,1]");
  if (o.items < 1) throw UsageError("--items: need at least 1");
  if (o.actions < 2) throw UsageError("--actions: need at least 2");
  emit(dump(game_to_json(random_game({o.items, density, o.actions, o.seed}))), o.out);
  return kOk;
}

int run_oracle_compare(const Options& o) {
  auto g = load_valid(o.game);
  if (!g) return kFailed;
  OracleGrid grid{flag_rational("--step", o.step), flag_rational("--tolerance", o.tolerance),
                  flag_rational("--radius", o.radius)};
  std::vector<Family> fams;
  OracleResult res;
  Json j;
  try {
    if (o.mode == "truth-leaning") {
      fams = find_truth_leaning(*g).families;
      res = oracle_pbe_grid(*g, grid, OracleMode::kTruthLeaning);
    } else if (o.mode == "perturbed") {
      auto eps = flag_perturbation(*g, o.reward, o.floor);
      fams = solve_perturbed(*g, eps).families;
      res = oracle_pbe_grid(*g, grid, OracleMode::kPerturbed, eps);
      j["perturbation"] = perturbation_to_json(*g, eps);
    } else {
      throw UsageError("--mode: expected truth-leaning or perturbed");
    }
  } catch (const RegimeError&) {
    throw;
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError("--step/--tolerance/--radius: " + std::string(e.what()));
  }
  auto cmp = oracle_compare(fams, res, grid.step);
  j["mode"] = o.mode;
  j["step"] = to_string(grid.step);
  j["radius"] = to_string(grid.radius);
  j["profilesScanned"] = res.profiles;
  j["comparison"] = comparison_to_json(cmp);
  emit(dump(j), o.out);
  return cmp.pass() ? kOk : kFailed;
}

}  // namespace
}  // namespace evigame

int main(int argc, char** argv) {
  using namespace evigame;
  CLI::App app{"evigame: equilibria of evidence games"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> action;

  auto game_cmd = [&](const std::string& name, const std::string& help, int (*fn)(const Options&)) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("game", o.game, "game JSON file")->required();
    c->add_option("--out", o.out, "write the result here instead of stdout");
    c->callback([&, fn] { action = fn; });
    return c;
  };
  auto perturbation_flags = [&](CLI::App* c) {
    c->add_option("--reward", o.reward, "truth-telling reward: one rational or item:value pairs");
    c->add_option("--floor", o.floor, "minimum truthful probability: one rational or item:value pairs");
  };

  game_cmd("validate", "check a game file against every invariant", run_validate);
  game_cmd("analyze", "full report: star, truth-leaning, purifiable, weakly truth-leaning, relations",
           run_analyze)
      ->add_flag("--timing", o.timing, "include wall-clock time in the report");
  game_cmd("solve-star", "universal beliefs and sender strategy set", run_solve_star);
  game_cmd("truth-leaning", "all truth-leaning equilibria, or the refutations", run_truth_leaning);
  game_cmd("purifiable", "construct a purifiable equilibrium", run_purifiable)
      ->add_option("--tie", o.tie, "tie-break at tied levels: lowest or highest");
  {
    auto* c = game_cmd("disturbed-sweep", "receiver behaviour as payoff shocks vanish", run_disturbed_sweep);
    c->add_option("--scales", o.scales, "decreasing shock multipliers, e.g. 0.5,0.25,0.1")->required();
    c->add_option("--action-scales", o.action_scales, "base shock per action, e.g. 1:1,0:0");
    c->add_option("--family", o.family, "gaussian or uniform");
    c->add_option("--seed", o.seed, "Monte Carlo seed");
    c->add_option("--samples", o.samples, "Monte Carlo samples per belief");
    c->add_option("--summary", o.trace, "write the limit summary JSON here instead of stderr");
  }
  perturbation_flags(game_cmd("perturbed", "equilibria of one perturbed game", run_perturbed));
  {
    auto* c = game_cmd("weakly-tl", "follow perturbed equilibria as the perturbation vanishes", run_weakly_tl);
    perturbation_flags(c);
    c->add_option("--factor", o.factor, "shrink factor per step");
    c->add_option("--steps", o.steps, "maximum steps");
    c->add_option("--path", o.path, "canonical path: equal, increasing or decreasing");
    c->add_option("--trace", o.trace, "write the step trace CSV here");
  }
  {
    auto* c = game_cmd("lift", "lift a purifiable truth-leaning equilibrium to a perturbed game", run_lift);
    perturbation_flags(c);
    c->add_option("--assessment", o.assessment, "assessment JSON to lift (default: the constructed one)");
  }
  {
    auto* c = game_cmd("check", "judge an assessment against a solution concept", run_check);
    c->add_option("assessment", o.assessment, "assessment JSON file")->required();
    c->add_option("--concept", o.solution_concept, "pbe, truth-leaning, purifiable or perturbed");
    perturbation_flags(c);
  }
  {
    auto* c = app.add_subcommand("random", "generate a random valid game");
    c->add_option("--items", o.items, "number of evidence items");
    c->add_option("--density", o.density, "chance of each order relation");
    c->add_option("--actions", o.actions, "number of receiver actions");
    c->add_option("--seed", o.seed, "generator seed");
    c->add_option("--out", o.out, "write the game here instead of stdout");
    c->callback([&] { action = run_random; });
  }
  {
    auto* c = game_cmd("oracle-compare", "compare solver output with the grid oracle", run_oracle_compare);
    c->add_option("--mode", o.mode, "truth-leaning or perturbed");
    c->add_option("--step", o.step, "grid spacing 1/S");
    c->add_option("--tolerance", o.tolerance, "slack on every optimality condition");
    c->add_option("--radius", o.radius, "box radius, a multiple of the step");
    perturbation_flags(c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
