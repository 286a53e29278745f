// Copyright 2026 The Shapley Forge Authors
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


// shapley-forge: command-line front end for the power-index library.
//
// Exit codes: 0 success, 1 no solution, 2 usage or validation error.
// Results go to --out (or stdout); logs and run manifests go to stderr
// unless --out is given, in which case the manifest lands next to it.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapley_forge.hpp"

namespace sf = shapley_forge;
using sf::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string out;
  std::string manifest;
  int threads = 0;
  bool quiet = false;
};

void log(const Common& c, const std::string& msg) {
  if (!c.quiet) std::cerr << "shapley-forge: " << msg << '\n';
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SHAPLEY_FORGE_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("SHAPLEY_FORGE_THREADS must be a positive integer, got '") +
                                env + "'");
  }
  return 1;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    sf::write_text_file(c.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// The manifest carries wall time, so it never shares a file with results.
void emit_manifest(const Common& c, const std::string& command, const std::vector<std::string>& argv,
                   Json config, std::optional<std::uint64_t> seed, double wall, Json outcome) {
  Json m{{"command", command},
         {"argv", argv},
         {"config", std::move(config)},
         {"seed", seed ? Json(*seed) : Json(nullptr)},
         {"tool_version", SHAPLEY_FORGE_VERSION},
         {"wall_time_s", wall},
         {"outcome", std::move(outcome)}};
  std::string target = c.manifest;
  if (target.empty() && !c.out.empty()) target = c.out + ".manifest.json";
  if (target.empty()) {
    if (!c.quiet) std::cerr << m.dump() << '\n';
  } else {
    sf::write_text_file(target, dump(m));
  }
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Shapley power indices, their estimation, and inverse solving for weighted voting games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SHAPLEY_FORGE_VERSION);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output file (default: stdout)");
    sub->add_option("--manifest", common.manifest, "Run manifest file (default: <out>.manifest.json or stderr)");
    sub->add_option("--threads", common.threads, "Worker threads (default: $SHAPLEY_FORGE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("-q,--quiet", common.quiet, "Suppress logs");
  };

  // compute
  std::string game_path;
  bool exact_enum = false;
  bool exact_dp = false;
  std::optional<std::int64_t> samples;
  std::uint64_t seed = 0;
  auto* compute = app.add_subcommand("compute", "Exact (or fixed-sample) Shapley values of a game");
  compute->add_option("--game", game_path, "Game or quota JSON file")->required();
  auto* enum_flag = compute->add_flag("--exact-enum", exact_enum, "Truth-table enumeration");
  auto* dp_flag = compute->add_flag("--exact-dp", exact_dp, "Pivotal-counting DP (integer weights)");
  auto* samples_opt = compute->add_option("--samples", samples, "Monte Carlo with m permutations")
                          ->check(CLI::PositiveNumber);
  enum_flag->excludes(dp_flag)->excludes(samples_opt);
  dp_flag->excludes(samples_opt);
  compute->add_option("--seed", seed, "Seed for --samples");
  add_common(compute);

  // estimate
  double gamma = 0.1;
  double delta = 0.01;
  std::optional<std::int64_t> max_samples;
  auto* estimate = app.add_subcommand("estimate", "Estimate Shapley values by permutation sampling");
  estimate->add_option("--game", game_path, "Game or quota JSON file")->required();
  estimate->add_option("--gamma", gamma, "Accuracy in d_Shapley")->check(CLI::PositiveNumber);
  estimate->add_option("--delta", delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  estimate->add_option("--seed", seed, "RNG seed");
  estimate->add_option("--max-samples", max_samples, "Cap on the sample size")->check(CLI::PositiveNumber);
  add_common(estimate);

  // solve / solve-bounded
  std::string target_path;
  sf::SolveConfig solve_cfg;
  std::string oracle = "dp";
  std::optional<double> epsilon_opt;
  std::optional<double> xi_opt;
  std::int64_t weight_bound = 0;
  auto add_solve_options = [&](CLI::App* sub, bool bounded) {
    sub->add_option("--target", target_path, "Target Shapley JSON file")->required();
    sub->add_option("--epsilon", epsilon_opt,
                    bounded ? "Shapley accuracy (default n^(-1/8))" : "Shapley accuracy (default 0.1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--xi", xi_opt,
                    bounded ? "Boosting tolerance (default min(0.005, 1/(10 n W)))"
                            : "Boosting tolerance (default 0.005)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid", solve_cfg.grid_step, "Guess grid step")->check(CLI::PositiveNumber);
    sub->add_option("--delta", solve_cfg.delta, "Overall failure probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", solve_cfg.seed, "RNG seed");
    sub->add_option("--oracle", oracle, "Correlation oracle")
        ->check(CLI::IsMember({"enum", "dp", "sampled"}));
    sub->add_option("--eta", solve_cfg.eta, "Assumed reasonableness (recorded only)");
    sub->add_option("--max-samples", solve_cfg.max_samples, "Cap on every Monte Carlo sample size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--certificate-interval", solve_cfg.certificate_interval,
                    "Boosting iterations between infeasibility checks (0 disables)")
        ->check(CLI::NonNegativeNumber);
    if (bounded) {
      sub->add_option("--weight-bound", weight_bound, "Weight bound W")->required()->check(CLI::PositiveNumber);
    }
    add_common(sub);
  };
  auto* solve = app.add_subcommand("solve", "Find a game whose Shapley values approximate a target");
  add_solve_options(solve, false);
  auto* solve_bounded = app.add_subcommand("solve-bounded", "Inverse solving with a weight bound");
  add_solve_options(solve_bounded, true);

  // sample-mu
  int n = 0;
  std::int64_t count = 0;
  auto* sample_mu = app.add_subcommand("sample-mu", "Draw strings from mu as CSV");
  sample_mu->add_option("--n", n, "Number of voters")->required()->check(CLI::Range(2, 64));
  sample_mu->add_option("--count", count, "Number of samples")->required()->check(CLI::NonNegativeNumber);
  sample_mu->add_option("--seed", seed, "RNG seed");
  add_common(sample_mu);

  // diagnose
  std::string mode;
  std::string game2_path;
  double radius = 0.0;
  std::optional<int> level;
  double bias = 0.5;
  std::int64_t diag_samples = 100000;
  auto* diagnose = app.add_subcommand("diagnose", "Anti-concentration and distance diagnostics as CSV");
  diagnose->add_option("--mode", mode, "Diagnostic")
      ->required()
      ->check(CLI::IsMember({"anticonc-mu", "balanced", "anticonc-biased", "distances"}));
  diagnose->add_option("--game", game_path, "Game JSON file (the affine form w.x - theta)")->required();
  diagnose->add_option("--game2", game2_path, "Second game for --mode distances");
  diagnose->add_option("--r", radius, "Radius");
  diagnose->add_option("--i", level, "Prefix length for --mode balanced (default: every level)");
  diagnose->add_option("--bias", bias, "Bias for --mode anticonc-biased")->check(CLI::Range(0.0, 1.0));
  diagnose->add_option("--samples", diag_samples, "Monte Carlo samples when enumeration is too large")
      ->check(CLI::PositiveNumber);
  diagnose->add_option("--seed", seed, "RNG seed");
  add_common(diagnose);

  // bench
  std::string suite;
  std::optional<int> instances;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite; CSV rows with pass/fail");
  bench->add_option("--suite", suite, "identities | roundtrip | boosting | anticonc")->required();
  bench->add_option("--seed", bench_seed, "Suite seed");
  bench->add_option("--instances", instances, "Instances (per n for identities)")->check(CLI::PositiveNumber);
  add_common(bench);

  // boost-debug
  std::string targets_path;
  double boost_xi = 0.05;
  std::string boost_oracle = "enum";
  auto* boost_debug = app.add_subcommand("boost-debug", "Per-iteration boosting trace as CSV");
  boost_debug->group("");
  boost_debug->add_option("--game", game_path, "Boost toward this game's exact correlations");
  boost_debug->add_option("--targets", targets_path, "JSON {\"a\": [a_0, ..., a_n]}");
  boost_debug->add_option("--xi", boost_xi, "Tolerance")->check(CLI::PositiveNumber);
  boost_debug->add_option("--oracle", boost_oracle, "Exact oracle")->check(CLI::IsMember({"enum", "dp"}));
  add_common(boost_debug);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Stopwatch watch;
  try {
    const int threads = resolve_threads(common.threads);

    if (*compute) {
      const sf::VotingGame game = sf::game_from_json(sf::read_json_file(game_path));
      Json out;
      Json config{{"game", game_path}};
      std::optional<std::uint64_t> used_seed;
      if (samples) {
        sf::EstimateConfig ecfg;
        ecfg.samples = samples;
        sf::Rng rng(seed);
        out = sf::shapley_to_json(sf::estimate_shapley(game, game.n(), ecfg, rng));
        out["method"] = "sampled";
        out["m"] = *samples;
        out["seed"] = seed;
        config["samples"] = *samples;
        used_seed = seed;
      } else {
        const bool use_dp = exact_dp || (!exact_enum && game.has_integer_weights());
        const auto rep = use_dp ? sf::shapley_exact_dp(game) : sf::shapley_exact_truthtable(game, game.n());
        out = sf::shapley_to_json(rep.shapley);
        out["method"] = use_dp ? "exact-dp" : "exact-enum";
        out["nu"] = rep.nu;
      }
      config["method"] = out["method"];
      emit(common, dump(out));
      emit_manifest(common, "compute", args, config, used_seed, watch.seconds(), Json{{"n", game.n()}});
      return kExitOk;
    }

    if (*estimate) {
      const sf::VotingGame game = sf::game_from_json(sf::read_json_file(game_path));
      sf::EstimateConfig ecfg;
      ecfg.gamma = gamma;
      ecfg.delta = delta;
      ecfg.seed = seed;
      ecfg.max_samples = max_samples;
      ecfg.validate();
      const std::int64_t m = sf::shapley_sample_size(game.n(), ecfg);
      sf::Rng rng(seed);
      Json out = sf::shapley_to_json(sf::estimate_shapley(game, game.n(), ecfg, rng));
      out["method"] = "sampled";
      out["m"] = m;
      out["seed"] = seed;
      out["gamma"] = gamma;
      out["delta"] = delta;
      emit(common, dump(out));
      Json config{{"game", game_path}, {"gamma", gamma}, {"delta", delta}};
      if (max_samples) config["max_samples"] = *max_samples;
      emit_manifest(common, "estimate", args, config, seed, watch.seconds(), Json{{"m", m}});
      return kExitOk;
    }

    if (*solve || *solve_bounded) {
      const bool bounded = solve_bounded->parsed();
      const sf::TargetFile target = sf::target_from_json(sf::read_json_file(target_path));
      solve_cfg.oracle_mode = sf::parse_oracle_mode(oracle);
      solve_cfg.threads = threads;
      sf::SolveResult res;
      if (bounded) {
        res = sf::solve_isbw(target.shapley, weight_bound, solve_cfg, epsilon_opt, xi_opt);
      } else {
        if (epsilon_opt) solve_cfg.epsilon = *epsilon_opt;
        if (xi_opt) solve_cfg.xi = *xi_opt;
        res = sf::solve_is(target.shapley, solve_cfg);
      }
      for (const auto& w : res.warnings) log(common, "warning: " + w);
      log(common, std::string("status ") + sf::to_string(res.status) + ", " +
                      std::to_string(res.accepted_points) + " of " + std::to_string(res.grid_points) +
                      " guesses accepted");
      emit(common, dump(sf::solve_result_to_json(res)));
      Json config{{"target", target_path},   {"convention", target.convention},
                  {"epsilon", res.epsilon},  {"xi", res.xi},
                  {"grid", solve_cfg.grid_step}, {"delta", solve_cfg.delta},
                  {"oracle", oracle},        {"eta", solve_cfg.eta},
                  {"threads", threads},      {"certificate_interval", solve_cfg.certificate_interval}};
      if (bounded) config["weight_bound"] = weight_bound;
      if (solve_cfg.max_samples) config["max_samples"] = *solve_cfg.max_samples;
      emit_manifest(common, bounded ? "solve-bounded" : "solve", args, config, solve_cfg.seed, watch.seconds(),
                    Json{{"status", sf::to_string(res.status)},
                         {"est_dshapley", res.game ? Json(res.est_dshapley) : Json(nullptr)}});
      return res.status == sf::SolveStatus::kSolved ? kExitOk : kExitNoSolution;
    }

    if (*sample_mu) {
      const sf::MuDistribution mu(n);
      sf::Rng rng(seed);
      std::ostringstream os;
      sf::CsvWriter csv(os, {"sample_index", "wt", "bits"});
      sf::BitString x = sf::BitString::constant(n, -1);
      for (std::int64_t t = 0; t < count; ++t) {
        mu.sample_into(rng, x);
        csv.row({std::to_string(t), std::to_string(x.weight()), x.to_string()});
      }
      emit(common, os.str());
      emit_manifest(common, "sample-mu", args, Json{{"n", n}, {"count", count}}, seed, watch.seconds(),
                    Json{{"rows", count}});
      return kExitOk;
    }

    if (*diagnose) {
      const sf::VotingGame game = sf::game_from_json(sf::read_json_file(game_path));
      sf::Rng rng(seed);
      std::ostringstream os;
      const std::string gn = std::to_string(game.n());
      if (mode == "anticonc-mu") {
        const auto rep = sf::anticonc_mu(game, radius, diag_samples, rng);
        sf::CsvWriter csv(os, {"n", "r", "estimate", "stderr", "samples", "exact"});
        csv.row({gn, sf::format_real(radius), sf::format_real(rep.estimate), sf::format_real(rep.stderr_),
                 std::to_string(rep.samples), csv_bool(rep.exact)});
      } else if (mode == "balanced") {
        sf::CsvWriter csv(os, {"n", "i", "r", "w0", "estimate", "stderr", "samples", "exact"});
        const int lo = level.value_or(1);
        const int hi = level.value_or(game.n() - 1);
        for (int i = lo; i <= hi; ++i) {
          const auto rep = sf::balanced_fraction(game.weights(), -game.threshold(), radius, i, diag_samples, rng);
          csv.row({gn, std::to_string(i), sf::format_real(radius), sf::format_real(-game.threshold()),
                   sf::format_real(rep.estimate), sf::format_real(rep.stderr_), std::to_string(rep.samples),
                   csv_bool(rep.exact)});
        }
      } else if (mode == "anticonc-biased") {
        const auto rep = sf::anticonc_biased(game, radius, bias, diag_samples, rng);
        sf::CsvWriter csv(os, {"n", "r", "bias", "estimate", "stderr", "samples", "exact", "k", "bound",
                               "vacuous", "violation"});
        csv.row({gn, sf::format_real(radius), sf::format_real(bias), sf::format_real(rep.report.estimate),
                 sf::format_real(rep.report.stderr_), std::to_string(rep.report.samples),
                 csv_bool(rep.report.exact), std::to_string(rep.k),
                 rep.vacuous ? std::string("inf") : sf::format_real(rep.bound), csv_bool(rep.vacuous),
                 csv_bool(rep.violation)});
      } else {
        if (game2_path.empty()) throw std::invalid_argument("--mode distances needs --game2");
        const sf::VotingGame other = sf::game_from_json(sf::read_json_file(game2_path));
        sf::check_same_length("--game2 voters", static_cast<std::size_t>(game.n()),
                              static_cast<std::size_t>(other.n()));
        const auto rep = sf::distance_report(game, other, game.n());
        sf::CsvWriter csv(os, {"n", "d_shapley", "d_fourier", "d_correlation", "shapley_rhs", "shapley_slack",
                               "fourier_constant", "fourier_rhs", "fourier_slack"});
        csv.row({gn, sf::format_real(rep.d_shapley), sf::format_real(rep.d_fourier),
                 sf::format_real(rep.d_correlation), sf::format_real(rep.shapley_rhs),
                 sf::format_real(rep.shapley_slack), sf::format_real(rep.fourier_constant),
                 sf::format_real(rep.fourier_rhs), sf::format_real(rep.fourier_slack)});
      }
      emit(common, os.str());
      emit_manifest(common, "diagnose", args,
                    Json{{"mode", mode}, {"game", game_path}, {"r", radius}, {"bias", bias},
                         {"samples", diag_samples}},
                    seed, watch.seconds(), Json::object());
      return kExitOk;
    }

    if (*bench) {
      sf::BenchOptions opt;
      opt.seed = bench_seed;
      opt.instances = instances;
      opt.threads = threads;
      const auto rows = sf::run_bench(suite, opt);
      std::ostringstream os;
      sf::CsvWriter csv(os, {"instance", "n", "metric", "value", "threshold", "pass"});
      std::size_t passed = 0;
      for (const auto& r : rows) {
        csv.row({r.instance, std::to_string(r.n), r.metric, sf::format_real(r.value), sf::format_real(r.threshold),
                 r.pass ? "pass" : "fail"});
        passed += r.pass ? 1 : 0;
      }
      emit(common, os.str());
      log(common, suite + ": " + std::to_string(passed) + " of " + std::to_string(rows.size()) + " rows pass");
      emit_manifest(common, "bench", args, Json{{"suite", suite}, {"instances", instances ? Json(*instances) : Json(nullptr)}},
                    bench_seed, watch.seconds(), Json{{"rows", rows.size()}, {"passed", passed}});
      return kExitOk;
    }

    if (*boost_debug) {
      std::vector<double> a;
      int voters = 0;
      if (!targets_path.empty()) {
        const Json j = sf::read_json_file(targets_path);
        if (!j.is_object() || !j.contains("a") || !j.at("a").is_array()) {
          throw sf::FormatError("field 'a': expected an array");
        }
        for (const auto& v : j.at("a")) a.push_back(v.get<double>());
        voters = static_cast<int>(a.size()) - 1;
      } else if (!game_path.empty()) {
        const sf::VotingGame game = sf::game_from_json(sf::read_json_file(game_path));
        voters = game.n();
        a = sf::exact_correlations_enum(game, voters).values;
      } else {
        throw std::invalid_argument("boost-debug needs --game or --targets");
      }
      if (voters < 2) throw std::invalid_argument("boost-debug: need at least 2 voters");
      sf::BoostOptions bopt;
      bopt.record_trace = true;
      sf::BoostResult res;
      if (boost_oracle == "enum") {
        sf::EnumCorrelationOracle o(voters);
        res = sf::boost(sf::BoostTargets{a, boost_xi}, o, voters, bopt);
      } else {
        sf::DpCorrelationOracle o(voters);
        res = sf::boost(sf::BoostTargets{a, boost_xi}, o, voters, bopt);
      }
      std::ostringstream os;
      sf::CsvWriter csv(os, {"t", "chosen", "sign", "violation"});
      for (const auto& row : res.trace) {
        csv.row({std::to_string(row.t), std::to_string(row.chosen), std::to_string(row.sign),
                 sf::format_real(row.violation)});
      }
      emit(common, os.str());
      log(common, "boosting " + std::string(res.status == sf::BoostStatus::kConverged ? "converged" : "infeasible") +
                      " after " + std::to_string(res.iterations) + " iterations");
      emit_manifest(common, "boost-debug", args, Json{{"xi", boost_xi}, {"oracle", boost_oracle}}, std::nullopt,
                    watch.seconds(), Json{{"iterations", res.iterations}});
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "shapley-forge: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
