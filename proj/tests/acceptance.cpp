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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Reference values come from the definitions in
// oracles.hpp, not from the library routines under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "shapley_forge.hpp"

namespace sf = shapley_forge;
using sf::BitString;
using sf::VotingGame;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double mean_of(const std::vector<double>& v, std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) s += v[i];
  return s / static_cast<double>(v.size() - from);
}

int worker_threads() {
  if (const char* env = std::getenv("SHAPLEY_FORGE_THREADS")) return std::max(1, std::atoi(env));
  return std::max(1u, std::thread::hardware_concurrency());
}

// Identity checks on one function against the subset-formula Shapley values.
template <class F>
double identity_error(const F& f, int n) {
  const auto ref = oracle::shapley_subsets(f, n);
  const auto corr_ref = oracle::correlations(f, n);
  const auto corr = sf::exact_correlations_enum(f, n);
  const double top = f(BitString::constant(n, 1));
  const double bottom = f(BitString::constant(n, -1));
  const double nu = (top - bottom) / n;
  const auto basis = sf::basis_coeffs(n);

  double err = max_abs(corr.values, corr_ref);
  err = std::max(err, max_abs(sf::shapley_from_correlations(corr, top, bottom).values, ref));
  const auto back = sf::correlations_from_shapley(sf::ShapleyVector(ref), nu, mean_of(corr_ref, 1), corr_ref[0]);
  err = std::max(err, max_abs(back.values, corr_ref));
  const auto fv = sf::fourier_from_correlations(corr, basis);
  std::vector<double> direct(n + 1);
  for (int i = 0; i <= n; ++i) {
    direct[i] = oracle::expectation([&](const BitString& x) { return f(x) * basis.evaluate(i, x); }, n);
  }
  err = std::max(err, max_abs(fv.values, direct));
  err = std::max(err, max_abs(sf::shapley_from_fourier(fv, nu, basis).values, ref));
  const auto tt = sf::shapley_exact_truthtable(f, n).shapley.values;
  err = std::max(err, max_abs(tt, ref));
  double sum = 0.0;
  for (double v : tt) sum += v;
  return std::max(err, std::abs(sum - (top - bottom)));
}

Outcome identities() {
  double worst = 0.0;
  int functions = 0;
  for (int n = 3; n <= 10; ++n) {
    sf::Rng rng(sf::derive_seed(101, n));
    for (int k = 0; k < 100; ++k) {
      worst = std::max(worst, identity_error(sf::random_bounded_function(rng, n), n));
      const VotingGame g = sf::random_real_ltf(rng, n);
      worst = std::max(worst, identity_error([&](const BitString& x) { return static_cast<double>(g(x)); }, n));
      functions += 2;
    }
  }
  return {worst <= 1e-10, fmt("%d functions, max abs error %.2e", functions, worst)};
}

Outcome basis() {
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    const auto b = sf::basis_coeffs(n);
    const double lam = oracle::lambda(n);
    const double beta = std::sqrt(lam) / 2.0;
    const double alpha = (std::sqrt(lam / (n * lam - 4.0 * (n - 1))) - beta) / n;
    worst = std::max({worst, std::abs(b.alpha - alpha), std::abs(b.beta - beta)});
    std::vector<double> gram((n + 1) * (n + 1), 0.0);
    std::vector<double> pair(n * n, 0.0);
    std::vector<double> l(n + 1);
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      const BitString x = oracle::from_mask(n, mask);
      const double p = oracle::mass(n, std::popcount(mask));
      for (int i = 0; i <= n; ++i) l[i] = b.evaluate(i, x);
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) gram[i * (n + 1) + j] += p * l[i] * l[j];
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) pair[i * n + j] += p * x[i] * x[j];
      }
    }
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) worst = std::max(worst, std::abs(gram[i * (n + 1) + j] - (i == j ? 1.0 : 0.0)));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) worst = std::max(worst, std::abs(pair[i * n + j] - (1.0 - 4.0 / lam)));
      }
    }
  }
  const auto b3 = sf::basis_coeffs(3);
  const double n3 = std::max(std::abs(b3.alpha - std::sqrt(3.0) / 6.0), std::abs(b3.beta - std::sqrt(3.0) / 2.0));
  return {worst <= 1e-10 && n3 <= 1e-12, fmt("max abs error %.2e over n=3..12; n=3 alpha,beta error %.1e", worst, n3)};
}

Outcome oracle_equivalence() {
  sf::Rng rng(303);
  double worst = 0.0;
  double worst_perm = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 10;
    const VotingGame g = k % 2 == 0 ? sf::random_reasonable_game(rng, n, 20, 0.1)
                                    : sf::random_signed_integer_ltf(rng, n, 12);
    const auto tt = sf::shapley_exact_truthtable(g, n).shapley.values;
    const auto dp = sf::shapley_exact_dp(g).shapley.values;
    const auto co = sf::shapley_via_correlations(g, n).shapley.values;
    worst = std::max({worst, max_abs(tt, dp), max_abs(tt, co), max_abs(dp, co)});
    if (n <= 8) worst_perm = std::max(worst_perm, max_abs(dp, oracle::shapley_permutations(g, n)));
  }
  const VotingGame q = sf::quota_to_ltf(sf::QuotaGame({49, 49, 2}, 51));
  bool exact = true;
  for (int i = 0; i < 3; ++i) exact = exact && oracle::pivotal_orders(q, 3, i) == 2;  // 2 of 3! orders
  for (double v : sf::shapley_exact_dp(q).shapley) exact = exact && v == 2.0 / 3.0;
  for (double v : sf::shapley_exact_truthtable(q, 3).shapley) exact = exact && std::abs(v - 2.0 / 3.0) <= 1e-15;
  return {worst <= 1e-10 && worst_perm <= 1e-10 && exact,
          fmt("max route disagreement %.2e, vs permutations %.2e, (49,49,2;51) equal power: %s", worst, worst_perm,
              exact ? "yes" : "no")};
}

Outcome estimators() {
  const int n = 5;
  const VotingGame maj(std::vector<double>(n, 1.0), 0.0);
  const auto corr = oracle::correlations(maj, n);
  const auto shap = oracle::shapley_permutations(maj, n);
  sf::EstimateConfig cfg;
  cfg.gamma = 0.1;
  cfg.delta = 0.01;
  int corr_ok = 0, shap_ok = 0;
  for (int run = 0; run < 100; ++run) {
    sf::Rng rng(sf::derive_seed(404, run));
    corr_ok += max_abs(sf::estimate_correlation(maj, n, cfg, rng).values, corr) <= cfg.gamma / std::sqrt(n + 1.0);
    shap_ok += max_abs(sf::estimate_shapley(maj, n, cfg, rng).values, shap) <= cfg.gamma / std::sqrt(1.0 * n);
  }
  return {corr_ok >= 99 && shap_ok >= 99,
          fmt("correlation within tolerance in %d/100 runs, Shapley in %d/100", corr_ok, shap_ok)};
}

Outcome boosting() {
  sf::Rng rng(505);
  int failures = 0;
  double worst_err_ratio = 0.0;
  std::int64_t max_iters = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = 4 + k % 7;
    const VotingGame g = sf::random_real_ltf(rng, n);
    const auto a = oracle::correlations(g, n);
    for (double xi : {0.1, 0.05}) {
      sf::EnumCorrelationOracle o(n);
      sf::BoostResult r;
      try {
        r = sf::boost({a, xi}, o, n);
      } catch (const sf::BoostContractViolation&) {
        ++failures;
        continue;
      }
      const auto h = oracle::correlations(r.lbf, n);
      const double err = max_abs(h, a);
      worst_err_ratio = std::max(worst_err_ratio, err / xi);
      max_iters = std::max(max_iters, r.iterations);
      const bool ok = r.status == sf::BoostStatus::kConverged && r.iterations <= sf::boost_iteration_cap(xi) &&
                      err <= xi && r.state.l1() == r.iterations;
      failures += !ok;
    }
  }
  return {failures == 0, fmt("40 runs, %d failures, worst error %.3f xi, max %lld iterations", failures,
                             worst_err_ratio, static_cast<long long>(max_iters))};
}

// Weights uniform in [1, 10]; threshold k + 1/2 with |theta| <= 0.9 sum w.
VotingGame roundtrip_instance(sf::Rng& rng, int& n) {
  n = 6 + static_cast<int>(sf::uniform_below(rng, 7));
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = 1.0 + static_cast<double>(sf::uniform_below(rng, 10));
    total += x;
  }
  const auto kmax = static_cast<std::int64_t>(std::floor(0.9 * total - 0.5));
  const auto k = static_cast<std::int64_t>(sf::uniform_below(rng, 2 * kmax + 1)) - kmax;
  double theta = static_cast<double>(k) + 0.5;
  if (std::abs(theta) > 0.9 * total) theta = 0.5;
  return VotingGame(std::move(w), theta);
}

Outcome roundtrip() {
  sf::Rng rng(2026);
  int good = 0, bad = 0, unreasonable = 0;
  double worst_target = 0.0;
  const int threads = worker_threads();
  for (int inst = 0; inst < 20; ++inst) {
    int n = 0;
    const VotingGame g = roundtrip_instance(rng, n);
    const auto check = sf::is_eta_reasonable(g, 0.1);
    unreasonable += !(check.reasonable && check.monotone);
    const auto target = sf::shapley_exact_dp(g).shapley.values;
    worst_target = std::max(worst_target, max_abs(target, oracle::shapley_subsets(g, n)));
    sf::SolveConfig cfg;
    cfg.oracle_mode = sf::OracleMode::kExactDp;
    cfg.xi = 0.005;
    cfg.grid_step = 0.05;
    cfg.epsilon = 0.1;
    cfg.seed = static_cast<std::uint64_t>(inst);
    cfg.threads = threads;
    const auto r = sf::solve_is(target, cfg);
    if (!r.game) continue;
    const double d = oracle::distance(oracle::shapley_subsets(*r.game, n), target);
    good += d <= 0.1;
    bad += d > 0.2;
  }
  return {good >= 18 && bad == 0 && unreasonable == 0 && worst_target <= 1e-10,
          fmt("%d/20 solved with exact d <= 0.1, %d solved with d > 0.2 (threads %d)", good, bad, threads)};
}

Outcome baseline() {
  std::string detail;
  bool ok = true;
  for (const auto& t : std::vector<std::vector<double>>{{2. / 3, 2. / 3, 2. / 3}, {2, 0, 0}}) {
    const auto base = sf::exhaustive_baseline(t, 3);
    const double ref = oracle::baseline(t, 3).distance;
    sf::SolveConfig cfg;
    cfg.seed = 1;
    const auto r = sf::solve_is(t, cfg);
    const double d = r.game ? oracle::distance(oracle::shapley_permutations(*r.game, 3), t) : INFINITY;
    ok = ok && std::abs(base.dshapley - ref) <= 1e-12 && d <= base.dshapley + 0.05;
    detail += fmt("%s(%.3g,%.3g,%.3g): baseline %.2e solver %.2e", detail.empty() ? "" : "; ", t[0], t[1], t[2],
                  base.dshapley, d);
  }
  return {ok, detail};
}

Outcome diagnostics() {
  sf::Rng rng(808);
  int claim_fail = 0, lo_fail = 0, dist_fail = 0;
  // Markov-type balance bound on monotone eta-reasonable forms.
  for (int k = 0; k < 50; ++k) {
    const double eta = 0.05 + 0.4 * sf::uniform01(rng);
    const int n = 3 + static_cast<int>(sf::uniform_below(rng, 6));
    const VotingGame g = sf::random_reasonable_game(rng, n, 10, eta);
    const double r = sf::uniform01(rng) * eta * g.l1_norm() / 2.0;
    for (int i = 1; i < n; ++i) {
      const auto rep = sf::balanced_fraction(g.weights(), -g.threshold(), r, i, 0, rng);
      claim_fail += !(rep.exact && rep.estimate <= sf::markov_balance_bound(eta, i, n));
    }
  }
  // Littlewood-Offord under biased product measures; the last ten are sampled.
  for (int k = 0; k < 50; ++k) {
    const bool sampled = k >= 40;
    const int n = sampled ? 22 + k % 8 : 4 + k % 11;
    const VotingGame g = k % 2 ? sf::random_real_ltf(rng, n) : sf::random_signed_integer_ltf(rng, n, 5);
    const double bias = 0.02 + 0.96 * sf::uniform01(rng);
    double r = 0.0;
    for (double w : g.weights()) r = std::max(r, std::abs(w));
    r *= 0.05 + 0.9 * sf::uniform01(rng);
    const auto rep = sf::anticonc_biased(g, r, bias, 40000, rng, sampled ? 0 : 20);
    const bool ok = rep.report.exact ? rep.report.estimate <= rep.bound
                                     : rep.report.estimate - 5 * rep.report.stderr_ <= rep.bound;
    lo_fail += !(ok && !rep.violation);
  }
  // Shapley/Fourier and Fourier/correlation inequalities on random pairs.
  double min_s = INFINITY, min_f = INFINITY;
  for (int k = 0; k < 50; ++k) {
    const int n = 4 + k % 7;
    const VotingGame f = sf::random_real_ltf(rng, n);
    const VotingGame g = sf::random_real_ltf(rng, n);
    const auto rep = k % 2 ? sf::distance_report(f, g, n) : sf::distance_report(f, sf::random_bounded_function(rng, n), n);
    dist_fail += !(rep.shapley_slack >= 0 && rep.fourier_slack >= 0);
    if (k % 2) {
      dist_fail += std::abs(rep.d_shapley - oracle::distance(oracle::shapley_subsets(f, n), oracle::shapley_subsets(g, n))) > 1e-10;
    }
    min_s = std::min(min_s, rep.shapley_slack);
    min_f = std::min(min_f, rep.fourier_slack);
  }
  // Anti-concentration of scaled majority should not grow with n.
  auto trend = [&](double radius_scale) {
    std::vector<sf::AntiConcReport> reps;
    for (int n : {5, 9, 17, 33}) {
      reps.push_back(sf::anticonc_mu(VotingGame(std::vector<double>(n, 1.0 / n), 0.0), radius_scale / n, 400000, rng));
    }
    bool ok = true;
    for (std::size_t k = 1; k < reps.size(); ++k) {
      const double sigma = std::hypot(reps[k].stderr_, reps[k - 1].stderr_);
      ok = ok && reps[k].estimate <= reps[k - 1].estimate + 3 * sigma;
    }
    return std::make_pair(ok, fmt("%.4f,%.4f,%.4f,%.4f", reps[0].estimate, reps[1].estimate, reps[2].estimate,
                                  reps[3].estimate));
  };
  const auto [trend_ok, trend_vals] = trend(0.5);
  const auto [wide_ok, wide_vals] = trend(1.5);
  return {claim_fail == 0 && lo_fail == 0 && dist_fail == 0 && trend_ok && wide_ok,
          fmt("balance %d, Littlewood-Offord %d, distance %d failures (min slacks %.3g, %.3g); "
              "trend r=1/(2n) [%s], r=3/(2n) [%s]",
              claim_fail, lo_fail, dist_fail, min_s, min_f, trend_vals.c_str(), wide_vals.c_str())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "identity suite", 60, identities},
      {2, "basis suite", 30, basis},
      {3, "oracle equivalence", 60, oracle_equivalence},
      {4, "estimator contracts", 120, estimators},
      {5, "boosting contracts", 120, boosting},
      {6, "end-to-end round trip", 600, roundtrip},
      {7, "baseline optimality", 60, baseline},
      {8, "diagnostics inequalities", 300, diagnostics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.ok && secs <= c.limit_s;
    failed += !pass;
    std::printf("[%s] criterion %d %s: %s (%.1f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
