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

#pragma once

// Boosting-TTV over the family {1, x_1, ..., x_n} under mu: starting from
// h_0 = 0, repeatedly append the signed basis function whose correlation
// with h_t misses its target by more than gamma = xi/2, with
// h_t = P_1(gamma * sum of appended functions).

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shapley_forge/errors.hpp"
#include "shapley_forge/estimators.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

// Targets a_l for l = x_0 (the constant), x_1, ..., x_n.
struct BoostTargets {
  std::vector<double> a;
  double xi = 0.05;
};

// Signed unit counts per basis function; counts[0] belongs to the constant.
struct BoostState {
  int n = 0;
  double gamma = 0.0;
  std::vector<std::int64_t> counts;
  std::int64_t t = 0;

  BoostState() = default;
  BoostState(int voters, double step)
      : n(voters), gamma(step), counts(static_cast<std::size_t>(voters + 1), 0) {}

  std::int64_t l1() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c < 0 ? -c : c;
    return s;
  }
};

// h(x) = P_1(gamma (c_0 + sum_i c_i x_i)), i.e. weights gamma c_i and
// threshold -gamma c_0.
inline LinearBoundedFunction lbf_from_state(const BoostState& state) {
  std::vector<double> w(static_cast<std::size_t>(state.n));
  for (int i = 1; i <= state.n; ++i) w[i - 1] = state.gamma * static_cast<double>(state.counts[i]);
  const double theta = state.counts[0] == 0 ? 0.0 : -state.gamma * static_cast<double>(state.counts[0]);
  return LinearBoundedFunction(std::move(w), theta);
}

// floor(64 / xi^2), with a relative nudge so that e.g. xi = 0.05 gives 25600
// rather than the 25599 its binary rounding would produce.
inline std::int64_t boost_iteration_cap(double xi) {
  return static_cast<std::int64_t>(std::floor(64.0 / (xi * xi) * (1.0 + 1e-12)));
}

// Supplies E_mu[h_t * l] for every l, to within accuracy() per coordinate.
template <class O>
concept CorrelationOracle = requires(O& oracle, const BoostState& state) {
  { oracle.correlations(state) } -> std::convertible_to<CorrelationVector>;
  { oracle.accuracy() } -> std::convertible_to<double>;
};

// Exact readouts by enumerating B_n. The integer form z(x) = c.x is cached
// per support point and patched from the previous call's counts, and the
// n coordinate sums come from halving the mask-indexed array once per bit.
class EnumCorrelationOracle {
 public:
  explicit EnumCorrelationOracle(int n, int cap = kDefaultEnumerationCap) : n_(n) {
    check_enumeration_cap(n, cap);
    const MuDistribution mu(n);
    const std::size_t size = std::size_t{1} << n;
    mass_.assign(size, 0.0);
    for (std::size_t mask = 1; mask + 1 < size; ++mask) {
      mass_[mask] = mu.point_mass(std::popcount(mask));
    }
    z_.assign(size, 0);
    buffer_.assign(size, 0.0);
    cached_.assign(static_cast<std::size_t>(n + 1), 0);
  }

  double accuracy() const { return 0.0; }

  CorrelationVector correlations(const BoostState& state) {
    check_same_length("EnumCorrelationOracle", cached_.size(), state.counts.size());
    const std::size_t size = mass_.size();
    for (int l = 0; l <= n_; ++l) {
      const std::int64_t delta = state.counts[l] - cached_[l];
      if (delta == 0) continue;
      if (l == 0) {
        for (auto& z : z_) z += delta;
      } else {
        const std::size_t bit = std::size_t{1} << (l - 1);
        for (std::size_t mask = 0; mask < size; ++mask) z_[mask] += (mask & bit) ? delta : -delta;
      }
      cached_[l] = state.counts[l];
    }
    for (std::size_t mask = 0; mask < size; ++mask) {
      buffer_[mask] = mass_[mask] * std::clamp(state.gamma * static_cast<double>(z_[mask]), -1.0, 1.0);
    }
    CorrelationVector c(static_cast<std::size_t>(n_ + 1));
    double total = 0.0;
    for (double v : buffer_) total += v;
    c[0] = total;
    for (int bit = n_ - 1; bit >= 0; --bit) {
      const std::size_t half = std::size_t{1} << bit;
      double upper = 0.0;
      for (std::size_t m = 0; m < half; ++m) {
        upper += buffer_[m + half];
        buffer_[m] += buffer_[m + half];
      }
      c[bit + 1] = 2.0 * upper - total;
    }
    return c;
  }

 private:
  int n_;
  std::vector<double> mass_;
  std::vector<std::int64_t> z_;
  std::vector<double> buffer_;
  std::vector<std::int64_t> cached_;
};

// Exact readouts from subset counts over the integer coefficients c_1..c_n:
// h depends on x only through the yes-weight s, since c.x = c_0 + 2s - sum c.
class DpCorrelationOracle {
 public:
  explicit DpCorrelationOracle(int n, double budget = kDefaultDpBudget)
      : n_(n), budget_(budget) {}

  double accuracy() const { return 0.0; }

  CorrelationVector correlations(const BoostState& state) const {
    check_same_length("DpCorrelationOracle", static_cast<std::size_t>(n_ + 1),
                      state.counts.size());
    std::vector<std::int64_t> w(state.counts.begin() + 1, state.counts.end());
    std::int64_t total = 0;
    for (auto v : w) total += v;
    const std::int64_t c0 = state.counts[0];
    const double gamma = state.gamma;
    return yes_weight_correlations(
        w,
        [&](std::int64_t s) {
          return std::clamp(gamma * static_cast<double>(c0 + 2 * s - total), -1.0, 1.0);
        },
        budget_);
  }

 private:
  int n_;
  double budget_;
};

// Estimate-Correlation readouts with per-coordinate accuracy xi/16; each
// call fails with probability at most delta_per_call.
class SampledCorrelationOracle {
 public:
  SampledCorrelationOracle(int n, double xi, double delta_per_call, Rng& rng,
                           std::optional<std::int64_t> max_samples = std::nullopt)
      : n_(n), xi_(xi), rng_(&rng) {
    cfg_.gamma = xi / 16.0 * std::sqrt(n + 1.0);
    cfg_.delta = delta_per_call;
    cfg_.max_samples = max_samples;
    cfg_.validate();
  }

  double accuracy() const { return xi_ / 16.0; }
  std::int64_t samples_per_call() const { return correlation_sample_size(n_, cfg_); }

  CorrelationVector correlations(const BoostState& state) {
    return estimate_correlation(lbf_from_state(state), n_, cfg_, *rng_);
  }

 private:
  int n_;
  double xi_;
  EstimateConfig cfg_;
  Rng* rng_;
};

enum class BoostStatus {
  kConverged,
  // A certificate showed that no function with range [-1, 1] meets the
  // targets to within xi/16, so the termination promise cannot hold.
  kInfeasible,
};

struct BoostTraceRow {
  std::int64_t t = 0;  // iteration at which the violation was read
  int chosen = 0;  // basis index l in [0, n]
  int sign = 0;    // +1 appended l, -1 appended -l
  double violation = 0.0;  // a_l - a_{l,t}
};

struct BoostOptions {
  bool record_trace = false;
  // Iterations between infeasibility checks; 0 disables them.
  std::int64_t certificate_interval = 32;
};

struct BoostResult {
  LinearBoundedFunction lbf{std::vector<double>{0.0}, 0.0};
  BoostState state;
  BoostStatus status = BoostStatus::kConverged;
  std::int64_t iterations = 0;
  CorrelationVector readout;
  std::vector<BoostTraceRow> trace;
};

namespace detail {

// With z = c.l integer, P_1(z) = sign(z) off zero, so a readout at gamma = 1
// gives sum_l c_l E[P_1(z) l] = E|z| >= E[f z] for every f with |f| <= 1.
// If sum_l c_l (a_l - r_l) exceeds the slack, no such f has all of its
// correlations within xi/16 of the targets.
template <CorrelationOracle O>
bool certifies_infeasible(const BoostTargets& targets, O& oracle, const BoostState& state) {
  const std::int64_t norm = state.l1();
  if (norm == 0) return false;
  BoostState sign_form = state;
  sign_form.gamma = 1.0;
  const CorrelationVector r = oracle.correlations(sign_form);
  double gap = 0.0;
  for (std::size_t l = 0; l < targets.a.size(); ++l) {
    gap += static_cast<double>(state.counts[l]) * (targets.a[l] - r[l]);
  }
  const double slack = (targets.xi / 16.0 + oracle.accuracy() + 1e-12) * static_cast<double>(norm);
  return gap > slack;
}

}  // namespace detail

template <CorrelationOracle O>
BoostResult boost(const BoostTargets& targets, O& oracle, int n,
                  const BoostOptions& options = {}) {
  check_same_length("boost targets", static_cast<std::size_t>(n + 1), targets.a.size());
  if (!(targets.xi > 0.0)) throw std::invalid_argument("boost: xi must be > 0");
  const double gamma = targets.xi / 2.0;
  const std::int64_t cap = boost_iteration_cap(targets.xi);

  BoostResult out;
  out.state = BoostState(n, gamma);
  BoostState& state = out.state;
  while (true) {
    CorrelationVector readout = oracle.correlations(state);
    int chosen = -1;
    double worst = 0.0;
    double violation = 0.0;
    for (int l = 0; l <= n; ++l) {
      const double v = targets.a[l] - readout[l];
      if (std::abs(v) > gamma && std::abs(v) > worst) {
        worst = std::abs(v);
        chosen = l;
        violation = v;
      }
    }
    if (chosen < 0) {
      out.readout = std::move(readout);
      out.status = BoostStatus::kConverged;
      break;
    }
    if (state.t >= cap) {
      throw BoostContractViolation("boosting exceeded 64/xi^2 = " + std::to_string(cap) +
                                   " iterations; the correlation oracle or the target "
                                   "promise is broken");
    }
    const int sign = violation > gamma ? 1 : -1;
    if (options.record_trace) out.trace.push_back({state.t, chosen, sign, violation});
    state.counts[chosen] += sign;
    ++state.t;
    if (options.certificate_interval > 0 && state.t % options.certificate_interval == 0 &&
        detail::certifies_infeasible(targets, oracle, state)) {
      out.readout = oracle.correlations(state);
      out.status = BoostStatus::kInfeasible;
      break;
    }
  }
  out.iterations = state.t;
  out.lbf = lbf_from_state(state);
  return out;
}

}  // namespace shapley_forge
