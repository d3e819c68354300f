// Copyright 2026 The robust360 Authors
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

#include "robust360/quantize.h"

#include <algorithm>
#include <string>

#include "robust360/errors.h"

namespace robust360 {
namespace {

constexpr double kSlackTolerance = 1e-12;

}  // namespace

QuantizeTrace robust_quantize(std::span<const double> gamma_star,
                              const RateLadder& ladder,
                              const QuantizeOptions& options) {
  const int K = static_cast<int>(gamma_star.size());
  if (!options.weights.empty() &&
      static_cast<int>(options.weights.size()) != K) {
    throw InvalidInput("quantize weights must match the chunk count");
  }
  if (options.sweeps < 1) throw InvalidInput("sweeps must be at least 1");
  for (int k = 0; k < K; ++k) {
    if (gamma_star[k] < ladder.base() - 1e-9 ||
        gamma_star[k] > ladder.top() + 1e-9) {
      throw InvalidInput("relaxed rate out of ladder range at chunk " +
                         std::to_string(k + 1));
    }
  }
  auto weight = [&](int k) {
    return options.weights.empty() ? 1.0 : options.weights[k];
  };

  QuantizeTrace tr;
  tr.gamma_down.resize(K);
  tr.gamma_up.resize(K);
  for (int k = 0; k < K; ++k) {
    tr.gamma_down[k] = ladder.floor(gamma_star[k]);
    tr.gamma_up[k] = ladder.contains(gamma_star[k]) ? tr.gamma_down[k]
                                                    : ladder.ceil(gamma_star[k]);
  }
  tr.gamma_final = tr.gamma_down;
  tr.slack.assign(K, 0.0);
  std::vector<bool> raised(K, false);

  for (int sweep = 0; sweep < options.sweeps; ++sweep) {
    std::vector<double> banked(K);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      sum += weight(k) * std::max(0.0, gamma_star[k] - tr.gamma_final[k]) -
             weight(k) * std::max(0.0, tr.gamma_final[k] - gamma_star[k]);
      banked[k] = sum;
    }
    if (K == 0) break;
    double avail = banked[K - 1];
    bool changed = false;
    for (int k = K - 1; k >= 1; --k) {
      tr.slack[k] = std::max(0.0, avail);
      const double cost = weight(k) * (tr.gamma_up[k] - tr.gamma_down[k]);
      if (!raised[k] && cost > 0.0 && avail >= cost - kSlackTolerance) {
        raised[k] = true;
        changed = true;
        tr.gamma_final[k] = tr.gamma_up[k];
        avail -= cost;
      }
      avail = std::min(avail, banked[k - 1]);
    }
    tr.slack[0] = std::max(0.0, avail);
    if (!changed) break;
  }
  for (int k = 0; k < K; ++k) {
    if (raised[k]) tr.upgrades.push_back(k);
  }
  return tr;
}

double gap_bound(const RateLadder& ladder, int K, const UtilitySpec& utility) {
  if (K < 1) throw InvalidInput("chunk count must be at least 1");
  double best = 0.0;
  for (int j = 0; j + 1 < ladder.size(); ++j) {
    const double step = (ladder[j + 1] - ladder[j]) / K;
    best = std::max(best, K * (utility(ladder[j] + step) - utility(ladder[j])));
  }
  return best;
}

bool verify_stall_preserved(std::span<const double> gamma_final,
                            std::span<const double> gamma_star,
                            const RelaxedInstance& instance) {
  const double final_stall = window_timeline(instance, gamma_final).stall;
  const double star_stall = window_timeline(instance, gamma_star).stall;
  return final_stall <= star_stall + kTimeTolerance;
}

RobustPlan plan_window(const RelaxedInstance& instance,
                       const RateLadder& ladder,
                       const QuantizeOptions& options,
                       std::ostream* lp_dump) {
  RobustPlan plan;
  plan.relaxed = solve_relaxed(instance, lp_dump);
  plan.trace = robust_quantize(plan.relaxed.gamma_star, ladder, options);
  plan.gamma = plan.trace.gamma_final;
  if (!plan.trace.upgrades.empty() &&
      !verify_stall_preserved(plan.gamma, plan.relaxed.gamma_star, instance)) {
    // Replay the upgrades last to first, keeping each one only while the
    // relaxed stall still holds.
    plan.gamma = plan.trace.gamma_down;
    plan.fell_back = true;
    for (auto it = plan.trace.upgrades.rbegin();
         it != plan.trace.upgrades.rend(); ++it) {
      plan.gamma[*it] = plan.trace.gamma_up[*it];
      if (!verify_stall_preserved(plan.gamma, plan.relaxed.gamma_star,
                                  instance)) {
        plan.gamma[*it] = plan.trace.gamma_down[*it];
      }
    }
  }
  return plan;
}

}  // namespace robust360
