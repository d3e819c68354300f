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

#include "robust360/oracle.h"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "robust360/errors.h"

namespace robust360 {
namespace {

constexpr double kTieTolerance = 1e-9;

// Calls visit(gamma) for every point of values^count, first coordinate
// slowest, so visits come in increasing lexicographic order.
template <typename Visit>
void enumerate(const std::vector<double>& values, int count, Visit&& visit) {
  std::vector<int> digit(count, 0);
  std::vector<double> gamma(count, values[0]);
  const int base = static_cast<int>(values.size());
  while (true) {
    visit(gamma);
    int pos = count - 1;
    while (pos >= 0 && digit[pos] + 1 == base) {
      digit[pos] = 0;
      gamma[pos] = values[0];
      --pos;
    }
    if (pos < 0) return;
    ++digit[pos];
    gamma[pos] = values[digit[pos]];
  }
}

std::int64_t power_or_cap(std::int64_t base, int exp, std::int64_t cap) {
  std::int64_t total = 1;
  for (int i = 0; i < exp; ++i) {
    total *= base;
    if (total > cap) return total;
  }
  return total;
}

OracleResult search(const RelaxedInstance& instance,
                    const std::vector<double>& values) {
  // Window objective without per-point allocation: the recursion is the one
  // in simulate_timeline, specialized to a fixed origin.
  const int n = instance.count();
  const int committed = static_cast<int>(instance.origin.committed_play.size());
  const int B = instance.buffer_chunks;
  const double L = instance.chunk_seconds;
  const double t0 = effective_start(instance.origin, B);
  const double nominal =
      committed == 0 ? instance.startup_delay + (n - 1) * L
                     : instance.origin.committed_play.back() + n * L;
  std::vector<double> scale(n), fixed(n), play(n);
  for (int j = 0; j < n; ++j) {
    scale[j] = L * instance.alpha_size[j] / instance.bandwidth[j];
    fixed[j] = L * instance.complement_size[j] * instance.base_rate /
               instance.bandwidth[j];
  }
  std::vector<double> utility(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    utility[i] = instance.utility(values[i]);
  }
  const bool linear = instance.utility.kind() == UtilitySpec::Kind::kLinear;

  OracleResult best;
  best.qoe = -INFINITY;
  enumerate(values, n, [&](const std::vector<double>& gamma) {
    double start = t0;
    double total = 0.0;
    double variation = 0.0;
    for (int j = 0; j < n; ++j) {
      const int g = committed + j + 1;
      const double finish = start + scale[j] * gamma[j] + fixed[j];
      const double prev_play =
          g == 1 ? 0.0
                 : (g - 1 <= committed ? instance.origin.committed_play[g - 2]
                                       : play[j - 1]);
      play[j] = g == 1 ? std::max(instance.startup_delay, finish)
                       : std::max(prev_play + L, finish);
      start = finish;
      if (g - B >= 1) {
        const double held = g - B <= committed
                                ? instance.origin.committed_play[g - B - 1]
                                : play[g - B - committed - 1];
        start = std::max(start, held);
      }
      total += linear ? gamma[j] : instance.utility(gamma[j]);
      if (j > 0) {
        variation += std::abs(gamma[j] - gamma[j - 1]);
      } else if (instance.previous_gamma) {
        variation += std::abs(gamma[0] - *instance.previous_gamma);
      }
    }
    const double stall = std::max(0.0, play[n - 1] - nominal);
    const double qoe =
        total - instance.lambda * stall - instance.eta * variation;
    ++best.evaluated;
    if (qoe >= best.qoe - kTieTolerance) {
      if (qoe > best.qoe) best.qoe = qoe;
      best.gamma = gamma;
    }
  });
  // The tie rule may keep a point slightly below the running max; report
  // its own score.
  best.qoe = window_objective(instance, best.gamma);
  return best;
}

}  // namespace

OracleResult brute_force_discrete(const RelaxedInstance& instance,
                                  const RateLadder& ladder) {
  instance.validate();
  if (std::abs(ladder.base() - instance.base_rate) > 1e-12 ||
      std::abs(ladder.top() - instance.top_rate) > 1e-12) {
    throw InvalidInput("ladder does not span the instance rate bounds");
  }
  const std::int64_t size =
      power_or_cap(ladder.size(), instance.count(), kMaxDiscreteAssignments);
  if (size > kMaxDiscreteAssignments) {
    throw InvalidInput(fmt::format(
        "discrete enumeration too large: {}^{} = {:.0f} assignments (limit {})",
        ladder.size(), instance.count(),
        std::pow(ladder.size(), instance.count()), kMaxDiscreteAssignments));
  }
  return search(instance, ladder.levels());
}

OracleResult grid_search_relaxed(const RelaxedInstance& instance,
                                 double step) {
  instance.validate();
  if (!(step > 0.0)) throw InvalidInput("grid step must be positive");
  const double lo = instance.base_rate;
  const double hi = instance.top_rate;
  std::vector<double> values;
  const auto steps = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  if (steps + 1 > kMaxGridPoints) throw InvalidInput("grid step too small");
  for (std::int64_t i = 0; i <= steps; ++i) values.push_back(lo + i * step);
  if (hi - values.back() > 1e-9) {
    values.push_back(hi);
  } else {
    values.back() = hi;
  }
  const std::int64_t size = power_or_cap(static_cast<std::int64_t>(values.size()),
                                         instance.count(), kMaxGridPoints);
  if (size > kMaxGridPoints) {
    throw InvalidInput(fmt::format(
        "grid too large: {}^{} = {:.0f} points (limit {})", values.size(),
        instance.count(),
        std::pow(static_cast<double>(values.size()), instance.count()),
        kMaxGridPoints));
  }
  return search(instance, values);
}

}  // namespace robust360
