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

#ifndef ROBUST360_QUANTIZE_H_
#define ROBUST360_QUANTIZE_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "robust360/model.h"
#include "robust360/relax.h"

namespace robust360 {

struct QuantizeTrace {
  std::vector<double> gamma_down;   // floor of each relaxed rate
  std::vector<double> gamma_up;     // ceiling of each relaxed rate
  std::vector<double> slack;        // L_k after the backward pass
  std::vector<int> upgrades;        // 0-based chunks raised one level
  std::vector<double> gamma_final;
};

struct QuantizeOptions {
  // Extra backward passes over the remaining slack. Kept as an experiment.
  int sweeps = 1;
  // Per-chunk cost of one Mbps of gamma. Empty means plain rate units.
  std::vector<double> weights;
};

// Down-quantize, then walk backwards from the last chunk spending the
// banked slack on one-level upgrades. Slack reaching chunk k-1 is capped by
// the slack banked up to chunk k-1, so an upgrade is only paid for by
// savings on chunks at or before it.
QuantizeTrace robust_quantize(std::span<const double> gamma_star,
                              const RateLadder& ladder,
                              const QuantizeOptions& options = {});

double gap_bound(const RateLadder& ladder, int K, const UtilitySpec& utility);

bool verify_stall_preserved(std::span<const double> gamma_final,
                            std::span<const double> gamma_star,
                            const RelaxedInstance& instance);

struct RobustPlan {
  RelaxedSolution relaxed;
  QuantizeTrace trace;
  std::vector<double> gamma;  // the rates to use
  bool fell_back = false;     // upgrades dropped to keep the relaxed stall
};

// Relax, quantize and check the stall. When the upgrades would add stall they
// are replayed last to first, each kept only if the relaxed stall still holds.
RobustPlan plan_window(const RelaxedInstance& instance,
                       const RateLadder& ladder,
                       const QuantizeOptions& options = {},
                       std::ostream* lp_dump = nullptr);

}  // namespace robust360

#endif  // ROBUST360_QUANTIZE_H_
