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

#ifndef ROBUST360_ORACLE_H_
#define ROBUST360_ORACLE_H_

#include <cstdint>
#include <vector>

#include "robust360/model.h"
#include "robust360/relax.h"

namespace robust360 {

inline constexpr std::int64_t kMaxDiscreteAssignments = 1'000'000;
inline constexpr std::int64_t kMaxGridPoints = 10'000'000;

struct OracleResult {
  std::vector<double> gamma;
  double qoe = 0.0;
  std::int64_t evaluated = 0;
};

// Every ladder assignment of the window, scored exactly. Ties go to the
// lexicographically largest gamma. The ladder must span the instance's rate
// bounds.
OracleResult brute_force_discrete(const RelaxedInstance& instance,
                                  const RateLadder& ladder);

// Dense grid over [R0, Rm] per chunk. The top rate is always a grid point.
OracleResult grid_search_relaxed(const RelaxedInstance& instance, double step);

}  // namespace robust360

#endif  // ROBUST360_ORACLE_H_
