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

#ifndef ROBUST360_BASELINES_H_
#define ROBUST360_BASELINES_H_

#include "robust360/model.h"
#include "robust360/online.h"

namespace robust360 {

// Uniform rates over the window, upgraded one level at a time from the last
// chunk backwards while the window stall does not grow.
ChunkDecision ba1_decide(const SessionState& state, const StreamConfig& config);

// Highest uniform level whose download still meets the next deadline.
ChunkDecision ba2_decide(const SessionState& state, const StreamConfig& config);

// As ba2_decide, but only the current viewport is upgraded.
ChunkDecision full_decide(const SessionState& state, const StreamConfig& config);

}  // namespace robust360

#endif  // ROBUST360_BASELINES_H_
