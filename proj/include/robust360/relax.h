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

#ifndef ROBUST360_RELAX_H_
#define ROBUST360_RELAX_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "robust360/model.h"
#include "robust360/simplex.h"

namespace robust360 {

// A window of consecutive chunks to plan. The window starts right after the
// chunks listed in origin.committed_play.
struct RelaxedInstance {
  std::vector<int> alpha_size;       // |A_k| per window chunk
  std::vector<int> complement_size;  // N - |A_k|
  std::vector<double> bandwidth;     // estimated Mbps per window chunk
  double base_rate = 0.25;
  double top_rate = 1.0;
  double chunk_seconds = 2.0;
  double lambda = 100.0;
  double eta = 1.0;
  UtilitySpec utility = UtilitySpec::linear();
  int utility_segments = 8;
  int buffer_chunks = 10;
  double startup_delay = 1.0;
  TimelineOrigin origin;
  std::optional<double> previous_gamma;  // rate of the last committed chunk

  int count() const { return static_cast<int>(alpha_size.size()); }
  // 1-based global index of the first window chunk.
  int first_chunk() const {
    return static_cast<int>(origin.committed_play.size()) + 1;
  }
  TimelineParams timeline_params() const {
    return {chunk_seconds, buffer_chunks, startup_delay};
  }
  void validate() const;
};

struct LinearSegment {
  double slope = 1.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};

// Chords of U over uniform breakpoints on [lo, hi]. Linear U yields the
// single exact segment.
std::vector<LinearSegment> linearize_utility(const UtilitySpec& utility,
                                             double lo, double hi,
                                             int segment_count);

struct RelaxedSolution {
  std::vector<double> gamma_star;
  Timeline timeline_star;
  double objective = 0.0;        // LP optimum
  double exact_objective = 0.0;  // gamma_star scored with the true utility
  int iterations = 0;
};

// Download seconds of each window chunk at the given rates.
std::vector<double> download_seconds(const RelaxedInstance& instance,
                                     std::span<const double> gamma);
Timeline window_timeline(const RelaxedInstance& instance,
                         std::span<const double> gamma);
QoEBreakdown window_score(const RelaxedInstance& instance,
                          std::span<const double> gamma);
double window_objective(const RelaxedInstance& instance,
                        std::span<const double> gamma);

LinearProgram build_relaxed_lp(const RelaxedInstance& instance);

// Throws InternalError (with the LP and iteration count) when the simplex
// fails to reach an optimum.
RelaxedSolution solve_relaxed(const RelaxedInstance& instance,
                              std::ostream* lp_dump = nullptr);

}  // namespace robust360

#endif  // ROBUST360_RELAX_H_
