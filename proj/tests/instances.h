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

#ifndef ROBUST360_TESTS_INSTANCES_H_
#define ROBUST360_TESTS_INSTANCES_H_

#include <random>
#include <vector>

#include "robust360/model.h"
#include "robust360/relax.h"

namespace robust360::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct SmallInstance {
  RateLadder ladder{{0.25, 1.0}};
  RelaxedInstance instance;
};

struct SmallInstanceShape {
  // Same |A_k| and C_k for every chunk of an instance.
  bool homogeneous = true;
  // Buffer cap at least K, so it never binds.
  bool loose_buffer = true;
  // Ladder {0.25, 0.5, 0.75, 1} instead of random levels.
  bool standard_ladder = false;
  double eta = 0.0;
};

// K in 2..5, ladder size 2..4, N in 2..4, linear U.
inline SmallInstance random_small_instance(std::mt19937_64& rng,
                                           const SmallInstanceShape& shape) {
  const int K = uniform_int(rng, 2, 5);
  const int m = uniform_int(rng, 2, 4);
  const int N = uniform_int(rng, 2, 4);
  std::vector<double> levels;
  if (shape.standard_ladder) {
    levels = {0.25, 0.5, 0.75, 1.0};
  } else {
    double r = uniform(rng, 0.1, 1.0);
    for (int i = 0; i < m; ++i) {
      levels.push_back(r);
      r += uniform(rng, 0.1, 1.0);
    }
  }
  SmallInstance out{RateLadder(levels), {}};
  RelaxedInstance& in = out.instance;
  in.base_rate = out.ladder.base();
  in.top_rate = out.ladder.top();
  in.chunk_seconds = uniform_int(rng, 1, 2);
  in.lambda = uniform(rng, 1.0, 100.0);
  in.eta = shape.eta;
  in.buffer_chunks =
      shape.loose_buffer ? K + uniform_int(rng, 0, 3) : uniform_int(rng, 1, K);
  in.startup_delay = uniform(rng, 0.0, 3.0);
  const int a0 = uniform_int(rng, 1, N);
  const double c0 = uniform(rng, 0.3, 1.5) * N * out.ladder.top();
  for (int k = 0; k < K; ++k) {
    const int a = shape.homogeneous ? a0 : uniform_int(rng, 1, N);
    in.alpha_size.push_back(a);
    in.complement_size.push_back(N - a);
    in.bandwidth.push_back(shape.homogeneous
                               ? c0
                               : uniform(rng, 0.3, 1.5) * N * out.ladder.top());
  }
  return out;
}

// Instances whose LP vertices sit on the 0.005 grid: eta = 0, and each
// chunk spends exactly one second per Mbps of gamma (C = L * |A|), so with
// R0, the top rate and t_ini on a 0.125 lattice every vertex is too.
inline RelaxedInstance random_grid_instance(std::mt19937_64& rng) {
  RelaxedInstance in;
  const int K = uniform_int(rng, 1, 3);
  const int N = 2;
  in.base_rate = 0.25 * uniform_int(rng, 1, 2);
  in.top_rate = in.base_rate + 0.25 * uniform_int(rng, 1, 3);
  in.chunk_seconds = uniform_int(rng, 1, 2);
  in.lambda = uniform(rng, 1.0, 100.0);
  in.eta = 0.0;
  in.buffer_chunks = K + 1;
  in.startup_delay = 0.125 * uniform_int(rng, 0, 16);
  for (int k = 0; k < K; ++k) {
    const int a = uniform_int(rng, 1, 2);
    in.alpha_size.push_back(a);
    in.complement_size.push_back(N - a);
    in.bandwidth.push_back(in.chunk_seconds * a);
  }
  return in;
}

// The two-chunk hand instance: N = 2 tiles in the alpha set, C = 1 Mbps.
inline RelaxedInstance hand_instance() {
  RelaxedInstance in;
  in.alpha_size = {2, 2};
  in.complement_size = {0, 0};
  in.bandwidth = {1.0, 1.0};
  in.base_rate = 0.25;
  in.top_rate = 1.0;
  in.chunk_seconds = 2.0;
  in.lambda = 100.0;
  in.eta = 0.0;
  in.startup_delay = 1.0;
  return in;
}

}  // namespace robust360::testing

#endif  // ROBUST360_TESTS_INSTANCES_H_
