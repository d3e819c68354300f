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

#include "robust360/baselines.h"

#include <algorithm>
#include <vector>

#include "robust360/relax.h"

namespace robust360 {
namespace {

// Highest level whose chunk (upgraded tiles at the level, the rest at R0)
// finishes by the next deadline; R0 when none does.
int deadline_level(const SessionState& state, const StreamConfig& config,
                   int upgraded_tiles, double estimate) {
  const double deadline = state.next_deadline(config);
  const double base = config.ladder.base();
  const int others = config.N() - upgraded_tiles;
  int best = 0;
  for (int j = 0; j < config.ladder.size(); ++j) {
    const double mbit =
        config.L * (upgraded_tiles * config.ladder[j] + others * base);
    if (state.now + mbit / estimate <= deadline + kTimeTolerance) best = j;
  }
  return best;
}

ChunkDecision uniform_decision(double rate, const StreamConfig& config) {
  ChunkDecision d;
  d.gamma = rate;
  d.tile_rates.assign(config.N(), rate);
  std::vector<int> all(config.N());
  for (int i = 0; i < config.N(); ++i) all[i] = i;
  d.protected_tiles = TileSet(all);
  d.window_gamma = {rate};
  return d;
}

}  // namespace

ChunkDecision ba1_decide(const SessionState& state, const StreamConfig& config) {
  if (state.c < config.warmup_chunks || state.samples.empty()) {
    return base_decision(config);
  }
  const double estimate =
      harmonic_mean_estimate(state.samples, config.hm_samples);
  const int n = std::min(config.W, config.K - state.c);

  RelaxedInstance window;
  window.alpha_size.assign(n, config.N());
  window.complement_size.assign(n, 0);
  window.bandwidth.assign(n, estimate);
  window.base_rate = config.ladder.base();
  window.top_rate = config.ladder.top();
  window.chunk_seconds = config.L;
  window.buffer_chunks = config.B;
  window.startup_delay = config.t_ini;
  window.origin = {state.now, state.committed_play};

  std::vector<int> level(n, 0);
  std::vector<double> rates(n, config.ladder.base());
  double stall = window_timeline(window, rates).stall;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = n - 1; j >= 0; --j) {
      if (level[j] + 1 >= config.ladder.size()) continue;
      rates[j] = config.ladder[level[j] + 1];
      const double trial = window_timeline(window, rates).stall;
      if (trial <= stall + kTimeTolerance) {
        ++level[j];
        stall = std::min(stall, trial);
        changed = true;
      } else {
        rates[j] = config.ladder[level[j]];
      }
    }
  }
  ChunkDecision d = uniform_decision(rates[0], config);
  d.window_gamma = rates;
  return d;
}

ChunkDecision ba2_decide(const SessionState& state, const StreamConfig& config) {
  if (state.c < config.warmup_chunks || state.samples.empty()) {
    return base_decision(config);
  }
  const double estimate =
      harmonic_mean_estimate(state.samples, config.hm_samples);
  const int level = deadline_level(state, config, config.N(), estimate);
  return uniform_decision(config.ladder[level], config);
}

ChunkDecision full_decide(const SessionState& state,
                          const StreamConfig& config) {
  if (state.c < config.warmup_chunks || state.samples.empty()) {
    return base_decision(config);
  }
  const double estimate =
      harmonic_mean_estimate(state.samples, config.hm_samples);
  const int viewport = static_cast<int>(state.current_fov.size());
  const int level = deadline_level(state, config, viewport, estimate);
  ChunkDecision d;
  d.gamma = config.ladder[level];
  d.tile_rates.assign(config.N(), config.ladder.base());
  for (int i : state.current_fov) d.tile_rates[i] = d.gamma;
  d.protected_tiles = state.current_fov;
  d.window_gamma = {d.gamma};
  return d;
}

}  // namespace robust360
