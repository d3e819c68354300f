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

#ifndef ROBUST360_ONLINE_H_
#define ROBUST360_ONLINE_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "robust360/fov.h"
#include "robust360/model.h"
#include "robust360/quantize.h"
#include "robust360/traces.h"

namespace robust360 {

enum class Policy { kRobust360, kBa1, kBa2, kFull };

const char* to_string(Policy policy);
// Throws InvalidInput on unknown names.
Policy parse_policy(const std::string& name);

struct ThroughputSample {
  double t = 0.0;  // seconds
  double mbps = 0.0;
};

// What a policy may look at when choosing chunk c+1 (0-based index c).
// Everything here is known at `now`; nothing comes from the future.
struct SessionState {
  int c = 0;                            // chunks already downloaded
  double now = 0.0;                     // when the next download starts
  std::vector<double> committed_gamma;  // c entries
  std::vector<double> committed_play;   // c entries
  std::vector<ThroughputSample> samples;
  FovSet current_fov;                   // policy's view, may be perturbed

  // Deadline of chunk c+1 on the current schedule.
  double next_deadline(const StreamConfig& config) const {
    return c == 0 ? config.t_ini : committed_play.back() + config.L;
  }
};

// n_eff / sum(1/x) over the last n_eff = min(n, size) values.
double harmonic_mean_estimate(std::span<const double> samples, int n);
double harmonic_mean_estimate(std::span<const ThroughputSample> samples, int n);

struct ChunkDecision {
  double gamma = 0.0;               // rate on the protected tiles
  std::vector<double> tile_rates;   // N entries
  TileSet protected_tiles;          // alpha set or viewport
  std::vector<double> window_gamma; // tentative plan, first entry committed
  bool fell_back = false;
};

ChunkDecision base_decision(const StreamConfig& config);

// One receding-horizon step of robust360. When `lp_dump` is set the window
// LP is written to it.
ChunkDecision rhc_step(const SessionState& state, const FovModel& crowd,
                       const StreamConfig& config,
                       std::ostream* lp_dump = nullptr);

struct SessionOptions {
  double bw_error = 0.0;      // e
  double fov_fidelity = 1.0;  // beta
  uint64_t seed = 1;
  bool mid_chunk_floor = false;  // drop to the base rate at a missed deadline
  std::ostream* lp_dump = nullptr;
};

struct SessionResult {
  Policy policy = Policy::kRobust360;
  std::vector<double> gamma;                    // committed
  std::vector<std::vector<double>> tile_rates;  // [chunk][tile]
  std::vector<double> viewed_rate;              // min over the true FoV
  std::vector<int> protected_size;
  std::vector<double> download_start;
  std::vector<double> download_end;
  std::vector<double> play;
  std::vector<double> stall_to_date;
  std::vector<double> decision_ms;
  QoEBreakdown qoe;         // realized, true FoV
  QoEBreakdown robust_qoe;  // committed gamma
  double stall = 0.0;
  double guaranteed_rate_p95 = 0.0;
  double mean_decision_ms = 0.0;
  int fallbacks = 0;
};

// Largest r such that at least a fraction p of chunks have rate >= r.
double guaranteed_rate(std::span<const double> rates, double p);

// Event loop over the whole video. Throws SimulationError when the bandwidth
// trace ends before a download completes.
SessionResult simulate_session(const StreamConfig& config,
                               const BandwidthTrace& bandwidth,
                               const HeadTrace& head_true,
                               const FovModel& crowd, Policy policy,
                               const SessionOptions& options = {});

}  // namespace robust360

#endif  // ROBUST360_ONLINE_H_
