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

#ifndef ROBUST360_TRACES_H_
#define ROBUST360_TRACES_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "robust360/tile_set.h"

namespace robust360 {

// Head pose in degrees. Normalized poses have yaw in [-180, 180) and pitch in
// [-90, 90]; roll is carried through but never used.
struct Orientation {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

double normalize_yaw(double yaw);
Orientation normalize(Orientation pose);

struct BandwidthSample {
  int64_t t_ms = 0;
  double mbps = 0.0;
};

// Piecewise-constant throughput: sample i holds on [t_i, t_{i+1}); the last
// sample holds for one more spacing interval (1 ms for single-sample traces).
struct BandwidthTrace {
  std::vector<BandwidthSample> samples;

  // Throws InvalidInput unless timestamps increase strictly and every
  // throughput is positive.
  void validate() const;
  double end_seconds() const;
};

struct HeadSample {
  int64_t t_ms = 0;
  Orientation pose;
};

struct HeadTrace {
  std::vector<HeadSample> samples;

  void validate() const;
  double end_seconds() const;
  // Last pose at or before `seconds` (the first pose before the trace starts).
  Orientation pose_at(double seconds) const;
};

// CSV `t_ms,mbps` with `#` comments and blank lines allowed.
BandwidthTrace parse_bandwidth_trace(std::istream& in);
// CSV `t_ms,yaw,pitch,roll`. Yaw is wrapped, pitch clamped (with a warning).
HeadTrace parse_head_trace(std::istream& in);

void write_bandwidth_trace(std::ostream& out, const BandwidthTrace& trace);
void write_head_trace(std::ostream& out, const HeadTrace& trace);

BandwidthTrace load_bandwidth_trace(const std::string& path);
HeadTrace load_head_trace(const std::string& path);

// Multiplies every sample by (1+p), p ~ U[-error, error] drawn once per
// `span_seconds` of trace time.
BandwidthTrace perturb_bandwidth(const BandwidthTrace& trace, double error,
                                 uint64_t seed, double span_seconds);

// Per chunk, keeps the true FoV with probability `fidelity`, otherwise swaps
// in the viewport of a uniformly random pose.
std::vector<TileSet> perturb_fov(const std::vector<TileSet>& true_fov,
                                 double fidelity, uint64_t seed, int rows,
                                 int cols, double fov_h, double fov_v);

enum class BandwidthProfile { kConstant, kTwoState, kRandomWalk };

struct BandwidthSynthParams {
  BandwidthProfile profile = BandwidthProfile::kConstant;
  double mbps = 4.0;           // constant level; random-walk start
  double high_mbps = 8.0;      // two-state levels
  double low_mbps = 1.0;
  double high_dwell_s = 4.0;
  double low_dwell_s = 4.0;
  double step_mbps = 0.5;      // random-walk step scale per sample
  double min_mbps = 0.5;       // random-walk reflecting bounds
  double max_mbps = 20.0;
  int64_t spacing_ms = 10;
  uint64_t seed = 1;
};

BandwidthTrace synth_bandwidth(const BandwidthSynthParams& params,
                               double duration_s);

enum class HeadProfile { kStatic, kDrift, kHotspotMixture };

struct Hotspot {
  double yaw = 0.0;
  double pitch = 0.0;
  double weight = 1.0;
};

struct HeadSynthParams {
  HeadProfile profile = HeadProfile::kStatic;
  Orientation start;
  double yaw_rate_dps = 0.0;     // drift
  double pitch_rate_dps = 0.0;
  std::vector<Hotspot> hotspots;  // mixture centers
  double jitter_deg = 5.0;        // stddev around the chosen center
  double switch_prob = 0.2;       // chance of changing center per chunk
  double center_drift_dps = 0.0;  // all centers rotate in yaw over time
  double chunk_seconds = 2.0;
  int64_t spacing_ms = 100;
  uint64_t seed = 1;
};

HeadTrace synth_head(const HeadSynthParams& params, double duration_s);

}  // namespace robust360

#endif  // ROBUST360_TRACES_H_
