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

#ifndef ROBUST360_MODEL_H_
#define ROBUST360_MODEL_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "robust360/tile_set.h"

namespace robust360 {

// Absolute tolerance (seconds) for timeline comparisons.
inline constexpr double kTimeTolerance = 1e-9;

// Per-tile encoding rates in Mbps, strictly increasing, at least two levels.
class RateLadder {
 public:
  explicit RateLadder(std::vector<double> levels);

  const std::vector<double>& levels() const { return levels_; }
  int size() const { return static_cast<int>(levels_.size()); }
  double base() const { return levels_.front(); }
  double top() const { return levels_.back(); }
  double operator[](int j) const { return levels_[j]; }

  // Largest level <= rate (rate clamped to the ladder range first).
  double floor(double rate) const;
  // Smallest level >= rate.
  double ceil(double rate) const;
  // Index of the largest level <= rate.
  int floor_index(double rate) const;
  bool contains(double rate) const;
  double max_step() const;

  friend bool operator==(const RateLadder&, const RateLadder&) = default;

 private:
  std::vector<double> levels_;
};

// Concave, strictly increasing utility of the playback rate.
class UtilitySpec {
 public:
  enum class Kind { kLinear, kPower, kPiecewise };

  // U(x) = x.
  static UtilitySpec linear();
  // U(x) = x^exponent, 0 < exponent <= 1.
  static UtilitySpec power(double exponent);
  // Linear interpolation through (rate, value) breakpoints; extended
  // linearly past the end points. Throws InvalidInput when the data is not
  // strictly increasing and concave.
  static UtilitySpec piecewise(std::vector<std::pair<double, double>> points);

  double operator()(double rate) const;
  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const std::vector<std::pair<double, double>>& breakpoints() const {
    return points_;
  }

 private:
  UtilitySpec() = default;

  Kind kind_ = Kind::kLinear;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

// All scenario constants. Field names mirror the JSON config keys.
struct StreamConfig {
  int K = 120;                    // chunk count
  double L = 2.0;                 // chunk duration, seconds
  int rows = 4;                   // tile grid
  int cols = 8;
  RateLadder ladder{{0.25, 0.5, 0.75, 1.0}};
  double fov_h = 120.0;           // viewport extent, degrees
  double fov_v = 120.0;
  double alpha = 0.95;            // coverage probability
  double lambda = 100.0;          // QoE per second of stall
  double eta = 1.0;               // QoE per Mbps of inter-chunk variation
  int W = 5;                      // look-ahead window, chunks
  int B = 10;                     // max buffered chunks
  double t_ini = 1.0;             // startup delay, seconds
  int warmup_chunks = 2;          // chunks fetched at the base rate
  int hm_samples = 200;           // harmonic-mean history length
  double base_weight = 0.6;       // live-FoV weight in the blended model
  int utility_segments = 8;       // linearization segments for concave U
  UtilitySpec utility = UtilitySpec::linear();

  int N() const { return rows * cols; }
  // Throws InvalidInput on the first violated invariant.
  void validate() const;
};

struct Timeline {
  std::vector<double> start;   // K+1 entries; start[k] is when chunk k+1 may
                               // begin downloading (start[0] = origin)
  std::vector<double> finish;  // download completion per chunk
  std::vector<double> play;    // play start per chunk
  std::vector<double> wait;    // buffer-full wait after each chunk
  double stall = 0.0;
};

struct TimelineParams {
  double chunk_seconds = 2.0;
  int buffer_chunks = 10;
  double startup_delay = 1.0;
};

// Where a (possibly partial) timeline begins. `committed_play` lists the
// play times of all chunks already scheduled, oldest first; empty means the
// session starts from scratch.
struct TimelineOrigin {
  double start = 0.0;
  std::vector<double> committed_play;
};

// Earliest time the next chunk may start given the buffer cap.
double effective_start(const TimelineOrigin& origin, int buffer_chunks);

// Download/playback recursion for chunks with the given download durations.
// Stall is measured against the nominal schedule: t_ini + (n-1)L from a
// fresh start, or last committed play + nL otherwise.
Timeline simulate_timeline(std::span<const double> download_seconds,
                           const TimelineParams& params,
                           const TimelineOrigin& origin = {});

// Offline timeline for a whole video. Throws InvalidInput on non-positive
// sizes or bandwidths, or when lengths differ.
Timeline build_timeline(std::span<const double> chunk_sizes_mbit,
                        std::span<const double> bandwidth_mbps,
                        const StreamConfig& config);

struct QoEBreakdown {
  double utility_sum = 0.0;
  double stall_penalty = 0.0;
  double variation_penalty = 0.0;
  double total = 0.0;
};

// Utility minus stall and variation penalties. `previous_rate`, when present, anchors the first
// variation term (used for receding-horizon windows).
QoEBreakdown score_rates(std::span<const double> rates, double stall,
                         const UtilitySpec& utility, double lambda, double eta,
                         std::optional<double> previous_rate = std::nullopt);

QoEBreakdown qoe_score(std::span<const double> gamma, const Timeline& timeline,
                       const UtilitySpec& utility, const StreamConfig& config);

struct Plan {
  std::vector<double> gamma;
  std::vector<std::vector<double>> tile_rates;  // [chunk][tile]

  // Megabits per chunk: L * sum of tile rates.
  std::vector<double> chunk_sizes(double chunk_seconds) const;
};

// Alpha-set tiles at gamma_k, all others at the base rate.
Plan expand_plan(std::span<const double> gamma,
                 std::span<const TileSet> alpha_sets,
                 const StreamConfig& config);

}  // namespace robust360

#endif  // ROBUST360_MODEL_H_
