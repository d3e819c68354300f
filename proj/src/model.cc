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

#include "robust360/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "robust360/errors.h"

namespace robust360 {
namespace {

constexpr double kRateTolerance = 1e-9;

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

}  // namespace

RateLadder::RateLadder(std::vector<double> levels) : levels_(std::move(levels)) {
  require(levels_.size() >= 2, "rate ladder needs at least two levels");
  require(levels_.front() > 0.0, "rate ladder levels must be positive");
  for (size_t j = 1; j < levels_.size(); ++j) {
    require(levels_[j] > levels_[j - 1],
            "rate ladder must be strictly increasing");
  }
}

int RateLadder::floor_index(double rate) const {
  int best = 0;
  for (int j = 0; j < size(); ++j) {
    if (levels_[j] <= rate + kRateTolerance) best = j;
  }
  return best;
}

double RateLadder::floor(double rate) const {
  return levels_[floor_index(rate)];
}

double RateLadder::ceil(double rate) const {
  for (double level : levels_) {
    if (level >= rate - kRateTolerance) return level;
  }
  return levels_.back();
}

bool RateLadder::contains(double rate) const {
  return std::any_of(levels_.begin(), levels_.end(), [rate](double level) {
    return std::abs(level - rate) <= kRateTolerance;
  });
}

double RateLadder::max_step() const {
  double step = 0.0;
  for (int j = 1; j < size(); ++j) {
    step = std::max(step, levels_[j] - levels_[j - 1]);
  }
  return step;
}

UtilitySpec UtilitySpec::linear() { return UtilitySpec(); }

UtilitySpec UtilitySpec::power(double exponent) {
  require(exponent > 0.0 && exponent <= 1.0,
          "power utility exponent must lie in (0, 1]");
  UtilitySpec u;
  u.kind_ = Kind::kPower;
  u.exponent_ = exponent;
  return u;
}

UtilitySpec UtilitySpec::piecewise(
    std::vector<std::pair<double, double>> points) {
  require(points.size() >= 2, "piecewise utility needs two breakpoints");
  double prev_slope = INFINITY;
  for (size_t i = 1; i < points.size(); ++i) {
    const double dx = points[i].first - points[i - 1].first;
    const double dy = points[i].second - points[i - 1].second;
    require(dx > 0.0, "utility breakpoints must have increasing rates");
    require(dy > 0.0, "utility must be strictly increasing");
    const double slope = dy / dx;
    require(slope <= prev_slope + 1e-12, "utility must be concave");
    prev_slope = slope;
  }
  UtilitySpec u;
  u.kind_ = Kind::kPiecewise;
  u.points_ = std::move(points);
  return u;
}

double UtilitySpec::operator()(double rate) const {
  switch (kind_) {
    case Kind::kLinear:
      return rate;
    case Kind::kPower:
      return std::pow(rate, exponent_);
    case Kind::kPiecewise: {
      size_t i = 1;
      while (i + 1 < points_.size() && rate > points_[i].first) ++i;
      const auto& [x0, y0] = points_[i - 1];
      const auto& [x1, y1] = points_[i];
      return y0 + (y1 - y0) * (rate - x0) / (x1 - x0);
    }
  }
  return rate;
}

void StreamConfig::validate() const {
  require(K >= 1, "K must be >= 1");
  require(L > 0.0, "L must be positive");
  require(rows >= 1 && cols >= 1, "tile grid must be non-empty");
  require(fov_h > 0.0 && fov_h <= 360.0 && fov_v > 0.0 && fov_v <= 180.0,
          "fov extent must lie in (0,360] x (0,180]");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
  require(lambda >= 0.0, "lambda must be >= 0");
  require(eta >= 0.0, "eta must be >= 0");
  require(W >= 1 && W <= K, "W must lie in [1, K]");
  require(B >= 1, "B must be >= 1");
  require(t_ini >= 0.0, "t_ini must be >= 0");
  require(warmup_chunks >= 0, "warmup_chunks must be >= 0");
  require(hm_samples >= 1, "hm_samples must be >= 1");
  require(base_weight >= 0.0 && base_weight <= 1.0,
          "base_weight must lie in [0,1]");
  require(utility_segments >= 1, "utility_segments must be >= 1");
}

double effective_start(const TimelineOrigin& origin, int buffer_chunks) {
  const int committed = static_cast<int>(origin.committed_play.size());
  const int blocking = committed - buffer_chunks;  // 1-based chunk index
  if (blocking >= 1) {
    return std::max(origin.start, origin.committed_play[blocking - 1]);
  }
  return origin.start;
}

Timeline simulate_timeline(std::span<const double> download_seconds,
                           const TimelineParams& params,
                           const TimelineOrigin& origin) {
  const int n = static_cast<int>(download_seconds.size());
  const int committed = static_cast<int>(origin.committed_play.size());
  const double L = params.chunk_seconds;
  const int B = params.buffer_chunks;

  Timeline tl;
  tl.start.resize(n + 1);
  tl.finish.resize(n);
  tl.play.resize(n);
  tl.wait.resize(n);

  auto play_of = [&](int chunk) {  // 1-based global index
    return chunk <= committed ? origin.committed_play[chunk - 1]
                              : tl.play[chunk - committed - 1];
  };

  tl.start[0] = effective_start(origin, B);
  for (int j = 0; j < n; ++j) {
    const int chunk = committed + j + 1;
    tl.finish[j] = tl.start[j] + download_seconds[j];
    tl.play[j] = chunk == 1
                     ? std::max(params.startup_delay, tl.finish[j])
                     : std::max(play_of(chunk - 1) + L, tl.finish[j]);
    double next = tl.finish[j];
    if (chunk - B >= 1) next = std::max(next, play_of(chunk - B));
    tl.start[j + 1] = next;
    tl.wait[j] = next - tl.finish[j];
  }
  if (n > 0) {
    const double nominal =
        committed == 0 ? params.startup_delay + (n - 1) * L
                       : origin.committed_play.back() + n * L;
    tl.stall = std::max(0.0, tl.play[n - 1] - nominal);
  }
  return tl;
}

Timeline build_timeline(std::span<const double> chunk_sizes_mbit,
                        std::span<const double> bandwidth_mbps,
                        const StreamConfig& config) {
  require(chunk_sizes_mbit.size() == bandwidth_mbps.size(),
          "chunk sizes and bandwidths differ in length");
  std::vector<double> durations(chunk_sizes_mbit.size());
  for (size_t k = 0; k < durations.size(); ++k) {
    require(chunk_sizes_mbit[k] > 0.0, "chunk sizes must be positive");
    require(bandwidth_mbps[k] > 0.0, "bandwidth must be positive");
    durations[k] = chunk_sizes_mbit[k] / bandwidth_mbps[k];
  }
  return simulate_timeline(durations,
                           {config.L, config.B, config.t_ini});
}

QoEBreakdown score_rates(std::span<const double> rates, double stall,
                         const UtilitySpec& utility, double lambda, double eta,
                         std::optional<double> previous_rate) {
  QoEBreakdown q;
  double variation = 0.0;
  for (size_t k = 0; k < rates.size(); ++k) {
    q.utility_sum += utility(rates[k]);
    if (k > 0) {
      variation += std::abs(rates[k] - rates[k - 1]);
    } else if (previous_rate) {
      variation += std::abs(rates[0] - *previous_rate);
    }
  }
  q.stall_penalty = lambda * stall;
  q.variation_penalty = eta * variation;
  q.total = q.utility_sum - q.stall_penalty - q.variation_penalty;
  return q;
}

QoEBreakdown qoe_score(std::span<const double> gamma, const Timeline& timeline,
                       const UtilitySpec& utility, const StreamConfig& config) {
  require(static_cast<int>(gamma.size()) == config.K,
          "gamma length must equal K");
  require(timeline.play.size() == gamma.size(),
          "timeline does not match gamma length");
  return score_rates(gamma, timeline.stall, utility, config.lambda,
                     config.eta);
}

std::vector<double> Plan::chunk_sizes(double chunk_seconds) const {
  std::vector<double> sizes;
  sizes.reserve(tile_rates.size());
  for (const auto& tiles : tile_rates) {
    double sum = 0.0;
    for (double r : tiles) sum += r;
    sizes.push_back(chunk_seconds * sum);
  }
  return sizes;
}

Plan expand_plan(std::span<const double> gamma,
                 std::span<const TileSet> alpha_sets,
                 const StreamConfig& config) {
  require(gamma.size() == alpha_sets.size(),
          "gamma and alpha sets differ in length");
  const double base = config.ladder.base();
  const double top = config.ladder.top();
  Plan plan;
  plan.gamma.assign(gamma.begin(), gamma.end());
  plan.tile_rates.reserve(gamma.size());
  for (size_t k = 0; k < gamma.size(); ++k) {
    require(gamma[k] >= base - kRateTolerance,
            "gamma below the base rate at chunk " + std::to_string(k + 1));
    require(gamma[k] <= top + kRateTolerance,
            "gamma above the top rate at chunk " + std::to_string(k + 1));
    std::vector<double> tiles(config.N(), base);
    for (int i : alpha_sets[k]) {
      require(i >= 0 && i < config.N(), "alpha-set tile index out of range");
      tiles[i] = gamma[k];
    }
    plan.tile_rates.push_back(std::move(tiles));
  }
  return plan;
}

}  // namespace robust360
