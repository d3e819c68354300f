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

#include "robust360/fov.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "robust360/errors.h"

namespace robust360 {
namespace {

constexpr double kAngleTolerance = 1e-9;
constexpr double kProbTolerance = 1e-9;

double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::min(hi1, hi2) - std::max(lo1, lo2);
}

FovDistribution merge(const std::map<TileSet, double>& mass) {
  FovDistribution out;
  for (const auto& [tiles, p] : mass) {
    if (p > 0.0) out.push_back({tiles, p});
  }
  return out;
}

}  // namespace

FovModel::FovModel(std::vector<FovDistribution> chunks) {
  chunks_.reserve(chunks.size());
  for (size_t k = 0; k < chunks.size(); ++k) {
    std::map<TileSet, double> mass;
    double total = 0.0;
    for (const auto& s : chunks[k]) {
      if (s.probability < 0.0) {
        throw InvalidInput("negative FoV probability at chunk " +
                           std::to_string(k + 1));
      }
      if (s.tiles.empty()) {
        throw InvalidInput("empty FoV set at chunk " + std::to_string(k + 1));
      }
      mass[s.tiles] += s.probability;
      total += s.probability;
    }
    if (mass.empty() || std::abs(total - 1.0) > kProbTolerance) {
      throw InvalidInput("FoV probabilities at chunk " +
                         std::to_string(k + 1) + " sum to " +
                         std::to_string(total));
    }
    chunks_.push_back(merge(mass));
  }
}

FovSet tiles_in_viewport(Orientation pose, int rows, int cols, double fov_h,
                         double fov_v) {
  pose = normalize(pose);
  const double col_width = 360.0 / cols;
  const double row_height = 180.0 / rows;

  std::vector<bool> col_hit(cols, fov_h >= 360.0);
  if (fov_h < 360.0) {
    const double lo = pose.yaw - fov_h / 2.0;
    const double hi = pose.yaw + fov_h / 2.0;
    for (int c = 0; c < cols; ++c) {
      const double a = -180.0 + c * col_width;
      const double b = a + col_width;
      for (double shift : {-360.0, 0.0, 360.0}) {
        if (overlap(lo + shift, hi + shift, a, b) > kAngleTolerance) {
          col_hit[c] = true;
        }
      }
    }
  }

  double lo = pose.pitch - fov_v / 2.0;
  double hi = pose.pitch + fov_v / 2.0;
  if (fov_v >= 180.0) {
    lo = -90.0;
    hi = 90.0;
  } else if (hi > 90.0) {
    lo -= hi - 90.0;
    hi = 90.0;
  } else if (lo < -90.0) {
    hi += -90.0 - lo;
    lo = -90.0;
  }

  std::vector<int> tiles;
  for (int r = 0; r < rows; ++r) {
    const double top = 90.0 - r * row_height;
    const double bottom = top - row_height;
    if (overlap(lo, hi, bottom, top) <= kAngleTolerance) continue;
    for (int c = 0; c < cols; ++c) {
      if (col_hit[c]) tiles.push_back(r * cols + c);
    }
  }
  return FovSet(std::move(tiles));
}

std::vector<FovSet> fov_sequence(const HeadTrace& trace,
                                 const StreamConfig& config) {
  const double last_midpoint = (config.K - 0.5) * config.L;
  if (trace.samples.empty() ||
      trace.end_seconds() + kAngleTolerance < last_midpoint) {
    throw InvalidInput("head trace ends at " +
                       std::to_string(trace.end_seconds()) +
                       " s, before the last chunk midpoint " +
                       std::to_string(last_midpoint) + " s");
  }
  std::vector<FovSet> out;
  out.reserve(config.K);
  for (int k = 0; k < config.K; ++k) {
    const Orientation pose = trace.pose_at((k + 0.5) * config.L);
    out.push_back(tiles_in_viewport(pose, config.rows, config.cols,
                                    config.fov_h, config.fov_v));
  }
  return out;
}

FovModel empirical_fov_model(std::span<const HeadTrace> head_traces,
                             const StreamConfig& config) {
  if (head_traces.empty()) throw InvalidInput("no head traces");
  const double weight = 1.0 / static_cast<double>(head_traces.size());
  std::vector<std::map<TileSet, double>> mass(config.K);
  for (const auto& trace : head_traces) {
    const auto seq = fov_sequence(trace, config);
    for (int k = 0; k < config.K; ++k) mass[k][seq[k]] += weight;
  }
  std::vector<FovDistribution> chunks;
  chunks.reserve(config.K);
  for (const auto& m : mass) chunks.push_back(merge(m));
  return FovModel(std::move(chunks));
}

double coverage_of(const FovDistribution& dist, const TileSet& tiles) {
  double p = 0.0;
  for (const auto& s : dist) {
    if (s.tiles.is_subset_of(tiles)) p += s.probability;
  }
  return p;
}

AlphaSet alpha_set(const FovDistribution& dist, double alpha) {
  if (dist.empty()) throw InvalidInput("empty FoV distribution");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidInput("alpha must lie in (0,1]");
  }
  TileSet chosen;
  std::vector<bool> covered(dist.size(), false);
  double covered_mass = 0.0;
  while (covered_mass < alpha - kProbTolerance) {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_gain = 0.0;
    for (size_t i = 0; i < dist.size(); ++i) {
      if (covered[i]) continue;
      const TileSet candidate = chosen.united(dist[i].tiles);
      double gain = 0.0;
      for (size_t j = 0; j < dist.size(); ++j) {
        if (!covered[j] && dist[j].tiles.is_subset_of(candidate)) {
          gain += dist[j].probability;
        }
      }
      const double ratio = chosen.count_missing(dist[i].tiles) / gain;
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && gain > best_gain + 1e-12)) {
        best = static_cast<int>(i);
        best_ratio = ratio;
        best_gain = gain;
      }
    }
    if (best < 0) break;  // everything covered; only reachable via rounding
    chosen = chosen.united(dist[best].tiles);
    covered_mass = 0.0;
    for (size_t j = 0; j < dist.size(); ++j) {
      covered[j] = dist[j].tiles.is_subset_of(chosen);
      if (covered[j]) covered_mass += dist[j].probability;
    }
  }
  return {chosen, coverage_of(dist, chosen)};
}

AlphaSet exact_alpha_set(const FovDistribution& dist, double alpha) {
  if (dist.empty()) throw InvalidInput("empty FoV distribution");
  const int m = static_cast<int>(dist.size());
  if (m > kExactAlphaMaxSamples) {
    throw InvalidInput("exact alpha set refuses " + std::to_string(m) +
                       " samples (limit " +
                       std::to_string(kExactAlphaMaxSamples) + ")");
  }
  std::vector<uint64_t> sample_mask(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int t : dist[i].tiles) {
      if (t < 0 || t >= 64) {
        throw InvalidInput("exact alpha set supports tile indices < 64");
      }
      sample_mask[i] |= uint64_t{1} << t;
    }
  }

  const uint32_t subsets = uint32_t{1} << m;
  std::vector<uint64_t> unions(subsets, 0);
  uint64_t best = 0;
  int best_size = std::numeric_limits<int>::max();
  for (uint32_t s = 1; s < subsets; ++s) {
    const int low = std::countr_zero(s);
    unions[s] = unions[s & (s - 1)] | sample_mask[low];
    const uint64_t u = unions[s];
    const int size = std::popcount(u);
    if (size > best_size) continue;
    double p = 0.0;
    for (int i = 0; i < m; ++i) {
      if ((sample_mask[i] & ~u) == 0) p += dist[i].probability;
    }
    if (p < alpha - kProbTolerance) continue;
    // Equal sizes: the set holding the lowest differing tile sorts first.
    const bool better =
        size < best_size ||
        (u != best && (u & (uint64_t{1} << std::countr_zero(u ^ best))));
    if (better) {
      best = u;
      best_size = size;
    }
  }
  std::vector<int> tiles;
  for (int t = 0; t < 64; ++t) {
    if (best & (uint64_t{1} << t)) tiles.push_back(t);
  }
  TileSet set(std::move(tiles));
  return {set, coverage_of(dist, set)};
}

FovModel blend_fov(const FovModel& crowd, const FovSet& current,
                   double base_weight, int c, int window) {
  if (base_weight < 0.0 || base_weight > 1.0) {
    throw InvalidInput("base_weight must lie in [0,1]");
  }
  const int last = std::min(c + window, crowd.chunk_count());
  std::vector<FovDistribution> chunks;
  double w = base_weight;
  for (int k = c; k < last; ++k) {
    std::map<TileSet, double> mass;
    mass[current] += w;
    for (const auto& s : crowd.chunk(k)) mass[s.tiles] += (1.0 - w) * s.probability;
    chunks.push_back(merge(mass));
    w /= static_cast<double>(k - c + 1);
  }
  return FovModel(std::move(chunks));
}

}  // namespace robust360
