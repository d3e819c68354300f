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

#ifndef ROBUST360_FOV_H_
#define ROBUST360_FOV_H_

#include <span>
#include <vector>

#include "robust360/model.h"
#include "robust360/tile_set.h"
#include "robust360/traces.h"

namespace robust360 {

using FovSet = TileSet;

struct FovSample {
  FovSet tiles;
  double probability = 0.0;
};

using FovDistribution = std::vector<FovSample>;

// Per-chunk distribution over viewport tile sets. Identical sets are merged
// and entries are kept in TileSet order so models compare deterministically.
class FovModel {
 public:
  FovModel() = default;
  // Merges duplicates and drops zero-probability entries; throws InvalidInput
  // if a chunk is empty or does not sum to one within 1e-9.
  explicit FovModel(std::vector<FovDistribution> chunks);

  int chunk_count() const { return static_cast<int>(chunks_.size()); }
  const FovDistribution& chunk(int k) const { return chunks_[k]; }
  const std::vector<FovDistribution>& chunks() const { return chunks_; }

  friend bool operator==(const FovModel&, const FovModel&) = default;

 private:
  std::vector<FovDistribution> chunks_;
};

inline bool operator==(const FovSample& a, const FovSample& b) {
  return a.tiles == b.tiles && a.probability == b.probability;
}

struct AlphaSet {
  TileSet tiles;
  double coverage = 0.0;
};

// Tiles whose equirectangular cell overlaps the viewport rectangle. The
// vertical extent is slid back inside [-90, 90] when it pokes past a pole.
// Tile index = row * cols + col, row 0 at the top, col 0 at yaw -180.
FovSet tiles_in_viewport(Orientation pose, int rows, int cols, double fov_h,
                         double fov_v);

// Samples each user at every chunk midpoint and returns the uniform mixture.
FovModel empirical_fov_model(std::span<const HeadTrace> head_traces,
                             const StreamConfig& config);

// Viewport per chunk for one user, sampled at chunk midpoints.
std::vector<FovSet> fov_sequence(const HeadTrace& trace,
                                 const StreamConfig& config);

// Probability that the sampled FoV lies inside `tiles`.
double coverage_of(const FovDistribution& dist, const TileSet& tiles);

// Greedy alpha-coverage set: repeatedly absorbs the uncovered FoV sample with
// the fewest new tiles per unit of newly covered probability.
AlphaSet alpha_set(const FovDistribution& dist, double alpha);

// Minimum-cardinality alpha-coverage set by enumerating sample subsets
// (at most 20 distinct samples, tiles < 64). Ties go to the
// lexicographically smallest tile set.
AlphaSet exact_alpha_set(const FovDistribution& dist, double alpha);

inline constexpr int kExactAlphaMaxSamples = 20;

// Mixes a point mass on `current` into the crowd model for window chunks
// c+1..min(c+W, K) (0-based: c..). The live weight starts at `base_weight`
// and decays as w_{k+1} = w_k / (k - c).
FovModel blend_fov(const FovModel& crowd, const FovSet& current,
                   double base_weight, int c, int window);

}  // namespace robust360

#endif  // ROBUST360_FOV_H_
