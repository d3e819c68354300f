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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "robust360/errors.h"

namespace robust360 {
namespace {

// Viewport by dense interior sampling: a tile is hit when some lattice point
// strictly inside the viewport lies strictly inside the tile.
TileSet sampled_viewport(Orientation pose, int rows, int cols, double h,
                         double v) {
  double lo = pose.pitch - v / 2, hi = pose.pitch + v / 2;
  if (hi > 90) lo -= hi - 90, hi = 90;
  if (lo < -90) hi += -90 - lo, lo = -90;
  std::set<int> hit;
  const int steps = 400;
  for (int i = 0; i < steps; ++i) {
    const double yaw = pose.yaw - h / 2 + h * (i + 0.5) / steps;
    double y = std::fmod(yaw + 180.0, 360.0);
    if (y < 0) y += 360.0;
    const int c = std::min(cols - 1, static_cast<int>(y / (360.0 / cols)));
    for (int j = 0; j < steps; ++j) {
      const double pitch = lo + (hi - lo) * (j + 0.5) / steps;
      const int r =
          std::min(rows - 1, static_cast<int>((90.0 - pitch) / (180.0 / rows)));
      hit.insert(r * cols + c);
    }
  }
  return TileSet(std::vector<int>(hit.begin(), hit.end()));
}

TEST(Viewport, FullSphere) {
  for (double yaw : {-170.0, 0.0, 33.0}) {
    EXPECT_EQ(tiles_in_viewport({yaw, 12.0, 0}, 4, 8, 360, 180).size(), 32);
  }
}

TEST(Viewport, CenteredIsFourByFour) {
  const auto t = tiles_in_viewport({0, 0, 0}, 4, 8, 120, 120);
  EXPECT_EQ(t.size(), 16);
  // Columns covering [-60, 60]: 2..5.
  for (int r = 0; r < 4; ++r) {
    for (int c = 2; c <= 5; ++c) EXPECT_TRUE(t.contains(r * 8 + c));
  }
}

TEST(Viewport, WrapsAroundDateLine) {
  const auto t = tiles_in_viewport({170, 0, 0}, 4, 8, 120, 120);
  EXPECT_EQ(t.size(), 16);
  for (int r = 0; r < 4; ++r) {
    for (int c : {0, 1, 6, 7}) EXPECT_TRUE(t.contains(r * 8 + c));
  }
}

TEST(ViewportProperty, MatchesSamplingOracle) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> yaw(-180, 180), pitch(-90, 90);
  for (int trial = 0; trial < 200; ++trial) {
    // Keep poses off tile edges so the sampling oracle is exact.
    Orientation pose{std::round(yaw(rng)) + 0.3, std::round(pitch(rng)) + 0.3,
                     0};
    pose = normalize(pose);
    const int rows = 2 + static_cast<int>(rng() % 4);
    const int cols = 4 + static_cast<int>(rng() % 6);
    EXPECT_EQ(tiles_in_viewport(pose, rows, cols, 100, 90),
              sampled_viewport(pose, rows, cols, 100, 90))
        << pose.yaw << ' ' << pose.pitch;
  }
}

TEST(ViewportProperty, SizeBoundsOnDegreeLattice) {
  int lo = 100, hi = 0;
  for (int yaw = -180; yaw < 180; ++yaw) {
    for (int pitch = -90; pitch <= 90; ++pitch) {
      const auto n = tiles_in_viewport({double(yaw), double(pitch), 0}, 4, 8,
                                       120, 120)
                         .size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  }
  EXPECT_GE(lo, 9);
  EXPECT_LE(hi, 16);
}

HeadTrace constant_head(double yaw, double pitch, double seconds) {
  HeadTrace t;
  for (int64_t ms = 0; ms <= seconds * 1000; ms += 500) {
    t.samples.push_back({ms, {yaw, pitch, 0}});
  }
  return t;
}

StreamConfig short_config() {
  StreamConfig c;
  c.K = 5;
  c.W = 2;
  return c;
}

TEST(EmpiricalModel, Examples) {
  const StreamConfig c = short_config();
  const std::vector<HeadTrace> one{constant_head(0, 0, 10)};
  const FovModel m = empirical_fov_model(one, c);
  ASSERT_EQ(m.chunk_count(), 5);
  for (int k = 0; k < 5; ++k) {
    ASSERT_EQ(m.chunk(k).size(), 1u);
    EXPECT_EQ(m.chunk(k)[0].probability, 1.0);
  }
  const std::vector<HeadTrace> twins{constant_head(30, 10, 10),
                                     constant_head(30, 10, 10)};
  EXPECT_EQ(empirical_fov_model(twins, c).chunk(2).size(), 1u);

  std::vector<HeadTrace> forty;
  std::mt19937_64 rng(4);
  for (int u = 0; u < 40; ++u) {
    forty.push_back(constant_head(
        std::uniform_real_distribution<double>(-180, 180)(rng), 0, 10));
  }
  const FovModel f = empirical_fov_model(forty, c);
  for (const auto& s : f.chunk(0)) {
    const double units = s.probability * 40;
    EXPECT_NEAR(units, std::round(units), 1e-9);
  }
  const std::vector<HeadTrace> shorty{constant_head(0, 0, 5)};
  EXPECT_THROW(empirical_fov_model(shorty, c), InvalidInput);
}

TEST(FovModel, Validation) {
  EXPECT_THROW(FovModel({{{TileSet{1}, 0.5}}}), InvalidInput);
  EXPECT_THROW(FovModel({{{TileSet{}, 1.0}}}), InvalidInput);
  const FovModel m({{{TileSet{1}, 0.5}, {TileSet{1}, 0.5}}});
  ASSERT_EQ(m.chunk(0).size(), 1u);
  EXPECT_DOUBLE_EQ(m.chunk(0)[0].probability, 1.0);
}

TEST(AlphaSet, Examples) {
  const FovDistribution point{{TileSet{4, 5}, 1.0}};
  for (double a : {0.1, 0.95, 1.0}) {
    EXPECT_EQ(alpha_set(point, a).tiles, TileSet({4, 5}));
    EXPECT_EQ(exact_alpha_set(point, a).tiles, TileSet({4, 5}));
  }
  const FovDistribution two{{TileSet{1, 2}, 0.9}, {TileSet{7}, 0.1}};
  EXPECT_EQ(alpha_set(two, 0.95).tiles, TileSet({1, 2, 7}));
  EXPECT_EQ(exact_alpha_set(two, 0.95).tiles, TileSet({1, 2, 7}));

  const FovDistribution three{
      {TileSet{1, 2}, 0.6}, {TileSet{2, 3}, 0.35}, {TileSet{9}, 0.05}};
  const auto g = alpha_set(three, 0.95);
  EXPECT_EQ(g.tiles, TileSet({1, 2, 3}));
  EXPECT_NEAR(g.coverage, 0.95, 1e-12);
  EXPECT_EQ(exact_alpha_set(three, 0.95).tiles, TileSet({1, 2, 3}));

  EXPECT_THROW(alpha_set({}, 0.9), InvalidInput);
}

TEST(ExactAlphaSet, FullCoverageAndTies) {
  const FovDistribution d{
      {TileSet{1, 2}, 0.3}, {TileSet{5}, 0.3}, {TileSet{8, 9}, 0.4}};
  EXPECT_EQ(exact_alpha_set(d, 1.0).tiles, TileSet({1, 2, 5, 8, 9}));
  const FovDistribution tie{{TileSet{6, 7}, 0.5}, {TileSet{2, 3}, 0.5}};
  EXPECT_EQ(exact_alpha_set(tie, 0.5).tiles, TileSet({2, 3}));
  FovDistribution many;
  for (int i = 0; i < 21; ++i) many.push_back({TileSet{i}, 1.0 / 21});
  EXPECT_THROW(exact_alpha_set(many, 0.5), InvalidInput);
}

FovDistribution random_distribution(std::mt19937_64& rng, int tiles,
                                    int samples) {
  std::map<TileSet, double> mass;
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<int> t;
    for (int i = 0; i < tiles; ++i) {
      if (rng() % 4 == 0) t.push_back(i);
    }
    if (t.empty()) t.push_back(static_cast<int>(rng() % tiles));
    const double w = 1.0 + static_cast<double>(rng() % 9);
    mass[TileSet(t)] += w;
    total += w;
  }
  FovDistribution d;
  for (const auto& [t, w] : mass) d.push_back({t, w / total});
  return d;
}

TEST(AlphaSetProperty, GreedyCoversAndNeverBeatsExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int tiles = 4 + static_cast<int>(rng() % 9);
    const auto d = random_distribution(rng, tiles, 1 + rng() % 20);
    const double alpha = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const auto g = alpha_set(d, alpha);
    const auto e = exact_alpha_set(d, alpha);
    EXPECT_GE(coverage_of(d, g.tiles), alpha - 1e-9);
    EXPECT_GE(coverage_of(d, e.tiles), alpha - 1e-9);
    EXPECT_GE(g.tiles.size(), e.tiles.size());
    // Every sample counted toward coverage lies inside the set.
    EXPECT_NEAR(g.coverage, coverage_of(d, g.tiles), 1e-12);
  }
}

TEST(AlphaSetProperty, ExactMonotoneInAlpha) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_distribution(rng, 10, 1 + rng() % 12);
    const double a = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const double b = std::uniform_real_distribution<double>(a, 1.0)(rng);
    EXPECT_LE(exact_alpha_set(d, a).tiles.size(),
              exact_alpha_set(d, b).tiles.size());
  }
}

TEST(BlendFov, Examples) {
  const FovModel crowd({{{TileSet{1}, 0.5}, {TileSet{2}, 0.5}},
                        {{TileSet{1}, 0.5}, {TileSet{2}, 0.5}},
                        {{TileSet{3}, 1.0}}});
  const TileSet current{1};
  const FovModel zero = blend_fov(crowd, current, 0.0, 0, 3);
  EXPECT_EQ(zero, crowd);
  const FovModel full = blend_fov(crowd, current, 1.0, 0, 3);
  ASSERT_EQ(full.chunk(0).size(), 1u);
  EXPECT_EQ(full.chunk(0)[0].tiles, current);

  const FovModel mixed = blend_fov(crowd, current, 0.6, 0, 3);
  ASSERT_EQ(mixed.chunk(0).size(), 2u);
  EXPECT_NEAR(mixed.chunk(0)[0].probability, 0.8, 1e-12);
  EXPECT_NEAR(mixed.chunk(0)[1].probability, 0.2, 1e-12);
  // Weights 0.6, 0.6, 0.3.
  EXPECT_NEAR(mixed.chunk(1)[0].probability, 0.8, 1e-12);
  EXPECT_NEAR(coverage_of(mixed.chunk(2), TileSet{1}), 0.3, 1e-12);

  // Window clipped at the end of the video.
  EXPECT_EQ(blend_fov(crowd, current, 0.6, 2, 5).chunk_count(), 1);
  EXPECT_THROW(blend_fov(crowd, current, 1.5, 0, 2), InvalidInput);
}

TEST(BlendFovProperty, SumsToOne) {
  std::mt19937_64 rng(10);
  std::vector<FovDistribution> chunks;
  for (int k = 0; k < 12; ++k) chunks.push_back(random_distribution(rng, 12, 6));
  const FovModel crowd(chunks);
  for (int trial = 0; trial < 100; ++trial) {
    const TileSet current{static_cast<int>(rng() % 12)};
    const double w = std::uniform_real_distribution<double>(0, 1)(rng);
    const int c = static_cast<int>(rng() % 12);
    const FovModel m = blend_fov(crowd, current, w, c, 1 + rng() % 6);
    for (const auto& dist : m.chunks()) {
      double sum = 0.0;
      for (const auto& s : dist) sum += s.probability;
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

}  // namespace
}  // namespace robust360
