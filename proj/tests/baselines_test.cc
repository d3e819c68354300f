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

#include <gtest/gtest.h>

namespace robust360 {
namespace {

// N = 2 tiles, L = 2 s, standard ladder.
StreamConfig two_tile_config() {
  StreamConfig c;
  c.K = 10;
  c.rows = 1;
  c.cols = 2;
  c.W = 3;
  c.B = 20;
  c.warmup_chunks = 2;
  return c;
}

SessionState state_at(double now, double last_play, double mbps) {
  SessionState s;
  s.c = 2;
  s.now = now;
  s.committed_gamma = {0.25, 0.25};
  s.committed_play = {last_play - 2.0, last_play};
  s.samples = {{0.0, mbps}, {1.0, mbps}};
  s.current_fov = TileSet{0, 1};
  return s;
}

TEST(Baselines, WarmupAndNoSamplesUseBase) {
  const StreamConfig c = two_tile_config();
  SessionState s = state_at(0, 2, 100);
  s.c = 1;
  EXPECT_EQ(ba1_decide(s, c).gamma, 0.25);
  EXPECT_EQ(ba2_decide(s, c).gamma, 0.25);
  EXPECT_EQ(full_decide(s, c).gamma, 0.25);
  s.c = 2;
  s.samples.clear();
  EXPECT_EQ(ba2_decide(s, c).gamma, 0.25);
}

TEST(Ba1, StarvedStaysAtBase) {
  const StreamConfig c = two_tile_config();
  // Base chunk is 1 Mbit; at 0.1 Mbps nothing can be upgraded.
  const auto d = ba1_decide(state_at(10, 10, 0.1), c);
  EXPECT_EQ(d.window_gamma, (std::vector<double>{0.25, 0.25, 0.25}));
}

TEST(Ba1, SingleUpgradeGoesToLastChunk) {
  const StreamConfig c = two_tile_config();
  // 0.5 Mbps: base chunks take exactly L, one chunk of lead time pays for a
  // single one-level upgrade somewhere in the window.
  const auto d = ba1_decide(state_at(8, 10, 0.5), c);
  EXPECT_EQ(d.window_gamma, (std::vector<double>{0.25, 0.25, 0.5}));
  EXPECT_EQ(d.gamma, 0.25);
  for (double r : d.tile_rates) EXPECT_EQ(r, 0.25);
}

TEST(Ba1, AbundantSaturates) {
  const StreamConfig c = two_tile_config();
  const auto d = ba1_decide(state_at(10, 10, 1000), c);
  EXPECT_EQ(d.window_gamma, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Ba2, Examples) {
  const StreamConfig c = two_tile_config();
  EXPECT_EQ(ba2_decide(state_at(10, 10, 1000), c).gamma, 1.0);
  // N * R1 = 1 Mbps and the download must fit exactly in L.
  EXPECT_EQ(ba2_decide(state_at(10, 10, 1.0), c).gamma, 0.5);
  EXPECT_EQ(ba2_decide(state_at(10, 10, 0.1), c).gamma, 0.25);
  // Past the deadline already: floor.
  EXPECT_EQ(ba2_decide(state_at(13, 10, 1000), c).gamma, 0.25);
}

TEST(Full, AllTileViewportMatchesBa2) {
  const StreamConfig c = two_tile_config();
  for (double mbps : {0.1, 0.7, 1.0, 1.6, 3.0}) {
    const auto s = state_at(10, 10, mbps);
    EXPECT_EQ(full_decide(s, c).gamma, ba2_decide(s, c).gamma) << mbps;
    EXPECT_EQ(full_decide(s, c).tile_rates, ba2_decide(s, c).tile_rates);
  }
}

TEST(Full, ViewportUpgradeBeatsUniform) {
  StreamConfig c;  // 4x8 grid, N = 32
  SessionState s = state_at(10, 10, 0.0);
  TileSet view;
  std::vector<int> tiles;
  for (int i = 0; i < 16; ++i) tiles.push_back(i);
  s.current_fov = TileSet(tiles);
  const double base_budget = c.N() * c.ladder.base();  // Mbps

  // Just under twice the base budget: uniform 0.5 needs 32 * 0.5 = 16.
  s.samples = {{0.0, 1.9 * base_budget}};
  EXPECT_EQ(ba2_decide(s, c).gamma, 0.25);
  const auto f = full_decide(s, c);
  EXPECT_EQ(f.gamma, 0.5);
  for (int i = 0; i < 32; ++i) EXPECT_EQ(f.tile_rates[i], i < 16 ? 0.5 : 0.25);

  // Exactly twice: 16 r + 16 * 0.25 <= 16 allows 0.75, 32 r <= 16 only 0.5.
  s.samples = {{0.0, 2.0 * base_budget}};
  EXPECT_EQ(ba2_decide(s, c).gamma, 0.5);
  EXPECT_EQ(full_decide(s, c).gamma, 0.75);
}

}  // namespace
}  // namespace robust360
