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

#include "robust360/traces.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "robust360/errors.h"

namespace robust360 {
namespace {

BandwidthTrace parse_bw(const std::string& text) {
  std::istringstream in(text);
  return parse_bandwidth_trace(in);
}

HeadTrace parse_head(const std::string& text) {
  std::istringstream in(text);
  return parse_head_trace(in);
}

TEST(ParseBandwidth, TwoSamples) {
  const auto t = parse_bw("0,4.0\n1,4.0");
  ASSERT_EQ(t.samples.size(), 2u);
  EXPECT_EQ(t.samples[1].t_ms, 1);
  EXPECT_DOUBLE_EQ(t.samples[0].mbps, 4.0);
  EXPECT_DOUBLE_EQ(t.samples[1].mbps, 4.0);
}

TEST(ParseBandwidth, CommentsAndBlankLines) {
  const auto t = parse_bw("# header\n\n0,1.5\n  # more\n10,2.5\n");
  ASSERT_EQ(t.samples.size(), 2u);
  EXPECT_DOUBLE_EQ(t.samples[1].mbps, 2.5);
}

TEST(ParseBandwidth, BadLineNamesLine) {
  try {
    parse_bw("abc,4.0\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  try {
    parse_bw("0,1\n5,2\n7,x\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseBandwidth, RejectsDisorderAndNonPositive) {
  EXPECT_THROW(parse_bw("0,1\n0,1\n"), Error);
  EXPECT_THROW(parse_bw("5,1\n2,1\n"), Error);
  EXPECT_THROW(parse_bw("0,0\n"), Error);
  EXPECT_THROW(parse_bw("0,-2\n"), Error);
}

TEST(ParseBandwidth, LongTraceCount) {
  std::ostringstream text;
  for (int t = 0; t < 240000; ++t) text << t << ",3.5\n";
  const auto trace = parse_bw(text.str());
  EXPECT_EQ(trace.samples.size(), 240000u);
  EXPECT_DOUBLE_EQ(trace.end_seconds(), 240.0);
}

TEST(ParseHead, Normalization) {
  const auto a = parse_head("0,0,0,0");
  ASSERT_EQ(a.samples.size(), 1u);
  EXPECT_DOUBLE_EQ(a.samples[0].pose.yaw, 0.0);
  const auto b = parse_head("0,350,0,0");
  EXPECT_DOUBLE_EQ(b.samples[0].pose.yaw, -10.0);
  const auto c = parse_head("0,0,95,0");
  EXPECT_DOUBLE_EQ(c.samples[0].pose.pitch, 90.0);
  const auto d = parse_head("0,180,0,0");
  EXPECT_DOUBLE_EQ(d.samples[0].pose.yaw, -180.0);
  EXPECT_THROW(parse_head("0,1,2\n"), ParseError);
}

TEST(HeadTrace, PoseAtHoldsLastSample) {
  const auto t = parse_head("0,10,0,0\n1000,20,0,0\n");
  EXPECT_DOUBLE_EQ(t.pose_at(0.5).yaw, 10.0);
  EXPECT_DOUBLE_EQ(t.pose_at(1.0).yaw, 20.0);
  EXPECT_DOUBLE_EQ(t.pose_at(9.0).yaw, 20.0);
}

TEST(TraceRoundTrip, RandomTraces) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    BandwidthTrace bw;
    HeadTrace head;
    int64_t t = static_cast<int64_t>(rng() % 5);
    for (int i = 0; i < 30; ++i) {
      t += 1 + static_cast<int64_t>(rng() % 40);
      bw.samples.push_back(
          {t, std::uniform_real_distribution<double>(0.01, 50)(rng)});
      Orientation pose{std::uniform_real_distribution<double>(-180, 180)(rng),
                       std::uniform_real_distribution<double>(-90, 90)(rng),
                       std::uniform_real_distribution<double>(-30, 30)(rng)};
      head.samples.push_back({t, normalize(pose)});
    }
    std::stringstream a, b;
    write_bandwidth_trace(a, bw);
    write_head_trace(b, head);
    const auto bw2 = parse_bandwidth_trace(a);
    const auto head2 = parse_head_trace(b);
    ASSERT_EQ(bw2.samples.size(), bw.samples.size());
    for (size_t i = 0; i < bw.samples.size(); ++i) {
      EXPECT_EQ(bw2.samples[i].t_ms, bw.samples[i].t_ms);
      EXPECT_EQ(bw2.samples[i].mbps, bw.samples[i].mbps);
      EXPECT_EQ(head2.samples[i].pose.yaw, head.samples[i].pose.yaw);
      EXPECT_EQ(head2.samples[i].pose.pitch, head.samples[i].pose.pitch);
      EXPECT_EQ(head2.samples[i].pose.roll, head.samples[i].pose.roll);
    }
  }
}

TEST(LoadTrace, MissingFileNamesPath) {
  try {
    load_bandwidth_trace("/nonexistent/x.bw.csv");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/x.bw.csv"),
              std::string::npos);
  }
}

BandwidthTrace flat(double mbps, int n) {
  BandwidthTrace t;
  for (int i = 0; i < n; ++i) t.samples.push_back({i * 10, mbps});
  return t;
}

TEST(PerturbBandwidth, ZeroErrorIsIdentity) {
  const auto t = flat(4.0, 100);
  const auto p = perturb_bandwidth(t, 0.0, 9, 2.0);
  for (size_t i = 0; i < t.samples.size(); ++i) {
    EXPECT_EQ(p.samples[i].mbps, t.samples[i].mbps);
  }
}

TEST(PerturbBandwidth, RangeAndDeterminism) {
  const auto t = flat(4.0, 2000);
  const auto p = perturb_bandwidth(t, 0.5, 9, 2.0);
  const auto q = perturb_bandwidth(t, 0.5, 9, 2.0);
  bool varied = false;
  for (size_t i = 0; i < t.samples.size(); ++i) {
    EXPECT_GE(p.samples[i].mbps, 2.0);
    EXPECT_LE(p.samples[i].mbps, 6.0);
    EXPECT_EQ(p.samples[i].mbps, q.samples[i].mbps);
    varied |= p.samples[i].mbps != 4.0;
  }
  EXPECT_TRUE(varied);
  // One factor per 2 s span (200 samples at 10 ms).
  EXPECT_EQ(p.samples[0].mbps, p.samples[199].mbps);
  EXPECT_THROW(perturb_bandwidth(t, 1.0, 9, 2.0), InvalidInput);
}

TEST(PerturbFov, FidelityExtremes) {
  std::vector<TileSet> truth(50, TileSet{1, 2, 3});
  EXPECT_EQ(perturb_fov(truth, 1.0, 3, 4, 8, 120, 120), truth);
  const auto noisy = perturb_fov(truth, 0.0, 3, 4, 8, 120, 120);
  EXPECT_EQ(noisy, perturb_fov(truth, 0.0, 3, 4, 8, 120, 120));
  int changed = 0;
  for (size_t k = 0; k < truth.size(); ++k) changed += noisy[k] != truth[k];
  EXPECT_GT(changed, 40);
}

TEST(SynthBandwidth, Profiles) {
  BandwidthSynthParams p;
  p.mbps = 4.0;
  const auto c = synth_bandwidth(p, 10.0);
  EXPECT_EQ(c.samples.size(), 1000u);
  for (const auto& s : c.samples) EXPECT_EQ(s.mbps, 4.0);

  p.profile = BandwidthProfile::kTwoState;
  p.high_mbps = 8.0;
  p.low_mbps = 1.0;
  p.high_dwell_s = p.low_dwell_s = 4.0;
  const auto sq = synth_bandwidth(p, 16.0);
  for (const auto& s : sq.samples) {
    const double phase = std::fmod(s.t_ms / 1000.0, 8.0);
    EXPECT_EQ(s.mbps, phase < 4.0 ? 8.0 : 1.0);
  }

  p.profile = BandwidthProfile::kRandomWalk;
  p.step_mbps = 3.0;
  const auto rw = synth_bandwidth(p, 100.0);
  for (const auto& s : rw.samples) {
    EXPECT_GE(s.mbps, 0.5);
    EXPECT_LE(s.mbps, 20.0);
  }
  EXPECT_EQ(rw.samples[500].mbps, synth_bandwidth(p, 100.0).samples[500].mbps);
}

TEST(SynthHead, StaticAndDrift) {
  HeadSynthParams p;
  const auto s = synth_head(p, 10.0);
  for (const auto& h : s.samples) {
    EXPECT_EQ(h.pose.yaw, 0.0);
    EXPECT_EQ(h.pose.pitch, 0.0);
  }
  p.profile = HeadProfile::kDrift;
  p.yaw_rate_dps = 10.0;
  const auto d = synth_head(p, 20.0);
  EXPECT_NEAR(d.pose_at(12.0).yaw, 120.0, 1e-9);
}

}  // namespace
}  // namespace robust360
