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

#include "robust360/online.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "robust360/baselines.h"
#include "robust360/errors.h"
#include "robust360/relax.h"

namespace robust360 {
namespace {

constexpr uint64_t kFovSeedSalt = 0x9e3779b97f4a7c15ULL;

// Cumulative megabits of a piecewise-constant trace.
class TraceIntegral {
 public:
  explicit TraceIntegral(const BandwidthTrace& trace) : trace_(trace) {
    trace.validate();
    const auto& s = trace.samples;
    times_.reserve(s.size() + 1);
    cum_.reserve(s.size() + 1);
    double total = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
      times_.push_back(s[i].t_ms / 1000.0);
      cum_.push_back(total);
      const double next =
          i + 1 < s.size() ? s[i + 1].t_ms / 1000.0 : trace.end_seconds();
      total += s[i].mbps * (next - times_.back());
    }
    times_.push_back(trace.end_seconds());
    cum_.push_back(total);
  }

  double begin() const { return times_.front(); }
  double end() const { return times_.back(); }

  double delivered_by(double t) const {
    if (t <= times_.front()) return 0.0;
    if (t >= times_.back()) return cum_.back();
    const size_t i =
        std::upper_bound(times_.begin(), times_.end(), t) - times_.begin() - 1;
    return cum_[i] + trace_.samples[i].mbps * (t - times_[i]);
  }

  // Time at which `mbit` more megabits have arrived after `start`, or NaN
  // when the trace ends first.
  double finish_time(double start, double mbit) const {
    const double target = delivered_by(start) + mbit;
    if (target > cum_.back() + 1e-12) return std::nan("");
    size_t i = std::lower_bound(cum_.begin(), cum_.end(), target) - cum_.begin();
    if (i == 0) return start;
    --i;
    if (i >= trace_.samples.size()) return times_.back();
    const double t = times_[i] + (target - cum_[i]) / trace_.samples[i].mbps;
    return std::max(t, start);
  }

  // Samples whose holding interval overlaps [from, to).
  void observe(double from, double to,
               std::vector<ThroughputSample>& out) const {
    const auto& s = trace_.samples;
    size_t i = std::upper_bound(times_.begin(), times_.end() - 1, from) -
               times_.begin();
    if (i > 0) --i;
    for (; i < s.size() && times_[i] < to; ++i) {
      out.push_back({times_[i], s[i].mbps});
    }
  }

 private:
  const BandwidthTrace& trace_;
  std::vector<double> times_;
  std::vector<double> cum_;
};

std::vector<int> all_tiles(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

const char* to_string(Policy policy) {
  switch (policy) {
    case Policy::kRobust360:
      return "robust360";
    case Policy::kBa1:
      return "ba1";
    case Policy::kBa2:
      return "ba2";
    case Policy::kFull:
      return "full";
  }
  return "unknown";
}

Policy parse_policy(const std::string& name) {
  if (name == "robust360") return Policy::kRobust360;
  if (name == "ba1") return Policy::kBa1;
  if (name == "ba2") return Policy::kBa2;
  if (name == "full") return Policy::kFull;
  throw InvalidInput("unknown policy: " + name);
}

double harmonic_mean_estimate(std::span<const double> samples, int n) {
  if (samples.empty()) throw InvalidInput("no throughput samples");
  if (n < 1) throw InvalidInput("harmonic mean window must be positive");
  const size_t used = std::min<size_t>(n, samples.size());
  double inv = 0.0;
  for (size_t i = samples.size() - used; i < samples.size(); ++i) {
    if (!(samples[i] > 0.0)) {
      throw InvalidInput("throughput samples must be positive");
    }
    inv += 1.0 / samples[i];
  }
  return used / inv;
}

double harmonic_mean_estimate(std::span<const ThroughputSample> samples,
                              int n) {
  std::vector<double> values;
  const size_t used = std::min<size_t>(std::max(n, 0), samples.size());
  values.reserve(used);
  for (size_t i = samples.size() - used; i < samples.size(); ++i) {
    values.push_back(samples[i].mbps);
  }
  return harmonic_mean_estimate(values, n);
}

ChunkDecision base_decision(const StreamConfig& config) {
  ChunkDecision d;
  d.gamma = config.ladder.base();
  d.tile_rates.assign(config.N(), d.gamma);
  d.protected_tiles = TileSet(all_tiles(config.N()));
  d.window_gamma = {d.gamma};
  return d;
}

ChunkDecision rhc_step(const SessionState& state, const FovModel& crowd,
                       const StreamConfig& config, std::ostream* lp_dump) {
  if (state.c >= config.K) throw InvalidInput("no chunk left to decide");
  if (state.c < config.warmup_chunks || state.samples.empty()) {
    return base_decision(config);
  }
  const double estimate =
      harmonic_mean_estimate(state.samples, config.hm_samples);
  const FovModel window_fov = blend_fov(crowd, state.current_fov,
                                        config.base_weight, state.c, config.W);
  const int n = window_fov.chunk_count();

  RelaxedInstance instance;
  std::vector<TileSet> alpha(n);
  for (int j = 0; j < n; ++j) {
    alpha[j] = alpha_set(window_fov.chunk(j), config.alpha).tiles;
    instance.alpha_size.push_back(static_cast<int>(alpha[j].size()));
    instance.complement_size.push_back(config.N() -
                                       static_cast<int>(alpha[j].size()));
  }
  instance.bandwidth.assign(n, estimate);
  instance.base_rate = config.ladder.base();
  instance.top_rate = config.ladder.top();
  instance.chunk_seconds = config.L;
  instance.lambda = config.lambda;
  instance.eta = config.eta;
  instance.utility = config.utility;
  instance.utility_segments = config.utility_segments;
  instance.buffer_chunks = config.B;
  instance.startup_delay = config.t_ini;
  instance.origin = {state.now, state.committed_play};
  if (!state.committed_gamma.empty()) {
    instance.previous_gamma = state.committed_gamma.back();
  }

  const RobustPlan plan = plan_window(instance, config.ladder, {}, lp_dump);
  ChunkDecision d;
  d.gamma = plan.gamma[0];
  d.window_gamma = plan.gamma;
  d.fell_back = plan.fell_back;
  d.protected_tiles = alpha[0];
  d.tile_rates.assign(config.N(), config.ladder.base());
  for (int i : alpha[0]) d.tile_rates[i] = d.gamma;
  return d;
}

double guaranteed_rate(std::span<const double> rates, double p) {
  if (rates.empty()) throw InvalidInput("no chunks to rate");
  std::vector<double> sorted(rates.begin(), rates.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double need = std::ceil(p * sorted.size() - 1e-9);
  const int index = std::clamp(static_cast<int>(need) - 1, 0,
                               static_cast<int>(sorted.size()) - 1);
  return sorted[index];
}

SessionResult simulate_session(const StreamConfig& config,
                               const BandwidthTrace& bandwidth,
                               const HeadTrace& head_true,
                               const FovModel& crowd, Policy policy,
                               const SessionOptions& options) {
  config.validate();
  if (policy == Policy::kRobust360 && crowd.chunk_count() < config.K) {
    throw InvalidInput("crowd model covers " +
                       std::to_string(crowd.chunk_count()) + " chunks, need " +
                       std::to_string(config.K));
  }
  const BandwidthTrace network = perturb_bandwidth(
      bandwidth, options.bw_error, options.seed, config.L);
  const TraceIntegral integral(network);
  const std::vector<FovSet> true_fov = fov_sequence(head_true, config);
  const std::vector<FovSet> seen_fov = perturb_fov(
      true_fov, options.fov_fidelity, options.seed ^ kFovSeedSalt,
      config.rows, config.cols, config.fov_h, config.fov_v);

  const int K = config.K;
  const double base = config.ladder.base();
  SessionResult r;
  r.policy = policy;
  SessionState state;
  double last_finish = integral.begin();

  for (int c = 0; c < K; ++c) {
    state.c = c;
    state.now = effective_start({last_finish, state.committed_play}, config.B);
    // Viewport of the chunk on screen when the decision is made.
    int showing = 0;
    while (showing + 1 < c && state.committed_play[showing + 1] <= state.now) {
      ++showing;
    }
    state.current_fov = seen_fov[std::min(showing, K - 1)];

    const auto t0 = std::chrono::steady_clock::now();
    ChunkDecision d;
    switch (policy) {
      case Policy::kRobust360:
        if (options.lp_dump) *options.lp_dump << "# chunk " << c + 1 << '\n';
        d = rhc_step(state, crowd, config, options.lp_dump);
        break;
      case Policy::kBa1:
        d = ba1_decide(state, config);
        break;
      case Policy::kBa2:
        d = ba2_decide(state, config);
        break;
      case Policy::kFull:
        d = full_decide(state, config);
        break;
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.decision_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
    r.fallbacks += d.fell_back ? 1 : 0;

    double mbit = 0.0;
    for (double rate : d.tile_rates) mbit += config.L * rate;
    const double start = state.now;
    double finish = integral.finish_time(start, mbit);
    const double deadline = state.next_deadline(config);
    if (options.mid_chunk_floor && !std::isnan(finish) &&
        finish > deadline + kTimeTolerance && start < deadline) {
      // Keep what arrived by the deadline, fetch the rest at the base rate.
      const double got =
          integral.delivered_by(deadline) - integral.delivered_by(start);
      const double rest = (1.0 - got / mbit) * config.L * config.N() * base;
      finish = integral.finish_time(deadline, rest);
      d.gamma = base;
      d.tile_rates.assign(config.N(), base);
    }
    if (std::isnan(finish)) {
      throw SimulationError("bandwidth trace ends while downloading chunk " +
                            std::to_string(c + 1));
    }
    integral.observe(start, finish, state.samples);

    const double play = c == 0 ? std::max(config.t_ini, finish)
                               : std::max(state.committed_play.back() + config.L,
                                          finish);
    double viewed = config.ladder.top();
    for (int i : true_fov[c]) viewed = std::min(viewed, d.tile_rates[i]);
    if (true_fov[c].empty()) viewed = base;

    state.committed_gamma.push_back(d.gamma);
    state.committed_play.push_back(play);
    last_finish = finish;

    r.gamma.push_back(d.gamma);
    r.tile_rates.push_back(d.tile_rates);
    r.viewed_rate.push_back(viewed);
    r.protected_size.push_back(static_cast<int>(d.protected_tiles.size()));
    r.download_start.push_back(start);
    r.download_end.push_back(finish);
    r.play.push_back(play);
    r.stall_to_date.push_back(
        std::max(0.0, play - (config.t_ini + c * config.L)));
  }

  r.stall = r.stall_to_date.back();
  r.qoe = score_rates(r.viewed_rate, r.stall, config.utility, config.lambda,
                      config.eta);
  r.robust_qoe = score_rates(r.gamma, r.stall, config.utility, config.lambda,
                             config.eta);
  r.guaranteed_rate_p95 = guaranteed_rate(r.viewed_rate, 0.95);
  double total_ms = 0.0;
  for (double ms : r.decision_ms) total_ms += ms;
  r.mean_decision_ms = total_ms / K;
  return r;
}

}  // namespace robust360
