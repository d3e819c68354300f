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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

#include "robust360/errors.h"
#include "robust360/fov.h"
#include "robust360/log.h"

namespace robust360 {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a CSV data line into exactly `expected` trimmed fields.
std::vector<std::string_view> split_fields(std::string_view line, size_t expected,
                                           int line_no) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    const size_t comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (fields.size() != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) +
                                  " fields, got " +
                                  std::to_string(fields.size()));
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, int line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line_no, "not a number: '" + std::string(field) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ParseError(line_no, "non-finite value: '" + std::string(field) + "'");
    }
  }
  return value;
}

// Calls fn(fields, line_no) for each data line.
template <typename Fn>
void for_each_record(std::istream& in, size_t expected, Fn fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    fn(split_fields(body, expected, line_no), line_no);
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

double normalize_yaw(double yaw) {
  double y = std::fmod(yaw + 180.0, 360.0);
  if (y < 0.0) y += 360.0;
  y -= 180.0;
  return y >= 180.0 ? y - 360.0 : y;
}

Orientation normalize(Orientation pose) {
  pose.yaw = normalize_yaw(pose.yaw);
  pose.pitch = std::clamp(pose.pitch, -90.0, 90.0);
  return pose;
}

void BandwidthTrace::validate() const {
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].mbps > 0.0)) {
      throw InvalidInput("bandwidth sample " + std::to_string(i + 1) +
                         " is not positive");
    }
    if (i > 0 && samples[i].t_ms <= samples[i - 1].t_ms) {
      throw InvalidInput("bandwidth timestamps must increase strictly (sample " +
                         std::to_string(i + 1) + ")");
    }
  }
}

double BandwidthTrace::end_seconds() const {
  if (samples.empty()) return 0.0;
  const int64_t tail =
      samples.size() > 1 ? samples.back().t_ms - samples[samples.size() - 2].t_ms
                         : 1;
  return static_cast<double>(samples.back().t_ms + tail) / 1000.0;
}

void HeadTrace::validate() const {
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t_ms <= samples[i - 1].t_ms) {
      throw InvalidInput("head timestamps must increase strictly (sample " +
                         std::to_string(i + 1) + ")");
    }
  }
}

double HeadTrace::end_seconds() const {
  return samples.empty() ? 0.0 : samples.back().t_ms / 1000.0;
}

Orientation HeadTrace::pose_at(double seconds) const {
  if (samples.empty()) throw InvalidInput("empty head trace");
  const double ms = seconds * 1000.0 + 1e-6;
  auto it = std::upper_bound(
      samples.begin(), samples.end(), ms,
      [](double t, const HeadSample& s) { return t < static_cast<double>(s.t_ms); });
  if (it == samples.begin()) return samples.front().pose;
  return std::prev(it)->pose;
}

BandwidthTrace parse_bandwidth_trace(std::istream& in) {
  BandwidthTrace trace;
  for_each_record(in, 2, [&](const auto& f, int line_no) {
    BandwidthSample s{parse_number<int64_t>(f[0], line_no),
                      parse_number<double>(f[1], line_no)};
    if (!(s.mbps > 0.0)) throw ParseError(line_no, "throughput must be positive");
    if (!trace.samples.empty() && s.t_ms <= trace.samples.back().t_ms) {
      throw ParseError(line_no, "timestamps must increase strictly");
    }
    trace.samples.push_back(s);
  });
  return trace;
}

HeadTrace parse_head_trace(std::istream& in) {
  HeadTrace trace;
  for_each_record(in, 4, [&](const auto& f, int line_no) {
    HeadSample s;
    s.t_ms = parse_number<int64_t>(f[0], line_no);
    s.pose = {parse_number<double>(f[1], line_no),
              parse_number<double>(f[2], line_no),
              parse_number<double>(f[3], line_no)};
    if (s.pose.pitch > 90.0 || s.pose.pitch < -90.0) {
      spdlog::warn("head trace line {}: pitch {} clamped", line_no, s.pose.pitch);
    }
    s.pose = normalize(s.pose);
    if (!trace.samples.empty() && s.t_ms <= trace.samples.back().t_ms) {
      throw ParseError(line_no, "timestamps must increase strictly");
    }
    trace.samples.push_back(s);
  });
  return trace;
}

void write_bandwidth_trace(std::ostream& out, const BandwidthTrace& trace) {
  out << "# t_ms,mbps\n";
  for (const auto& s : trace.samples) {
    out << s.t_ms << ',' << format_double(s.mbps) << '\n';
  }
}

void write_head_trace(std::ostream& out, const HeadTrace& trace) {
  out << "# t_ms,yaw,pitch,roll\n";
  for (const auto& s : trace.samples) {
    out << s.t_ms << ',' << format_double(s.pose.yaw) << ','
        << format_double(s.pose.pitch) << ',' << format_double(s.pose.roll)
        << '\n';
  }
}

BandwidthTrace load_bandwidth_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open bandwidth trace: " + path);
  return parse_bandwidth_trace(in);
}

HeadTrace load_head_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open head trace: " + path);
  return parse_head_trace(in);
}

BandwidthTrace perturb_bandwidth(const BandwidthTrace& trace, double error,
                                 uint64_t seed, double span_seconds) {
  if (!(error >= 0.0 && error < 1.0)) {
    throw InvalidInput("bandwidth error must lie in [0, 1)");
  }
  if (!(span_seconds > 0.0)) throw InvalidInput("span must be positive");
  BandwidthTrace out = trace;
  if (error == 0.0 || trace.samples.empty()) return out;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(-error, error);
  const int64_t span_ms = std::max<int64_t>(1, std::llround(span_seconds * 1000.0));
  int64_t current_span = -1;
  double scale = 1.0;
  for (auto& s : out.samples) {
    const int64_t span = s.t_ms / span_ms;
    while (current_span < span) {  // one draw per span, including empty spans
      scale = 1.0 + factor(rng);
      ++current_span;
    }
    s.mbps *= scale;
  }
  return out;
}

std::vector<TileSet> perturb_fov(const std::vector<TileSet>& true_fov,
                                 double fidelity, uint64_t seed, int rows,
                                 int cols, double fov_h, double fov_v) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidInput("FoV fidelity must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TileSet> out;
  out.reserve(true_fov.size());
  for (const auto& fov : true_fov) {
    const double keep = unit(rng);
    const double yaw = -180.0 + 360.0 * unit(rng);
    const double pitch = std::asin(2.0 * unit(rng) - 1.0) * 180.0 / M_PI;
    if (keep < fidelity) {
      out.push_back(fov);
    } else {
      out.push_back(tiles_in_viewport({yaw, pitch, 0.0}, rows, cols, fov_h, fov_v));
    }
  }
  return out;
}

BandwidthTrace synth_bandwidth(const BandwidthSynthParams& p, double duration_s) {
  if (p.spacing_ms < 1) throw InvalidInput("spacing must be >= 1 ms");
  BandwidthTrace trace;
  const int64_t end_ms = std::llround(duration_s * 1000.0);
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> step(-p.step_mbps, p.step_mbps);
  double level = std::clamp(p.mbps, p.min_mbps, p.max_mbps);
  const double period = p.high_dwell_s + p.low_dwell_s;
  for (int64_t t = 0; t < end_ms; t += p.spacing_ms) {
    double mbps = p.mbps;
    switch (p.profile) {
      case BandwidthProfile::kConstant:
        break;
      case BandwidthProfile::kTwoState: {
        const double phase = std::fmod(t / 1000.0, period);
        mbps = phase < p.high_dwell_s ? p.high_mbps : p.low_mbps;
        break;
      }
      case BandwidthProfile::kRandomWalk: {
        mbps = level;
        level += step(rng);
        if (level < p.min_mbps) level = 2.0 * p.min_mbps - level;
        if (level > p.max_mbps) level = 2.0 * p.max_mbps - level;
        level = std::clamp(level, p.min_mbps, p.max_mbps);
        break;
      }
    }
    trace.samples.push_back({t, mbps});
  }
  trace.validate();
  return trace;
}

HeadTrace synth_head(const HeadSynthParams& p, double duration_s) {
  if (p.spacing_ms < 1) throw InvalidInput("spacing must be >= 1 ms");
  HeadTrace trace;
  const int64_t end_ms = std::llround(duration_s * 1000.0);
  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> jitter(0.0, p.jitter_deg);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> weights;
  for (const auto& h : p.hotspots) weights.push_back(h.weight);
  if (p.profile == HeadProfile::kHotspotMixture && weights.empty()) {
    throw InvalidInput("hotspot mixture needs at least one hotspot");
  }
  std::discrete_distribution<int> pick(weights.begin(), weights.end());

  int64_t current_chunk = -1;
  int center = -1;
  Orientation chunk_pose = p.start;
  for (int64_t t = 0; t <= end_ms; t += p.spacing_ms) {
    const double sec = t / 1000.0;
    Orientation pose = p.start;
    switch (p.profile) {
      case HeadProfile::kStatic:
        break;
      case HeadProfile::kDrift:
        pose.yaw = p.start.yaw + p.yaw_rate_dps * sec;
        pose.pitch = p.start.pitch + p.pitch_rate_dps * sec;
        break;
      case HeadProfile::kHotspotMixture: {
        const auto chunk = static_cast<int64_t>(sec / p.chunk_seconds);
        while (current_chunk < chunk) {
          if (center < 0 || unit(rng) < p.switch_prob) center = pick(rng);
          const Hotspot& h = p.hotspots[center];
          const double chunk_start = (current_chunk + 1) * p.chunk_seconds;
          chunk_pose = {h.yaw + p.center_drift_dps * chunk_start + jitter(rng),
                        h.pitch + jitter(rng), 0.0};
          ++current_chunk;
        }
        pose = chunk_pose;
        break;
      }
    }
    trace.samples.push_back({t, normalize(pose)});
  }
  return trace;
}

}  // namespace robust360
