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

#ifndef ROBUST360_HARNESS_H_
#define ROBUST360_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "robust360/fov.h"
#include "robust360/model.h"
#include "robust360/online.h"
#include "robust360/relax.h"
#include "robust360/traces.h"

namespace robust360 {

inline constexpr int kSummarySchemaVersion = 1;

// Flat JSON keyed by StreamConfig field names. Missing keys keep their
// defaults; unknown keys are rejected. The utility is selected with
// "utility": "linear" | "power" | "piecewise" plus "utility_exponent" or
// "utility_points" ([[rate, value], ...]).
StreamConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const StreamConfig& config);
StreamConfig load_config(const std::string& path);

// {"schema_version": 1, "chunks": [[{"tiles": [...], "p": 0.5}, ...], ...]}
nlohmann::json fov_model_to_json(const FovModel& model);
FovModel fov_model_from_json(const nlohmann::json& j);
FovModel load_fov_model(const std::string& path);

// Sorted paths matching a shell glob; empty when nothing matches.
std::vector<std::string> expand_glob(const std::string& pattern);
// `source` is a directory (all *.head.csv inside) or a glob.
std::vector<std::string> head_trace_paths(const std::string& source);

FovModel crowd_build(const std::vector<std::string>& head_paths,
                     const StreamConfig& config);

void write_decisions_csv(std::ostream& out, const SessionResult& result);
// With include_timing false the decision times are written as zero, which
// makes the output a pure function of the inputs.
nlohmann::json summary_json(const SessionResult& result,
                            const StreamConfig& config,
                            const SessionOptions& options,
                            bool include_timing);

// Writes decisions.csv and summary.json under `out_dir`, creating it.
void write_run_outputs(const std::string& out_dir, const SessionResult& result,
                       const StreamConfig& config,
                       const SessionOptions& options, bool include_timing);

// Synthetic inputs for sweeps when no recorded traces are given.
struct SyntheticSpec {
  BandwidthSynthParams bandwidth;
  HeadSynthParams head;  // seed is overridden per user
  int crowd_users = 40;
};

struct Scenario {
  BandwidthTrace bandwidth;
  HeadTrace head;
  FovModel crowd;
};

// Default synthetic setup: a random walk between 9 and 20 Mbps (two-state
// 20/9 Mbps when the profile is switched) and a two-hotspot head mixture.
SyntheticSpec default_synthetic_spec(const StreamConfig& config);
// The evaluated user and bandwidth trace depend on `seed`; the crowd is
// built from users that never include the evaluated one.
Scenario make_scenario(const SyntheticSpec& spec, const StreamConfig& config,
                       uint64_t seed);

enum class SweepAxis { kEta, kWindow, kBwError, kFovFidelity, kAlpha };
const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kEta;
  std::vector<double> values;
  std::vector<Policy> policies;
  std::vector<uint64_t> seeds;
  StreamConfig config;
  SessionOptions options;  // perturbations not on the swept axis
  int jobs = 1;
  bool include_timing = true;
  // Recorded inputs; when `bandwidth` is empty a synthetic scenario is
  // generated per seed.
  std::optional<BandwidthTrace> bandwidth;
  std::vector<HeadTrace> users;
  std::optional<FovModel> crowd;
  SyntheticSpec synthetic;
};

struct SweepRow {
  Policy policy = Policy::kRobust360;
  double value = 0.0;
  uint64_t seed = 0;
  int user = 0;
  QoEBreakdown qoe;
  double robust_qoe = 0.0;
  double stall = 0.0;
  double guaranteed_rate_p95 = 0.0;
  double mean_viewed_rate = 0.0;
  double min_viewed_rate = 0.0;
  double mean_protected_tiles = 0.0;  // |A| for robust360
  double mean_decision_ms = 0.0;
  int fallbacks = 0;
};

// One row per (policy, value, seed, user), in that nesting order whatever
// the job count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Applies one axis value to a copy of the config and options.
void apply_axis(SweepAxis axis, double value, StreamConfig& config,
                SessionOptions& options);

void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     const std::vector<SweepRow>& rows);
// Mean and sample standard deviation per (policy, value).
void write_agg_csv(std::ostream& out, SweepAxis axis,
                   const std::vector<SweepRow>& rows);

// Oracle instance file: RelaxedInstance fields plus "ladder".
struct OracleInstance {
  RelaxedInstance instance;
  std::vector<double> ladder;
};
OracleInstance oracle_instance_from_json(const nlohmann::json& j);

struct SandwichReport {
  double relaxed = 0.0;
  std::optional<double> grid;
  std::optional<double> discrete;
  double robust = 0.0;
  double gap_bound = 0.0;
  std::vector<double> gamma_star;
  std::vector<double> gamma_robust;
};
SandwichReport oracle_sandwich(const OracleInstance& oracle,
                               std::optional<double> grid_step);

}  // namespace robust360

#endif  // ROBUST360_HARNESS_H_
