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

// Command-line front end: run, sweep, crowd-build, oracle, synth.

#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "robust360/errors.h"
#include "robust360/harness.h"
#include "robust360/log.h"
#include "robust360/online.h"
#include "robust360/traces.h"

namespace fs = std::filesystem;
using namespace robust360;

namespace {

constexpr int kExitMissing = 2;

struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw MissingInput(std::string(what) + " not found: " + path);
  }
}

struct Overrides {
  std::optional<double> alpha, eta, lambda;
  std::optional<int> window;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "coverage probability");
    app->add_option("--eta", eta, "variation weight");
    app->add_option("--lambda", lambda, "stall weight");
    app->add_option("--window", window, "look-ahead window W");
  }
  void apply(StreamConfig& c) const {
    if (alpha) c.alpha = *alpha;
    if (eta) c.eta = *eta;
    if (lambda) c.lambda = *lambda;
    if (window) c.W = *window;
    c.validate();
  }
};

StreamConfig config_or_default(const std::string& path) {
  if (path.empty()) return StreamConfig{};
  require_file(path, "config");
  return load_config(path);
}

FovModel crowd_from(const std::string& model_path, const std::string& glob,
                    const StreamConfig& config) {
  if (!model_path.empty()) {
    require_file(model_path, "crowd model");
    return load_fov_model(model_path);
  }
  if (!glob.empty()) {
    const auto paths = head_trace_paths(glob);
    if (paths.empty()) throw MissingInput("no head traces match " + glob);
    return crowd_build(paths, config);
  }
  return FovModel{};
}

BandwidthProfile parse_bw_profile(const std::string& name) {
  if (name == "constant") return BandwidthProfile::kConstant;
  if (name == "two-state") return BandwidthProfile::kTwoState;
  if (name == "random-walk") return BandwidthProfile::kRandomWalk;
  throw InvalidInput("unknown bandwidth profile: " + name);
}

HeadProfile parse_head_profile(const std::string& name) {
  if (name == "static") return HeadProfile::kStatic;
  if (name == "drift") return HeadProfile::kDrift;
  if (name == "hotspot") return HeadProfile::kHotspotMixture;
  throw InvalidInput("unknown head profile: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Tile-based 360-degree video rate adaptation simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "simulate one session");
  std::string config_path, bw_path, head_path, crowd_path, crowd_glob, out_dir,
      policy_name = "robust360", dump_lp;
  uint64_t seed = 1;
  double bw_error = 0.0, fov_fidelity = 1.0;
  bool no_timing = false, mid_chunk_floor = false;
  Overrides run_over;
  run->add_option("--config", config_path, "flat JSON config");
  run->add_option("--bw-trace", bw_path, "bandwidth CSV")->required();
  run->add_option("--head-trace", head_path, "head CSV of the viewer")
      ->required();
  run->add_option("--crowd-model", crowd_path, "FoV model JSON");
  run->add_option("--crowd-glob", crowd_glob, "head traces for the crowd");
  run->add_option("--policy", policy_name, "robust360|ba1|ba2|full");
  run->add_option("--seed", seed, "perturbation seed");
  run->add_option("--bw-error", bw_error, "bandwidth error e");
  run->add_option("--fov-fidelity", fov_fidelity, "FoV fidelity beta");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--dump-lp", dump_lp, "write every window LP here");
  run->add_flag("--no-timing", no_timing, "write decision times as zero");
  run->add_flag("--mid-chunk-floor", mid_chunk_floor,
                "drop a late chunk to the base rate at its deadline");
  run_over.add(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweep");
  std::string axis_name, synthetic = "random-walk", eval_glob;
  std::vector<double> values;
  std::vector<std::string> policy_names{"robust360", "ba1", "ba2", "full"};
  std::vector<uint64_t> seeds;
  int seed_count = 0, jobs = 1;
  std::optional<double> bw_high, bw_low, bw_dwell;
  Overrides sweep_over;
  sweep->add_option("--axis", axis_name,
                    "eta|window|bw_error|fov_fidelity|alpha")
      ->required();
  sweep->add_option("--values", values, "axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--policies", policy_names, "policies")->delimiter(',');
  sweep->add_option("--seeds", seeds, "seeds")->delimiter(',');
  sweep->add_option("--seed-count", seed_count, "use seeds 1..n");
  sweep->add_option("--config", config_path, "flat JSON config");
  sweep->add_option("--bw-trace", bw_path, "recorded bandwidth CSV");
  sweep->add_option("--eval-glob", eval_glob, "head traces of evaluated users");
  sweep->add_option("--crowd-model", crowd_path, "FoV model JSON");
  sweep->add_option("--crowd-glob", crowd_glob, "head traces for the crowd");
  sweep->add_option("--synthetic", synthetic,
                    "bandwidth profile when no traces are given");
  sweep->add_option("--bw-high", bw_high, "two-state high level, Mbps");
  sweep->add_option("--bw-low", bw_low, "two-state low level, Mbps");
  sweep->add_option("--bw-dwell", bw_dwell, "two-state dwell per level, s");
  sweep->add_option("--bw-error", bw_error, "bandwidth error e");
  sweep->add_option("--fov-fidelity", fov_fidelity, "FoV fidelity beta");
  sweep->add_option("--jobs", jobs, "parallel sessions");
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_flag("--no-timing", no_timing, "write decision times as zero");
  sweep->add_flag("--mid-chunk-floor", mid_chunk_floor, "see run");
  sweep_over.add(sweep);

  // crowd-build
  auto* crowd = app.add_subcommand("crowd-build", "empirical FoV model");
  std::string crowd_source, crowd_out;
  crowd->add_option("--crowd-glob,source", crowd_source,
                    "directory of .head.csv files or a glob")
      ->required();
  crowd->add_option("--config", config_path, "flat JSON config");
  crowd->add_option("--out", crowd_out, "output JSON")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "relaxed/discrete/robust values");
  std::string instance_path;
  std::optional<double> grid_step;
  oracle->add_option("--instance,instance", instance_path, "instance JSON")
      ->required();
  oracle->add_option("--step", grid_step, "also run the grid search");

  // synth
  auto* synth = app.add_subcommand("synth", "synthetic traces");
  synth->require_subcommand(1);
  auto* synth_bw = synth->add_subcommand("bw", "bandwidth trace");
  BandwidthSynthParams bwp;
  std::string bw_profile = "constant", synth_out;
  double duration = 300.0;
  synth_bw->add_option("--profile", bw_profile,
                       "constant|two-state|random-walk");
  synth_bw->add_option("--mbps", bwp.mbps, "constant / start level");
  synth_bw->add_option("--high", bwp.high_mbps, "two-state high level");
  synth_bw->add_option("--low", bwp.low_mbps, "two-state low level");
  synth_bw->add_option("--high-dwell", bwp.high_dwell_s, "seconds");
  synth_bw->add_option("--low-dwell", bwp.low_dwell_s, "seconds");
  synth_bw->add_option("--step", bwp.step_mbps, "random-walk step");
  synth_bw->add_option("--min", bwp.min_mbps, "random-walk lower bound");
  synth_bw->add_option("--max", bwp.max_mbps, "random-walk upper bound");
  synth_bw->add_option("--spacing-ms", bwp.spacing_ms, "sample spacing");
  synth_bw->add_option("--seed", bwp.seed, "seed");
  synth_bw->add_option("--duration", duration, "seconds");
  synth_bw->add_option("--out", synth_out, "output CSV")->required();
  auto* synth_head_cmd = synth->add_subcommand("head", "head traces");
  std::string head_profile = "hotspot";
  int users = 1;
  uint64_t head_seed = 1;
  double yaw_rate = 0.0;
  synth_head_cmd->add_option("--profile", head_profile,
                             "static|drift|hotspot");
  synth_head_cmd->add_option("--users", users, "number of users");
  synth_head_cmd->add_option("--seed", head_seed, "first user's seed");
  synth_head_cmd->add_option("--yaw-rate", yaw_rate, "drift, deg/s");
  synth_head_cmd->add_option("--duration", duration, "seconds");
  synth_head_cmd->add_option("--config", config_path, "flat JSON config");
  synth_head_cmd->add_option("--out", synth_out, "output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      StreamConfig config = config_or_default(config_path);
      run_over.apply(config);
      require_file(bw_path, "bandwidth trace");
      require_file(head_path, "head trace");
      const Policy policy = parse_policy(policy_name);
      const FovModel crowd_model = crowd_from(crowd_path, crowd_glob, config);
      if (policy == Policy::kRobust360 && crowd_model.chunk_count() == 0) {
        throw InvalidInput("robust360 needs --crowd-model or --crowd-glob");
      }
      SessionOptions options;
      options.bw_error = bw_error;
      options.fov_fidelity = fov_fidelity;
      options.seed = seed;
      options.mid_chunk_floor = mid_chunk_floor;
      std::ofstream lp_out;
      if (!dump_lp.empty()) {
        const fs::path parent = fs::path(dump_lp).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        lp_out.open(dump_lp);
        if (!lp_out) throw InvalidInput("cannot write " + dump_lp);
        options.lp_dump = &lp_out;
      }
      const SessionResult result = simulate_session(
          config, load_bandwidth_trace(bw_path), load_head_trace(head_path),
          crowd_model, policy, options);
      write_run_outputs(out_dir, result, config, options, !no_timing);
      std::printf("%s: qoe %.6g stall %.6g s guaranteed rate %.6g Mbps\n",
                  to_string(policy), result.qoe.total, result.stall,
                  result.guaranteed_rate_p95);
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.config = config_or_default(config_path);
      sweep_over.apply(spec.config);
      spec.axis = parse_sweep_axis(axis_name);
      spec.values = values;
      for (const auto& p : policy_names) spec.policies.push_back(parse_policy(p));
      spec.seeds = seeds;
      for (int s = 1; s <= seed_count; ++s) spec.seeds.push_back(s);
      if (spec.seeds.empty()) spec.seeds.push_back(1);
      spec.jobs = jobs;
      spec.include_timing = !no_timing;
      spec.options.bw_error = bw_error;
      spec.options.fov_fidelity = fov_fidelity;
      spec.options.mid_chunk_floor = mid_chunk_floor;
      spec.synthetic = default_synthetic_spec(spec.config);
      spec.synthetic.bandwidth.profile = parse_bw_profile(synthetic);
      if (bw_high) spec.synthetic.bandwidth.high_mbps = *bw_high;
      if (bw_low) spec.synthetic.bandwidth.low_mbps = *bw_low;
      if (bw_dwell) {
        spec.synthetic.bandwidth.high_dwell_s = *bw_dwell;
        spec.synthetic.bandwidth.low_dwell_s = *bw_dwell;
      }
      if (!bw_path.empty()) {
        require_file(bw_path, "bandwidth trace");
        spec.bandwidth = load_bandwidth_trace(bw_path);
        const auto eval = head_trace_paths(eval_glob);
        if (eval.empty()) throw MissingInput("no head traces match " + eval_glob);
        for (const auto& p : eval) spec.users.push_back(load_head_trace(p));
        spec.crowd = crowd_from(crowd_path, crowd_glob, spec.config);
        if (spec.crowd->chunk_count() == 0) {
          throw InvalidInput("recorded sweeps need --crowd-model or --crowd-glob");
        }
      }
      const auto rows = run_sweep(spec);
      fs::create_directories(out_dir);
      std::ofstream sweep_csv(fs::path(out_dir) / "sweep.csv");
      write_sweep_csv(sweep_csv, spec.axis, rows);
      std::ofstream agg_csv(fs::path(out_dir) / "agg.csv");
      write_agg_csv(agg_csv, spec.axis, rows);
      std::printf("%zu sessions written to %s\n", rows.size(), out_dir.c_str());
    } else if (crowd->parsed()) {
      const StreamConfig config = config_or_default(config_path);
      const auto paths = head_trace_paths(crowd_source);
      if (paths.empty()) {
        throw MissingInput("no .head.csv traces in " + crowd_source);
      }
      const FovModel model = crowd_build(paths, config);
      std::ofstream out(crowd_out);
      if (!out) throw InvalidInput("cannot write " + crowd_out);
      out << fov_model_to_json(model).dump() << '\n';
      std::printf("%zu traces, %d chunks -> %s\n", paths.size(),
                  model.chunk_count(), crowd_out.c_str());
    } else if (oracle->parsed()) {
      require_file(instance_path, "instance");
      std::ifstream in(instance_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, e.what());
      }
      const SandwichReport rep =
          oracle_sandwich(oracle_instance_from_json(j), grid_step);
      nlohmann::json out = {{"relaxed", rep.relaxed},
                            {"robust", rep.robust},
                            {"gap_bound", rep.gap_bound},
                            {"gamma_star", rep.gamma_star},
                            {"gamma_robust", rep.gamma_robust}};
      out["discrete"] = rep.discrete ? nlohmann::json(*rep.discrete) : nullptr;
      out["grid"] = rep.grid ? nlohmann::json(*rep.grid) : nullptr;
      std::printf("%s\n", out.dump(2).c_str());
    } else if (synth_bw->parsed()) {
      bwp.profile = parse_bw_profile(bw_profile);
      std::ofstream out(synth_out);
      if (!out) throw InvalidInput("cannot write " + synth_out);
      write_bandwidth_trace(out, synth_bandwidth(bwp, duration));
    } else if (synth_head_cmd->parsed()) {
      const StreamConfig config = config_or_default(config_path);
      SyntheticSpec spec = default_synthetic_spec(config);
      HeadSynthParams hp = spec.head;
      hp.profile = parse_head_profile(head_profile);
      hp.yaw_rate_dps = yaw_rate;
      fs::create_directories(synth_out);
      for (int u = 0; u < users; ++u) {
        hp.seed = head_seed + u;
        char name[32];
        std::snprintf(name, sizeof name, "user_%03d.head.csv", u);
        std::ofstream out(fs::path(synth_out) / name);
        write_head_trace(out, synth_head(hp, duration));
      }
    }
  } catch (const MissingInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMissing;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
