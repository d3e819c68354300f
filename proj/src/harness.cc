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

#include "robust360/harness.h"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "robust360/errors.h"
#include "robust360/oracle.h"
#include "robust360/quantize.h"

namespace robust360 {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(std::string("cannot open ") + what + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t upto = std::min(e.byte, text.size());
    const int line =
        1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(line, e.what());
  }
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << content;
    if (!out) throw InvalidInput("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

UtilitySpec utility_from_fields(const json& j) {
  const std::string kind = j.value("utility", std::string("linear"));
  if (kind == "linear") return UtilitySpec::linear();
  if (kind == "power") {
    if (!j.contains("utility_exponent")) {
      throw InvalidInput("power utility needs utility_exponent");
    }
    return UtilitySpec::power(j.at("utility_exponent").get<double>());
  }
  if (kind == "piecewise") {
    if (!j.contains("utility_points")) {
      throw InvalidInput("piecewise utility needs utility_points");
    }
    return UtilitySpec::piecewise(
        j.at("utility_points").get<std::vector<std::pair<double, double>>>());
  }
  throw InvalidInput("unknown utility kind: " + kind);
}

void utility_to_fields(const UtilitySpec& u, json& j) {
  switch (u.kind()) {
    case UtilitySpec::Kind::kLinear:
      j["utility"] = "linear";
      break;
    case UtilitySpec::Kind::kPower:
      j["utility"] = "power";
      j["utility_exponent"] = u.exponent();
      break;
    case UtilitySpec::Kind::kPiecewise:
      j["utility"] = "piecewise";
      j["utility_points"] = u.breakpoints();
      break;
  }
}

json qoe_json(const QoEBreakdown& q) {
  return {{"utility_sum", q.utility_sum},
          {"stall_penalty", q.stall_penalty},
          {"variation_penalty", q.variation_penalty},
          {"total", q.total}};
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / v.size();
}

}  // namespace

StreamConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  StreamConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "K") c.K = value.get<int>();
      else if (key == "L") c.L = value.get<double>();
      else if (key == "rows") c.rows = value.get<int>();
      else if (key == "cols") c.cols = value.get<int>();
      else if (key == "ladder") c.ladder = RateLadder(value.get<std::vector<double>>());
      else if (key == "fov_h") c.fov_h = value.get<double>();
      else if (key == "fov_v") c.fov_v = value.get<double>();
      else if (key == "alpha") c.alpha = value.get<double>();
      else if (key == "lambda") c.lambda = value.get<double>();
      else if (key == "eta") c.eta = value.get<double>();
      else if (key == "W") c.W = value.get<int>();
      else if (key == "B") c.B = value.get<int>();
      else if (key == "t_ini") c.t_ini = value.get<double>();
      else if (key == "warmup_chunks") c.warmup_chunks = value.get<int>();
      else if (key == "hm_samples") c.hm_samples = value.get<int>();
      else if (key == "base_weight") c.base_weight = value.get<double>();
      else if (key == "utility_segments") c.utility_segments = value.get<int>();
      else if (key == "utility" || key == "utility_exponent" ||
               key == "utility_points") continue;
      else throw InvalidInput("unknown config key: " + key);
    }
    c.utility = utility_from_fields(j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const StreamConfig& c) {
  json j = {{"K", c.K},
            {"L", c.L},
            {"rows", c.rows},
            {"cols", c.cols},
            {"ladder", c.ladder.levels()},
            {"fov_h", c.fov_h},
            {"fov_v", c.fov_v},
            {"alpha", c.alpha},
            {"lambda", c.lambda},
            {"eta", c.eta},
            {"W", c.W},
            {"B", c.B},
            {"t_ini", c.t_ini},
            {"warmup_chunks", c.warmup_chunks},
            {"hm_samples", c.hm_samples},
            {"base_weight", c.base_weight},
            {"utility_segments", c.utility_segments}};
  utility_to_fields(c.utility, j);
  return j;
}

StreamConfig load_config(const std::string& path) {
  return config_from_json(parse_json_text(read_file(path, "config")));
}

json fov_model_to_json(const FovModel& model) {
  json chunks = json::array();
  for (const auto& dist : model.chunks()) {
    json entries = json::array();
    for (const auto& s : dist) {
      entries.push_back({{"tiles", s.tiles.indices()}, {"p", s.probability}});
    }
    chunks.push_back(std::move(entries));
  }
  return {{"schema_version", 1}, {"chunks", std::move(chunks)}};
}

FovModel fov_model_from_json(const json& j) {
  try {
    if (j.value("schema_version", 1) != 1) {
      throw InvalidInput("unsupported FoV model schema_version " +
                         j.at("schema_version").dump());
    }
    std::vector<FovDistribution> chunks;
    for (const auto& entries : j.at("chunks")) {
      FovDistribution dist;
      for (const auto& e : entries) {
        dist.push_back({TileSet(e.at("tiles").get<std::vector<int>>()),
                        e.at("p").get<double>()});
      }
      chunks.push_back(std::move(dist));
    }
    return FovModel(std::move(chunks));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad FoV model: ") + e.what());
  }
}

FovModel load_fov_model(const std::string& path) {
  return fov_model_from_json(parse_json_text(read_file(path, "crowd model")));
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> paths;
  if (glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<std::string> head_trace_paths(const std::string& source) {
  std::error_code ec;
  if (!fs::is_directory(source, ec)) return expand_glob(source);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(source)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 9 &&
        name.ends_with(".head.csv")) {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

FovModel crowd_build(const std::vector<std::string>& head_paths,
                     const StreamConfig& config) {
  if (head_paths.empty()) throw InvalidInput("no head traces to build from");
  std::vector<HeadTrace> traces;
  traces.reserve(head_paths.size());
  for (const auto& p : head_paths) traces.push_back(load_head_trace(p));
  return empirical_fov_model(traces, config);
}

void write_decisions_csv(std::ostream& out, const SessionResult& r) {
  out << "chunk,gamma,tile_min,tile_max,protected_tiles,viewed_rate,"
         "download_start,download_end,play,stall_to_date\n";
  for (size_t k = 0; k < r.gamma.size(); ++k) {
    const auto [lo, hi] =
        std::minmax_element(r.tile_rates[k].begin(), r.tile_rates[k].end());
    out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", k + 1, r.gamma[k],
                       *lo, *hi, r.protected_size[k], r.viewed_rate[k],
                       r.download_start[k], r.download_end[k], r.play[k],
                       r.stall_to_date[k]);
  }
}

json summary_json(const SessionResult& r, const StreamConfig& config,
                  const SessionOptions& options, bool include_timing) {
  return {{"schema_version", kSummarySchemaVersion},
          {"policy", to_string(r.policy)},
          {"chunks", r.gamma.size()},
          {"qoe", qoe_json(r.qoe)},
          {"robust_qoe", qoe_json(r.robust_qoe)},
          {"stall", r.stall},
          {"guaranteed_rate_p95", r.guaranteed_rate_p95},
          {"mean_viewed_rate", mean_of(r.viewed_rate)},
          {"mean_decision_ms", include_timing ? r.mean_decision_ms : 0.0},
          {"fallbacks", r.fallbacks},
          {"perturbations",
           {{"bw_error", options.bw_error},
            {"fov_fidelity", options.fov_fidelity},
            {"seed", options.seed},
            {"mid_chunk_floor", options.mid_chunk_floor}}},
          {"config", config_to_json(config)}};
}

void write_run_outputs(const std::string& out_dir, const SessionResult& result,
                       const StreamConfig& config,
                       const SessionOptions& options, bool include_timing) {
  fs::create_directories(out_dir);
  std::ostringstream csv;
  write_decisions_csv(csv, result);
  write_atomically(fs::path(out_dir) / "decisions.csv", csv.str());
  write_atomically(
      fs::path(out_dir) / "summary.json",
      summary_json(result, config, options, include_timing).dump(2) + "\n");
}

SyntheticSpec default_synthetic_spec(const StreamConfig& config) {
  SyntheticSpec spec;
  spec.bandwidth.profile = BandwidthProfile::kRandomWalk;
  spec.bandwidth.mbps = 14.5;
  spec.bandwidth.min_mbps = 9.0;
  spec.bandwidth.max_mbps = 20.0;
  // Same range when switched to the two-state profile.
  spec.bandwidth.high_mbps = 20.0;
  spec.bandwidth.low_mbps = 9.0;
  spec.bandwidth.high_dwell_s = 8.0;
  spec.bandwidth.low_dwell_s = 8.0;
  spec.head.profile = HeadProfile::kHotspotMixture;
  spec.head.hotspots = {{0.0, 0.0, 0.6}, {90.0, 10.0, 0.4}};
  spec.head.jitter_deg = 10.0;
  spec.head.switch_prob = 0.15;
  spec.head.chunk_seconds = config.L;
  spec.crowd_users = 40;
  return spec;
}

Scenario make_scenario(const SyntheticSpec& spec, const StreamConfig& config,
                       uint64_t seed) {
  const double video = config.K * config.L;
  Scenario s;
  BandwidthSynthParams bw = spec.bandwidth;
  bw.seed = seed;
  s.bandwidth = synth_bandwidth(bw, 3.0 * video + 60.0);
  HeadSynthParams head = spec.head;
  head.chunk_seconds = config.L;
  head.seed = seed * 1000003ULL;
  s.head = synth_head(head, video + config.L);
  std::vector<HeadTrace> crowd;
  for (int u = 0; u < spec.crowd_users; ++u) {
    head.seed = seed * 1000003ULL + 1 + u;
    crowd.push_back(synth_head(head, video + config.L));
  }
  s.crowd = empirical_fov_model(crowd, config);
  return s;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kEta:
      return "eta";
    case SweepAxis::kWindow:
      return "window";
    case SweepAxis::kBwError:
      return "bw_error";
    case SweepAxis::kFovFidelity:
      return "fov_fidelity";
    case SweepAxis::kAlpha:
      return "alpha";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::kEta, SweepAxis::kWindow, SweepAxis::kBwError,
                      SweepAxis::kFovFidelity, SweepAxis::kAlpha}) {
    if (name == to_string(a)) return a;
  }
  throw InvalidInput("unknown sweep axis: " + name);
}

void apply_axis(SweepAxis axis, double value, StreamConfig& config,
                SessionOptions& options) {
  switch (axis) {
    case SweepAxis::kEta:
      config.eta = value;
      break;
    case SweepAxis::kWindow:
      if (value < 1.0 || value != std::floor(value)) {
        throw InvalidInput("window values must be positive integers");
      }
      config.W = std::min(static_cast<int>(value), config.K);
      break;
    case SweepAxis::kBwError:
      options.bw_error = value;
      break;
    case SweepAxis::kFovFidelity:
      options.fov_fidelity = value;
      break;
    case SweepAxis::kAlpha:
      config.alpha = value;
      break;
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw InvalidInput("sweep needs at least one value");
  if (spec.seeds.empty()) throw InvalidInput("sweep needs at least one seed");
  if (spec.policies.empty()) {
    throw InvalidInput("sweep needs at least one policy");
  }
  const bool synthetic = !spec.bandwidth.has_value();
  if (!synthetic && (spec.users.empty() || !spec.crowd)) {
    throw InvalidInput("recorded sweeps need head traces and a crowd model");
  }
  std::vector<Scenario> scenarios;
  if (synthetic) {
    for (uint64_t seed : spec.seeds) {
      scenarios.push_back(make_scenario(spec.synthetic, spec.config, seed));
    }
  }
  const int users = synthetic ? 1 : static_cast<int>(spec.users.size());

  struct Cell {
    int policy, value, seed, user;
  };
  std::vector<Cell> cells;
  for (int p = 0; p < static_cast<int>(spec.policies.size()); ++p) {
    for (int v = 0; v < static_cast<int>(spec.values.size()); ++v) {
      for (int s = 0; s < static_cast<int>(spec.seeds.size()); ++s) {
        for (int u = 0; u < users; ++u) cells.push_back({p, v, s, u});
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      try {
        StreamConfig config = spec.config;
        SessionOptions options = spec.options;
        options.lp_dump = nullptr;
        options.seed = spec.seeds[cell.seed];
        apply_axis(spec.axis, spec.values[cell.value], config, options);
        config.validate();
        const BandwidthTrace& bw =
            synthetic ? scenarios[cell.seed].bandwidth : *spec.bandwidth;
        const HeadTrace& head =
            synthetic ? scenarios[cell.seed].head : spec.users[cell.user];
        const FovModel& crowd =
            synthetic ? scenarios[cell.seed].crowd : *spec.crowd;
        const Policy policy = spec.policies[cell.policy];
        const SessionResult r =
            simulate_session(config, bw, head, crowd, policy, options);
        SweepRow& row = rows[i];
        row.policy = policy;
        row.value = spec.values[cell.value];
        row.seed = spec.seeds[cell.seed];
        row.user = cell.user;
        row.qoe = r.qoe;
        row.robust_qoe = r.robust_qoe.total;
        row.stall = r.stall;
        row.guaranteed_rate_p95 = r.guaranteed_rate_p95;
        row.mean_viewed_rate = mean_of(r.viewed_rate);
        row.mean_protected_tiles = mean_of(std::vector<double>(
            r.protected_size.begin(), r.protected_size.end()));
        row.min_viewed_rate =
            *std::min_element(r.viewed_rate.begin(), r.viewed_rate.end());
        row.mean_decision_ms = spec.include_timing ? r.mean_decision_ms : 0.0;
        row.fallbacks = r.fallbacks;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::clamp(spec.jobs, 1, static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

namespace {

const std::vector<std::string> kMetricNames = {
    "qoe",        "utility_sum", "stall_penalty",       "variation_penalty",
    "robust_qoe", "stall",       "guaranteed_rate_p95", "mean_viewed_rate",
    "min_viewed_rate", "mean_protected_tiles", "mean_decision_ms",
    "fallbacks"};

std::vector<double> metrics_of(const SweepRow& r) {
  return {r.qoe.total,      r.qoe.utility_sum, r.qoe.stall_penalty,
          r.qoe.variation_penalty, r.robust_qoe, r.stall,
          r.guaranteed_rate_p95, r.mean_viewed_rate, r.min_viewed_rate,
          r.mean_protected_tiles, r.mean_decision_ms,
          static_cast<double>(r.fallbacks)};
}

}  // namespace

void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     const std::vector<SweepRow>& rows) {
  out << "policy,axis,value,seed,user";
  for (const auto& m : kMetricNames) out << ',' << m;
  out << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{}", to_string(r.policy), to_string(axis),
                       r.value, r.seed, r.user);
    for (double m : metrics_of(r)) out << fmt::format(",{}", m);
    out << '\n';
  }
}

void write_agg_csv(std::ostream& out, SweepAxis axis,
                   const std::vector<SweepRow>& rows) {
  out << "policy,axis,value,n";
  for (const auto& m : kMetricNames) out << ',' << m << "_mean," << m << "_std";
  out << '\n';
  // Keyed by first appearance so the order follows the sweep order.
  std::vector<std::pair<Policy, double>> keys;
  std::map<std::pair<int, double>, std::vector<std::vector<double>>> groups;
  for (const auto& r : rows) {
    const std::pair<int, double> key{static_cast<int>(r.policy), r.value};
    if (!groups.count(key)) keys.push_back({r.policy, r.value});
    groups[key].push_back(metrics_of(r));
  }
  for (const auto& [policy, value] : keys) {
    const auto& g = groups[{static_cast<int>(policy), value}];
    out << fmt::format("{},{},{},{}", to_string(policy), to_string(axis), value,
                       g.size());
    for (size_t m = 0; m < kMetricNames.size(); ++m) {
      double sum = 0.0;
      for (const auto& row : g) sum += row[m];
      const double mean = sum / g.size();
      double sq = 0.0;
      for (const auto& row : g) sq += (row[m] - mean) * (row[m] - mean);
      const double sd = g.size() > 1 ? std::sqrt(sq / (g.size() - 1)) : 0.0;
      out << fmt::format(",{},{}", mean, sd);
    }
    out << '\n';
  }
}

OracleInstance oracle_instance_from_json(const json& j) {
  OracleInstance o;
  RelaxedInstance& in = o.instance;
  try {
    o.ladder = j.at("ladder").get<std::vector<double>>();
    const RateLadder ladder(o.ladder);
    in.alpha_size = j.at("alpha_size").get<std::vector<int>>();
    if (j.contains("complement_size")) {
      in.complement_size = j.at("complement_size").get<std::vector<int>>();
    } else {
      const int tiles = j.at("tiles").get<int>();
      for (int a : in.alpha_size) in.complement_size.push_back(tiles - a);
    }
    const auto& bw = j.at("bandwidth");
    if (bw.is_number()) {
      in.bandwidth.assign(in.alpha_size.size(), bw.get<double>());
    } else {
      in.bandwidth = bw.get<std::vector<double>>();
    }
    in.base_rate = ladder.base();
    in.top_rate = ladder.top();
    in.chunk_seconds = j.value("chunk_seconds", in.chunk_seconds);
    in.lambda = j.value("lambda", in.lambda);
    in.eta = j.value("eta", in.eta);
    in.utility_segments = j.value("utility_segments", in.utility_segments);
    in.buffer_chunks = j.value("buffer_chunks", 1 << 20);
    in.startup_delay = j.value("startup_delay", in.startup_delay);
    in.origin.start = j.value("start", 0.0);
    if (j.contains("committed_play")) {
      in.origin.committed_play =
          j.at("committed_play").get<std::vector<double>>();
    }
    if (j.contains("previous_gamma")) {
      in.previous_gamma = j.at("previous_gamma").get<double>();
    }
    in.utility = utility_from_fields(j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad oracle instance: ") + e.what());
  }
  in.validate();
  return o;
}

SandwichReport oracle_sandwich(const OracleInstance& oracle,
                               std::optional<double> grid_step) {
  const RateLadder ladder(oracle.ladder);
  const RelaxedInstance& in = oracle.instance;
  SandwichReport rep;
  const RobustPlan plan = plan_window(in, ladder);
  rep.relaxed = plan.relaxed.objective;
  rep.gamma_star = plan.relaxed.gamma_star;
  rep.gamma_robust = plan.gamma;
  rep.robust = window_objective(in, plan.gamma);
  rep.gap_bound = gap_bound(ladder, in.count(), in.utility);
  try {
    rep.discrete = brute_force_discrete(in, ladder).qoe;
  } catch (const InvalidInput&) {
  }
  if (grid_step) {
    try {
      rep.grid = grid_search_relaxed(in, *grid_step).qoe;
    } catch (const InvalidInput&) {
    }
  }
  return rep;
}

}  // namespace robust360
