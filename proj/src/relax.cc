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

#include "robust360/relax.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "robust360/errors.h"

namespace robust360 {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

std::string indexed(const char* stem, int j) {
  return std::string(stem) + std::to_string(j);
}

struct BuiltLp {
  LinearProgram lp;
  std::vector<int> x;
  double constant = 0.0;  // QoE = LP objective + constant
};

BuiltLp build(const RelaxedInstance& instance);

}  // namespace

void RelaxedInstance::validate() const {
  const int n = count();
  require(n >= 1, "window must contain at least one chunk");
  require(static_cast<int>(complement_size.size()) == n &&
              static_cast<int>(bandwidth.size()) == n,
          "per-chunk vectors differ in length");
  const int tiles = alpha_size[0] + complement_size[0];
  for (int j = 0; j < n; ++j) {
    require(alpha_size[j] >= 1, "alpha set must be nonempty");
    require(complement_size[j] >= 0, "complement size must be nonnegative");
    require(alpha_size[j] + complement_size[j] == tiles,
            "tile count differs across chunks");
    require(bandwidth[j] > 0.0, "bandwidth must be positive");
  }
  require(base_rate > 0.0 && top_rate >= base_rate, "bad rate bounds");
  require(chunk_seconds > 0.0, "chunk duration must be positive");
  require(lambda >= 0.0 && eta >= 0.0, "weights must be nonnegative");
  require(utility_segments >= 1, "need at least one utility segment");
  require(buffer_chunks >= 1, "buffer must hold at least one chunk");
  require(startup_delay >= 0.0, "startup delay must be nonnegative");
  for (size_t i = 1; i < origin.committed_play.size(); ++i) {
    require(origin.committed_play[i] >= origin.committed_play[i - 1],
            "committed play times must be nondecreasing");
  }
}

std::vector<LinearSegment> linearize_utility(const UtilitySpec& utility,
                                             double lo, double hi,
                                             int segment_count) {
  require(segment_count >= 1, "segment count must be at least 1");
  require(hi >= lo, "empty linearization range");
  if (utility.kind() == UtilitySpec::Kind::kLinear) return {{1.0, 0.0}};
  if (hi == lo) return {{0.0, utility(lo)}};

  std::vector<LinearSegment> segments;
  const double width = (hi - lo) / segment_count;
  for (int s = 0; s < segment_count; ++s) {
    const double x0 = lo + s * width;
    const double x1 = s + 1 == segment_count ? hi : x0 + width;
    const double slope = (utility(x1) - utility(x0)) / (x1 - x0);
    segments.push_back({slope, utility(x0) - slope * x0});
  }
  for (size_t s = 1; s < segments.size(); ++s) {
    require(segments[s].slope <= segments[s - 1].slope + 1e-12,
            "utility is not concave on the rate range");
  }
  return segments;
}

std::vector<double> download_seconds(const RelaxedInstance& instance,
                                     std::span<const double> gamma) {
  require(static_cast<int>(gamma.size()) == instance.count(),
          "gamma length must equal the window size");
  std::vector<double> d(gamma.size());
  for (size_t j = 0; j < gamma.size(); ++j) {
    const double mbit = instance.chunk_seconds *
                        (instance.alpha_size[j] * gamma[j] +
                         instance.complement_size[j] * instance.base_rate);
    d[j] = mbit / instance.bandwidth[j];
  }
  return d;
}

Timeline window_timeline(const RelaxedInstance& instance,
                         std::span<const double> gamma) {
  const auto d = download_seconds(instance, gamma);
  return simulate_timeline(d, instance.timeline_params(), instance.origin);
}

QoEBreakdown window_score(const RelaxedInstance& instance,
                          std::span<const double> gamma) {
  const Timeline tl = window_timeline(instance, gamma);
  return score_rates(gamma, tl.stall, instance.utility, instance.lambda,
                     instance.eta, instance.previous_gamma);
}

double window_objective(const RelaxedInstance& instance,
                        std::span<const double> gamma) {
  return window_score(instance, gamma).total;
}

// Variables are shifted so every bound is x >= 0: x_j = gamma_j - R0 and
// u_j = (linearized utility) - U(R0). Times stay absolute.
LinearProgram build_relaxed_lp(const RelaxedInstance& instance) {
  return build(instance).lp;
}

namespace {

BuiltLp build(const RelaxedInstance& instance) {
  instance.validate();
  const int n = instance.count();
  const int committed = static_cast<int>(instance.origin.committed_play.size());
  const double R0 = instance.base_rate;
  const double span = instance.top_rate - R0;
  const double L = instance.chunk_seconds;
  const int B = instance.buffer_chunks;
  const auto segments = linearize_utility(instance.utility, R0,
                                          instance.top_rate,
                                          instance.utility_segments);
  const bool linear = instance.utility.kind() == UtilitySpec::Kind::kLinear;
  double u0 = segments[0](R0);
  for (const auto& s : segments) u0 = std::min(u0, s(R0));

  BuiltLp built;
  LinearProgram& lp = built.lp;
  std::vector<int> x(n), t(n, -1), p(n), v(n, -1), u(n, -1);
  for (int j = 0; j < n; ++j) {
    x[j] = lp.add_variable(indexed("x", j + 1), linear ? 1.0 : 0.0);
    if (j + 1 < n) t[j] = lp.add_variable(indexed("t", j + 1));
    p[j] = lp.add_variable(indexed("p", j + 1));
    if (!linear) u[j] = lp.add_variable(indexed("u", j + 1), 1.0);
    if (instance.eta > 0.0 && (j > 0 || instance.previous_gamma)) {
      v[j] = lp.add_variable(indexed("v", j + 1), -instance.eta);
    }
  }
  lp.set_objective(p[n - 1], -instance.lambda);
  const double nominal =
      committed == 0 ? instance.startup_delay + (n - 1) * L
                     : instance.origin.committed_play.back() + n * L;
  built.constant = n * (linear ? R0 : u0) + instance.lambda * nominal;

  const double t0 = effective_start(instance.origin, B);
  auto play_of = [&](int chunk, std::vector<std::pair<int, double>>& terms,
                     double& constant) {
    if (chunk <= committed) {
      constant = instance.origin.committed_play[chunk - 1];
    } else {
      terms.push_back({p[chunk - committed - 1], 1.0});
    }
  };

  for (int j = 0; j < n; ++j) {
    const int g = committed + j + 1;
    const double size_scale = L / instance.bandwidth[j];
    const double coef = size_scale * instance.alpha_size[j];
    const double base = size_scale * (instance.alpha_size[j] +
                                      instance.complement_size[j]) * R0;

    lp.add_row(indexed("cap", j + 1), {{x[j], 1.0}}, span);

    // Download end of chunk j: previous start + d_j, expressed for both the
    // next start and this chunk's play time.
    for (int target : {t[j], p[j]}) {
      if (target < 0) continue;
      std::vector<std::pair<int, double>> terms{{x[j], coef}, {target, -1.0}};
      double rhs = -base;
      if (j == 0) {
        rhs -= t0;
      } else {
        terms.push_back({t[j - 1], 1.0});
      }
      lp.add_row(indexed(target == t[j] ? "dl_t" : "dl_p", j + 1),
                 std::move(terms), rhs);
    }

    if (g == 1) {
      lp.add_row("startup", {{p[j], -1.0}}, -instance.startup_delay);
    } else {
      std::vector<std::pair<int, double>> terms{{p[j], -1.0}};
      double prev = 0.0;
      play_of(g - 1, terms, prev);
      lp.add_row(indexed("order", j + 1), std::move(terms), -prev - L);
    }

    if (t[j] >= 0 && g - B >= 1) {
      std::vector<std::pair<int, double>> terms{{t[j], -1.0}};
      double held = 0.0;
      play_of(g - B, terms, held);
      lp.add_row(indexed("buffer", j + 1), std::move(terms), -held);
    }

    if (v[j] >= 0) {
      if (j == 0) {
        const double prev = *instance.previous_gamma - R0;
        lp.add_row("var_up1", {{x[0], 1.0}, {v[0], -1.0}}, prev);
        lp.add_row("var_dn1", {{x[0], -1.0}, {v[0], -1.0}}, -prev);
      } else {
        lp.add_row(indexed("var_up", j + 1),
                   {{x[j], 1.0}, {x[j - 1], -1.0}, {v[j], -1.0}}, 0.0);
        lp.add_row(indexed("var_dn", j + 1),
                   {{x[j], -1.0}, {x[j - 1], 1.0}, {v[j], -1.0}}, 0.0);
      }
    }

    if (u[j] >= 0) {
      for (size_t s = 0; s < segments.size(); ++s) {
        lp.add_row("util" + std::to_string(j + 1) + "_" + std::to_string(s),
                   {{u[j], 1.0}, {x[j], -segments[s].slope}},
                   segments[s](R0) - u0);
      }
    }
  }
  built.x = x;
  return built;
}

}  // namespace

RelaxedSolution solve_relaxed(const RelaxedInstance& instance,
                              std::ostream* lp_dump) {
  const BuiltLp built = build(instance);
  const LinearProgram& lp = built.lp;
  if (lp_dump) write_lp(*lp_dump, lp);
  const LpResult result = solve_lp(lp);
  if (result.status != LpResult::Status::kOptimal) {
    std::ostringstream msg;
    msg << "relaxed LP " << to_string(result.status) << " after "
        << result.iterations << " pivots\n";
    write_lp(msg, lp);
    if (!result.x.empty()) {
      msg << "iterate:";
      for (double value : result.x) msg << ' ' << value;
      msg << '\n';
    }
    throw InternalError(msg.str());
  }

  const int n = instance.count();
  const double R0 = instance.base_rate;
  RelaxedSolution sol;
  sol.gamma_star.resize(n);
  for (int j = 0; j < n; ++j) {
    sol.gamma_star[j] =
        std::clamp(R0 + result.x[built.x[j]], R0, instance.top_rate);
  }
  sol.objective = result.objective + built.constant;
  sol.timeline_star = window_timeline(instance, sol.gamma_star);
  sol.exact_objective = window_objective(instance, sol.gamma_star);
  sol.iterations = result.iterations;
  return sol;
}

}  // namespace robust360
