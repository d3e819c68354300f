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

#include "robust360/simplex.h"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace robust360 {
namespace {

using Status = LpResult::Status;

TEST(Simplex, SmallMaximization) {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  ->  (3, 1), 11.
  LinearProgram lp;
  const int x = lp.add_variable("x", 3);
  const int y = lp.add_variable("y", 2);
  lp.add_row("a", {{x, 1}, {y, 1}}, 4);
  lp.add_row("b", {{x, 1}, {y, 3}}, 6);
  lp.add_row("c", {{x, 1}}, 3);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, 11.0, 1e-9);
  EXPECT_NEAR(r.x[x], 3.0, 1e-9);
  EXPECT_NEAR(r.x[y], 1.0, 1e-9);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne) {
  // max -x - y, x + y >= 2, x <= 5  ->  -2.
  LinearProgram lp;
  const int x = lp.add_variable("x", -1);
  const int y = lp.add_variable("y", -1);
  lp.add_row("lo", {{x, -1}, {y, -1}}, -2);
  lp.add_row("hi", {{x, 1}}, 5);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, -2.0, 1e-9);
  EXPECT_NEAR(r.x[x] + r.x[y], 2.0, 1e-9);
}

TEST(Simplex, Infeasible) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  lp.add_row("neg", {{x, 1}}, -1);
  EXPECT_EQ(solve_lp(lp).status, Status::kInfeasible);

  LinearProgram lp2;
  const int a = lp2.add_variable("a", 1);
  lp2.add_row("ge3", {{a, -1}}, -3);
  lp2.add_row("le2", {{a, 1}}, 2);
  EXPECT_EQ(solve_lp(lp2).status, Status::kInfeasible);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  const int y = lp.add_variable("y", 0);
  lp.add_row("r", {{x, -1}, {y, 1}}, 1);
  EXPECT_EQ(solve_lp(lp).status, Status::kUnbounded);
}

TEST(Simplex, BealeCyclingExample) {
  // Cycles under the textbook largest-coefficient rule; optimum 5/4.
  LinearProgram lp;
  const int x4 = lp.add_variable("x4", 0.75);
  const int x5 = lp.add_variable("x5", -20);
  const int x6 = lp.add_variable("x6", 0.5);
  const int x7 = lp.add_variable("x7", -6);
  lp.add_row("r1", {{x4, 0.25}, {x5, -8}, {x6, -1}, {x7, 9}}, 0);
  lp.add_row("r2", {{x4, 0.5}, {x5, -12}, {x6, -0.5}, {x7, 3}}, 0);
  lp.add_row("r3", {{x6, 1}}, 1);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, Status::kOptimal);
  EXPECT_NEAR(r.objective, 1.25, 1e-9);
}

TEST(Simplex, IterationLimit) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  const int y = lp.add_variable("y", 1);
  lp.add_row("a", {{x, 1}}, 1);
  lp.add_row("b", {{y, 1}}, 1);
  EXPECT_EQ(solve_lp(lp, 1).status, Status::kIterationLimit);
}

TEST(Simplex, DumpFormat) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 2);
  lp.add_row("cap", {{x, 1.5}}, 3);
  std::ostringstream out;
  write_lp(out, lp);
  const std::string s = out.str();
  EXPECT_NE(s.find("var 0 x obj 2"), std::string::npos) << s;
  EXPECT_NE(s.find("row cap: 1.5*x <= 3"), std::string::npos) << s;
}

// Vertex enumeration: every choice of n tight constraints among the rows and
// the bounds x_i >= 0, solved by Gaussian elimination.
struct Dense {
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<double> c;
};

bool solve_square(std::vector<std::vector<double>> M, std::vector<double> v,
                  std::vector<double>& out) {
  const int n = static_cast<int>(v.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    if (std::abs(M[piv][col]) < 1e-10) return false;
    std::swap(M[piv], M[col]);
    std::swap(v[piv], v[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = M[r][col] / M[col][col];
      for (int k = col; k < n; ++k) M[r][k] -= f * M[col][k];
      v[r] -= f * v[col];
    }
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = v[i] / M[i][i];
  return true;
}

std::optional<double> vertex_optimum(const Dense& d) {
  const int n = static_cast<int>(d.c.size());
  const int m = static_cast<int>(d.b.size());
  std::vector<std::vector<double>> rows = d.A;
  std::vector<double> rhs = d.b;
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const int total = m + n;
  std::optional<double> best;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<double>> M;
    std::vector<double> v;
    for (int i : pick) {
      M.push_back(rows[i]);
      v.push_back(rhs[i]);
    }
    std::vector<double> x;
    if (solve_square(M, v, x)) {
      bool feasible = true;
      for (int r = 0; r < total && feasible; ++r) {
        double lhs = 0.0;
        for (int i = 0; i < n; ++i) lhs += rows[r][i] * x[i];
        feasible = lhs <= rhs[r] + 1e-7;
      }
      if (feasible) {
        double obj = 0.0;
        for (int i = 0; i < n; ++i) obj += d.c[i] * x[i];
        if (!best || obj > *best) best = obj;
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == total - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

TEST(SimplexProperty, MatchesVertexEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-3, 3), pos(0.1, 3);
  int optimal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 4);
    Dense d;
    LinearProgram lp;
    for (int i = 0; i < n; ++i) {
      d.c.push_back(coef(rng));
      lp.add_variable("x" + std::to_string(i), d.c.back());
    }
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(n);
      std::vector<std::pair<int, double>> terms;
      for (int i = 0; i < n; ++i) {
        row[i] = coef(rng);
        terms.push_back({i, row[i]});
      }
      d.A.push_back(row);
      d.b.push_back(rng() % 4 == 0 ? -pos(rng) : pos(rng));
      lp.add_row("r" + std::to_string(r), terms, d.b.back());
    }
    // A box keeps the problem bounded so every feasible case has a vertex
    // optimum.
    for (int i = 0; i < n; ++i) {
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      d.A.push_back(row);
      d.b.push_back(10.0);
      lp.add_row("box" + std::to_string(i), {{i, 1.0}}, 10.0);
    }
    const auto r = solve_lp(lp);
    const auto expected = vertex_optimum(d);
    if (!expected) {
      EXPECT_EQ(r.status, Status::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(r.status, Status::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, *expected, 1e-7) << "trial " << trial;
    for (int row = 0; row < static_cast<int>(d.b.size()); ++row) {
      double lhs = 0.0;
      for (int i = 0; i < n; ++i) lhs += d.A[row][i] * r.x[i];
      EXPECT_LE(lhs, d.b[row] + 1e-7);
    }
    for (double xi : r.x) EXPECT_GE(xi, -1e-9);
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
}  // namespace robust360
