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

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace robust360 {
namespace {

constexpr double kEps = 1e-9;

class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : m_(lp.row_count()),
        n_(lp.variable_count()),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (const auto& [var, coef] : lp.rows()[i]) d_[i][var] += coef;
      d_[i][n_] = -1.0;  // artificial column
      d_[i][n_ + 1] = lp.rhs()[i];
      basis_[i] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_[m_][j] = -lp.objective()[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  LpResult solve(int max_iterations) {
    LpResult result;
    max_iterations_ = max_iterations;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      const auto phase1 = run(m_ + 1, /*allow_artificial=*/true);
      if (phase1 == LpResult::Status::kIterationLimit) {
        return finish(result, phase1);
      }
      if (d_[m_ + 1][n_ + 1] < -kEps) {
        return finish(result, LpResult::Status::kInfeasible);
      }
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (std::abs(d_[i][j]) > std::abs(d_[i][s])) s = j;
        }
        pivot(i, s);
      }
    }
    const auto phase2 = run(m_, /*allow_artificial=*/false);
    if (phase2 != LpResult::Status::kOptimal) return finish(result, phase2);

    result.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < n_) result.x[basis_[i]] = d_[i][n_ + 1];
    }
    result.objective = d_[m_][n_ + 1];
    return finish(result, LpResult::Status::kOptimal);
  }

 private:
  LpResult& finish(LpResult& result, LpResult::Status status) {
    result.status = status;
    result.iterations = iterations_;
    return result;
  }

  void pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= 0.0) continue;
      const double factor = d_[i][s] * inv;
      for (int j = 0; j < n_ + 2; ++j) d_[i][j] -= d_[r][j] * factor;
      d_[i][s] = -factor;
    }
    for (int j = 0; j < n_ + 2; ++j) d_[r][j] *= inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
    ++iterations_;
  }

  LpResult::Status run(int objective_row, bool allow_artificial) {
    while (true) {
      if (iterations_ >= max_iterations_) {
        return LpResult::Status::kIterationLimit;
      }
      // Bland: lowest variable id among improving columns.
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (!allow_artificial && nonbasis_[j] == -1) continue;
        if (d_[objective_row][j] >= -kEps) continue;
        if (s == -1 || nonbasis_[j] < nonbasis_[s]) s = j;
      }
      if (s == -1) return LpResult::Status::kOptimal;

      int r = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        const double ratio = d_[i][n_ + 1] / d_[i][s];
        const double tol = 1e-12 * std::max(1.0, std::abs(best));
        if (r == -1 || ratio < best - tol ||
            (ratio <= best + tol && basis_[i] < basis_[r])) {
          r = i;
          best = std::min(best, ratio);
        }
      }
      if (r == -1) return LpResult::Status::kUnbounded;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> basis_;
  std::vector<int> nonbasis_;
  std::vector<std::vector<double>> d_;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

}  // namespace

int LinearProgram::add_variable(std::string name, double objective) {
  objective_.push_back(objective);
  var_names_.push_back(std::move(name));
  return static_cast<int>(objective_.size()) - 1;
}

int LinearProgram::add_row(std::string name,
                           std::vector<std::pair<int, double>> terms,
                           double rhs) {
  rows_.push_back(std::move(terms));
  rhs_.push_back(rhs);
  row_names_.push_back(std::move(name));
  return static_cast<int>(rhs_.size()) - 1;
}

void LinearProgram::set_objective(int var, double coefficient) {
  objective_[var] = coefficient;
}

const char* to_string(LpResult::Status status) {
  switch (status) {
    case LpResult::Status::kOptimal:
      return "optimal";
    case LpResult::Status::kInfeasible:
      return "infeasible";
    case LpResult::Status::kUnbounded:
      return "unbounded";
    case LpResult::Status::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& lp, int max_iterations) {
  Tableau tableau(lp);
  return tableau.solve(max_iterations);
}

void write_lp(std::ostream& out, const LinearProgram& lp) {
  const auto old_precision = out.precision(17);
  out << "# maximize c'x subject to A x <= b, x >= 0\n";
  out << "vars " << lp.variable_count() << "\n";
  for (int j = 0; j < lp.variable_count(); ++j) {
    out << "var " << j << ' ' << lp.variable_names()[j] << " obj "
        << lp.objective()[j] << '\n';
  }
  out << "rows " << lp.row_count() << "\n";
  for (int i = 0; i < lp.row_count(); ++i) {
    out << "row " << lp.row_names()[i] << ':';
    for (const auto& [var, coef] : lp.rows()[i]) {
      out << ' ' << coef << '*' << lp.variable_names()[var];
    }
    out << " <= " << lp.rhs()[i] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace robust360
