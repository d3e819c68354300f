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

#ifndef ROBUST360_SIMPLEX_H_
#define ROBUST360_SIMPLEX_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace robust360 {

// maximize c'x subject to A x <= b, x >= 0. Rows are stored sparsely so the
// builder stays cheap; the solver densifies them into its tableau.
class LinearProgram {
 public:
  int add_variable(std::string name, double objective = 0.0);
  // Adds sum(coef * x[var]) <= rhs and returns the row index.
  int add_row(std::string name, std::vector<std::pair<int, double>> terms,
              double rhs);
  void set_objective(int var, double coefficient);

  int variable_count() const { return static_cast<int>(objective_.size()); }
  int row_count() const { return static_cast<int>(rhs_.size()); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<std::string>& variable_names() const { return var_names_; }
  const std::vector<std::string>& row_names() const { return row_names_; }
  const std::vector<std::vector<std::pair<int, double>>>& rows() const {
    return rows_;
  }
  const std::vector<double>& rhs() const { return rhs_; }

 private:
  std::vector<double> objective_;
  std::vector<std::string> var_names_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
};

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

const char* to_string(LpResult::Status status);

// Two-phase dense tableau simplex with Bland's rule (smallest-index entering
// column, ratio ties broken by smallest basic index), so it cannot cycle.
LpResult solve_lp(const LinearProgram& lp, int max_iterations = 200000);

// Plain-text dump, one line per variable then one per row:
//   var <index> <name> obj <coef>
//   row <name>: <coef>*<var> ... <= <rhs>
void write_lp(std::ostream& out, const LinearProgram& lp);

}  // namespace robust360

#endif  // ROBUST360_SIMPLEX_H_
