// Copyright 2026 The cubeflag Authors
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

// The semidefinite program (P), its SDPA sparse serialization, the external
// solver subprocess and the solver's solution file.

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cubeflag/table.hpp"

namespace cubeflag {

// Minimize v subject to v - sum_b <A_H^b, M_b> - slack_H = d(H) for every H,
// with M_b PSD and slack_H >= 0. SDPA blocks: 1 is the 1x1 block of v, 2..t+1
// are the type blocks, t+2 is the diagonal slack block.
struct SdpProblem {
  TableSet tables;

  std::size_t constraint_count() const { return tables.columns(); }
  std::size_t type_count() const { return tables.tables.size(); }
  int slack_block() const { return static_cast<int>(type_count()) + 2; }
};

SdpProblem build_program(TableSet tables);

// Deterministic SDPA sparse text with exact 17-significant-digit decimals.
std::string emit_sdpa(const SdpProblem& problem);

struct SolverSolution {
  double v = 0;
  std::vector<Eigen::MatrixXd> blocks;  // one per type
  Eigen::VectorXd slacks;
  Eigen::VectorXd y;
  std::string status;
  int exit_code = 0;
  double primal_objective = 0;
  double dual_objective = 0;
  // max_H |v - sum <A_H, M> - slack_H - d(H)|
  double residual = 0;
  // max_H (d(H) + c_H(M)) evaluated in floating point
  double float_bound = 0;
};

// Reads a CSDP-style solution: the y vector, then "matno blkno i j value"
// lines (matno 1 = Z, matno 2 = X).
SolverSolution parse_solution(const SdpProblem& problem, std::string_view text);

struct SolverRun {
  std::filesystem::path solver;
  std::filesystem::path workdir;
  std::chrono::seconds timeout{600};
};

// Writes problem.dat-s, runs `solver problem.dat-s solution.sol` with output
// captured in solver.log, then parses the solution. Exit status 0 is success
// and 3 is accepted as partial success; everything else throws.
SolverSolution run_solver(const SdpProblem& problem, const SolverRun& run);

// Human-readable meaning of a CSDP-convention exit status.
std::string solver_status_text(int code);

}  // namespace cubeflag
