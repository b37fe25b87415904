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

// End-to-end stages over an artifact directory: family.txt, flags.txt,
// tables.csv, problem.dat-s, solution.sol, solver.log, certificate.json,
// manifest.json.

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubeflag/certify.hpp"
#include "cubeflag/midlayers.hpp"
#include "cubeflag/sdp.hpp"

namespace cubeflag {

enum class ProblemKind { kCubeC4, kCubeC6, kMidlayers };

ProblemKind parse_problem_kind(const std::string& text);
std::string problem_kind_name(ProblemKind kind);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::kCubeC4;
  int s = 3;
  int m = 4;
  std::vector<std::string> types{"p0", "p1"};  // cube problems: "v" or "p0","p1"
  std::optional<int> flag_dim;                  // defaults: 1 for "v", 2 for pairs
  std::optional<std::filesystem::path> shapes;  // midlayers; built-in shapes otherwise
  MidGroup group = MidGroup::kSymmetric;
  std::filesystem::path out = "out";
  std::filesystem::path solver;
  Integer max_den = 1000000;
  std::chrono::seconds timeout{600};
  std::optional<double> assert_bound;

  // Throws bad input for inconsistent parameters, including s < 2k - r.
  void validate() const;
  std::string describe() const;
};

// Plain "key = value" lines; '#' starts a comment. Known keys: solver_path,
// max_den, jobs, timeout.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

struct StageReport {
  std::string stage;
  std::filesystem::path artifact;
  std::string summary;
};

// Each stage reads its inputs from spec.out and writes its artifact there.
StageReport stage_enumerate(const ProblemSpec& spec);
StageReport stage_tables(const ProblemSpec& spec);
StageReport stage_emit(const ProblemSpec& spec);
StageReport stage_solve(const ProblemSpec& spec);
StageReport stage_certify(const ProblemSpec& spec);

struct VerifyReport {
  std::string bound;          // exact, human-readable
  double bound_value = 0;
  std::vector<std::size_t> attained;
};

// Recomputes the certificate against the tables file.
VerifyReport verify_files(const std::filesystem::path& certificate, const std::filesystem::path& tables);

// The hand certificate for M_2 in Q(sqrt 2), written to spec.out.
StageReport stage_hand_certificate(const ProblemSpec& spec);

// Runs every stage, writes manifest.json and returns the verified bound.
VerifyReport run_pipeline(const ProblemSpec& spec, std::vector<StageReport>* reports = nullptr);

// Files listed in manifest.json whose SHA-256 no longer matches.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

// Built-in shape file text for M_2 and M_4.
std::string default_shape_text(int m);

}  // namespace cubeflag
