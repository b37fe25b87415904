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

// cubeflag: flag-algebra upper bounds for cube and middle-layer Turán
// problems, from enumeration to verified exact certificates.

#include <omp.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "cubeflag/burnside.hpp"
#include "cubeflag/pipeline.hpp"

#ifndef CUBEFLAG_DEFAULT_SOLVER
#define CUBEFLAG_DEFAULT_SOLVER ""
#endif

namespace {

using namespace cubeflag;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kVerification: return 2;
    case ErrorKind::kSolver: return 3;
    case ErrorKind::kBadInput: return 4;
  }
  return 1;
}

struct Options {
  std::string problem = "cube-c4";
  int s = 3;
  int m = 4;
  std::string types;
  int flag_dim = 0;
  std::string shapes;
  std::string group = "sym";
  std::string out = "out";
  std::string solver;
  std::string max_den;
  double assert_bound = 0;
  int jobs = 0;
  int timeout = 0;
  std::string config;
};

void report(const StageReport& r) { std::cout << r.stage << ": " << r.summary << " -> " << r.artifact.string() << '\n'; }

void print_verified(const VerifyReport& v) {
  std::cout << "VERIFIED bound " << v.bound;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v.bound_value);
  std::cout << " (~" << buf << "), attained at";
  for (std::size_t i = 0; i < v.attained.size(); ++i) std::cout << (i ? ", " : " ") << "H_" << v.attained[i];
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubeflag: flag-algebra bounds for cube graphs and middle layers"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;

  app.add_option("--problem", o.problem, "cube-c4 | cube-c6 | midlayers")->capture_default_str();
  auto* s_opt = app.add_option("--s", o.s, "dimension of the host cubes H_s")->capture_default_str();
  app.add_option("--m", o.m, "ground-set size of the middle layers (2 or 4)")->capture_default_str();
  app.add_option("--types", o.types, "cube types: v, or a comma list of p0,p1 (default p0,p1)");
  app.add_option("--flag-dim", o.flag_dim, "flag dimension k (default 1 for v, 2 for pairs)");
  app.add_option("--shapes", o.shapes, "middle-layer shape file");
  app.add_option("--group", o.group, "middle-layer symmetry: sym | flip")->capture_default_str();
  app.add_option("--out", o.out, "artifact directory")->capture_default_str();
  auto* solver_opt = app.add_option("--solver", o.solver, "SDPA-format solver executable");
  auto* den_opt = app.add_option("--max-den", o.max_den, "largest denominator when rationalizing (default 1000000)");
  auto* assert_opt = app.add_option("--assert-bound", o.assert_bound, "fail unless the certified bound is at most X");
  auto* jobs_opt = app.add_option("--jobs", o.jobs, "worker threads");
  auto* timeout_opt = app.add_option("--timeout", o.timeout, "solver timeout in seconds (default 600)");
  app.add_option("--config", o.config, "key = value configuration file");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate the host family");
  auto* tables = app.add_subcommand("tables", "compute flags and exact density tables");
  auto* sdp = app.add_subcommand("sdp", "semidefinite program stages");
  sdp->require_subcommand(1);
  auto* sdp_emit = sdp->add_subcommand("emit", "write problem.dat-s");
  auto* sdp_solve = sdp->add_subcommand("solve", "run the external solver");
  auto* certify = app.add_subcommand("certify", "turn the solution into an exact certificate");
  auto* verify = app.add_subcommand("verify", "re-verify a certificate against its tables");
  std::string cert_path;
  std::string tables_path;
  verify->add_option("certificate", cert_path, "certificate.json")->required();
  verify->add_option("tables", tables_path, "tables.csv (default: next to the certificate)");
  auto* pipeline = app.add_subcommand("pipeline", "run every stage and write manifest.json");
  auto* count = app.add_subcommand("count-q4", "count C4-free spanning subgraphs of Q_4 by orbit counting");
  bool stretch = false;
  std::string checkpoint;
  double max_seconds = 0;
  int prefix_depth = 8;
  count->add_flag("--stretch", stretch, "confirm the long-running count");
  count->add_option("--checkpoint", checkpoint, "resumable shard log");
  count->add_option("--max-seconds", max_seconds, "stop scheduling shards after this many seconds");
  count->add_option("--prefix-depth", prefix_depth, "edge-orbit decisions per shard")->capture_default_str();
  auto* mid = app.add_subcommand("midlayers", "middle-layer problem stages");
  mid->require_subcommand(1);
  auto* mid_enumerate = mid->add_subcommand("enumerate", "enumerate Q2-free families");
  auto* mid_tables = mid->add_subcommand("tables", "compute middle-layer density tables");
  auto* mid_hand = mid->add_subcommand("hand-cert", "write and verify the Q(sqrt 2) certificate for M_2");
  auto* mid_pipeline = mid->add_subcommand("pipeline", "run every middle-layer stage");
  auto* manifest = app.add_subcommand("check-manifest", "re-hash the files listed in DIR/manifest.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    std::map<std::string, std::string> config;
    if (!o.config.empty()) config = read_config(o.config);

    ProblemSpec spec;
    spec.kind = parse_problem_kind(o.problem);
    if (mid->parsed()) spec.kind = ProblemKind::kMidlayers;
    spec.s = o.s;
    spec.m = o.m;
    if (!o.types.empty()) {
      spec.types.clear();
      std::stringstream ss(o.types);
      std::string t;
      while (std::getline(ss, t, ',')) spec.types.push_back(t);
    }
    if (o.flag_dim > 0) spec.flag_dim = o.flag_dim;
    if (!o.shapes.empty()) spec.shapes = o.shapes;
    if (o.group == "flip") {
      spec.group = MidGroup::kSymmetricWithFlip;
    } else if (o.group != "sym") {
      bad_input("--group must be sym or flip");
    }
    spec.out = o.out;

    // Precedence: flags, then environment, then configuration file.
    if (solver_opt->count() > 0) {
      spec.solver = o.solver;
    } else if (const char* env = std::getenv("CUBEFLAG_SOLVER"); env != nullptr && *env != '\0') {
      spec.solver = env;
    } else if (config.count("solver_path")) {
      spec.solver = config["solver_path"];
    } else {
      spec.solver = CUBEFLAG_DEFAULT_SOLVER;
    }
    auto integer = [](const std::string& text, const char* what) {
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        bad_input(std::string(what) + " must be a positive integer, got '" + text + "'");
      }
      return Integer(text);
    };
    if (den_opt->count() > 0) {
      spec.max_den = integer(o.max_den, "--max-den");
    } else if (config.count("max_den")) {
      spec.max_den = integer(config["max_den"], "max_den");
    }
    if (timeout_opt->count() > 0) {
      spec.timeout = std::chrono::seconds(o.timeout);
    } else if (config.count("timeout")) {
      spec.timeout = std::chrono::seconds(integer(config["timeout"], "timeout").get_si());
    }
    int jobs = 0;
    if (jobs_opt->count() > 0) {
      jobs = o.jobs;
    } else if (config.count("jobs")) {
      jobs = static_cast<int>(integer(config["jobs"], "jobs").get_si());
    }
    if (jobs < 0) bad_input("--jobs must be positive");
    if (jobs > 0) omp_set_num_threads(jobs);
    if (assert_opt->count() > 0) spec.assert_bound = o.assert_bound;

    if (enumerate->parsed() || mid_enumerate->parsed()) {
      report(stage_enumerate(spec));
    } else if (tables->parsed() || mid_tables->parsed()) {
      report(stage_tables(spec));
    } else if (sdp_emit->parsed()) {
      report(stage_emit(spec));
    } else if (sdp_solve->parsed()) {
      report(stage_solve(spec));
    } else if (certify->parsed()) {
      report(stage_certify(spec));
    } else if (verify->parsed()) {
      const std::filesystem::path cert = cert_path;
      const std::filesystem::path tab =
          tables_path.empty() ? cert.parent_path() / "tables.csv" : std::filesystem::path(tables_path);
      print_verified(verify_files(cert, tab));
    } else if (pipeline->parsed() || mid_pipeline->parsed()) {
      std::vector<StageReport> reports;
      const VerifyReport v = run_pipeline(spec, &reports);
      for (const auto& r : reports) report(r);
      print_verified(v);
    } else if (mid_hand->parsed()) {
      report(stage_hand_certificate(spec));
      print_verified(verify_files(spec.out / "certificate.json", spec.out / "tables.csv"));
    } else if (count->parsed()) {
      if (!stretch) bad_input("count-q4 runs for a long time; pass --stretch to confirm");
      const int s = s_opt->count() > 0 ? o.s : 4;
      const int L = spec.kind == ProblemKind::kCubeC6 ? 6 : 4;
      OrbitCountOptions opts;
      opts.prefix_depth = prefix_depth;
      opts.max_seconds = max_seconds;
      if (!checkpoint.empty()) opts.checkpoint = checkpoint;
      const OrbitCount c = count_free_classes(s, forbidden_cycles(s, L), opts);
      std::cout << "shards " << c.shards_done << "/" << c.shards_total << '\n';
      if (!c.complete) {
        std::cout << "incomplete: rerun with the same --checkpoint to resume\n";
        return 3;
      }
      std::cout << "C" << L << "-free spanning subgraphs of Q_" << s << " up to automorphism: " << c.classes << '\n';
    } else if (manifest->parsed()) {
      const auto bad = verify_manifest(spec.out);
      if (!bad.empty()) {
        for (const auto& f : bad) std::cout << "MISMATCH " << f << '\n';
        return 2;
      }
      std::cout << "manifest OK\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
