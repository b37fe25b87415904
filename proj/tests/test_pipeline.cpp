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

#include <omp.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubeflag/pipeline.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace cubeflag {
namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cubeflag_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ProblemSpec cube_spec(ProblemKind kind, const fs::path& out) {
  ProblemSpec s;
  s.kind = kind;
  s.s = 3;
  s.out = out;
  return s;
}

#ifdef CUBEFLAG_TEST_CLI
struct Run {
  int code = -1;
  std::string output;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(CUBEFLAG_TEST_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p) != nullptr) r.output += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}
#endif

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("problem specs are validated before any work") {
    ProblemSpec s;
    CHECK_NOTHROW(s.validate());
    s.s = 2;
    CHECK_THROWS_AS(s.validate(), Error);
    s.types = {"v"};
    CHECK_NOTHROW(s.validate());
    s.types = {"v", "v"};
    CHECK_THROWS_AS(s.validate(), Error);
    s.types = {"q"};
    CHECK_THROWS_AS(s.validate(), Error);

    ProblemSpec m;
    m.kind = ProblemKind::kMidlayers;
    m.m = 3;
    CHECK_THROWS_AS(m.validate(), Error);
    m.m = 4;
    m.max_den = 0;
    CHECK_THROWS_AS(m.validate(), Error);

    CHECK(parse_problem_kind("cube-c6") == ProblemKind::kCubeC6);
    CHECK(problem_kind_name(ProblemKind::kMidlayers) == "midlayers");
    CHECK_THROWS_AS(parse_problem_kind("cube-c5"), Error);
  }

  TEST_CASE("config files") {
    const fs::path dir = scratch("config");
    {
      std::ofstream out(dir / "ok.conf");
      out << "# comment\nsolver_path = /opt/solver\nmax_den=1000\n\njobs = 2\n";
    }
    const auto c = read_config(dir / "ok.conf");
    CHECK(c.at("solver_path") == "/opt/solver");
    CHECK(c.at("max_den") == "1000");
    CHECK(c.at("jobs") == "2");
    {
      std::ofstream out(dir / "bad.conf");
      out << "colour = blue\n";
    }
    CHECK_THROWS_AS(read_config(dir / "bad.conf"), Error);
    CHECK_THROWS_AS(read_config(dir / "missing.conf"), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("stages are byte-identical across thread counts") {
    const int saved = omp_get_max_threads();
    for (ProblemKind kind : {ProblemKind::kCubeC4, ProblemKind::kCubeC6, ProblemKind::kMidlayers}) {
      std::vector<std::string> runs;
      for (int jobs : {1, 2, 4, 8}) {
        omp_set_num_threads(jobs);
        const fs::path dir = scratch("jobs" + std::to_string(jobs));
        const ProblemSpec s = cube_spec(kind, dir);
        stage_enumerate(s);
        stage_tables(s);
        stage_emit(s);
        runs.push_back(slurp(dir / "family.txt") + slurp(dir / "flags.txt") + slurp(dir / "tables.csv") +
                       slurp(dir / "problem.dat-s"));
        fs::remove_all(dir);
      }
      for (const auto& r : runs) CHECK(r == runs.front());
    }
    omp_set_num_threads(saved);
  }

  TEST_CASE("stages report missing inputs") {
    const fs::path dir = scratch("missing");
    const ProblemSpec s = cube_spec(ProblemKind::kCubeC4, dir);
    try {
      stage_tables(s);
      FAIL("missing family accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kBadInput);
      CHECK(std::string(e.what()).find("family.txt") != std::string::npos);
    }
    fs::remove_all(dir);
  }

  TEST_CASE("hand certificate verifies from files") {
    const fs::path dir = scratch("hand");
    ProblemSpec s;
    s.kind = ProblemKind::kMidlayers;
    s.m = 2;
    s.out = dir;
    stage_hand_certificate(s);
    const VerifyReport r = verify_files(dir / "certificate.json", dir / "tables.csv");
    CHECK(r.bound == "(3+√2)/2");
    fs::remove_all(dir);
  }

#ifdef CUBEFLAG_TEST_SOLVER
  TEST_CASE("worked example pipeline, manifest and tampering") {
    const fs::path dir = scratch("worked");
    ProblemSpec s;
    s.s = 2;
    s.types = {"v"};
    s.out = dir;
    s.solver = CUBEFLAG_TEST_SOLVER;
    s.assert_bound = 0.6667;
    const VerifyReport r = run_pipeline(s);
    CHECK(r.bound == "2/3");
    CHECK(r.attained == std::vector<std::size_t>{0, 4});
    CHECK(verify_manifest(dir).empty());

    // A certificate bound to different tables is rejected.
    const std::string tables = slurp(dir / "tables.csv");
    {
      std::string changed = tables;
      const auto at = changed.find("d,0/1,1/4");
      REQUIRE(at != std::string::npos);
      changed.replace(at, 9, "d,0/1,1/5");
      std::ofstream out(dir / "tables.csv", std::ios::binary);
      out << changed;
    }
    CHECK(verify_manifest(dir) == std::vector<std::string>{"tables.csv"});
    CHECK_THROWS_AS(verify_files(dir / "certificate.json", dir / "tables.csv"), Error);
    {
      std::ofstream out(dir / "tables.csv", std::ios::binary);
      out << tables;
    }
    CHECK(verify_manifest(dir).empty());

    // An edited matrix entry is caught with a witness.
    std::string cert = slurp(dir / "certificate.json");
    const std::size_t at = cert.find("\"1/6\"");
    REQUIRE(at != std::string::npos);
    cert.replace(at, 5, "\"1/7\"");
    {
      std::ofstream out(dir / "certificate.json", std::ios::binary);
      out << cert;
    }
    try {
      verify_files(dir / "certificate.json", dir / "tables.csv");
      FAIL("tampered certificate accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kVerification);
      CHECK(std::string(e.what()).find("NOT PSD") != std::string::npos);
    }
    CHECK(verify_manifest(dir) == std::vector<std::string>{"certificate.json"});

    s.assert_bound = 0.5;
    try {
      run_pipeline(s);
      FAIL("assert-bound ignored");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kVerification);
    }
    fs::remove_all(dir);
  }

  TEST_CASE("solver failures name the stage") {
    const fs::path dir = scratch("nosolver");
    ProblemSpec s;
    s.s = 2;
    s.types = {"v"};
    s.out = dir;
    s.solver = dir / "absent-solver";
    try {
      run_pipeline(s);
      FAIL("missing solver accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kSolver);
      CHECK(std::string(e.what()).find("stage sdp solve") != std::string::npos);
    }
    fs::remove_all(dir);
  }
#endif

#ifdef CUBEFLAG_TEST_CLI
  TEST_CASE("command line exit codes") {
    const fs::path dir = scratch("cli");
    const std::string out = " --out " + dir.string();

    Run r = cli("enumerate --problem cube-c4 --s 3" + out);
    CHECK(r.code == 0);
    CHECK(r.output.find("99") != std::string::npos);
    r = cli("enumerate --problem midlayers --m 4" + out);
    CHECK(r.code == 0);
    CHECK(r.output.find("606") != std::string::npos);

    CHECK(cli("count-q4").code == 4);
    CHECK(cli("enumerate --problem cube-c5").code == 4);
    CHECK(cli("tables --problem cube-c4 --s 2" + out).code == 4);

    r = cli("midlayers hand-cert" + out);
    CHECK(r.code == 0);
    r = cli("verify " + (dir / "certificate.json").string() + " " + (dir / "tables.csv").string());
    CHECK(r.code == 0);
    CHECK(r.output.find("VERIFIED bound (3+√2)/2") != std::string::npos);

    r = cli("pipeline --problem cube-c4 --s 2 --types v --solver /nonexistent/solver" + out);
    CHECK(r.code == 3);
    CHECK(r.output.find("solver not found") != std::string::npos);

    r = cli("count-q4 --stretch --s 3 --problem cube-c4" + out);
    CHECK(r.code == 0);
    CHECK(r.output.find("99") != std::string::npos);

#ifdef CUBEFLAG_TEST_SOLVER
    const std::string wdir = (dir / "worked").string();
    r = cli("pipeline --problem cube-c4 --s 2 --types v --solver " + std::string(CUBEFLAG_TEST_SOLVER) + " --out " +
            wdir);
    CHECK(r.code == 0);
    CHECK(r.output.find("VERIFIED bound 2/3") != std::string::npos);
    CHECK(cli("check-manifest --out " + wdir).code == 0);
    std::string cert = slurp(dir / "worked" / "certificate.json");
    cert.replace(cert.find("\"1/6\""), 5, "\"1/7\"");
    {
      std::ofstream o(dir / "worked" / "certificate.json", std::ios::binary);
      o << cert;
    }
    r = cli("verify " + wdir + "/certificate.json " + wdir + "/tables.csv");
    CHECK(r.code == 2);
    CHECK(r.output.find("NOT PSD") != std::string::npos);
    CHECK(cli("check-manifest --out " + wdir).code == 2);
#endif
    fs::remove_all(dir);
  }
#endif
}

}  // namespace cubeflag
