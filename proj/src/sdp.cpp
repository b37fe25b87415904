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

#include "cubeflag/sdp.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "cubeflag/error.hpp"

namespace cubeflag {

namespace {

[[noreturn]] void solver_error(const std::string& what) { throw Error(ErrorKind::kSolver, what); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) solver_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string log_tail(const std::filesystem::path& log, std::size_t lines) {
  std::ifstream in(log);
  std::vector<std::string> all;
  std::string line;
  while (std::getline(in, line)) all.push_back(line);
  std::string out;
  for (std::size_t i = all.size() > lines ? all.size() - lines : 0; i < all.size(); ++i) out += "\n  " + all[i];
  return out;
}

}  // namespace

SdpProblem build_program(TableSet tables) {
  validate(tables);
  for (const auto& d : tables.density) {
    if (sgn(d) < 0) bad_input("densities must be nonnegative");
  }
  return SdpProblem{std::move(tables)};
}

std::string emit_sdpa(const SdpProblem& p) {
  const auto& T = p.tables;
  std::ostringstream out;
  out << "* cubeflag SDP: maximize -v subject to v - sum_b <A_H^b, M_b> - slack_H = d(H)\n";
  out << "* v is block 1 (v >= 0 suffices since every d(H) >= 0);";
  for (std::size_t b = 0; b < T.tables.size(); ++b) out << " block " << b + 2 << " is type " << T.tables[b].type_name << ';';
  out << " block " << p.slack_block() << " holds the slacks\n";
  out << p.constraint_count() << '\n';
  out << p.type_count() + 2 << '\n';
  out << 1;
  for (const auto& t : T.tables) out << ' ' << t.flag_count;
  out << ' ' << -static_cast<long>(p.constraint_count()) << '\n';
  for (std::size_t h = 0; h < T.columns(); ++h) out << (h ? " " : "") << to_decimal(T.density[h]);
  out << '\n';
  out << "0 1 1 1 -1\n";
  for (std::size_t h = 0; h < T.columns(); ++h) {
    const std::size_t con = h + 1;
    out << con << " 1 1 1 1\n";
    for (std::size_t b = 0; b < T.tables.size(); ++b) {
      const auto& t = T.tables[b];
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const Rational& e = t.entries[r][h];
        if (sgn(e) == 0) continue;
        out << con << ' ' << b + 2 << ' ' << t.rows[r].first + 1 << ' ' << t.rows[r].second + 1 << ' '
            << to_decimal(-e) << '\n';
      }
    }
    out << con << ' ' << p.slack_block() << ' ' << con << ' ' << con << " -1\n";
  }
  return out.str();
}

SolverSolution parse_solution(const SdpProblem& p, std::string_view text) {
  const std::size_t m = p.constraint_count();
  const std::size_t t = p.type_count();
  SolverSolution sol;
  sol.blocks.reserve(t);
  for (const auto& tab : p.tables.tables) {
    sol.blocks.push_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tab.flag_count),
                                               static_cast<Eigen::Index>(tab.flag_count)));
  }
  sol.slacks = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  sol.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  std::vector<bool> seen(t + 3, false);

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_y = false;
  auto fail = [&](const std::string& why) { bad_input("solution line " + std::to_string(line_no) + ": " + why); };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_y) {
      double v = 0;
      std::size_t n = 0;
      while (fields >> v) {
        if (n < m) sol.y[static_cast<Eigen::Index>(n)] = v;
        ++n;
      }
      if (!fields.eof() || n != m) fail("expected " + std::to_string(m) + " dual values");
      have_y = true;
      continue;
    }
    long matno = 0;
    long blk = 0;
    long i = 0;
    long j = 0;
    double v = 0;
    std::string extra;
    if (!(fields >> matno >> blk >> i >> j >> v) || (fields >> extra)) fail("expected 'matno blkno i j value'");
    if (matno != 1 && matno != 2) fail("matrix number must be 1 or 2");
    if (blk < 1 || blk > static_cast<long>(t) + 2) fail("block " + std::to_string(blk) + " does not exist");
    seen[static_cast<std::size_t>(blk)] = true;
    if (matno == 1) continue;
    if (blk == 1) {
      if (i != 1 || j != 1) fail("block 1 is 1x1");
      sol.v = v;
    } else if (blk == p.slack_block()) {
      if (i != j || i < 1 || i > static_cast<long>(m)) fail("slack entry out of range");
      sol.slacks[i - 1] = v;
    } else {
      auto& M = sol.blocks[static_cast<std::size_t>(blk - 2)];
      if (i < 1 || j < 1 || i > M.rows() || j > M.rows()) {
        fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside block " + std::to_string(blk) +
             " of size " + std::to_string(M.rows()));
      }
      M(i - 1, j - 1) = v;
      M(j - 1, i - 1) = v;
    }
  }
  if (!have_y) bad_input("solution is empty");
  for (std::size_t b = 1; b <= t + 2; ++b) {
    if (seen[b]) continue;
    std::string name = b == 1 ? "v" : b == t + 2 ? "slacks" : "type " + p.tables.tables[b - 2].type_name;
    bad_input("solution lacks block " + std::to_string(b) + " (" + name + ")");
  }

  sol.primal_objective = -sol.v;
  double dual = 0;
  for (std::size_t h = 0; h < m; ++h) dual += sol.y[static_cast<Eigen::Index>(h)] * to_double(p.tables.density[h]);
  sol.dual_objective = dual;
  sol.float_bound = -INFINITY;
  for (std::size_t h = 0; h < m; ++h) {
    double c = 0;
    for (std::size_t b = 0; b < t; ++b) {
      const auto& tab = p.tables.tables[b];
      for (std::size_t r = 0; r < tab.rows.size(); ++r) {
        const auto [i, j] = tab.rows[r];
        const double w = i == j ? 1.0 : 2.0;
        c += w * to_double(tab.entries[r][h]) * sol.blocks[b](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    const double d = to_double(p.tables.density[h]);
    sol.residual = std::max(sol.residual, std::abs(sol.v - c - sol.slacks[static_cast<Eigen::Index>(h)] - d));
    sol.float_bound = std::max(sol.float_bound, d + c);
  }
  sol.status = "parsed";
  return sol;
}

std::string solver_status_text(int code) {
  switch (code) {
    case 0: return "success";
    case 1: return "primal infeasible";
    case 2: return "dual infeasible";
    case 3: return "partial success";
    case 4: return "maximum iterations reached";
    case 5: return "stuck at edge of primal feasibility";
    case 6: return "stuck at edge of dual feasibility";
    case 7: return "lack of progress";
    case 8: return "X, Z, or O was singular";
    case 9: return "detected NaN or Inf values";
    default: return "unknown status";
  }
}

SolverSolution run_solver(const SdpProblem& problem, const SolverRun& run) {
  namespace fs = std::filesystem;
  if (run.solver.empty()) solver_error("solver not found: no solver configured");
  if (!fs::exists(run.solver) || access(run.solver.c_str(), X_OK) != 0) {
    solver_error("solver not found: " + run.solver.string());
  }
  fs::create_directories(run.workdir);
  const fs::path dat = run.workdir / "problem.dat-s";
  const fs::path sol = run.workdir / "solution.sol";
  const fs::path log = run.workdir / "solver.log";
  {
    std::ofstream out(dat, std::ios::binary);
    out << emit_sdpa(problem);
    if (!out) solver_error("cannot write " + dat.string());
  }
  fs::remove(sol);

  const int log_fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (log_fd < 0) solver_error("cannot open " + log.string());
  const std::string solver = run.solver.string();
  const std::string dat_s = dat.string();
  const std::string sol_s = sol.string();
  const pid_t pid = fork();
  if (pid < 0) {
    ::close(log_fd);
    solver_error("fork failed");
  }
  if (pid == 0) {
    dup2(log_fd, STDOUT_FILENO);
    dup2(log_fd, STDERR_FILENO);
    ::close(log_fd);
    execl(solver.c_str(), solver.c_str(), dat_s.c_str(), sol_s.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  ::close(log_fd);

  const auto deadline = std::chrono::steady_clock::now() + run.timeout;
  int wstatus = 0;
  for (;;) {
    const pid_t r = waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0) solver_error("waitpid failed");
    if (std::chrono::steady_clock::now() > deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &wstatus, 0);
      solver_error("solver timed out after " + std::to_string(run.timeout.count()) + " s; log: " + log.string());
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  if (!WIFEXITED(wstatus)) solver_error("solver terminated by a signal; log: " + log.string());
  const int code = WEXITSTATUS(wstatus);
  if (code == 127) solver_error("solver could not be executed: " + solver);
  if (code != 0 && code != 3) {
    solver_error("solver exited with status " + std::to_string(code) + " (" + solver_status_text(code) + ")" +
                 log_tail(log, 5));
  }
  if (!fs::exists(sol)) solver_error("solver produced no solution file; log: " + log.string());
  SolverSolution s;
  try {
    s = parse_solution(problem, read_file(sol));
  } catch (const Error& e) {
    solver_error(std::string("malformed solver output: ") + e.what());
  }
  s.exit_code = code;
  s.status = solver_status_text(code);
  return s;
}

}  // namespace cubeflag
