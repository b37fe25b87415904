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

#include "cubeflag/pipeline.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cubeflag/digest.hpp"
#include "cubeflag/enumerate.hpp"
#include "cubeflag/flags.hpp"

namespace cubeflag {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFamily = "family.txt";
constexpr const char* kFlags = "flags.txt";
constexpr const char* kTables = "tables.csv";
constexpr const char* kProblem = "problem.dat-s";
constexpr const char* kSolution = "solution.sol";
constexpr const char* kLog = "solver.log";
constexpr const char* kCertificate = "certificate.json";
constexpr const char* kManifest = "manifest.json";

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) bad_input("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) bad_input("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

fs::path need(const ProblemSpec& spec, const char* name, const char* producer) {
  const fs::path p = spec.out / name;
  if (!fs::exists(p)) bad_input("missing " + p.string() + "; run '" + producer + "' first");
  return p;
}

bool is_cube(const ProblemSpec& spec) { return spec.kind != ProblemKind::kMidlayers; }
int cycle_length(const ProblemSpec& spec) { return spec.kind == ProblemKind::kCubeC6 ? 6 : 4; }

struct CubeTypeChoice {
  TypeSigma type;
  int k;
};

std::vector<CubeTypeChoice> cube_types(const ProblemSpec& spec) {
  std::vector<CubeTypeChoice> out;
  for (const auto& name : spec.types) {
    if (name == "v") {
      out.push_back({vertex_type(), spec.flag_dim.value_or(1)});
    } else if (name == "p0" || name == "p1") {
      out.push_back({pair_type(name == "p1"), spec.flag_dim.value_or(2)});
    } else {
      bad_input("unknown type '" + name + "' (use v, p0, p1)");
    }
  }
  return out;
}

ShapeSpec mid_shapes(const ProblemSpec& spec) {
  std::istringstream in(spec.shapes ? read_text(*spec.shapes) : default_shape_text(spec.m));
  return read_shapes(in);
}

TableSet load_tables(const fs::path& p) {
  std::istringstream in(read_text(p));
  return read_csv(in);
}

// "# type NAME" sections of flags.txt, in order.
std::vector<std::pair<std::string, std::vector<std::string>>> flag_sections(const fs::path& p) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::istringstream in(read_text(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# type ", 0) == 0) {
      out.emplace_back(line.substr(7), std::vector<std::string>{});
    } else if (!line.empty() && !out.empty()) {
      out.back().second.push_back(line);
    }
  }
  return out;
}

std::string exact_string(const AnyCertificate& c) {
  return std::visit(
      [](const auto& cert) -> std::string {
        using S = std::decay_t<decltype(cert.bound)>;
        if constexpr (std::is_same_v<S, Rational>) {
          return to_string(cert.bound);
        } else {
          return to_radical_string(cert.bound);
        }
      },
      c);
}

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

ProblemKind parse_problem_kind(const std::string& text) {
  if (text == "cube-c4") return ProblemKind::kCubeC4;
  if (text == "cube-c6") return ProblemKind::kCubeC6;
  if (text == "midlayers") return ProblemKind::kMidlayers;
  bad_input("unknown problem '" + text + "' (use cube-c4, cube-c6 or midlayers)");
}

std::string problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCubeC4: return "cube-c4";
    case ProblemKind::kCubeC6: return "cube-c6";
    case ProblemKind::kMidlayers: return "midlayers";
  }
  return "unknown";
}

void ProblemSpec::validate() const {
  if (max_den < 1) bad_input("--max-den must be positive");
  if (timeout.count() <= 0) bad_input("timeout must be positive");
  if (kind == ProblemKind::kMidlayers) {
    if (m != 2 && m != 4) bad_input("midlayers needs m = 2 or m = 4");
    return;
  }
  if (s < 2 || s > 4) bad_input("cube problems need 2 <= s <= 4");
  if (types.empty()) bad_input("no types selected");
  std::set<std::string> seen;
  for (const auto& t : types) {
    if (!seen.insert(t).second) bad_input("type '" + t + "' selected twice");
  }
  for (const auto& c : cube_types(*this)) {
    const int r = c.type.dim();
    if (c.k < r || c.k > 3) bad_input("flag dimension " + std::to_string(c.k) + " is invalid for type " + c.type.name);
    if (s < 2 * c.k - r) {
      bad_input("type " + c.type.name + ": s = " + std::to_string(s) + " violates s >= 2k - r = " +
                std::to_string(2 * c.k - r));
    }
  }
}

std::string ProblemSpec::describe() const {
  std::string d = problem_kind_name(kind);
  if (kind == ProblemKind::kMidlayers) {
    d += " m=" + std::to_string(m);
    d += group == MidGroup::kSymmetric ? " group=sym" : " group=sym+flip";
    if (shapes) d += " shapes=" + shapes->filename().string();
    return d;
  }
  d += " s=" + std::to_string(s) + " types=";
  for (std::size_t i = 0; i < types.size(); ++i) d += (i ? "," : "") + types[i];
  if (flag_dim) d += " k=" + std::to_string(*flag_dim);
  return d;
}

std::map<std::string, std::string> read_config(const fs::path& path) {
  static const std::set<std::string> kKeys{"solver_path", "max_den", "jobs", "timeout"};
  std::map<std::string, std::string> out;
  std::istringstream in(read_text(path));
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_input(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!kKeys.count(key)) bad_input(path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

StageReport stage_enumerate(const ProblemSpec& spec) {
  spec.validate();
  std::ostringstream out;
  std::string summary;
  if (is_cube(spec)) {
    const int L = cycle_length(spec);
    const HFamily fam = enumerate_free(spec.s, forbidden_cycles(spec.s, L));
    out << "# C" << L << "-free spanning subgraphs of Q_" << spec.s << " up to automorphism: " << fam.size() << '\n';
    write_family(out, fam);
    summary = "H_" + std::to_string(spec.s) + "(C" + std::to_string(L) + ") = " + std::to_string(fam.size());
  } else {
    const auto fams = enumerate_q2free(spec.m, spec.group);
    out << "# Q2-free families of M_" << spec.m << " up to "
        << (spec.group == MidGroup::kSymmetric ? "ground-set permutations" : "permutations and complementation") << ": "
        << fams.size() << '\n';
    write_mid_families(out, mid_poset(spec.m), fams);
    summary = "Q2-free families of M_" + std::to_string(spec.m) + " = " + std::to_string(fams.size());
  }
  write_text(spec.out / kFamily, out.str());
  return {"enumerate", spec.out / kFamily, summary};
}

StageReport stage_tables(const ProblemSpec& spec) {
  spec.validate();
  std::istringstream fin(read_text(need(spec, kFamily, "enumerate")));
  std::ostringstream flags;
  TableSet tables;
  if (is_cube(spec)) {
    const HFamily fam = read_family(fin);
    if (fam.s != spec.s) bad_input("family.txt is for s = " + std::to_string(fam.s) + ", expected " + std::to_string(spec.s));
    const auto pattern = forbidden_cycles(spec.s, cycle_length(spec));
    for (const auto& H : fam.members) {
      if (!is_free(H, pattern)) bad_input("family.txt contains a graph with a forbidden cycle: " + to_line(H));
    }
    std::vector<FlagBlock> blocks;
    for (const auto& c : cube_types(spec)) {
      blocks.push_back({c.type, enumerate_flags(c.type, c.k, 1 << c.k, forbidden_cycles(c.k, cycle_length(spec)))});
    }
    write_flags(flags, blocks);
    tables = density_tables(blocks, fam);
  } else {
    const auto fams = read_mid_families(fin, spec.m);
    const ShapeSpec shapes = mid_shapes(spec);
    for (const auto& t : shapes.types) {
      const MidShape& sh = shapes.shapes[t.shape];
      flags << "# type " << t.name << '\n';
      for (std::uint32_t f : t.flags) flags << to_mid_line(sh.cube, f, sh.labels) << (sh.flip ? "; flip:1" : "") << '\n';
    }
    tables = mid_density_table(shapes.shapes, shapes.types, spec.m, fams);
  }
  write_text(spec.out / kFlags, flags.str());
  write_text(spec.out / kTables, to_csv(tables));
  std::string summary = std::to_string(tables.columns()) + " columns; blocks";
  for (const auto& t : tables.tables) summary += " " + t.type_name + ":" + std::to_string(t.flag_count);
  return {"tables", spec.out / kTables, summary};
}

StageReport stage_emit(const ProblemSpec& spec) {
  const SdpProblem p = build_program(load_tables(need(spec, kTables, "tables")));
  write_text(spec.out / kProblem, emit_sdpa(p));
  return {"sdp emit", spec.out / kProblem,
          std::to_string(p.constraint_count()) + " constraints, " + std::to_string(p.type_count() + 2) + " blocks"};
}

StageReport stage_solve(const ProblemSpec& spec) {
  const SdpProblem p = build_program(load_tables(need(spec, kTables, "tables")));
  const SolverSolution sol = run_solver(p, SolverRun{spec.solver, spec.out, spec.timeout});
  return {"sdp solve", spec.out / kSolution,
          "v = " + decimal(sol.v) + " (" + sol.status + ", residual " + decimal(sol.residual) + ")"};
}

StageReport stage_certify(const ProblemSpec& spec) {
  const TableSet tables = load_tables(need(spec, kTables, "tables"));
  const SdpProblem p = build_program(tables);
  const SolverSolution sol = parse_solution(p, read_text(need(spec, kSolution, "sdp solve")));
  // Coarser roundings often land exactly on the optimum; keep the smallest
  // bound over denominator caps 10, 100, ..., max_den.
  std::vector<Integer> caps;
  for (Integer c = 10; c < spec.max_den; c *= 10) caps.push_back(c);
  caps.push_back(spec.max_den);
  std::optional<Rational> best;
  std::vector<RationalSymMatrix> matrices;
  std::string deltas;
  Integer chosen;
  for (const Integer& cap : caps) {
    std::vector<RationalSymMatrix> ms;
    std::string ds;
    try {
      for (std::size_t b = 0; b < sol.blocks.size(); ++b) {
        Perturbed pm = perturb_to_psd(sol.blocks[b], cap);
        ds += " " + tables.tables[b].type_name + ":" + to_string(pm.delta);
        ms.push_back(std::move(pm.matrix));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kVerification) throw;
      continue;
    }
    const auto values = bound_values(ms, tables);
    const Rational bound = *std::max_element(values.begin(), values.end());
    if (!best || bound < *best) {
      best = bound;
      matrices = std::move(ms);
      deltas = std::move(ds);
      chosen = cap;
    }
  }
  if (!best) throw Error(ErrorKind::kVerification, "no denominator cap up to " + spec.max_den.get_str() + " yields PSD matrices");
  RationalCertificate cert = certified_bound(matrices, tables, spec.describe());
  const fs::path flags_path = spec.out / kFlags;
  if (fs::exists(flags_path)) {
    const auto sections = flag_sections(flags_path);
    for (std::size_t b = 0; b < cert.types.size(); ++b) {
      for (const auto& [name, lines] : sections) {
        if (name == cert.types[b]) cert.flags[b] = lines;
      }
    }
  }
  write_text(spec.out / kCertificate, certificate_to_json(cert));
  return {"certify", spec.out / kCertificate,
          "bound " + to_string(cert.bound) + " = " + to_decimal(cert.bound, 10) + "; max_den " + chosen.get_str() +
              "; delta" + deltas};
}

VerifyReport verify_files(const fs::path& certificate, const fs::path& tables_path) {
  const AnyCertificate cert = certificate_from_json(read_text(certificate));
  const TableSet tables = load_tables(tables_path);
  verify_certificate(cert, tables);
  VerifyReport r;
  r.bound = exact_string(cert);
  std::visit(
      [&](const auto& c) {
        r.bound_value = as_double(c.bound);
        r.attained = c.attained;
      },
      cert);
  return r;
}

StageReport stage_hand_certificate(const ProblemSpec& spec) {
  ProblemSpec s2 = spec;
  s2.kind = ProblemKind::kMidlayers;
  s2.m = 2;
  s2.group = MidGroup::kSymmetric;
  s2.shapes.reset();
  stage_enumerate(s2);
  stage_tables(s2);
  const TableSet tables = load_tables(spec.out / kTables);
  QuadCertificate cert = certified_bound(std::vector<QuadSymMatrix>{hand_matrix()}, tables, s2.describe() + " hand");
  cert.flags.assign(cert.types.size(), {});
  const auto sections = flag_sections(spec.out / kFlags);
  for (std::size_t b = 0; b < cert.types.size(); ++b) {
    for (const auto& [name, lines] : sections) {
      if (name == cert.types[b]) cert.flags[b] = lines;
    }
  }
  write_text(spec.out / kCertificate, certificate_to_json(cert));
  return {"hand-cert", spec.out / kCertificate, "bound " + to_radical_string(cert.bound)};
}

VerifyReport run_pipeline(const ProblemSpec& spec, std::vector<StageReport>* reports) {
  spec.validate();
  using Stage = StageReport (*)(const ProblemSpec&);
  const std::pair<const char*, Stage> stages[] = {{"enumerate", stage_enumerate}, {"tables", stage_tables},
                                                  {"sdp emit", stage_emit},       {"sdp solve", stage_solve},
                                                  {"certify", stage_certify}};
  for (const auto& [name, fn] : stages) {
    try {
      StageReport r = fn(spec);
      if (reports) reports->push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("stage ") + name + " failed (artifacts in " + spec.out.string() + "): " + e.what());
    }
  }
  VerifyReport v;
  try {
    v = verify_files(spec.out / kCertificate, spec.out / kTables);
  } catch (const Error& e) {
    throw Error(e.kind(), "stage verify failed (artifacts in " + spec.out.string() + "): " + e.what());
  }

  nlohmann::ordered_json m;
  m["tool"] = "cubeflag";
  m["version"] = "1.0.0";
  m["problem"] = spec.describe();
  {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["created"] = buf;
  }
  nlohmann::ordered_json files;
  for (const char* f : {kFamily, kFlags, kTables, kProblem, kSolution, kLog, kCertificate}) {
    files[f] = sha256_file(spec.out / f);
  }
  m["files"] = files;
  m["bound"] = v.bound;
  m["bound_decimal"] = decimal(v.bound_value);
  write_text(spec.out / kManifest, m.dump(1) + "\n");

  if (spec.assert_bound && v.bound_value > *spec.assert_bound) {
    throw Error(ErrorKind::kVerification,
                "certified bound " + v.bound + " = " + decimal(v.bound_value) + " exceeds --assert-bound " +
                    decimal(*spec.assert_bound));
  }
  return v;
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(read_text(dir / kManifest));
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("malformed manifest: ") + e.what());
  }
  std::vector<std::string> bad;
  for (const auto& [name, digest] : m.at("files").items()) {
    const fs::path p = dir / name;
    if (!fs::exists(p) || sha256_file(p) != digest.get<std::string>()) bad.push_back(name);
  }
  return bad;
}

std::string default_shape_text(int m) {
  if (m == 2) {
    return "# A black labeled bottom set below one unlabeled middle set.\n"
           "layers:1,1,0; black:0; labels:0; flip:1\n";
  }
  if (m == 4) {
    return "# A diamond labeled at one of its middle sets.\n"
           "layers:1,2,1; black:; labels:1; colors:all; flip:1\n"
           "# Labeled b < c1, c2 with the bottom, the other middle sets and the third top set.\n"
           "layers:1,3,3; black:; labels:1,4,5; colors:all; flip:1\n";
  }
  bad_input("no built-in shapes for m = " + std::to_string(m));
}

}  // namespace cubeflag
