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

#include "cubeflag/flags.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace cubeflag {

namespace {

bool type_edges_match(const FlagShape& type, const CubeGraph& g) {
  const int r = type.graph.dim();
  for (int e = 0; e < cube_edge_count(r); ++e) {
    const Edge ed = edge_at(r, e);
    if (type.graph.has_edge(ed.low, ed.high()) != g.has_edge(ed.low, ed.high())) return false;
  }
  return true;
}

struct PulledMap {
  CoordSet coords = 0;
  long flag = -1;  // index into the block's flags, -1 if none matches
};

// Feasible maps of Q_k pinned at theta, each with its image coordinates and
// the flag class of the pulled-back labeled graph.
std::vector<PulledMap> pulled_maps(int k, std::span<const VertexMask> labels, std::span<const VertexMask> theta,
                                   const CubeGraph& H, const std::map<CanonicalKey, long>& classes) {
  std::vector<std::pair<VertexMask, VertexMask>> pins;
  for (std::size_t t = 0; t < labels.size(); ++t) pins.emplace_back(labels[t], theta[t]);
  std::vector<PulledMap> out;
  const CubeGraph shape = CubeGraph::spanning(k);
  for_each_feasible_map(shape, pins, H.dim(), [&](const FeasibleMap& f) {
    std::array<VertexMask, 1 << kMaxDim> img{};
    for (VertexMask x = 0; x < (VertexMask{1} << k); ++x) img[x] = f.apply(x);
    CubeGraph pulled = CubeGraph::spanning(k);
    for (int e = 0; e < cube_edge_count(k); ++e) {
      const Edge ed = edge_at(k, e);
      if (H.has_edge(img[ed.low], img[ed.high()])) pulled.add_edge(ed.low, ed.high());
    }
    auto it = classes.find(canonical_form(pulled, labels));
    out.push_back({f.image_coords(), it == classes.end() ? -1 : it->second});
  });
  return out;
}

std::map<CanonicalKey, long> class_index(const std::vector<SigmaFlag>& flags) {
  std::map<CanonicalKey, long> out;
  for (std::size_t i = 0; i < flags.size(); ++i) out.emplace(flags[i].key, static_cast<long>(i));
  return out;
}

int block_dim(const FlagBlock& b) {
  if (b.flags.empty()) bad_input("type " + b.type.name + " has no flags");
  const int k = b.flags.front().dim();
  for (const auto& f : b.flags) {
    if (f.dim() != k) bad_input("flags of type " + b.type.name + " differ in dimension");
    if (f.shape.labels != b.type.shape.labels) bad_input("flag labels disagree with type " + b.type.name);
  }
  return k;
}

// Column of every block's table for one member H.
std::vector<std::vector<Rational>> column(const std::vector<FlagBlock>& blocks,
                                          const std::vector<std::map<CanonicalKey, long>>& classes,
                                          const CubeGraph& H) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const FlagBlock& blk = blocks[b];
    const std::size_t l = blk.flags.size();
    const int k = blk.flags.front().dim();
    std::vector<Rational> acc(l * l);
    const auto thetas = type_maps(blk.type, H);
    std::vector<long> counts(l * l);
    for (const auto& theta : thetas) {
      const CoordSet dtheta = coordinate_spread(theta);
      const auto maps = pulled_maps(k, blk.type.shape.labels, theta, H, classes[b]);
      std::fill(counts.begin(), counts.end(), 0);
      long total = 0;
      for (const auto& f1 : maps) {
        for (const auto& f2 : maps) {
          if ((f1.coords & f2.coords) != dtheta) continue;
          ++total;
          if (f1.flag >= 0 && f2.flag >= 0) ++counts[static_cast<std::size_t>(f1.flag) * l + static_cast<std::size_t>(f2.flag)];
        }
      }
      for (std::size_t i = 0; i < l * l; ++i) {
        if (counts[i] != 0) acc[i] += ratio(counts[i], total);
      }
    }
    std::vector<Rational> col;
    for (const auto& [i, j] : upper_pairs(l)) {
      Rational v = acc[i * l + j] / static_cast<long>(thetas.size());
      v.canonicalize();
      col.push_back(std::move(v));
    }
    out.push_back(std::move(col));
  }
  return out;
}

TableSet tables_shell(const std::vector<FlagBlock>& blocks, const HFamily& family) {
  if (family.size() == 0) bad_input("empty family");
  for (const auto& b : blocks) block_dim(b);
  check_dimension(blocks, family.s);
  TableSet set;
  for (const auto& H : family.members) set.density.push_back(edge_density(H));
  for (const auto& b : blocks) {
    DensityTable t{b.type.name, b.flags.size(), upper_pairs(b.flags.size()), {}};
    t.entries.assign(t.rows.size(), std::vector<Rational>(family.size()));
    set.tables.push_back(std::move(t));
  }
  return set;
}

void store(TableSet& set, std::size_t h, std::vector<std::vector<Rational>>&& col) {
  for (std::size_t b = 0; b < col.size(); ++b) {
    for (std::size_t r = 0; r < col[b].size(); ++r) set.tables[b].entries[r][h] = std::move(col[b][r]);
  }
}

}  // namespace

TypeSigma make_type(std::string name, CubeGraph graph, std::vector<VertexMask> labels) {
  if (!graph.is_spanning()) bad_input("type " + name + " must label a full subcube");
  if (labels.size() != (std::size_t{1} << graph.dim())) bad_input("type " + name + " must label every vertex");
  std::vector<VertexMask> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) bad_input("type " + name + " labels are not a bijection onto Q_r");
  }
  if (name.empty() || name == "d" || name.find_first_of(":, \n#") != std::string::npos) {
    bad_input("invalid type name '" + name + "'");
  }
  return TypeSigma{std::move(name), FlagShape{std::move(graph), std::move(labels)}};
}

TypeSigma vertex_type() { return make_type("v", CubeGraph::spanning(0), {0}); }

TypeSigma pair_type(bool edge) {
  return make_type(edge ? "p1" : "p0", edge ? CubeGraph::full(1) : CubeGraph::spanning(1), {0, 1});
}

std::vector<SigmaFlag> enumerate_flags(const TypeSigma& sigma, int k, int vertex_count,
                                       const ForbiddenPattern& pattern) {
  const int r = sigma.dim();
  if (k < r) bad_input("flag dimension below type dimension");
  if (k > 3) bad_input("flag dimension above 3 is not supported");
  if (vertex_count != (1 << k)) bad_input("flags must fill their subcube: vertex_count must be 2^k");
  if (pattern.dim != k) bad_input("forbidden pattern dimension must equal the flag dimension");
  const int ne = cube_edge_count(k);
  const std::uint64_t all = (std::uint64_t{1} << (1 << k)) - 1;

  std::map<CanonicalKey, std::uint64_t> first;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << ne); ++x) {
    const CubeGraph g(k, all, EdgeSet::from_low_word(x));
    if (!type_edges_match(sigma.shape, g) || !is_free(g, pattern)) continue;
    first.emplace(canonical_form(g, sigma.shape.labels), x);
  }
  std::vector<std::pair<CanonicalKey, std::uint64_t>> order(first.begin(), first.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const int ca = std::popcount(a.second);
    const int cb = std::popcount(b.second);
    return ca != cb ? ca < cb : a.second < b.second;
  });
  std::vector<SigmaFlag> out;
  for (auto& [key, x] : order) {
    out.push_back(SigmaFlag{FlagShape{CubeGraph(k, all, EdgeSet::from_low_word(x)), sigma.shape.labels}, key});
  }
  return out;
}

std::vector<std::vector<VertexMask>> type_maps(const TypeSigma& sigma, const CubeGraph& H) {
  if (sigma.dim() > H.dim()) bad_input("type dimension exceeds dim(H)");
  std::set<std::vector<VertexMask>> seen;
  for_each_feasible_map(sigma.shape.graph, {}, H.dim(), [&](const FeasibleMap& f) {
    std::vector<VertexMask> img;
    for (VertexMask l : sigma.shape.labels) img.push_back(f.apply(l));
    seen.insert(std::move(img));
  });
  return {seen.begin(), seen.end()};
}

Rational pair_density(const SigmaFlag& fi, const SigmaFlag& fj, std::span<const VertexMask> theta,
                      const CubeGraph& H) {
  if (fi.shape.labels != fj.shape.labels) bad_input("flags have different types");
  if (theta.size() != fi.shape.labels.size()) bad_input("placement size differs from the type");
  const int r = std::popcount(coordinate_spread(fi.shape.labels));
  if (H.dim() < fi.dim() + fj.dim() - r) {
    bad_input("pair density needs dim(H) >= k_i + k_j - r");
  }
  const std::map<CanonicalKey, long> ci{{fi.key, 0}};
  const std::map<CanonicalKey, long> cj{{fj.key, 0}};
  const auto m1 = pulled_maps(fi.dim(), fi.shape.labels, theta, H, ci);
  const auto m2 = pulled_maps(fj.dim(), fj.shape.labels, theta, H, cj);
  const CoordSet dtheta = coordinate_spread(theta);
  long total = 0;
  long hits = 0;
  for (const auto& a : m1) {
    for (const auto& b : m2) {
      if ((a.coords & b.coords) != dtheta) continue;
      ++total;
      if (a.flag == 0 && b.flag == 0) ++hits;
    }
  }
  if (total == 0) return Rational(0);
  return ratio(hits, total);
}

void check_dimension(const std::vector<FlagBlock>& blocks, int s) {
  for (const auto& b : blocks) {
    const int k = block_dim(b);
    const int r = b.type.dim();
    if (s < 2 * k - r) {
      bad_input("type " + b.type.name + ": s = " + std::to_string(s) + " violates s >= 2k - r = " +
                std::to_string(2 * k - r));
    }
  }
}

TableSet density_tables(const std::vector<FlagBlock>& blocks, const HFamily& family) {
  TableSet set = tables_shell(blocks, family);
  std::vector<std::map<CanonicalKey, long>> classes;
  for (const auto& b : blocks) classes.push_back(class_index(b.flags));
  const long n = static_cast<long>(family.size());
#pragma omp parallel for schedule(dynamic)
  for (long h = 0; h < n; ++h) {
    auto col = column(blocks, classes, family.members[static_cast<std::size_t>(h)]);
    store(set, static_cast<std::size_t>(h), std::move(col));
  }
  return set;
}

TableSet density_tables_serial(const std::vector<FlagBlock>& blocks, const HFamily& family) {
  TableSet set = tables_shell(blocks, family);
  std::vector<std::map<CanonicalKey, long>> classes;
  for (const auto& b : blocks) classes.push_back(class_index(b.flags));
  for (std::size_t h = 0; h < family.size(); ++h) store(set, h, column(blocks, classes, family.members[h]));
  return set;
}

void write_flags(std::ostream& out, const std::vector<FlagBlock>& blocks) {
  for (const auto& b : blocks) {
    out << "# type " << b.type.name << '\n';
    out << to_line(b.type.shape.graph, b.type.shape.labels) << '\n';
    for (const auto& f : b.flags) out << to_line(f.shape.graph, f.shape.labels) << '\n';
  }
}

std::vector<FlagBlock> read_flags(std::istream& in) {
  std::vector<FlagBlock> blocks;
  std::string line;
  bool expect_type = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# type ", 0) == 0) {
      blocks.push_back(FlagBlock{});
      blocks.back().type.name = line.substr(7);
      expect_type = true;
      continue;
    }
    if (line.front() == '#') continue;
    if (blocks.empty()) bad_input("flags line " + std::to_string(line_no) + " precedes any '# type' header");
    auto [g, labels] = labeled_graph_from_line(line);
    FlagBlock& b = blocks.back();
    if (expect_type) {
      b.type = make_type(b.type.name, std::move(g), std::move(labels));
      expect_type = false;
      continue;
    }
    if (labels != b.type.shape.labels || !type_edges_match(b.type.shape, g) || !g.is_spanning()) {
      bad_input("flags line " + std::to_string(line_no) + " does not extend type " + b.type.name);
    }
    CanonicalKey key = canonical_form(g, labels);
    b.flags.push_back(SigmaFlag{FlagShape{std::move(g), std::move(labels)}, std::move(key)});
  }
  for (const auto& b : blocks) block_dim(b);
  return blocks;
}

}  // namespace cubeflag
