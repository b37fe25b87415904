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

#include "cubeflag/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>

#include <omp.h>

namespace cubeflag {

namespace {

EdgeSet square_at(int s, VertexMask u, int a, int b) {
  EdgeSet e;
  e.set(edge_index(s, u, a));
  e.set(edge_index(s, u, b));
  e.set(edge_index(s, u | (VertexMask{1} << a), b));
  e.set(edge_index(s, u | (VertexMask{1} << b), a));
  return e;
}

bool edge_set_less(const EdgeSet& x, const EdgeSet& y) { return x.words() < y.words(); }

void collect_cycles(int s, int length, std::vector<EdgeSet>& out) {
  const VertexMask nv = VertexMask{1} << s;
  std::set<std::array<std::uint64_t, EdgeSet::kWords>> seen;
  std::vector<VertexMask> path;
  std::function<void()> extend = [&] {
    const VertexMask last = path.back();
    if (static_cast<int>(path.size()) == length) {
      if (hamming(last, path.front()) != 1) return;
      EdgeSet es;
      for (int i = 0; i < length; ++i) {
        const VertexMask a = path[i];
        const VertexMask b = path[(i + 1) % length];
        es.set(edge_index(s, std::min(a, b), std::countr_zero(a ^ b)));
      }
      if (seen.insert(es.words()).second) out.push_back(es);
      return;
    }
    for (int c = 0; c < s; ++c) {
      const VertexMask w = last ^ (VertexMask{1} << c);
      // The first vertex is the cycle's minimum.
      if (w <= path.front() || std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      extend();
      path.pop_back();
    }
  };
  for (VertexMask v = 0; v < nv; ++v) {
    path = {v};
    extend();
  }
}

// Shared DFS state for s <= 4 (at most 32 edges, one machine word).
struct FreeSearch {
  int s = 0;
  int edges = 0;
  std::vector<std::vector<std::uint64_t>> cycles_through;  // per edge

  FreeSearch(int dim, const ForbiddenPattern& pattern) : s(dim), edges(cube_edge_count(dim)) {
    if (pattern.dim != dim) bad_input("pattern dimension does not match the cube");
    cycles_through.resize(edges);
    for (const auto& c : pattern.cycles) {
      const std::uint64_t m = c.low_word();
      for (std::uint64_t b = m; b != 0; b &= b - 1) cycles_through[std::countr_zero(b)].push_back(m);
    }
  }

  bool can_add(std::uint64_t mask, int e) const {
    const std::uint64_t next = mask | (std::uint64_t{1} << e);
    for (std::uint64_t c : cycles_through[e]) {
      if ((next & c) == c) return false;
    }
    return true;
  }

  template <typename Leaf>
  void run(int e, std::uint64_t mask, Leaf& leaf) const {
    if (e == edges) {
      leaf(mask);
      return;
    }
    run(e + 1, mask, leaf);
    if (can_add(mask, e)) run(e + 1, mask | (std::uint64_t{1} << e), leaf);
  }
};

void check_enum_dim(int s) {
  if (s < 1 || s > 4) bad_input("enumeration supports 1 <= s <= 4, got " + std::to_string(s));
}

HFamily assemble(int s, std::vector<Canonical>& found) {
  std::sort(found.begin(), found.end(), [](const Canonical& a, const Canonical& b) { return a.key < b.key; });
  found.erase(std::unique(found.begin(), found.end(), [](const Canonical& a, const Canonical& b) { return a.key == b.key; }),
              found.end());
  HFamily fam;
  fam.s = s;
  for (auto& c : found) {
    fam.keys.push_back(std::move(c.key));
    fam.members.push_back(std::move(c.graph));
  }
  return fam;
}

std::vector<VertexMask> parse_mask_list(std::string_view text) {
  std::vector<VertexMask> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string item(text.substr(pos, end - pos));
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      bad_input("malformed vertex list '" + std::string(text) + "'");
    }
    out.push_back(static_cast<VertexMask>(std::stoul(item)));
    pos = end + 1;
  }
  return out;
}

}  // namespace

ForbiddenPattern forbidden_cycles(int s, int L) {
  if (L != 4 && L != 6) bad_input("unsupported cycle length " + std::to_string(L) + " (use 4 or 6)");
  if (s < 1 || s > kMaxDim) bad_input("pattern dimension out of range");
  ForbiddenPattern p;
  p.dim = s;
  p.cycle_length = L;
  if (L == 4) {
    for (int a = 0; a < s; ++a) {
      for (int b = a + 1; b < s; ++b) {
        for (VertexMask u = 0; u < (VertexMask{1} << s); ++u) {
          if (((u >> a) & 1U) || ((u >> b) & 1U)) continue;
          p.cycles.push_back(square_at(s, u, a, b));
        }
      }
    }
  } else {
    collect_cycles(s, L, p.cycles);
  }
  std::sort(p.cycles.begin(), p.cycles.end(), edge_set_less);
  return p;
}

bool is_free(const CubeGraph& G, const ForbiddenPattern& pattern) {
  if (G.dim() != pattern.dim) bad_input("pattern dimension does not match the graph");
  return std::none_of(pattern.cycles.begin(), pattern.cycles.end(),
                      [&](const EdgeSet& c) { return G.edges().contains_all(c); });
}

std::optional<std::size_t> HFamily::index_of(const CubeGraph& G) const {
  const CanonicalKey k = canonical_form(G);
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || *it != k) return std::nullopt;
  return static_cast<std::size_t>(it - keys.begin());
}

HFamily enumerate_free_serial(int s, const ForbiddenPattern& pattern) {
  check_enum_dim(s);
  const FreeSearch search(s, pattern);
  const std::uint64_t all = (std::uint64_t{1} << (1 << s)) - 1;
  std::set<CanonicalKey> seen;
  std::vector<Canonical> found;
  auto leaf = [&](std::uint64_t mask) {
    Canonical c = canonicalize(CubeGraph(s, all, EdgeSet::from_low_word(mask)));
    if (seen.insert(c.key).second) found.push_back(std::move(c));
  };
  search.run(0, 0, leaf);
  return assemble(s, found);
}

HFamily enumerate_free(int s, const ForbiddenPattern& pattern) {
  check_enum_dim(s);
  const FreeSearch search(s, pattern);
  const std::uint64_t all = (std::uint64_t{1} << (1 << s)) - 1;
  const int depth = std::min(search.edges, 8);
  const long tasks = 1L << depth;
  std::vector<std::vector<Canonical>> per_task(static_cast<std::size_t>(tasks));

#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < tasks; ++t) {
    std::uint64_t mask = 0;
    bool ok = true;
    for (int e = 0; e < depth && ok; ++e) {
      if ((t >> e) & 1L) {
        ok = search.can_add(mask, e);
        mask |= std::uint64_t{1} << e;
      }
    }
    if (!ok) continue;
    std::set<CanonicalKey> seen;
    auto& out = per_task[static_cast<std::size_t>(t)];
    auto leaf = [&](std::uint64_t m) {
      Canonical c = canonicalize(CubeGraph(s, all, EdgeSet::from_low_word(m)));
      if (seen.insert(c.key).second) out.push_back(std::move(c));
    };
    search.run(depth, mask, leaf);
  }

  std::vector<Canonical> found;
  for (auto& v : per_task) {
    for (auto& c : v) found.push_back(std::move(c));
  }
  return assemble(s, found);
}

Rational edge_density(const CubeGraph& H) {
  if (H.dim() == 0) bad_input("edge density of a 0-dimensional graph");
  if (!H.is_spanning()) bad_input("edge density needs a spanning graph");
  return ratio(H.edge_count(), cube_edge_count(H.dim()));
}

Rational subgraph_density(const CubeGraph& H, const CubeGraph& G) {
  if (!H.is_spanning()) bad_input("subgraph_density: H must be spanning");
  if (H.dim() > G.dim()) bad_input("subgraph_density: dim(H) exceeds dim(G)");
  const CanonicalKey target = canonical_form(H);
  const int s = H.dim();
  long total = 0;
  long hits = 0;
  for_each_feasible_map(H, {}, G.dim(), [&](const FeasibleMap& f) {
    std::array<VertexMask, 1 << kMaxDim> img{};
    for (VertexMask x = 0; x < (VertexMask{1} << s); ++x) {
      img[x] = f.apply(x);
      if (!G.has_vertex(img[x])) return;
    }
    ++total;
    CubeGraph pulled = CubeGraph::spanning(s);
    for (int e = 0; e < cube_edge_count(s); ++e) {
      const Edge ed = edge_at(s, e);
      if (G.has_edge(img[ed.low], img[ed.high()])) pulled.add_edge(ed.low, ed.high());
    }
    if (canonical_form(pulled) == target) ++hits;
  });
  if (total == 0) return Rational(0);
  return ratio(hits, total);
}

std::string to_line(const CubeGraph& G) {
  if (!G.is_spanning()) bad_input("line format stores spanning graphs only");
  std::string out = std::to_string(G.dim()) + ":";
  bool first = true;
  for (auto [u, v] : G.edge_list()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(u) + "-" + std::to_string(v);
  }
  return out;
}

CubeGraph graph_from_line(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) bad_input("graph line lacks 'dim:' prefix: '" + std::string(line) + "'");
  const std::string dim_text(line.substr(0, colon));
  if (dim_text.find_first_not_of("0123456789") != std::string::npos) bad_input("bad dimension in '" + std::string(line) + "'");
  CubeGraph g = CubeGraph::spanning(std::stoi(dim_text));
  std::string_view rest = line.substr(colon + 1);
  std::size_t pos = 0;
  std::vector<std::pair<VertexMask, VertexMask>> seen;
  while (pos < rest.size()) {
    auto end = rest.find(',', pos);
    if (end == std::string_view::npos) end = rest.size();
    const std::string_view item = rest.substr(pos, end - pos);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) bad_input("malformed edge '" + std::string(item) + "'");
    const auto ends = parse_mask_list(std::string(item.substr(0, dash)) + "," + std::string(item.substr(dash + 1)));
    if (ends.size() != 2 || ends[0] >= ends[1]) bad_input("edge endpoints must be ascending: '" + std::string(item) + "'");
    if (ends[1] >= (VertexMask{1} << g.dim())) bad_input("edge outside Q_n: '" + std::string(item) + "'");
    if (!seen.empty() && std::pair(ends[0], ends[1]) <= seen.back()) bad_input("edges must be strictly ascending");
    seen.emplace_back(ends[0], ends[1]);
    g.add_edge(ends[0], ends[1]);
    pos = end + 1;
  }
  return g;
}

std::string to_line(const CubeGraph& G, std::span<const VertexMask> labels) {
  std::string out = to_line(G) + " labels:";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(labels[i]);
  }
  return out;
}

std::pair<CubeGraph, std::vector<VertexMask>> labeled_graph_from_line(std::string_view line) {
  const auto sp = line.find(" labels:");
  if (sp == std::string_view::npos) bad_input("flag line lacks ' labels:' suffix");
  CubeGraph g = graph_from_line(line.substr(0, sp));
  auto labels = parse_mask_list(line.substr(sp + 8));
  for (VertexMask l : labels) {
    if (!g.has_vertex(l)) bad_input("label outside the cube");
  }
  return {std::move(g), std::move(labels)};
}

void write_family(std::ostream& out, const HFamily& family) {
  for (const auto& g : family.members) out << to_line(g) << '\n';
}

HFamily read_family(std::istream& in) {
  HFamily fam;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    CubeGraph g = graph_from_line(line);
    if (first) {
      fam.s = g.dim();
      first = false;
    } else if (g.dim() != fam.s) {
      bad_input("family mixes dimensions");
    }
    fam.keys.push_back(canonical_form(g));
    fam.members.push_back(std::move(g));
  }
  return fam;
}

}  // namespace cubeflag
