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

#include "cubeflag/cube.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace cubeflag {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) {
    bad_input("cube dimension " + std::to_string(n) + " outside [0, " + std::to_string(kMaxDim) + "]");
  }
}

void append_be64(std::vector<std::uint8_t>& out, std::uint64_t w) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(w >> shift));
}

}  // namespace

int hamming(VertexMask u, VertexMask v) { return std::popcount(u ^ v); }

CoordSet coordinate_spread(std::span<const VertexMask> U) {
  if (U.empty()) bad_input("coordinate_spread of an empty vertex set");
  CoordSet d = 0;
  for (VertexMask v : U) d |= v ^ U.front();
  return d;
}

std::vector<VertexMask> spanned_subcube(std::span<const VertexMask> U) {
  const CoordSet d = coordinate_spread(U);
  const VertexMask fixed = U.front() & ~d;
  const int r = std::popcount(d);
  std::vector<VertexMask> out;
  out.reserve(std::size_t{1} << r);
  for (VertexMask x = 0; x < (VertexMask{1} << r); ++x) out.push_back(fixed | deposit_bits(x, d));
  std::sort(out.begin(), out.end());
  return out;
}

VertexMask deposit_bits(VertexMask compact, CoordSet coords) {
  VertexMask out = 0;
  for (int j = 0; coords != 0; coords &= coords - 1, ++j) {
    if ((compact >> j) & 1U) out |= coords & (~coords + 1);
  }
  return out;
}

VertexMask extract_bits(VertexMask v, CoordSet coords) {
  VertexMask out = 0;
  for (int j = 0; coords != 0; coords &= coords - 1, ++j) {
    if (v & coords & (~coords + 1)) out |= VertexMask{1} << j;
  }
  return out;
}

int cube_edge_count(int n) { return n == 0 ? 0 : n << (n - 1); }

int edge_index(int n, VertexMask low, int coord) {
  const CoordSet others = ((CoordSet{1} << n) - 1) & ~(CoordSet{1} << coord);
  return (coord << (n - 1)) + static_cast<int>(extract_bits(low, others));
}

Edge edge_at(int n, int index) {
  const int coord = index >> (n - 1);
  const CoordSet others = ((CoordSet{1} << n) - 1) & ~(CoordSet{1} << coord);
  return Edge{deposit_bits(static_cast<VertexMask>(index & ((1 << (n - 1)) - 1)), others), coord};
}

int EdgeSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool EdgeSet::contains_all(const EdgeSet& other) const {
  for (int i = 0; i < kWords; ++i) {
    if ((other.words_[i] & ~words_[i]) != 0) return false;
  }
  return true;
}

bool EdgeSet::intersects(const EdgeSet& other) const {
  for (int i = 0; i < kWords; ++i) {
    if ((other.words_[i] & words_[i]) != 0) return true;
  }
  return false;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& o) {
  for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
  return *this;
}

CubeGraph CubeGraph::spanning(int dim) {
  check_dim(dim);
  const std::uint64_t all = dim == kMaxDim ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << dim)) - 1;
  return CubeGraph(dim, all, EdgeSet{});
}

CubeGraph CubeGraph::full(int dim) {
  CubeGraph g = spanning(dim);
  for (int e = 0; e < cube_edge_count(dim); ++e) g.edges_.set(e);
  return g;
}

CubeGraph::CubeGraph(int dim, std::uint64_t vertex_bits, EdgeSet edges)
    : dim_(dim), vertices_(vertex_bits), edges_(edges) {
  check_dim(dim);
  if (dim < kMaxDim && (vertex_bits >> (1 << dim)) != 0) bad_input("vertex outside Q_n");
  bool ok = true;
  edges_.for_each([&](int e) {
    if (e >= cube_edge_count(dim_)) {
      ok = false;
      return;
    }
    const Edge ed = edge_at(dim_, e);
    if (!has_vertex(ed.low) || !has_vertex(ed.high())) ok = false;
  });
  if (!ok) bad_input("edge endpoint missing from the vertex set");
}

bool CubeGraph::has_edge(VertexMask u, VertexMask v) const {
  if (hamming(u, v) != 1 || std::max(u, v) >= (VertexMask{1} << dim_)) return false;
  const int coord = std::countr_zero(u ^ v);
  return edges_.test(edge_index(dim_, std::min(u, v), coord));
}

bool CubeGraph::is_spanning() const { return vertex_count() == (1 << dim_); }

void CubeGraph::add_vertex(VertexMask v) {
  if (v >= (VertexMask{1} << dim_)) bad_input("vertex outside Q_n");
  vertices_ |= std::uint64_t{1} << v;
}

void CubeGraph::add_edge(VertexMask u, VertexMask v) {
  if (hamming(u, v) != 1) bad_input("cube edge endpoints must be at Hamming distance 1");
  add_vertex(u);
  add_vertex(v);
  edges_.set(edge_index(dim_, std::min(u, v), std::countr_zero(u ^ v)));
}

std::vector<VertexMask> CubeGraph::vertices() const {
  std::vector<VertexMask> out;
  for (std::uint64_t b = vertices_; b != 0; b &= b - 1) out.push_back(static_cast<VertexMask>(std::countr_zero(b)));
  return out;
}

std::vector<std::pair<VertexMask, VertexMask>> CubeGraph::edge_list() const {
  std::vector<std::pair<VertexMask, VertexMask>> out;
  edges_.for_each([&](int e) {
    const Edge ed = edge_at(dim_, e);
    out.emplace_back(ed.low, ed.high());
  });
  std::sort(out.begin(), out.end());
  return out;
}

CubeGraph CubeGraph::induced(std::span<const VertexMask> U) const {
  std::uint64_t keep = 0;
  for (VertexMask u : U) {
    if (!has_vertex(u)) bad_input("induced: vertex not in graph");
    keep |= std::uint64_t{1} << u;
  }
  EdgeSet edges;
  edges_.for_each([&](int e) {
    const Edge ed = edge_at(dim_, e);
    if (((keep >> ed.low) & 1U) && ((keep >> ed.high()) & 1U)) edges.set(e);
  });
  return CubeGraph(dim_, keep, edges);
}

CubeAutomorphism::CubeAutomorphism(int dim, std::array<std::uint8_t, kMaxDim> perm, VertexMask flip)
    : dim_(dim), perm_(perm), flip_(flip) {
  check_dim(dim);
  CoordSet seen = 0;
  for (int i = 0; i < dim; ++i) {
    if (perm[i] >= dim || ((seen >> perm[i]) & 1U)) bad_input("automorphism coordinate map is not a permutation");
    seen |= CoordSet{1} << perm[i];
  }
  if (flip >= (VertexMask{1} << dim)) bad_input("automorphism flip outside Q_n");
}

CubeAutomorphism CubeAutomorphism::identity(int dim) {
  std::array<std::uint8_t, kMaxDim> p{};
  std::iota(p.begin(), p.begin() + dim, std::uint8_t{0});
  return CubeAutomorphism(dim, p, 0);
}

VertexMask CubeAutomorphism::apply(VertexMask v) const {
  VertexMask w = 0;
  for (int i = 0; i < dim_; ++i) {
    if ((v >> i) & 1U) w |= VertexMask{1} << perm_[i];
  }
  return w ^ flip_;
}

CubeAutomorphism operator*(const CubeAutomorphism& a, const CubeAutomorphism& b) {
  if (a.dim_ != b.dim_) bad_input("composing automorphisms of different cubes");
  // a(b(v)) = P_a(P_b v ^ f_b) ^ f_a = P_a P_b v ^ (P_a f_b ^ f_a)
  std::array<std::uint8_t, kMaxDim> p{};
  for (int i = 0; i < a.dim_; ++i) p[i] = a.perm_[b.perm_[i]];
  return CubeAutomorphism(a.dim_, p, a.apply(b.flip_));
}

CubeAutomorphism CubeAutomorphism::inverse() const {
  std::array<std::uint8_t, kMaxDim> p{};
  for (int i = 0; i < dim_; ++i) p[perm_[i]] = static_cast<std::uint8_t>(i);
  CubeAutomorphism inv(dim_, p, 0);
  // inverse(w) = P^-1 (w ^ f) = P^-1 w ^ P^-1 f
  inv.flip_ = inv.apply(flip_);
  return inv;
}

std::vector<CubeAutomorphism> automorphisms(int n) {
  check_dim(n);
  std::vector<CubeAutomorphism> out;
  std::array<std::uint8_t, kMaxDim> p{};
  std::iota(p.begin(), p.begin() + n, std::uint8_t{0});
  do {
    for (VertexMask f = 0; f < (VertexMask{1} << n); ++f) out.emplace_back(n, p, f);
  } while (std::next_permutation(p.begin(), p.begin() + n));
  return out;
}

const AutomorphismTable& automorphism_table(int n) {
  check_dim(n);
  static std::array<std::once_flag, kMaxDim + 1> once;
  static std::array<std::unique_ptr<AutomorphismTable>, kMaxDim + 1> tables;
  std::call_once(once[n], [n] {
    auto t = std::make_unique<AutomorphismTable>();
    t->dim = n;
    t->group = automorphisms(n);
    const int nv = 1 << n;
    const int ne = cube_edge_count(n);
    for (const auto& g : t->group) {
      std::vector<std::uint8_t> vi(nv);
      for (int v = 0; v < nv; ++v) vi[v] = static_cast<std::uint8_t>(g.apply(static_cast<VertexMask>(v)));
      std::vector<std::uint16_t> ei(ne);
      for (int e = 0; e < ne; ++e) {
        const Edge ed = edge_at(n, e);
        const VertexMask a = vi[ed.low];
        const VertexMask b = vi[ed.high()];
        ei[e] = static_cast<std::uint16_t>(edge_index(n, std::min(a, b), std::countr_zero(a ^ b)));
      }
      t->vertex_image.push_back(std::move(vi));
      t->edge_image.push_back(std::move(ei));
    }
    tables[n] = std::move(t);
  });
  return *tables[n];
}

EdgeSet apply_to_edges(const AutomorphismTable& table, std::size_t g, const EdgeSet& edges) {
  EdgeSet out;
  const auto& img = table.edge_image[g];
  edges.for_each([&](int e) { out.set(img[e]); });
  return out;
}

CubeGraph apply_automorphism(const CubeAutomorphism& g, const CubeGraph& G) {
  if (g.dim() != G.dim()) bad_input("automorphism and graph dimensions differ");
  std::uint64_t verts = 0;
  for (VertexMask v : G.vertices()) verts |= std::uint64_t{1} << g.apply(v);
  CubeGraph out(G.dim(), verts, EdgeSet{});
  for (auto [u, v] : G.edge_list()) out.add_edge(g.apply(u), g.apply(v));
  return out;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (auto b : k.bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Canonical canonicalize(const CubeGraph& G, std::span<const VertexMask> labels) {
  const auto verts = G.vertices();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!G.has_vertex(labels[i])) bad_input("label outside the vertex set");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) bad_input("labels are not injective");
    }
  }
  Canonical out;
  if (verts.empty()) {
    out.key.bytes = {0, 0};
    return out;
  }

  // Move into the spanned subcube.
  const CoordSet spread = coordinate_spread(verts);
  const int d = std::popcount(spread);
  std::uint64_t cverts = 0;
  for (VertexMask v : verts) cverts |= std::uint64_t{1} << extract_bits(v, spread);
  EdgeSet cedges;
  G.edges().for_each([&](int e) {
    const Edge ed = edge_at(G.dim(), e);
    const VertexMask a = extract_bits(ed.low, spread);
    const VertexMask b = extract_bits(ed.high(), spread);
    cedges.set(edge_index(d, std::min(a, b), std::countr_zero(a ^ b)));
  });
  std::vector<VertexMask> clabels;
  for (VertexMask l : labels) clabels.push_back(extract_bits(l, spread));

  const AutomorphismTable& table = automorphism_table(d);
  const int nwords = (cube_edge_count(d) + 63) / 64;
  std::size_t best = 0;
  std::vector<VertexMask> best_labels;
  std::uint64_t best_verts = 0;
  EdgeSet best_edges;
  std::vector<VertexMask> img_labels(clabels.size());
  for (std::size_t g = 0; g < table.group.size(); ++g) {
    const auto& vi = table.vertex_image[g];
    for (std::size_t i = 0; i < clabels.size(); ++i) img_labels[i] = vi[clabels[i]];
    if (g != 0) {
      const auto c = img_labels <=> best_labels;
      if (c > 0) continue;
      if (c == 0) {
        std::uint64_t iv = 0;
        for (std::uint64_t b = cverts; b != 0; b &= b - 1) iv |= std::uint64_t{1} << vi[std::countr_zero(b)];
        if (iv > best_verts) continue;
        if (iv == best_verts) {
          const EdgeSet ie = apply_to_edges(table, g, cedges);
          bool less = false;
          for (int w = 0; w < nwords; ++w) {
            if (ie.words()[w] != best_edges.words()[w]) {
              less = ie.words()[w] < best_edges.words()[w];
              break;
            }
          }
          if (!less) continue;
          best = g;
          best_edges = ie;
          continue;
        }
      }
    }
    best = g;
    best_labels = img_labels;
    best_verts = 0;
    for (std::uint64_t b = cverts; b != 0; b &= b - 1) best_verts |= std::uint64_t{1} << vi[std::countr_zero(b)];
    best_edges = apply_to_edges(table, g, cedges);
  }
  (void)best;

  auto& bytes = out.key.bytes;
  bytes.push_back(static_cast<std::uint8_t>(d));
  bytes.push_back(static_cast<std::uint8_t>(best_labels.size()));
  for (VertexMask l : best_labels) bytes.push_back(static_cast<std::uint8_t>(l));
  append_be64(bytes, best_verts);
  for (int w = 0; w < nwords; ++w) append_be64(bytes, best_edges.words()[w]);
  out.graph = CubeGraph(d, best_verts, best_edges);
  out.labels = best_labels;
  return out;
}

CanonicalKey canonical_form(const CubeGraph& G, std::span<const VertexMask> labels) {
  return canonicalize(G, labels).key;
}

VertexMask FeasibleMap::apply(VertexMask v) const {
  VertexMask w = v ^ anchor_src;
  VertexMask out = anchor_dst;
  for (; w != 0; w &= w - 1) out ^= VertexMask{1} << coord_map[std::countr_zero(w)];
  return out;
}

CoordSet FeasibleMap::image_coords() const {
  CoordSet c = 0;
  for (int i = 0; i < source_dim; ++i) {
    if (coord_map[i] >= 0) c |= CoordSet{1} << coord_map[i];
  }
  return c;
}

void for_each_feasible_map(const CubeGraph& shape,
                           std::span<const std::pair<VertexMask, VertexMask>> pinned,
                           int target_dim, const FeasibleMapVisitor& visit) {
  check_dim(target_dim);
  const auto verts = shape.vertices();
  if (verts.empty()) bad_input("feasible_maps of an empty shape");
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    if (!shape.has_vertex(pinned[i].first)) bad_input("pinned source is not a shape vertex");
    if (pinned[i].second >= (VertexMask{1} << target_dim)) bad_input("pinned target outside the target cube");
    for (std::size_t j = 0; j < i; ++j) {
      if (hamming(pinned[i].first, pinned[j].first) != hamming(pinned[i].second, pinned[j].second)) {
        bad_input("inconsistent pins: Hamming distances differ");
      }
    }
  }
  const CoordSet spread = coordinate_spread(verts);
  std::vector<int> src_coords;
  for (CoordSet c = spread; c != 0; c &= c - 1) src_coords.push_back(std::countr_zero(c));
  if (static_cast<int>(src_coords.size()) > target_dim) return;

  const bool full_subcube = verts.size() == (std::size_t{1} << src_coords.size());
  std::set<std::vector<VertexMask>> seen;

  FeasibleMap fm;
  fm.source_dim = shape.dim();
  fm.target_dim = target_dim;
  fm.coord_map.fill(-1);
  fm.anchor_src = verts.front();

  auto emit = [&] {
    if (!full_subcube) {
      std::vector<VertexMask> images;
      images.reserve(verts.size());
      for (VertexMask v : verts) images.push_back(fm.apply(v));
      if (!seen.insert(std::move(images)).second) return;
    }
    visit(fm);
  };

  auto finish = [&] {
    if (!pinned.empty()) {
      fm.anchor_dst = 0;
      fm.anchor_dst = pinned.front().second ^ fm.apply(pinned.front().first);
      for (const auto& [src, dst] : pinned) {
        if (fm.apply(src) != dst) return;
      }
      emit();
    } else {
      for (VertexMask a = 0; a < (VertexMask{1} << target_dim); ++a) {
        fm.anchor_dst = a;
        emit();
      }
    }
  };

  CoordSet used = 0;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == src_coords.size()) {
      finish();
      return;
    }
    for (int t = 0; t < target_dim; ++t) {
      if ((used >> t) & 1U) continue;
      used |= CoordSet{1} << t;
      fm.coord_map[src_coords[i]] = static_cast<std::int8_t>(t);
      assign(i + 1);
      used &= ~(CoordSet{1} << t);
    }
    fm.coord_map[src_coords[i]] = -1;
  };
  assign(0);
}

std::vector<FeasibleMap> feasible_maps(const CubeGraph& shape,
                                       std::span<const std::pair<VertexMask, VertexMask>> pinned,
                                       int target_dim) {
  std::vector<FeasibleMap> out;
  for_each_feasible_map(shape, pinned, target_dim, [&](const FeasibleMap& m) { out.push_back(m); });
  return out;
}

}  // namespace cubeflag
