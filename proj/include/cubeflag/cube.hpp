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

// Bit-level hypercube primitives: vertices are coordinate bitmasks, edges are
// (lower endpoint, coordinate) pairs, automorphisms are signed coordinate
// permutations.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubeflag/error.hpp"

namespace cubeflag {

inline constexpr int kMaxDim = 6;
inline constexpr int kMaxEdges = kMaxDim << (kMaxDim - 1);  // e(Q_6) = 192

using VertexMask = std::uint32_t;
// Bitmask over coordinates [0, n).
using CoordSet = std::uint32_t;

int hamming(VertexMask u, VertexMask v);

// Coordinates on which some pair of U differs. Throws on empty U.
CoordSet coordinate_spread(std::span<const VertexMask> U);

// Vertices of the smallest subcube containing U, ascending.
std::vector<VertexMask> spanned_subcube(std::span<const VertexMask> U);

// Scatter the low bits of `compact` into the positions set in `coords`.
VertexMask deposit_bits(VertexMask compact, CoordSet coords);
// Gather the bits of `v` at `coords` into the low bits.
VertexMask extract_bits(VertexMask v, CoordSet coords);

int cube_edge_count(int n);
// Edge order is coordinate-major, then ascending lower endpoint.
int edge_index(int n, VertexMask low, int coord);

struct Edge {
  VertexMask low = 0;
  int coord = 0;
  VertexMask high() const { return low | (VertexMask{1} << coord); }
};
Edge edge_at(int n, int index);

class EdgeSet {
 public:
  static constexpr int kWords = (kMaxEdges + 63) / 64;

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  int count() const;
  bool empty() const { return count() == 0; }
  bool contains_all(const EdgeSet& other) const;
  bool intersects(const EdgeSet& other) const;
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        fn(w * 64 + __builtin_ctzll(bits));
        bits &= bits - 1;
      }
    }
  }
  EdgeSet& operator|=(const EdgeSet& o);
  const std::array<std::uint64_t, kWords>& words() const { return words_; }
  std::uint64_t low_word() const { return words_[0]; }
  static EdgeSet from_low_word(std::uint64_t w) {
    EdgeSet e;
    e.words_[0] = w;
    return e;
  }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

// A subgraph of Q_n. Every edge joins two present vertices at Hamming
// distance one.
class CubeGraph {
 public:
  CubeGraph() = default;
  // All 2^n vertices, no edges.
  static CubeGraph spanning(int dim);
  // The full cube Q_n.
  static CubeGraph full(int dim);
  CubeGraph(int dim, std::uint64_t vertex_bits, EdgeSet edges);

  int dim() const { return dim_; }
  std::uint64_t vertex_bits() const { return vertices_; }
  const EdgeSet& edges() const { return edges_; }

  bool has_vertex(VertexMask v) const { return (vertices_ >> v) & 1U; }
  bool has_edge(VertexMask u, VertexMask v) const;
  int edge_count() const { return edges_.count(); }
  int vertex_count() const { return __builtin_popcountll(vertices_); }
  bool is_spanning() const;

  void add_vertex(VertexMask v);
  // Adds both endpoints if missing. Throws unless hamming(u, v) == 1.
  void add_edge(VertexMask u, VertexMask v);

  std::vector<VertexMask> vertices() const;
  // (u, v) with u < v, ascending.
  std::vector<std::pair<VertexMask, VertexMask>> edge_list() const;

  // Subgraph induced on `U` (same ambient dimension).
  CubeGraph induced(std::span<const VertexMask> U) const;

  friend bool operator==(const CubeGraph&, const CubeGraph&) = default;

 private:
  int dim_ = 0;
  std::uint64_t vertices_ = 0;
  EdgeSet edges_;
};

// v -> permute_bits(v, perm) XOR flip, where bit i moves to position perm[i].
class CubeAutomorphism {
 public:
  CubeAutomorphism() = default;
  CubeAutomorphism(int dim, std::array<std::uint8_t, kMaxDim> perm, VertexMask flip);
  static CubeAutomorphism identity(int dim);

  int dim() const { return dim_; }
  VertexMask flip() const { return flip_; }
  int perm(int i) const { return perm_[i]; }
  VertexMask apply(VertexMask v) const;

  // (a * b)(v) = a(b(v)).
  friend CubeAutomorphism operator*(const CubeAutomorphism& a, const CubeAutomorphism& b);
  CubeAutomorphism inverse() const;
  friend bool operator==(const CubeAutomorphism&, const CubeAutomorphism&) = default;

 private:
  int dim_ = 0;
  std::array<std::uint8_t, kMaxDim> perm_{};
  VertexMask flip_ = 0;
};

// All n!*2^n automorphisms of Q_n: permutations in lexicographic order, flip
// masks ascending within each permutation. 0 <= n <= kMaxDim.
std::vector<CubeAutomorphism> automorphisms(int n);

// Cached vertex and edge images for every automorphism of Q_n.
struct AutomorphismTable {
  int dim = 0;
  std::vector<CubeAutomorphism> group;
  std::vector<std::vector<std::uint8_t>> vertex_image;   // [g][v]
  std::vector<std::vector<std::uint16_t>> edge_image;    // [g][edge index]
};
const AutomorphismTable& automorphism_table(int n);

CubeGraph apply_automorphism(const CubeAutomorphism& g, const CubeGraph& G);
EdgeSet apply_to_edges(const AutomorphismTable& table, std::size_t g, const EdgeSet& edges);

struct CanonicalKey {
  std::vector<std::uint8_t> bytes;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const;
};

struct Canonical {
  CanonicalKey key;
  // The minimizing image, moved into the d(V)-dimensional cube.
  CubeGraph graph;
  std::vector<VertexMask> labels;
};

// Minimum encoding over all automorphisms after compressing V(G) into its
// spanned subcube. With labels, the encoding starts with the label images, so
// equal keys mean a label-respecting feasible isomorphism.
Canonical canonicalize(const CubeGraph& G, std::span<const VertexMask> labels = {});
CanonicalKey canonical_form(const CubeGraph& G, std::span<const VertexMask> labels = {});

// A feasible map: coordinate injection phi on D(V) plus one anchored image.
struct FeasibleMap {
  int source_dim = 0;
  int target_dim = 0;
  std::array<std::int8_t, kMaxDim> coord_map{};  // -1 outside D(V)
  VertexMask anchor_src = 0;
  VertexMask anchor_dst = 0;

  VertexMask apply(VertexMask v) const;
  // Image of D(V) under phi.
  CoordSet image_coords() const;
};

using FeasibleMapVisitor = std::function<void(const FeasibleMap&)>;

// Streams every feasible map of V(shape) into {0,1}^target_dim whose vertex
// map sends each pinned source to its target, each distinct vertex map once.
void for_each_feasible_map(const CubeGraph& shape,
                           std::span<const std::pair<VertexMask, VertexMask>> pinned,
                           int target_dim, const FeasibleMapVisitor& visit);
std::vector<FeasibleMap> feasible_maps(const CubeGraph& shape,
                                       std::span<const std::pair<VertexMask, VertexMask>> pinned,
                                       int target_dim);

}  // namespace cubeflag
