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

#include <random>
#include <set>

#include "cubeflag/cube.hpp"
#include "cubeflag/enumerate.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace cubeflag {
namespace {

CubeGraph random_graph(int n, std::mt19937_64& rng) {
  CubeGraph g = CubeGraph::spanning(n);
  for (int e = 0; e < cube_edge_count(n); ++e) {
    if (rng() & 1U) {
      const Edge ed = edge_at(n, e);
      g.add_edge(ed.low, ed.high());
    }
  }
  return g;
}

std::vector<VertexMask> images(const FeasibleMap& f, const std::vector<VertexMask>& src) {
  std::vector<VertexMask> out;
  for (VertexMask v : src) out.push_back(f.apply(v));
  return out;
}

}  // namespace

TEST_SUITE("cube") {
  TEST_CASE("hamming distance") {
    CHECK(hamming(0b000, 0b000) == 0);
    CHECK(hamming(0b001, 0b011) == 1);
    CHECK(hamming(0b101, 0b010) == 3);
  }

  TEST_CASE("coordinate spread and spanned subcube") {
    const std::vector<VertexMask> a{0b00};
    const std::vector<VertexMask> b{0b00, 0b01};
    const std::vector<VertexMask> c{0b000, 0b011, 0b100};
    CHECK(coordinate_spread(a) == 0U);
    CHECK(coordinate_spread(b) == 0b1U);
    CHECK(coordinate_spread(c) == 0b111U);
    CHECK_THROWS_AS(coordinate_spread(std::vector<VertexMask>{}), Error);

    CHECK(spanned_subcube(std::vector<VertexMask>{0b01}) == std::vector<VertexMask>{0b01});
    CHECK(spanned_subcube(std::vector<VertexMask>{0b00, 0b11}) == std::vector<VertexMask>{0, 1, 2, 3});
    CHECK(spanned_subcube(std::vector<VertexMask>{0b000, 0b001, 0b010}) == std::vector<VertexMask>{0, 1, 2, 3});

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<VertexMask> U;
      const int size = 1 + static_cast<int>(rng() % 5);
      for (int i = 0; i < size; ++i) U.push_back(static_cast<VertexMask>(rng() % 32));
      CHECK(spanned_subcube(U).size() == (std::size_t{1} << std::popcount(coordinate_spread(U))));
    }
  }

  TEST_CASE("edge indexing is a bijection") {
    for (int n = 1; n <= kMaxDim; ++n) {
      CHECK(cube_edge_count(n) == n << (n - 1));
      for (int e = 0; e < cube_edge_count(n); ++e) {
        const Edge ed = edge_at(n, e);
        CHECK(hamming(ed.low, ed.high()) == 1);
        CHECK(edge_index(n, ed.low, ed.coord) == e);
      }
    }
  }

  TEST_CASE("automorphism group sizes") {
    CHECK(automorphisms(1).size() == 2);
    CHECK(automorphisms(3).size() == 48);
    CHECK(automorphisms(4).size() == 384);
    CHECK_THROWS_AS(automorphisms(kMaxDim + 1), Error);
    // Same group as the adjacency-preserving permutations found by search.
    for (int n = 1; n <= 3; ++n) {
      std::set<std::vector<int>> lib;
      for (const auto& g : automorphisms(n)) {
        std::vector<int> img;
        for (VertexMask v = 0; v < (VertexMask{1} << n); ++v) img.push_back(static_cast<int>(g.apply(v)));
        lib.insert(img);
      }
      const auto ref = oracle::vertex_automorphisms(n);
      CHECK(lib == std::set<std::vector<int>>(ref.begin(), ref.end()));
    }
  }

  TEST_CASE("automorphisms preserve distance and compose") {
    const auto group = automorphisms(4);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const auto& g = group[rng() % group.size()];
      const auto& h = group[rng() % group.size()];
      const VertexMask u = rng() % 16;
      const VertexMask v = rng() % 16;
      CHECK(hamming(g.apply(u), g.apply(v)) == hamming(u, v));
      CHECK((g * h).apply(u) == g.apply(h.apply(u)));
      CHECK(g.inverse().apply(g.apply(u)) == u);
    }
    const auto id = CubeAutomorphism::identity(4);
    for (VertexMask v = 0; v < 16; ++v) CHECK(id.apply(v) == v);
  }

  TEST_CASE("apply_automorphism examples") {
    std::mt19937_64 rng(3);
    const CubeGraph G = random_graph(3, rng);
    CHECK(apply_automorphism(CubeAutomorphism::identity(3), G) == G);

    CubeGraph single = CubeGraph::spanning(3);
    single.add_edge(0b000, 0b001);
    const CubeAutomorphism flip_all(3, {0, 1, 2, 3, 4, 5}, 0b111);
    const CubeGraph img = apply_automorphism(flip_all, single);
    CHECK(img.edge_count() == 1);
    CHECK(img.has_edge(0b111, 0b110));

    const CubeGraph path = graph_from_line("2:0-1,0-2");
    const CubeAutomorphism swap(2, {1, 0, 2, 3, 4, 5}, 0);
    CHECK(canonical_form(apply_automorphism(swap, path)) == canonical_form(path));
    CHECK_THROWS_AS(apply_automorphism(swap, G), Error);
  }

  TEST_CASE("canonical form examples") {
    CubeGraph a = CubeGraph::spanning(3);
    a.add_edge(0b000, 0b001);
    CubeGraph b = CubeGraph::spanning(3);
    b.add_edge(0b110, 0b111);
    CHECK(canonical_form(a) == canonical_form(b));

    // Two labeled flags related only by a label-moving symmetry stay distinct.
    const CubeGraph f1 = graph_from_line("2:0-2");
    const CubeGraph f2 = graph_from_line("2:1-3");
    const std::vector<VertexMask> labels{0, 1};
    CHECK(canonical_form(f1) == canonical_form(f2));
    CHECK(canonical_form(f1, labels) != canonical_form(f2, labels));
  }

  TEST_CASE("canonical form is invariant under random automorphisms") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const CubeGraph G = random_graph(n, rng);
      const auto& group = automorphisms(n);
      const auto& g = group[rng() % group.size()];
      CHECK(canonical_form(apply_automorphism(g, G)) == canonical_form(G));

      std::vector<VertexMask> labels{static_cast<VertexMask>(rng() % (1U << n))};
      labels.push_back(labels[0] ^ 1U);
      std::vector<VertexMask> moved;
      for (VertexMask l : labels) moved.push_back(g.apply(l));
      CHECK(canonical_form(apply_automorphism(g, G), moved) == canonical_form(G, labels));
    }
  }

  TEST_CASE("canonical keys agree with brute-force orbits on Q_3") {
    const auto group = oracle::vertex_automorphisms(3);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const CubeGraph A = random_graph(3, rng);
      CubeGraph B = random_graph(3, rng);
      if (trial % 3 == 0) B = apply_automorphism(automorphisms(3)[rng() % 48], A);
      const bool same_orbit =
          oracle::orbit_min(oracle::edges_of(A), group) == oracle::orbit_min(oracle::edges_of(B), group);
      CHECK((canonical_form(A) == canonical_form(B)) == same_orbit);
    }
  }

  TEST_CASE("feasible map counts") {
    CubeGraph edge_shape(1, 0b11, EdgeSet{});
    const std::vector<std::pair<VertexMask, VertexMask>> pin_edge{{0, 0b010}, {1, 0b011}};
    CHECK(feasible_maps(edge_shape, pin_edge, 3).size() == 1);

    const CubeGraph square = CubeGraph::spanning(2);
    CHECK(feasible_maps(square, pin_edge, 3).size() == 2);
    CHECK(feasible_maps(square, {}, 3).size() == 48);

    const std::vector<std::pair<VertexMask, VertexMask>> bad{{0, 0}, {1, 0b011}};
    CHECK_THROWS_AS(feasible_maps(square, bad, 3), Error);
  }

  TEST_CASE("feasible maps match brute-force isometric placements") {
    std::mt19937_64 rng(5);
    for (int r = 0; r <= 3; ++r) {
      for (int s = r; s <= 4; ++s) {
        const CubeGraph shape = CubeGraph::spanning(r);
        const auto src = shape.vertices();
        std::vector<int> isrc(src.begin(), src.end());
        for (int pinned = 0; pinned <= std::min(r, 1) + 1 && pinned <= static_cast<int>(src.size()); ++pinned) {
          std::vector<std::pair<VertexMask, VertexMask>> pins;
          std::vector<std::pair<int, int>> ipins;
          if (pinned >= 1) {
            const VertexMask t = rng() % (1U << s);
            pins.emplace_back(0, t);
            ipins.emplace_back(0, static_cast<int>(t));
            if (pinned == 2 && r >= 1 && s >= 1) {
              const VertexMask t2 = t ^ (1U << (rng() % s));
              pins.emplace_back(1, t2);
              ipins.emplace_back(1, static_cast<int>(t2));
            }
          }
          std::set<std::vector<int>> lib;
          std::size_t count = 0;
          for_each_feasible_map(shape, pins, s, [&](const FeasibleMap& f) {
            ++count;
            const auto img = images(f, src);
            lib.insert(std::vector<int>(img.begin(), img.end()));
          });
          CHECK(count == lib.size());
          CHECK(lib == oracle::isometric_maps(isrc, s, ipins));
        }
      }
    }
  }
}

}  // namespace cubeflag
