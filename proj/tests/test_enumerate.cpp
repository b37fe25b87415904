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

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "cubeflag/burnside.hpp"
#include "cubeflag/enumerate.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace cubeflag {
namespace {

std::set<oracle::Edges> oracle_reps(const HFamily& family) {
  const auto group = oracle::vertex_automorphisms(family.s);
  std::set<oracle::Edges> reps;
  for (const auto& g : family.members) reps.insert(oracle::orbit_min(oracle::edges_of(g), group));
  return reps;
}

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("forbidden cycle patterns") {
    CHECK(forbidden_cycles(2, 4).cycles.size() == 1);
    CHECK(forbidden_cycles(3, 4).cycles.size() == 6);
    CHECK(forbidden_cycles(3, 6).cycles.size() == 16);
    // Independent count of 6-cycles in Q_3: edge sets of length-6 simple cycles.
    const auto all = oracle::cube_edges(3);
    int six = 0;
    for (std::uint32_t mask = 0; mask < (1U << all.size()); ++mask) {
      if (std::popcount(mask) != 6) continue;
      oracle::Edges e;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if ((mask >> i) & 1U) e.push_back(all[i]);
      }
      std::vector<int> deg(8, 0);
      for (auto [u, v] : e) ++deg[u], ++deg[v];
      if (std::count(deg.begin(), deg.end(), 2) == 6 && oracle::has_cycle(3, e, 6)) ++six;
    }
    CHECK(six == 16);
    CHECK_THROWS_AS(forbidden_cycles(3, 5), Error);
  }

  TEST_CASE("golden family sizes") {
    const HFamily h2 = enumerate_free(2, forbidden_cycles(2, 4));
    CHECK(h2.size() == 5);
    CHECK(enumerate_free(3, forbidden_cycles(3, 4)).size() == 99);
    CHECK(enumerate_free(3, forbidden_cycles(3, 6)).size() == 116);

    // The five C4-free spanning subgraphs of Q_2: empty, one edge, two
    // parallel edges, a 2-path and a 3-path.
    std::set<CanonicalKey> expected;
    for (const char* line : {"2:", "2:0-1", "2:0-1,2-3", "2:0-1,0-2", "2:0-1,0-2,2-3"}) {
      expected.insert(canonical_form(graph_from_line(line)));
    }
    CHECK(std::set<CanonicalKey>(h2.keys.begin(), h2.keys.end()) == expected);
  }

  TEST_CASE("completeness against a naive filter over all edge subsets") {
    for (auto [s, L] : {std::pair{2, 4}, std::pair{3, 4}, std::pair{3, 6}}) {
      const HFamily fam = enumerate_free(s, forbidden_cycles(s, L));
      CHECK(oracle_reps(fam) == oracle::naive_free_classes(s, L));
      std::set<CanonicalKey> keys(fam.keys.begin(), fam.keys.end());
      CHECK(keys.size() == fam.size());
      for (const auto& g : fam.members) {
        CHECK(g.is_spanning());
        CHECK_FALSE(oracle::has_cycle(s, oracle::edges_of(g), L));
      }
    }
  }

  TEST_CASE("parallel and serial enumeration agree byte for byte") {
    for (auto [s, L] : {std::pair{2, 4}, std::pair{3, 4}, std::pair{3, 6}}) {
      std::ostringstream a;
      std::ostringstream b;
      write_family(a, enumerate_free(s, forbidden_cycles(s, L)));
      write_family(b, enumerate_free_serial(s, forbidden_cycles(s, L)));
      CHECK(a.str() == b.str());
    }
  }

  TEST_CASE("family file round trip") {
    const HFamily fam = enumerate_free(3, forbidden_cycles(3, 6));
    std::ostringstream out;
    write_family(out, fam);
    std::istringstream in(out.str());
    const HFamily back = read_family(in);
    CHECK(back.members == fam.members);
    CHECK(back.keys == fam.keys);
    CHECK(back.index_of(fam.members[17]) == std::optional<std::size_t>(17));

    std::istringstream bad("3:0-1,0-9\n");
    CHECK_THROWS_AS(read_family(bad), Error);
    const auto [g, labels] = labeled_graph_from_line("2:0-1 labels:0,1");
    CHECK(labels == std::vector<VertexMask>{0, 1});
    CHECK(to_line(g, labels) == "2:0-1 labels:0,1");
  }

  TEST_CASE("edge density") {
    CHECK(edge_density(CubeGraph::spanning(2)) == 0);
    CHECK(edge_density(graph_from_line("2:0-1,0-2,2-3")) == ratio(3, 4));
    CHECK(edge_density(CubeGraph::full(3)) == 1);
    Rational best = 0;
    for (const auto& h : enumerate_free(3, forbidden_cycles(3, 4)).members) best = std::max(best, edge_density(h));
    CHECK(best == ratio(3, 4));
  }

  TEST_CASE("subgraph density examples") {
    const HFamily h2 = enumerate_free(2, forbidden_cycles(2, 4));
    for (std::size_t i = 0; i < h2.size(); ++i) {
      for (std::size_t j = 0; j < h2.size(); ++j) {
        CHECK(subgraph_density(h2.members[j], h2.members[i]) == (i == j ? 1 : 0));
      }
    }
    CubeGraph one = CubeGraph::spanning(3);
    one.add_edge(0, 1);
    CHECK(subgraph_density(graph_from_line("2:0-1"), one) == ratio(1, 3));
    CHECK_THROWS_AS(subgraph_density(one, graph_from_line("2:0-1")), Error);
  }

  TEST_CASE("subgraph densities of random C4-free graphs sum to one") {
    const HFamily h2 = enumerate_free(2, forbidden_cycles(2, 4));
    std::mt19937_64 rng(41);
    const auto& group = automorphisms(3);
    for (int trial = 0; trial < 200; ++trial) {
      const CubeGraph G = oracle::graph_of(3, oracle::random_free_graph(3, 4, rng));
      Rational total = 0;
      const CubeGraph moved = apply_automorphism(group[rng() % group.size()], G);
      for (const auto& h : h2.members) {
        const Rational p = subgraph_density(h, G);
        CHECK(p == oracle::subcube_density(h, G));
        CHECK(subgraph_density(h, moved) == p);
        total += p;
      }
      CHECK(total == 1);
    }
  }
}

TEST_SUITE("burnside") {
  TEST_CASE("orbit counts match direct enumeration") {
    for (auto [s, L, n] : {std::tuple{2, 4, 5}, std::tuple{3, 4, 99}, std::tuple{3, 6, 116}}) {
      const OrbitCount c = count_free_classes(s, forbidden_cycles(s, L));
      CHECK(c.complete);
      CHECK(c.classes == static_cast<std::uint64_t>(n));
      CHECK(c.shards_done == c.shards_total);
    }
  }

  TEST_CASE("checkpoint resume reproduces the count") {
    const auto dir = std::filesystem::temp_directory_path() / "cubeflag_burnside_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    OrbitCountOptions opt;
    opt.prefix_depth = 6;
    opt.checkpoint = dir / "q3.ckpt";
    // A budget so small that at most part of the work finishes in the first call.
    opt.max_seconds = 1e-9;
    const OrbitCount first = count_free_classes(3, forbidden_cycles(3, 4), opt);
    CHECK(first.shards_done <= first.shards_total);
    opt.max_seconds = 0;
    const OrbitCount second = count_free_classes(3, forbidden_cycles(3, 4), opt);
    CHECK(second.complete);
    CHECK(second.classes == 99);
    const OrbitCount third = count_free_classes(3, forbidden_cycles(3, 4), opt);
    CHECK(third.classes == 99);
    std::filesystem::remove_all(dir);
  }
}

}  // namespace cubeflag
