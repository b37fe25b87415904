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

// F-free spanning subgraphs of Q_s up to cube automorphism.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cubeflag/cube.hpp"
#include "cubeflag/rational.hpp"

namespace cubeflag {

struct ForbiddenPattern {
  int dim = 0;
  int cycle_length = 0;
  std::vector<EdgeSet> cycles;
};

// Every cycle of length L (4 or 6) in Q_s, each once, ordered by edge set.
// Q_1 has no cycles; s = 1 yields an empty pattern.
ForbiddenPattern forbidden_cycles(int s, int L);

bool is_free(const CubeGraph& G, const ForbiddenPattern& pattern);

struct HFamily {
  int s = 0;
  std::vector<CubeGraph> members;   // canonical representatives
  std::vector<CanonicalKey> keys;   // ascending, parallel to members

  std::size_t size() const { return members.size(); }
  // Position of the class of G, if it is a member.
  std::optional<std::size_t> index_of(const CubeGraph& G) const;
};

// Depth-first over edges in index order, pruning branches that complete a
// forbidden cycle. The parallel version splits on the first edge decisions;
// both return members sorted by canonical key.
HFamily enumerate_free(int s, const ForbiddenPattern& pattern);
HFamily enumerate_free_serial(int s, const ForbiddenPattern& pattern);

// e(H) / e(Q_n) for a spanning H.
Rational edge_density(const CubeGraph& H);

// Fraction of feasible maps V(H) -> V(G) whose image induces a copy of H.
Rational subgraph_density(const CubeGraph& H, const CubeGraph& G);

// "dim:u-v,u-v,..." with edges ascending; the graph is spanning.
std::string to_line(const CubeGraph& G);
CubeGraph graph_from_line(std::string_view line);
// Labeled variant: "dim:EDGES labels:a,b,...".
std::string to_line(const CubeGraph& G, std::span<const VertexMask> labels);
std::pair<CubeGraph, std::vector<VertexMask>> labeled_graph_from_line(std::string_view line);

void write_family(std::ostream& out, const HFamily& family);
HFamily read_family(std::istream& in);

}  // namespace cubeflag
