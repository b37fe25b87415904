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

// Types, sigma-flags, type placements and exact pair densities for cube
// graphs.

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cubeflag/enumerate.hpp"
#include "cubeflag/table.hpp"

namespace cubeflag {

// A labeled graph on a full subcube: labels are the vertex masks in label
// order. Types label every vertex; flags fill Q_k with the type's labels on
// the low r coordinates.
struct FlagShape {
  CubeGraph graph;
  std::vector<VertexMask> labels;
};

struct TypeSigma {
  std::string name;
  FlagShape shape;  // dim r, every vertex labeled

  int dim() const { return shape.graph.dim(); }
};

struct SigmaFlag {
  FlagShape shape;  // full Q_k
  CanonicalKey key; // label-respecting class

  int dim() const { return shape.graph.dim(); }
};

// Validates that labels enumerate all of Q_r without repetition.
TypeSigma make_type(std::string name, CubeGraph graph, std::vector<VertexMask> labels);
// One labeled vertex ("v").
TypeSigma vertex_type();
// Two labeled vertices at distance one, joined ("p1") or not ("p0").
TypeSigma pair_type(bool edge);

// Every F-free sigma-flag on Q_k up to label-pinned isomorphism, ordered by
// edge count and then by the edge mask of the representative.
std::vector<SigmaFlag> enumerate_flags(const TypeSigma& sigma, int k, int vertex_count,
                                       const ForbiddenPattern& pattern);

// Distinct label-image tuples of feasible maps Q_r -> Q_s, ascending.
std::vector<std::vector<VertexMask>> type_maps(const TypeSigma& sigma, const CubeGraph& H);

// Fraction of ordered pairs of feasible maps (f1, f2), both sending the flag
// labels onto theta and with D(Im f1) and D(Im f2) meeting exactly in
// D(theta), whose pulled-back labeled graphs are F_i and F_j.
Rational pair_density(const SigmaFlag& fi, const SigmaFlag& fj, std::span<const VertexMask> theta,
                      const CubeGraph& H);

struct FlagBlock {
  TypeSigma type;
  std::vector<SigmaFlag> flags;
};

// Throws unless s >= 2k - r for every block.
void check_dimension(const std::vector<FlagBlock>& blocks, int s);

// Entries E_theta p(F_i, F_j, theta; H) for each block and the edge density
// row. Columns are computed in parallel; the serial variant is the
// reference.
TableSet density_tables(const std::vector<FlagBlock>& blocks, const HFamily& family);
TableSet density_tables_serial(const std::vector<FlagBlock>& blocks, const HFamily& family);

// Sections "# type NAME" followed by the type line and one line per flag.
void write_flags(std::ostream& out, const std::vector<FlagBlock>& blocks);
std::vector<FlagBlock> read_flags(std::istream& in);

}  // namespace cubeflag
