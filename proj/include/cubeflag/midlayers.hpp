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

// The middle three layers of the Boolean lattice, diamond-free colorings,
// and flag density tables for them.

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cubeflag/certify.hpp"
#include "cubeflag/cube.hpp"
#include "cubeflag/rational.hpp"
#include "cubeflag/table.hpp"

namespace cubeflag {

// All subsets of [k] whose sizes are base, base + 1, base + 2 (layers A, B,
// C), ordered by layer and then by mask. M_m is the case k = m,
// base = m/2 - 1.
struct LayeredCube {
  int k = 0;
  int base = 0;
  std::vector<VertexMask> elements;
  std::vector<int> layer;  // 0 = A, 1 = B, 2 = C, per element

  static LayeredCube make(int k, int base);
  std::array<std::size_t, 3> layer_sizes() const;
  std::size_t index_of(VertexMask set) const;  // throws if absent
  // Pairs (i, j), i < j, of elements in consecutive layers differing in one element.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  // Element-index masks {a, b, c, d} with a in A, d in C, a < b, c < d.
  std::vector<std::uint32_t> diamonds() const;
};

using MidPoset = LayeredCube;

// m in {2, 4}.
MidPoset mid_poset(int m);

struct MidFamily {
  std::uint32_t black = 0;  // bit i set = element i present
};

bool is_q2free(const MidPoset& P, std::uint32_t black);

// Symmetric: ground-set permutations. WithFlip: also complementation.
enum class MidGroup { kSymmetric, kSymmetricWithFlip };

// Diamond-free families up to the group; each member is the least mask of
// its orbit, ascending.
std::vector<MidFamily> enumerate_q2free(int m, MidGroup group = MidGroup::kSymmetric);

// |G n A|/|A| + |G n B|/|B| + |G n C|/|C|
Rational mid_density(const MidPoset& P, const MidFamily& G);

// A labeled layered shape; labels index into `cube.elements`. Embeddings
// into M_m map a vertex v to T | phi(v) for a coordinate injection phi and a
// base set T, and when `flip` is set also to the complement of that.
struct MidShape {
  LayeredCube cube;
  std::vector<std::size_t> labels;
  bool flip = false;
};

// A type: a shape with fixed colors on its labeled vertices, and the
// diamond-free colorings of the rest up to label-fixing shape symmetries.
struct MidFlagFamily {
  std::string name;
  std::size_t shape = 0;          // index into the shape list
  std::uint32_t labeled_black = 0;  // bit t = color of labels[t]
  std::vector<std::uint32_t> flags; // colorings over shape elements, orbit minima
};

// The type of `shape` with the given labeled colors (bit t = labels[t]).
MidFlagFamily mid_flag_family(const MidShape& shape, std::size_t shape_index, std::uint32_t labeled_black,
                              std::string name);

// Entries E_theta p(F_i, F_j, theta; G) per type, plus the density row.
TableSet mid_density_table(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types, int m,
                           const std::vector<MidFamily>& families);
TableSet mid_density_table_serial(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types,
                                  int m, const std::vector<MidFamily>& families);

// "layers:S,S,S; black:I,J; labels:K" with optional "; colors:all" and
// "; flip:1" for shapes.
struct MidLine {
  LayeredCube cube;
  std::uint32_t black = 0;
  std::vector<std::size_t> labels;
  bool all_colors = false;
  bool flip = false;
};
MidLine parse_mid_line(std::string_view line);
std::string to_mid_line(const LayeredCube& cube, std::uint32_t black, const std::vector<std::size_t>& labels = {});

void write_mid_families(std::ostream& out, const MidPoset& P, const std::vector<MidFamily>& families);
std::vector<MidFamily> read_mid_families(std::istream& in, int m);

struct ShapeSpec {
  std::vector<MidShape> shapes;
  std::vector<MidFlagFamily> types;
};
// One shape per non-comment line; types are generated from the lines.
ShapeSpec read_shapes(std::istream& in);

// One black labeled A vertex below one unlabeled B vertex, with flip.
ShapeSpec single_edge_shapes();

// The 2x2 Q(sqrt 2) matrix [[(r-1)/2, (r-2)/2], [(r-2)/2, r-1]], r = sqrt 2.
QuadSymMatrix hand_matrix();

}  // namespace cubeflag
