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

#include <fstream>
#include <sstream>

#include "cubeflag/certify.hpp"
#include "cubeflag/midlayers.hpp"
#include "cubeflag/pipeline.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace cubeflag {
namespace {

std::vector<unsigned> black_sets(const MidPoset& P, std::uint32_t black) {
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < P.elements.size(); ++i) {
    if ((black >> i) & 1U) out.push_back(P.elements[i]);
  }
  return out;
}

// The eleven m = 2 families in reference order.
const char* const kReferenceOrder[] = {"", "3", "0", "1", "1,2", "1,3", "0,1", "0,3", "0,1,3", "1,2,3", "0,1,2"};

std::vector<std::size_t> reference_columns(const std::vector<MidFamily>& families) {
  std::vector<std::size_t> cols;
  for (const char* black : kReferenceOrder) {
    const MidLine line = parse_mid_line(std::string("layers:1,2,1; black:") + black + "; labels:");
    std::size_t found = families.size();
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (families[i].black == line.black) found = i;
    }
    REQUIRE(found < families.size());
    cols.push_back(found);
  }
  return cols;
}

}  // namespace

TEST_SUITE("midlayers") {
  TEST_CASE("middle layer posets") {
    const MidPoset p2 = mid_poset(2);
    CHECK(p2.layer_sizes() == std::array<std::size_t, 3>{1, 2, 1});
    CHECK(p2.hasse_edges().size() == 4);
    CHECK(p2.diamonds().size() == 1);
    const MidPoset p4 = mid_poset(4);
    CHECK(p4.layer_sizes() == std::array<std::size_t, 3>{4, 6, 4});
    CHECK(p4.hasse_edges().size() == 24);
    for (auto [a, b] : p4.hasse_edges()) CHECK(p4.layer[b] == p4.layer[a] + 1);
    CHECK_THROWS_AS(mid_poset(3), Error);
    CHECK(p4.index_of(0b0011) < p4.elements.size());
    CHECK_THROWS_AS(p4.index_of(0b1111), Error);
  }

  TEST_CASE("diamond-free family counts") {
    const auto f2 = enumerate_q2free(2);
    CHECK(f2.size() == 11);
    const MidPoset p2 = mid_poset(2);
    for (const auto& f : f2) CHECK(f.black != 0b1111U);
    // 15 diamond-free patterns, 7 of them fixed by the middle swap.
    CHECK((15 + 7) / 2 == 11);
    CHECK(oracle::MidOracle(2).count_classes(false) == 11);

    const auto f4 = enumerate_q2free(4);
    CHECK(f4.size() == 606);
    CHECK(oracle::MidOracle(4).count_classes(false) == 606);
    CHECK(enumerate_q2free(4, MidGroup::kSymmetricWithFlip).size() == oracle::MidOracle(4).count_classes(true));
    const MidPoset p4 = mid_poset(4);
    const oracle::MidOracle o4(4);
    for (const auto& f : f4) {
      CHECK(is_q2free(p4, f.black));
      CHECK(o4.diamond_free(black_sets(p4, f.black)));
    }
    CHECK_FALSE(is_q2free(p2, 0b1111));
  }

  TEST_CASE("layer-normalized density") {
    const MidPoset p4 = mid_poset(4);
    const oracle::MidOracle o4(4);
    CHECK(mid_density(p4, MidFamily{(1U << 14) - 1}) == 3);
    for (const auto& f : enumerate_q2free(4)) CHECK(mid_density(p4, f) == o4.density(black_sets(p4, f.black)));
  }

  TEST_CASE("single-edge flags reproduce the m = 2 reference table") {
    const auto families = enumerate_q2free(2);
    const ShapeSpec spec = single_edge_shapes();
    REQUIRE(spec.types.size() == 1);
    CHECK(spec.types[0].flags.size() == 2);
    const TableSet t = mid_density_table(spec.shapes, spec.types, 2, families);
    const auto cols = reference_columns(families);
    const char* d[] = {"0", "1", "1", "1/2", "1", "3/2", "3/2", "2", "5/2", "2", "2"};
    const char* f00[] = {"0", "1/2", "1/2", "0", "0", "0", "0", "1", "0", "0", "0"};
    const char* f01[] = {"0", "0", "0", "0", "0", "1/4", "1/4", "0", "1/2", "0", "0"};
    const char* f11[] = {"0", "0", "0", "0", "0", "0", "0", "0", "0", "1/2", "1/2"};
    const DensityTable& tab = t.tables[0];
    for (std::size_t k = 0; k < 11; ++k) {
      const std::size_t h = cols[k];
      CAPTURE(k);
      CHECK(t.density[h] == parse_rational(d[k]));
      CHECK(tab.entries[tab.row_of(0, 0)][h] == parse_rational(f00[k]));
      CHECK(tab.entries[tab.row_of(0, 1)][h] == parse_rational(f01[k]));
      CHECK(tab.entries[tab.row_of(1, 1)][h] == parse_rational(f11[k]));
    }
  }

  TEST_CASE("flag-pair probabilities sum to the black share of the end layers") {
    const auto families = enumerate_q2free(2);
    const ShapeSpec spec = single_edge_shapes();
    const TableSet t = mid_density_table(spec.shapes, spec.types, 2, families);
    const DensityTable& tab = t.tables[0];
    const MidPoset p2 = mid_poset(2);
    for (std::size_t h = 0; h < families.size(); ++h) {
      int black_ends = 0;
      for (std::size_t i = 0; i < p2.elements.size(); ++i) {
        if (p2.layer[i] != 1 && ((families[h].black >> i) & 1U)) ++black_ends;
      }
      const Rational sum =
          tab.entries[tab.row_of(0, 0)][h] + 2 * tab.entries[tab.row_of(0, 1)][h] + tab.entries[tab.row_of(1, 1)][h];
      CHECK(sum == ratio(black_ends, 2));
    }
  }

  TEST_CASE("hand matrix bound") {
    const auto families = enumerate_q2free(2);
    const ShapeSpec spec = single_edge_shapes();
    const TableSet t = mid_density_table(spec.shapes, spec.types, 2, families);
    const auto cols = reference_columns(families);
    const auto cert = certified_bound(std::vector<QuadSymMatrix>{hand_matrix()}, t);
    const QuadRational target(ratio(3, 2), ratio(1, 2));
    CHECK(cert.bound == target);
    CHECK(to_radical_string(cert.bound) == "(3+√2)/2");
    // Reference columns 7 to 10 reach the bound.
    for (std::size_t k : {7, 8, 9, 10}) CHECK(cert.per_h[cols[k]] == target);
    CHECK(cert.attained.size() == 4);

    const auto zero = certified_bound(std::vector<RationalSymMatrix>{RationalSymMatrix(2)}, t);
    CHECK(zero.bound == ratio(5, 2));
    CHECK(zero.attained == std::vector<std::size_t>{cols[8]});
  }

  TEST_CASE("shape files") {
    std::ifstream in(std::string(CUBEFLAG_DATA_DIR) + "/mid4_shapes.txt");
    REQUIRE(in);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == default_shape_text(4));
    std::istringstream sin(text.str());
    const ShapeSpec spec = read_shapes(sin);
    CHECK(spec.shapes.size() == 2);
    std::size_t flags = 0;
    for (const auto& t : spec.types) flags += t.flags.size();
    CHECK(spec.types.size() == 10);
    CHECK(flags == 120);

    std::istringstream bad("layers:1,5,1; black:\n");
    CHECK_THROWS_AS(read_shapes(bad), Error);
  }

  TEST_CASE("parallel and serial m = 4 tables agree byte for byte") {
    std::istringstream in(default_shape_text(4));
    const ShapeSpec spec = read_shapes(in);
    const auto families = enumerate_q2free(4);
    const TableSet a = mid_density_table(spec.shapes, spec.types, 4, families);
    const TableSet b = mid_density_table_serial(spec.shapes, spec.types, 4, families);
    CHECK(to_csv(a) == to_csv(b));
    CHECK_NOTHROW(validate(a));
  }

  TEST_CASE("family lines round trip") {
    const MidPoset p4 = mid_poset(4);
    const auto f4 = enumerate_q2free(4);
    std::ostringstream out;
    write_mid_families(out, p4, f4);
    std::istringstream in(out.str());
    const auto back = read_mid_families(in, 4);
    REQUIRE(back.size() == f4.size());
    for (std::size_t i = 0; i < f4.size(); ++i) CHECK(back[i].black == f4[i].black);
    CHECK(to_mid_line(p4, f4[5].black) == to_mid_line(p4, back[5].black));
    CHECK_THROWS_AS(parse_mid_line("layers:1,2,1; black:9; labels:"), Error);
    CHECK_THROWS_AS(parse_mid_line("layers:1,2; black:"), Error);
    CHECK_THROWS_AS(parse_mid_line("colors"), Error);
  }
}

}  // namespace cubeflag
