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

// Exact pair-density tables: one row block per type (unordered flag pairs
// i <= j), one column per member of the family, plus the density row.

#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cubeflag/rational.hpp"

namespace cubeflag {

struct DensityTable {
  std::string type_name;
  std::size_t flag_count = 0;
  // Row r covers the flag pair rows[r] = (i, j) with i <= j, in the order
  // (0,0), (0,1), ..., (0,l-1), (1,1), ...
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::vector<std::vector<Rational>> entries;  // [row][H]

  std::size_t row_of(std::size_t i, std::size_t j) const;
};

struct TableSet {
  std::vector<Rational> density;      // d(H), one per column
  std::vector<DensityTable> tables;   // one per type

  std::size_t columns() const { return density.size(); }
};

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t flag_count);

// Validates names, shapes and that every table matches the column count.
void validate(const TableSet& set);

// "pair,H_0,...", then "d,...", then "<type>:<i>:<j>,..."; entries "p/q".
void write_csv(std::ostream& out, const TableSet& set);
std::string to_csv(const TableSet& set);
TableSet read_csv(std::istream& in);

}  // namespace cubeflag
