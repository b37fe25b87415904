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

#include "cubeflag/table.hpp"

#include <map>
#include <sstream>

#include "cubeflag/error.hpp"

namespace cubeflag {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool valid_name(const std::string& name) {
  return !name.empty() && name != "d" && name.find_first_of(":,\n\r ") == std::string::npos;
}

}  // namespace

std::size_t DensityTable::row_of(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= flag_count) bad_input("flag index out of range in table " + type_name);
  // Rows before i: sum over a < i of (l - a).
  return i * flag_count - i * (i - 1) / 2 + (j - i);
}

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t flag_count) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < flag_count; ++i) {
    for (std::size_t j = i; j < flag_count; ++j) out.emplace_back(i, j);
  }
  return out;
}

void validate(const TableSet& set) {
  if (set.density.empty()) bad_input("table set has no columns");
  for (const auto& t : set.tables) {
    if (!valid_name(t.type_name)) bad_input("invalid type name '" + t.type_name + "'");
    if (t.rows != upper_pairs(t.flag_count)) bad_input("table " + t.type_name + " rows are not the upper flag pairs");
    if (t.entries.size() != t.rows.size()) bad_input("table " + t.type_name + " has the wrong row count");
    for (const auto& row : t.entries) {
      if (row.size() != set.columns()) bad_input("table " + t.type_name + " has the wrong column count");
      for (const auto& v : row) {
        if (sgn(v) < 0 || v > 1) bad_input("table " + t.type_name + " entry " + to_string(v) + " outside [0,1]");
      }
    }
  }
}

void write_csv(std::ostream& out, const TableSet& set) {
  validate(set);
  out << "pair";
  for (std::size_t h = 0; h < set.columns(); ++h) out << ",H_" << h;
  out << "\nd";
  for (const auto& d : set.density) out << ',' << to_string(d);
  out << '\n';
  for (const auto& t : set.tables) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << t.type_name << ':' << t.rows[r].first << ':' << t.rows[r].second;
      for (const auto& v : t.entries[r]) out << ',' << to_string(v);
      out << '\n';
    }
  }
}

std::string to_csv(const TableSet& set) {
  std::ostringstream out;
  write_csv(out, set);
  return out.str();
}

TableSet read_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) -> void { bad_input("tables line " + std::to_string(line_no) + ": " + why); };

  if (!std::getline(in, line)) bad_input("tables file is empty");
  ++line_no;
  const auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "pair") fail("expected header 'pair,H_0,...'");
  const std::size_t cols = header.size() - 1;
  for (std::size_t h = 0; h < cols; ++h) {
    if (header[h + 1] != "H_" + std::to_string(h)) fail("unexpected column name '" + header[h + 1] + "'");
  }

  TableSet set;
  std::map<std::string, std::size_t> table_index;
  auto parse_values = [&](const std::vector<std::string>& cells) {
    if (cells.size() != cols + 1) fail("expected " + std::to_string(cols + 1) + " cells");
    std::vector<Rational> vals;
    vals.reserve(cols);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      try {
        vals.push_back(parse_rational(cells[c]));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    return vals;
  };

  bool have_density = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells[0] == "d") {
      if (have_density) fail("duplicate density row");
      set.density = parse_values(cells);
      have_density = true;
      continue;
    }
    const auto key = split(cells[0], ':');
    if (key.size() != 3 || !valid_name(key[0])) fail("bad row key '" + cells[0] + "'");
    std::size_t i = 0;
    std::size_t j = 0;
    try {
      i = std::stoul(key[1]);
      j = std::stoul(key[2]);
    } catch (const std::exception&) {
      fail("bad flag indices in '" + cells[0] + "'");
    }
    auto [it, fresh] = table_index.emplace(key[0], set.tables.size());
    if (fresh) {
      set.tables.push_back(DensityTable{key[0], 0, {}, {}});
    } else if (it->second + 1 != set.tables.size()) {
      fail("rows of type " + key[0] + " are not contiguous");
    }
    DensityTable& t = set.tables[it->second];
    t.rows.emplace_back(i, j);
    t.entries.push_back(parse_values(cells));
  }
  if (!have_density) bad_input("tables file lacks the density row");
  for (auto& t : set.tables) {
    std::size_t l = 0;
    while (l * (l + 1) / 2 < t.rows.size()) ++l;
    t.flag_count = l;
  }
  validate(set);
  return set;
}

}  // namespace cubeflag
