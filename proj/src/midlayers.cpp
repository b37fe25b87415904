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

#include "cubeflag/midlayers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cubeflag {

namespace {

long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      bad_input("malformed index list '" + text + "'");
    }
    out.push_back(std::stoul(item));
  }
  return out;
}

// Images of every element under the coordinate permutations of [k] (and
// complementation), as element-index maps.
std::vector<std::vector<std::uint8_t>> element_actions(const LayeredCube& c, bool with_flip) {
  std::vector<int> perm(static_cast<std::size_t>(c.k));
  std::iota(perm.begin(), perm.end(), 0);
  const VertexMask full = (VertexMask{1} << c.k) - 1;
  std::vector<std::vector<std::uint8_t>> out;
  do {
    for (int f = 0; f < (with_flip ? 2 : 1); ++f) {
      std::vector<std::uint8_t> img;
      for (VertexMask v : c.elements) {
        VertexMask w = 0;
        for (int i = 0; i < c.k; ++i) {
          if ((v >> i) & 1U) w |= VertexMask{1} << perm[static_cast<std::size_t>(i)];
        }
        if (f) w ^= full;
        img.push_back(static_cast<std::uint8_t>(c.index_of(w)));
      }
      out.push_back(std::move(img));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::uint32_t act(std::uint32_t mask, const std::vector<std::uint8_t>& img) {
  std::uint32_t out = 0;
  for (std::uint32_t b = mask; b != 0; b &= b - 1) out |= std::uint32_t{1} << img[static_cast<std::size_t>(std::countr_zero(b))];
  return out;
}

bool layers_symmetric(const LayeredCube& c) { return c.k == 2 * c.base + 2; }

// Label-fixing shape symmetries as maps: new coloring bit i = old bit a[i].
std::vector<std::vector<std::uint8_t>> shape_autos(const MidShape& s) {
  const auto actions = element_actions(s.cube, s.flip && layers_symmetric(s.cube));
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& img : actions) {
    if (std::all_of(s.labels.begin(), s.labels.end(), [&](std::size_t l) { return img[l] == l; })) out.push_back(img);
  }
  return out;
}

std::uint32_t orbit_min(std::uint32_t coloring, const std::vector<std::vector<std::uint8_t>>& autos) {
  std::uint32_t best = coloring;
  for (const auto& a : autos) best = std::min(best, act(coloring, a));
  return best;
}

std::uint32_t labeled_colors(std::uint32_t coloring, const std::vector<std::size_t>& labels) {
  std::uint32_t out = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if ((coloring >> labels[t]) & 1U) out |= std::uint32_t{1} << t;
  }
  return out;
}

void check_shape(const MidShape& s) {
  if (s.cube.elements.size() > 16) bad_input("shapes are limited to 16 elements");
  std::set<std::size_t> seen;
  for (std::size_t l : s.labels) {
    if (l >= s.cube.elements.size()) bad_input("shape label " + std::to_string(l) + " out of range");
    if (!seen.insert(l).second) bad_input("repeated shape label");
  }
  if (s.labels.empty()) bad_input("a shape needs at least one labeled element");
}

struct Embedding {
  std::vector<std::uint8_t> image;  // element indices in M_m
  VertexMask spread = 0;
};

struct ShapeWork {
  std::vector<Embedding> embeddings;
  std::vector<std::vector<std::size_t>> thetas;  // embedding indices sharing a labeled image
  std::vector<VertexMask> theta_spread;
  std::vector<std::uint32_t> orbit;  // orbit minimum of each shape coloring
};

ShapeWork shape_work(const MidShape& s, const MidPoset& P, int m) {
  const int k = s.cube.k;
  const int tsize = m / 2 - 1 - s.cube.base;
  if (k > m || tsize < 0 || tsize > m - k) bad_input("shape does not embed into M_" + std::to_string(m));
  const VertexMask full = (VertexMask{1} << m) - 1;
  std::set<std::vector<std::uint8_t>> images;
  std::vector<int> coords(static_cast<std::size_t>(m));
  std::iota(coords.begin(), coords.end(), 0);
  // Injections [k] -> [m] as the first k entries of each permutation.
  std::set<std::vector<int>> injections;
  do {
    injections.emplace(coords.begin(), coords.begin() + k);
  } while (std::next_permutation(coords.begin(), coords.end()));
  for (const auto& phi : injections) {
    VertexMask used = 0;
    for (int c : phi) used |= VertexMask{1} << c;
    for (VertexMask T = 0; T <= full; ++T) {
      if ((T & used) || std::popcount(T) != tsize) continue;
      for (int f = 0; f < (s.flip ? 2 : 1); ++f) {
        std::vector<std::uint8_t> img;
        for (VertexMask v : s.cube.elements) {
          VertexMask w = T;
          for (int i = 0; i < k; ++i) {
            if ((v >> i) & 1U) w |= VertexMask{1} << phi[static_cast<std::size_t>(i)];
          }
          if (f) w ^= full;
          img.push_back(static_cast<std::uint8_t>(P.index_of(w)));
        }
        images.insert(std::move(img));
      }
    }
  }
  ShapeWork w;
  std::map<std::vector<std::uint8_t>, std::size_t> theta_index;
  for (const auto& img : images) {
    Embedding e{img, 0};
    for (auto x : img) e.spread |= P.elements[x] ^ P.elements[img.front()];
    std::vector<std::uint8_t> key;
    for (std::size_t l : s.labels) key.push_back(img[l]);
    auto [it, fresh] = theta_index.emplace(key, w.thetas.size());
    if (fresh) {
      w.thetas.emplace_back();
      VertexMask sp = 0;
      for (auto x : key) sp |= P.elements[x] ^ P.elements[key.front()];
      w.theta_spread.push_back(sp);
    }
    w.thetas[it->second].push_back(w.embeddings.size());
    w.embeddings.push_back(std::move(e));
  }
  const auto autos = shape_autos(s);
  w.orbit.resize(std::size_t{1} << s.cube.elements.size());
  for (std::uint32_t c = 0; c < w.orbit.size(); ++c) w.orbit[c] = orbit_min(c, autos);
  return w;
}

struct TypeLookup {
  std::vector<std::map<std::uint32_t, long>> flag_index;  // per type: orbit minimum -> flag
  std::vector<std::map<std::uint32_t, std::size_t>> type_of;  // per shape: labeled colors -> type
};

TypeLookup type_lookup(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types) {
  TypeLookup L;
  L.type_of.resize(shapes.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    const auto& ty = types[t];
    if (ty.shape >= shapes.size()) bad_input("type " + ty.name + " refers to a missing shape");
    if (!L.type_of[ty.shape].emplace(ty.labeled_black, t).second) bad_input("duplicate type for one coloring");
    std::map<std::uint32_t, long> idx;
    for (std::size_t i = 0; i < ty.flags.size(); ++i) idx.emplace(ty.flags[i], static_cast<long>(i));
    L.flag_index.push_back(std::move(idx));
  }
  return L;
}

// Table entries of every type for one family member.
std::vector<std::vector<Rational>> mid_column(const std::vector<MidShape>& shapes,
                                              const std::vector<MidFlagFamily>& types,
                                              const std::vector<ShapeWork>& work, const TypeLookup& lookup,
                                              std::uint32_t black) {
  std::vector<std::vector<Rational>> acc(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) acc[t].assign(types[t].flags.size() * types[t].flags.size(), Rational(0));
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const ShapeWork& w = work[s];
    for (std::size_t th = 0; th < w.thetas.size(); ++th) {
      const auto& members = w.thetas[th];
      std::vector<long> cls;
      std::uint32_t lc = 0;
      for (std::size_t e : members) {
        std::uint32_t col = 0;
        const auto& img = w.embeddings[e].image;
        for (std::size_t i = 0; i < img.size(); ++i) {
          if ((black >> img[i]) & 1U) col |= std::uint32_t{1} << i;
        }
        lc = labeled_colors(col, shapes[s].labels);
        cls.push_back(col);
      }
      auto ty = lookup.type_of[s].find(lc);
      if (ty == lookup.type_of[s].end()) continue;
      const std::size_t t = ty->second;
      const std::size_t l = types[t].flags.size();
      for (auto& c : cls) {
        auto it = lookup.flag_index[t].find(w.orbit[static_cast<std::size_t>(c)]);
        c = it == lookup.flag_index[t].end() ? -1 : it->second;
      }
      std::vector<long> counts(l * l, 0);
      long total = 0;
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
          if ((w.embeddings[members[a]].spread & w.embeddings[members[b]].spread) != w.theta_spread[th]) continue;
          ++total;
          if (cls[a] >= 0 && cls[b] >= 0) ++counts[static_cast<std::size_t>(cls[a]) * l + static_cast<std::size_t>(cls[b])];
        }
      }
      if (total == 0) continue;
      for (std::size_t i = 0; i < l * l; ++i) {
        if (counts[i] != 0) acc[t][i] += ratio(counts[i], total);
      }
    }
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t t = 0; t < types.size(); ++t) {
    const std::size_t l = types[t].flags.size();
    const long nth = static_cast<long>(work[types[t].shape].thetas.size());
    std::vector<Rational> col;
    for (const auto& [i, j] : upper_pairs(l)) {
      Rational v = acc[t][i * l + j] / nth;
      v.canonicalize();
      col.push_back(std::move(v));
    }
    out.push_back(std::move(col));
  }
  return out;
}

struct MidPlan {
  MidPoset poset;
  std::vector<ShapeWork> work;
  TypeLookup lookup;
  TableSet set;
};

MidPlan mid_plan(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types, int m,
                 const std::vector<MidFamily>& families) {
  if (families.empty()) bad_input("empty family list");
  MidPlan plan{mid_poset(m), {}, {}, {}};
  for (const auto& s : shapes) {
    check_shape(s);
    plan.work.push_back(shape_work(s, plan.poset, m));
    const ShapeWork& w = plan.work.back();
    bool pairs = false;
    for (std::size_t th = 0; th < w.thetas.size() && !pairs; ++th) {
      for (std::size_t a : w.thetas[th]) {
        for (std::size_t b : w.thetas[th]) {
          pairs = pairs || (w.embeddings[a].spread & w.embeddings[b].spread) == w.theta_spread[th];
        }
      }
    }
    if (!pairs) bad_input("shape admits no pair of embeddings meeting only at its labels in M_" + std::to_string(m));
  }
  plan.lookup = type_lookup(shapes, types);
  for (const auto& G : families) plan.set.density.push_back(mid_density(plan.poset, G));
  for (const auto& t : types) {
    DensityTable tab{t.name, t.flags.size(), upper_pairs(t.flags.size()), {}};
    tab.entries.assign(tab.rows.size(), std::vector<Rational>(families.size()));
    plan.set.tables.push_back(std::move(tab));
  }
  return plan;
}

void store_column(TableSet& set, std::size_t h, std::vector<std::vector<Rational>>&& col) {
  for (std::size_t t = 0; t < col.size(); ++t) {
    for (std::size_t r = 0; r < col[t].size(); ++r) set.tables[t].entries[r][h] = std::move(col[t][r]);
  }
}

}  // namespace

LayeredCube LayeredCube::make(int k, int base) {
  if (k < 1 || k > 6 || base < 0 || base > k) bad_input("layered cube parameters out of range");
  LayeredCube c;
  c.k = k;
  c.base = base;
  for (int l = 0; l < 3; ++l) {
    for (VertexMask v = 0; v < (VertexMask{1} << k); ++v) {
      if (std::popcount(v) == base + l) {
        c.elements.push_back(v);
        c.layer.push_back(l);
      }
    }
  }
  if (c.elements.size() > 32) bad_input("layered cube too large");
  return c;
}

std::array<std::size_t, 3> LayeredCube::layer_sizes() const {
  std::array<std::size_t, 3> out{};
  for (int l : layer) ++out[static_cast<std::size_t>(l)];
  return out;
}

std::size_t LayeredCube::index_of(VertexMask set) const {
  auto it = std::find(elements.begin(), elements.end(), set);
  if (it == elements.end()) bad_input("set " + std::to_string(set) + " is not in the layered cube");
  return static_cast<std::size_t>(it - elements.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> LayeredCube::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (layer[j] == layer[i] + 1 && (elements[i] & elements[j]) == elements[i]) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::uint32_t> LayeredCube::diamonds() const {
  std::vector<std::uint32_t> out;
  for (std::size_t a = 0; a < elements.size(); ++a) {
    if (layer[a] != 0) continue;
    for (std::size_t d = 0; d < elements.size(); ++d) {
      if (layer[d] != 2 || (elements[a] & elements[d]) != elements[a]) continue;
      std::vector<std::size_t> mids;
      for (std::size_t b = 0; b < elements.size(); ++b) {
        if (layer[b] == 1 && (elements[a] & elements[b]) == elements[a] && (elements[b] & elements[d]) == elements[b]) {
          mids.push_back(b);
        }
      }
      for (std::size_t x = 0; x < mids.size(); ++x) {
        for (std::size_t y = x + 1; y < mids.size(); ++y) {
          out.push_back((std::uint32_t{1} << a) | (std::uint32_t{1} << mids[x]) | (std::uint32_t{1} << mids[y]) |
                        (std::uint32_t{1} << d));
        }
      }
    }
  }
  return out;
}

MidPoset mid_poset(int m) {
  if (m != 2 && m != 4) bad_input("middle layers are supported for m = 2 and m = 4 only");
  return LayeredCube::make(m, m / 2 - 1);
}

bool is_q2free(const MidPoset& P, std::uint32_t black) {
  const auto ds = P.diamonds();
  return std::none_of(ds.begin(), ds.end(), [&](std::uint32_t d) { return (black & d) == d; });
}

std::vector<MidFamily> enumerate_q2free(int m, MidGroup group) {
  const MidPoset P = mid_poset(m);
  const auto actions = element_actions(P, group == MidGroup::kSymmetricWithFlip);
  const auto ds = P.diamonds();
  const std::uint32_t n = static_cast<std::uint32_t>(P.elements.size());
  std::vector<MidFamily> out;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    if (std::any_of(ds.begin(), ds.end(), [&](std::uint32_t d) { return (x & d) == d; })) continue;
    if (orbit_min(x, actions) == x) out.push_back({x});
  }
  return out;
}

Rational mid_density(const MidPoset& P, const MidFamily& G) {
  const auto sizes = P.layer_sizes();
  std::array<long, 3> count{};
  for (std::size_t i = 0; i < P.elements.size(); ++i) {
    if ((G.black >> i) & 1U) ++count[static_cast<std::size_t>(P.layer[i])];
  }
  Rational total(0);
  for (std::size_t l = 0; l < 3; ++l) {
    if (sizes[l] != 0) total += ratio(count[l], static_cast<long>(sizes[l]));
  }
  return total;
}

MidFlagFamily mid_flag_family(const MidShape& shape, std::size_t shape_index, std::uint32_t labeled_black,
                              std::string name) {
  check_shape(shape);
  const auto autos = shape_autos(shape);
  const auto ds = shape.cube.diamonds();
  std::set<std::uint32_t> reps;
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << shape.cube.elements.size()); ++c) {
    if (labeled_colors(c, shape.labels) != labeled_black) continue;
    if (std::any_of(ds.begin(), ds.end(), [&](std::uint32_t d) { return (c & d) == d; })) continue;
    reps.insert(orbit_min(c, autos));
  }
  std::vector<std::uint32_t> flags(reps.begin(), reps.end());
  std::stable_sort(flags.begin(), flags.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return MidFlagFamily{std::move(name), shape_index, labeled_black, std::move(flags)};
}

TableSet mid_density_table(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types, int m,
                           const std::vector<MidFamily>& families) {
  MidPlan plan = mid_plan(shapes, types, m, families);
  const long n = static_cast<long>(families.size());
#pragma omp parallel for schedule(dynamic)
  for (long h = 0; h < n; ++h) {
    auto col = mid_column(shapes, types, plan.work, plan.lookup, families[static_cast<std::size_t>(h)].black);
    store_column(plan.set, static_cast<std::size_t>(h), std::move(col));
  }
  return std::move(plan.set);
}

TableSet mid_density_table_serial(const std::vector<MidShape>& shapes, const std::vector<MidFlagFamily>& types,
                                  int m, const std::vector<MidFamily>& families) {
  MidPlan plan = mid_plan(shapes, types, m, families);
  for (std::size_t h = 0; h < families.size(); ++h) {
    store_column(plan.set, h, mid_column(shapes, types, plan.work, plan.lookup, families[h].black));
  }
  return std::move(plan.set);
}

MidLine parse_mid_line(std::string_view line) {
  MidLine out;
  bool have_layers = false;
  bool have_black = false;
  bool have_labels = false;
  std::vector<std::size_t> black;
  std::istringstream in{std::string(line)};
  std::string field;
  while (std::getline(in, field, ';')) {
    field = trim(field);
    const auto colon = field.find(':');
    if (colon == std::string::npos) bad_input("mid line field lacks ':' in '" + std::string(line) + "'");
    const std::string key = trim(field.substr(0, colon));
    const std::string value = trim(field.substr(colon + 1));
    if (key == "layers") {
      const auto sizes = parse_index_list(value);
      if (sizes.size() != 3) bad_input("layers needs three sizes");
      bool found = false;
      for (int k = 1; k <= 6 && !found; ++k) {
        for (int base = 0; base <= k && !found; ++base) {
          if (binomial(k, base) == static_cast<long>(sizes[0]) && binomial(k, base + 1) == static_cast<long>(sizes[1]) &&
              binomial(k, base + 2) == static_cast<long>(sizes[2])) {
            out.cube = LayeredCube::make(k, base);
            found = true;
          }
        }
      }
      if (!found) bad_input("layer sizes " + value + " are not three consecutive binomial coefficients");
      have_layers = true;
    } else if (key == "black") {
      black = parse_index_list(value);
      have_black = true;
    } else if (key == "labels") {
      out.labels = parse_index_list(value);
      have_labels = true;
    } else if (key == "colors") {
      if (value != "all") bad_input("colors must be 'all'");
      out.all_colors = true;
    } else if (key == "flip") {
      if (value != "0" && value != "1") bad_input("flip must be 0 or 1");
      out.flip = value == "1";
    } else {
      bad_input("unknown mid line field '" + key + "'");
    }
  }
  if (!have_layers || !have_black || !have_labels) bad_input("mid line needs layers, black and labels");
  for (std::size_t b : black) {
    if (b >= out.cube.elements.size()) bad_input("black index " + std::to_string(b) + " out of range");
    out.black |= std::uint32_t{1} << b;
  }
  for (std::size_t l : out.labels) {
    if (l >= out.cube.elements.size()) bad_input("label index " + std::to_string(l) + " out of range");
  }
  return out;
}

std::string to_mid_line(const LayeredCube& cube, std::uint32_t black, const std::vector<std::size_t>& labels) {
  const auto sizes = cube.layer_sizes();
  std::string out = "layers:" + std::to_string(sizes[0]) + "," + std::to_string(sizes[1]) + "," + std::to_string(sizes[2]);
  out += "; black:";
  bool first = true;
  for (std::uint32_t b = black; b != 0; b &= b - 1) {
    out += (first ? "" : ",") + std::to_string(std::countr_zero(b));
    first = false;
  }
  out += "; labels:";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + std::to_string(labels[i]);
  return out;
}

void write_mid_families(std::ostream& out, const MidPoset& P, const std::vector<MidFamily>& families) {
  for (const auto& f : families) out << to_mid_line(P, f.black) << '\n';
}

std::vector<MidFamily> read_mid_families(std::istream& in, int m) {
  const MidPoset P = mid_poset(m);
  std::vector<MidFamily> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const MidLine ml = parse_mid_line(line);
    if (ml.cube.elements != P.elements) bad_input("family line " + std::to_string(line_no) + " is not over M_" + std::to_string(m));
    if (!ml.labels.empty()) bad_input("family line " + std::to_string(line_no) + " must not carry labels");
    if (!is_q2free(P, ml.black)) bad_input("family line " + std::to_string(line_no) + " contains a diamond");
    out.push_back({ml.black});
  }
  return out;
}

ShapeSpec read_shapes(std::istream& in) {
  ShapeSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const MidLine ml = parse_mid_line(line);
    const std::size_t s = spec.shapes.size();
    spec.shapes.push_back(MidShape{ml.cube, ml.labels, ml.flip});
    check_shape(spec.shapes.back());
    std::vector<std::uint32_t> colorings;
    if (ml.all_colors) {
      if (ml.black != 0) bad_input("a shape with colors:all must not list black elements");
      for (std::uint32_t c = 0; c < (std::uint32_t{1} << ml.labels.size()); ++c) colorings.push_back(c);
    } else {
      for (std::size_t b = 0; b < ml.cube.elements.size(); ++b) {
        if (((ml.black >> b) & 1U) && std::find(ml.labels.begin(), ml.labels.end(), b) == ml.labels.end()) {
          bad_input("only labeled elements may be colored in a shape line");
        }
      }
      colorings.push_back(labeled_colors(ml.black, ml.labels));
    }
    for (std::uint32_t c : colorings) {
      auto t = mid_flag_family(spec.shapes.back(), s, c, "s" + std::to_string(s) + "c" + std::to_string(c));
      if (!t.flags.empty()) spec.types.push_back(std::move(t));
    }
  }
  if (spec.types.empty()) bad_input("shape file defines no types");
  return spec;
}

ShapeSpec single_edge_shapes() {
  std::istringstream in("layers:1,1,0; black:0; labels:0; flip:1\n");
  return read_shapes(in);
}

QuadSymMatrix hand_matrix() {
  QuadSymMatrix M(2);
  M.set(0, 0, QuadRational(ratio(-1, 2), ratio(1, 2)));
  M.set(0, 1, QuadRational(Rational(-1), ratio(1, 2)));
  M.set(1, 1, QuadRational(Rational(-1), Rational(1)));
  return M;
}

}  // namespace cubeflag
