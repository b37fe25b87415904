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

#include "cubeflag/burnside.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace cubeflag {

namespace {

struct ClassWork {
  std::uint64_t size = 0;
  std::vector<std::uint64_t> orbits;                    // edge masks, by least edge
  std::vector<std::vector<std::uint64_t>> touching;     // forbidden cycles meeting each orbit
};

std::vector<ClassWork> conjugacy_work(int s, const ForbiddenPattern& pattern) {
  const AutomorphismTable& table = automorphism_table(s);
  const std::size_t order = table.group.size();
  const int nv = 1 << s;
  const int ne = cube_edge_count(s);

  std::map<std::vector<std::uint8_t>, std::size_t> index;
  for (std::size_t g = 0; g < order; ++g) index.emplace(table.vertex_image[g], g);
  std::vector<std::size_t> inverse(order);
  for (std::size_t g = 0; g < order; ++g) {
    std::vector<std::uint8_t> inv(nv);
    for (int v = 0; v < nv; ++v) inv[table.vertex_image[g][v]] = static_cast<std::uint8_t>(v);
    inverse[g] = index.at(inv);
  }

  std::vector<long> class_of(order, -1);
  std::vector<ClassWork> out;
  for (std::size_t g = 0; g < order; ++g) {
    if (class_of[g] >= 0) continue;
    const long id = static_cast<long>(out.size());
    std::uint64_t size = 0;
    for (std::size_t h = 0; h < order; ++h) {
      std::vector<std::uint8_t> conj(nv);
      for (int v = 0; v < nv; ++v) {
        conj[v] = table.vertex_image[h][table.vertex_image[g][table.vertex_image[inverse[h]][v]]];
      }
      const std::size_t c = index.at(conj);
      if (class_of[c] < 0) {
        class_of[c] = id;
        ++size;
      }
    }
    ClassWork w;
    w.size = size;
    std::uint64_t seen = 0;
    for (int e = 0; e < ne; ++e) {
      if ((seen >> e) & 1U) continue;
      std::uint64_t orbit = 0;
      for (int x = e; !((orbit >> x) & 1U); x = table.edge_image[g][x]) orbit |= std::uint64_t{1} << x;
      seen |= orbit;
      w.orbits.push_back(orbit);
    }
    for (std::uint64_t orbit : w.orbits) {
      std::vector<std::uint64_t> touch;
      for (const auto& c : pattern.cycles) {
        if (c.low_word() & orbit) touch.push_back(c.low_word());
      }
      w.touching.push_back(std::move(touch));
    }
    out.push_back(std::move(w));
  }
  return out;
}

bool may_include(const ClassWork& w, std::size_t i, std::uint64_t mask) {
  const std::uint64_t next = mask | w.orbits[i];
  for (std::uint64_t c : w.touching[i]) {
    if ((next & c) == c) return false;
  }
  return true;
}

std::uint64_t count_fixed(const ClassWork& w, std::size_t i, std::uint64_t mask) {
  if (i == w.orbits.size()) return 1;
  std::uint64_t total = count_fixed(w, i + 1, mask);
  if (may_include(w, i, mask)) total += count_fixed(w, i + 1, mask | w.orbits[i]);
  return total;
}

struct Shard {
  std::size_t cls = 0;
  std::uint64_t prefix = 0;
};

std::string checkpoint_header(int s, const ForbiddenPattern& p, int depth) {
  std::ostringstream h;
  h << "# cubeflag orbit-count s=" << s << " L=" << p.cycle_length << " depth=" << depth;
  return h.str();
}

}  // namespace

OrbitCount count_free_classes(int s, const ForbiddenPattern& pattern, const OrbitCountOptions& options) {
  if (s < 1 || s > 4) bad_input("orbit counting supports 1 <= s <= 4");
  if (pattern.dim != s) bad_input("pattern dimension does not match the cube");
  if (options.prefix_depth < 0 || options.prefix_depth > 16) bad_input("prefix depth must be in [0, 16]");

  const auto work = conjugacy_work(s, pattern);
  std::vector<Shard> shards;
  for (std::size_t c = 0; c < work.size(); ++c) {
    const int depth = std::min<int>(options.prefix_depth, static_cast<int>(work[c].orbits.size()));
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << depth); ++p) shards.push_back({c, p});
  }

  std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> done;
  const std::string header = checkpoint_header(s, pattern, options.prefix_depth);
  std::ofstream log;
  if (options.checkpoint) {
    std::ifstream in(*options.checkpoint);
    if (in) {
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
          if (line != header) bad_input("checkpoint " + options.checkpoint->string() + " belongs to a different run");
          continue;
        }
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::size_t c = 0;
        std::uint64_t p = 0;
        std::uint64_t n = 0;
        if (!(fields >> c >> p >> n) || c >= work.size()) {
          bad_input("checkpoint line " + std::to_string(line_no) + " is malformed");
        }
        done[{c, p}] = n;
      }
    }
    const bool fresh = !in || done.empty();
    in.close();
    if (fresh) {
      std::ofstream init(*options.checkpoint, std::ios::trunc);
      init << header << '\n';
    }
    log.open(*options.checkpoint, std::ios::app);
    if (!log) bad_input("cannot write checkpoint " + options.checkpoint->string());
  }

  const auto start = std::chrono::steady_clock::now();
  std::mutex mu;
  const long nshards = static_cast<long>(shards.size());

#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < nshards; ++k) {
    const Shard sh = shards[static_cast<std::size_t>(k)];
    {
      std::lock_guard lock(mu);
      if (done.count({sh.cls, sh.prefix})) continue;
    }
    if (options.max_seconds > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > options.max_seconds) continue;
    }
    const ClassWork& w = work[sh.cls];
    const std::size_t depth = std::min<std::size_t>(options.prefix_depth, w.orbits.size());
    std::uint64_t mask = 0;
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i) {
      if ((sh.prefix >> i) & 1U) {
        ok = may_include(w, i, mask);
        mask |= w.orbits[i];
      }
    }
    const std::uint64_t fixed = ok ? count_fixed(w, depth, mask) : 0;
    std::lock_guard lock(mu);
    done[{sh.cls, sh.prefix}] = fixed;
    if (log) log << sh.cls << ' ' << sh.prefix << ' ' << fixed << std::endl;
  }

  OrbitCount result;
  result.shards_total = shards.size();
  for (const auto& sh : shards) {
    auto it = done.find({sh.cls, sh.prefix});
    if (it == done.end()) continue;
    ++result.shards_done;
    result.fixed_sum += work[sh.cls].size * it->second;
  }
  result.complete = result.shards_done == result.shards_total;
  if (result.complete) {
    const std::uint64_t order = automorphism_table(s).group.size();
    if (result.fixed_sum % order != 0) throw Error(ErrorKind::kVerification, "orbit sum not divisible by group order");
    result.classes = result.fixed_sum / order;
  }
  return result;
}

}  // namespace cubeflag
