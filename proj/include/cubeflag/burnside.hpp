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

// Orbit counting of F-free spanning subgraphs by Burnside's lemma: the
// number of classes is the average, over the cube group, of the number of
// F-free edge sets fixed by each automorphism. Work is split into shards
// (conjugacy class x prefix of edge-orbit decisions) that can be
// checkpointed and resumed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "cubeflag/enumerate.hpp"

namespace cubeflag {

struct OrbitCountOptions {
  int prefix_depth = 8;
  // Completed shards are appended here and skipped on restart.
  std::optional<std::filesystem::path> checkpoint;
  // Stop scheduling new shards after this many seconds (0 = unlimited).
  double max_seconds = 0;
};

struct OrbitCount {
  bool complete = false;
  std::uint64_t classes = 0;        // valid when complete
  std::uint64_t shards_total = 0;
  std::uint64_t shards_done = 0;
  std::uint64_t fixed_sum = 0;      // sum over finished shards of |class| * fixed count
};

OrbitCount count_free_classes(int s, const ForbiddenPattern& pattern, const OrbitCountOptions& options = {});

}  // namespace cubeflag
