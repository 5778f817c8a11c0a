// Copyright 2026 The phaseflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phaseflip/rng.hpp"

#include <vector>

namespace phaseflip {

Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> ids) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * ids.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master_seed);
  for (auto id : ids) push(id);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

double uniform01(Rng& rng) {
  // 53 random mantissa bits in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool bernoulli(Rng& rng, double probability) { return uniform01(rng) < probability; }

}  // namespace phaseflip
