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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace phaseflip {

using Rng = std::mt19937_64;

// Independent stream for (master seed, stream ids...). Identical inputs give
// identical streams on a given standard library; different id tuples are
// decorrelated through std::seed_seq.
Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> ids);

double uniform01(Rng& rng);
bool bernoulli(Rng& rng, double probability);

}  // namespace phaseflip
