// Copyright 2026 The scseg Authors.
//
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

#ifndef SCSEG_RANDOM_HPP_
#define SCSEG_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace scseg {

// SplitMix64 finalizer; used to derive independent per-block seeds.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the block whose top-left pixel is (row, col) and side is n. Does
// not depend on the order in which blocks are visited.
constexpr std::uint64_t BlockSeed(std::uint64_t global_seed, int row, int col, int n) {
  std::uint64_t h = MixSeed(global_seed);
  h = MixSeed(h ^ static_cast<std::uint64_t>(row));
  h = MixSeed(h ^ (static_cast<std::uint64_t>(col) << 20));
  return MixSeed(h ^ (static_cast<std::uint64_t>(n) << 40));
}

// Uniform integer in [0, bound). std::uniform_int_distribution is
// implementation-defined, so outputs would differ between standard libraries.
inline std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace scseg

#endif  // SCSEG_RANDOM_HPP_
