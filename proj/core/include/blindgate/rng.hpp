// Copyright 2026 The Blindgate Authors
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

#ifndef BLINDGATE_RNG_HPP_
#define BLINDGATE_RNG_HPP_

#include <cstdint>
#include <random>

#include "blindgate/bigint.hpp"

namespace blindgate {

// Seedable, splittable generator. Bounded draws are implemented here rather
// than through <random> distributions so results match across standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool coin() { return engine_() >> 63; }
  // Uniform integer in [0, 2^bits); with top_bit_set the result has exactly
  // `bits` bits.
  BigInt random_bits(std::size_t bits, bool top_bit_set = false);
  // Independent child generator; advances this generator.
  Rng split();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace blindgate

#endif  // BLINDGATE_RNG_HPP_
