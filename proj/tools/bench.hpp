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

#ifndef BLINDGATE_TOOLS_BENCH_HPP_
#define BLINDGATE_TOOLS_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blindgate/circuits.hpp"
#include "blindgate/formats.hpp"

// Sweeps behind `blindgate bench`. Every row carries the ledger bound of the
// circuit's outputs as predicted noise and the largest residue actually found
// with the secret key as measured noise. Noise checks are disabled so rows
// past the decryption limit are still reported.
namespace blindgate::bench {

struct BenchConfig {
  std::string profile = "profile_b";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  int reps = 3;  // timed repetitions; the fastest is reported
};

struct NoisePair {
  std::int64_t predicted = 0;
  std::int64_t measured = 0;
};
NoisePair word_noise(const SecretKey& sk, const EncWord& w);
NoisePair words_noise(const SecretKey& sk, const std::vector<EncWord>& ws);

// n-bit by n-bit encrypted array multiplication for each n.
std::vector<BenchRow> bench_mul_curve(int lambda, const std::vector<std::size_t>& n_bits,
                                      const BenchConfig& config = {});
// Generic and per-operation SQL circuits over tables of the given row counts.
std::vector<BenchRow> bench_sql(int lambda, const std::vector<std::size_t>& rows,
                                const BenchConfig& config = {});
// Coverage-filter LBS on an 8x8 grid with the given target counts.
std::vector<BenchRow> bench_lbs(int lambda, const std::vector<std::size_t>& targets,
                                const BenchConfig& config = {});
// Encrypted trust path over a line of the given hop counts.
std::vector<BenchRow> bench_route(int lambda, const std::vector<std::size_t>& hops,
                                  const BenchConfig& config = {});
// Blind selection over stores of the given video counts (64-byte videos).
std::vector<BenchRow> bench_vod(int lambda, const std::vector<std::size_t>& videos,
                                const BenchConfig& config = {});

std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace blindgate::bench

#endif  // BLINDGATE_TOOLS_BENCH_HPP_
