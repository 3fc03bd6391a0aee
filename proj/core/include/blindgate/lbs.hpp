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

#ifndef BLINDGATE_LBS_HPP_
#define BLINDGATE_LBS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blindgate/circuits.hpp"

namespace blindgate {

struct PoiTarget {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t payload = 0;
};

struct PoiCategory {
  std::uint64_t code = 0;
  std::vector<PoiTarget> targets;
};

// Plaintext store held by the service. A target's record is x | y | payload
// with x in the low bits.
struct PoiStore {
  std::size_t coord_bits = 0;
  std::size_t cat_bits = 0;
  std::size_t payload_bits = 0;
  std::vector<PoiCategory> categories;

  void validate() const;
  std::size_t record_width() const { return 2 * coord_bits + payload_bits; }
  std::size_t dist_bits() const { return coord_bits + 1; }
  std::size_t max_targets() const;
  std::uint64_t record_value(const PoiTarget& t) const;
};

struct LbsRequest {
  EncWord pos_x;
  EncWord pos_y;
  EncWord category;
  EncWord radius;     // dist_bits wide, plain or encrypted
  std::size_t k = 0;  // result slots; 0 means the largest category size
};

LbsRequest make_request(const KeyPair& key, const PoiStore& store,
                        std::uint64_t x, std::uint64_t y, std::uint64_t category,
                        std::uint64_t radius, std::size_t k, Rng& rng,
                        bool encrypt_radius = false);

enum class LbsFilter { kCoverage, kSort };

struct LbsOptions {
  LbsFilter filter = LbsFilter::kCoverage;
  PrefixStrategy prefix = PrefixStrategy::kEsp;
  bool check_noise = true;
  std::size_t threads = 0;
};

struct SortItem {
  EncWord dist;
  EncWord payload;
};

struct CoverageResult {
  std::vector<Bit> in_range;      // L_i = dist_i <= radius
  std::vector<EncWord> selected;  // j-th in-range payload, then zeros
};

struct LbsResponse {
  std::vector<EncWord> targets;
};

// Intermediate wires of one respond() call, for noise reporting.
struct LbsTrace {
  std::vector<Bit> category_match;
  std::vector<EncWord> distances;
  std::vector<Bit> in_range;
  std::vector<EncWord> per_category;
};

std::vector<Bit> match_category(const PoiStore& store, const EncWord& category);
// |bx - ax| + |by - ay|, width coord_bits + 1.
EncWord manhattan(const EncWord& ax, const EncWord& ay, const EncWord& bx,
                  const EncWord& by);
// Bubble sort by dist with N full passes; a pair swaps when the later
// distance is strictly smaller, so equal distances keep their order.
std::vector<SortItem> blind_sort(std::vector<SortItem> items,
                                 const LbsOptions& options = {});
CoverageResult coverage_filter(const std::vector<SortItem>& items,
                               const EncWord& radius, std::size_t k,
                               const LbsOptions& options = {});
LbsResponse respond(const PoiStore& store, const LbsRequest& req,
                    const LbsOptions& options = {}, LbsTrace* trace = nullptr);

}  // namespace blindgate

#endif  // BLINDGATE_LBS_HPP_
