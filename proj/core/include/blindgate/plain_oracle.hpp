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

#ifndef BLINDGATE_PLAIN_ORACLE_HPP_
#define BLINDGATE_PLAIN_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blindgate/blind_query.hpp"
#include "blindgate/lbs.hpp"
#include "blindgate/trust_router.hpp"
#include "blindgate/vod.hpp"

// Plaintext reference semantics for every encrypted pipeline. Iteration order
// matches the encrypted engines so n-th match and slot order line up.
namespace blindgate::oracle {

enum class SqlKind { kSelect, kUpdate, kDelete, kCount, kAvg };

struct SqlQuery {
  SqlKind kind = SqlKind::kSelect;
  std::string column;
  Relation relation = Relation::kEqual;
  std::uint64_t value = 0;
  std::vector<std::uint8_t> care;  // empty: every bit matters
  std::uint64_t n = 1;             // select: 1-based match index
  PlainRecord update;              // update payload
  std::string target;              // avg: summed column
};

struct SqlResult {
  PlainRecord record;  // selected row or all-zero
  PlainTable table;    // table after the operation
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
};

bool row_matches(const PlainTable& table, const PlainRecord& row,
                 const SqlQuery& q);
SqlResult oracle_sql(const PlainTable& table, const SqlQuery& q);

// Records (store.record_value) of in-range targets of the requested
// category in store order, or by stable distance order when sorted, padded
// with zeros to k slots (k = 0: the largest category size).
std::vector<std::uint64_t> oracle_lbs(const PoiStore& store, std::uint64_t x,
                                      std::uint64_t y, std::uint64_t category,
                                      std::uint64_t radius, std::size_t k,
                                      bool sorted = false);
std::uint64_t manhattan(std::uint64_t ax, std::uint64_t ay, std::uint64_t bx,
                        std::uint64_t by);

struct RouteOutcome {
  std::vector<int> path;
  std::uint64_t trust_sum = 0;
};

// Same greedy rule as the encrypted simulator. Throws NoRoute.
RouteOutcome oracle_route(const Network& net, int source, int dest,
                          std::size_t max_hops = 0);

// Stored bytes for id, or empty when absent.
std::vector<std::uint8_t> oracle_vod(const VideoStore& store, std::uint64_t id);

std::uint64_t popcount(const std::vector<std::uint8_t>& bits);
// Elementary symmetric polynomial e_k over GF(2) by direct subset counting.
int esp_mod2(const std::vector<std::uint8_t>& bits, std::size_t k);

}  // namespace blindgate::oracle

#endif  // BLINDGATE_PLAIN_ORACLE_HPP_
