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

#include "blindgate/plain_oracle.hpp"

#include <algorithm>

#include "blindgate/error.hpp"

namespace blindgate::oracle {

bool row_matches(const PlainTable& table, const PlainRecord& row,
                 const SqlQuery& q) {
  const std::uint64_t v = field_value(table.schema, row, q.column);
  switch (q.relation) {
    case Relation::kGreater: return v > q.value;
    case Relation::kLess: return v < q.value;
    case Relation::kEqual: break;
  }
  if (q.care.empty()) return v == q.value;
  const Column& col = table.schema.column(q.column);
  for (std::size_t b = 0; b < col.width_bits && b < 64; ++b) {
    if (q.care.at(b) && (((v ^ q.value) >> b) & 1u)) return false;
  }
  return true;
}

SqlResult oracle_sql(const PlainTable& table, const SqlQuery& q) {
  SqlResult res;
  res.table = table;
  res.record.assign(table.schema.record_width(), 0);
  std::uint64_t seen = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const PlainRecord& row = table.rows[r];
    if (!row_matches(table, row, q)) continue;
    ++seen;
    if (seen == q.n) res.record = row;
    if (q.kind == SqlKind::kAvg) res.sum += field_value(table.schema, row, q.target);
    if (q.kind == SqlKind::kUpdate) res.table.rows[r] = q.update;
    if (q.kind == SqlKind::kDelete) {
      res.table.rows[r].assign(table.schema.record_width(), 0);
    }
  }
  res.count = seen;
  return res;
}

std::uint64_t manhattan(std::uint64_t ax, std::uint64_t ay, std::uint64_t bx,
                        std::uint64_t by) {
  auto d = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };
  return d(ax, bx) + d(ay, by);
}

std::vector<std::uint64_t> oracle_lbs(const PoiStore& store, std::uint64_t x,
                                      std::uint64_t y, std::uint64_t category,
                                      std::uint64_t radius, std::size_t k,
                                      bool sorted) {
  if (k == 0) k = store.max_targets();
  std::vector<std::uint64_t> out;
  for (const auto& c : store.categories) {
    if (c.code != category) continue;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
    for (const auto& t : c.targets) {
      std::uint64_t d = manhattan(x, y, t.x, t.y);
      if (d <= radius) hits.emplace_back(d, store.record_value(t));
    }
    if (sorted) {
      std::stable_sort(hits.begin(), hits.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (const auto& h : hits) out.push_back(h.second);
  }
  out.resize(k, 0);
  return out;
}

RouteOutcome oracle_route(const Network& net, int source, int dest,
                          std::size_t max_hops) {
  if (source == dest) {
    throw Error(ErrorCode::kInvalidArgument, "source and destination coincide");
  }
  if (max_hops == 0) max_hops = net.size() - 1;
  RouteOutcome out;
  out.path.push_back(source);
  int u = source;
  while (u != dest) {
    const Node& node = net.node(u);
    auto nxt = next_hop(node, dest, out.path);
    if (!nxt || out.path.size() > max_hops) {
      throw Error(ErrorCode::kNoRoute, "greedy walk stuck at node " + std::to_string(u));
    }
    out.trust_sum += static_cast<std::uint64_t>(node.trust.at(*nxt));
    out.path.push_back(*nxt);
    u = *nxt;
  }
  return out;
}

std::vector<std::uint8_t> oracle_vod(const VideoStore& store, std::uint64_t id) {
  for (const auto& v : store.videos) {
    if (v.id == id) return v.bytes;
  }
  return {};
}

std::uint64_t popcount(const std::vector<std::uint8_t>& bits) {
  std::uint64_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

int esp_mod2(const std::vector<std::uint8_t>& bits, std::size_t k) {
  // Number of k-subsets of the set bits, i.e. C(popcount, k), mod 2.
  const std::uint64_t n = popcount(bits);
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return static_cast<int>(c & 1u);
}

}  // namespace blindgate::oracle
