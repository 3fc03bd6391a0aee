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

#ifndef BLINDGATE_FORMATS_HPP_
#define BLINDGATE_FORMATS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blindgate/blind_query.hpp"
#include "blindgate/lbs.hpp"
#include "blindgate/she_io.hpp"
#include "blindgate/trust_router.hpp"

namespace blindgate {

// Wire bits are "0x..." hex strings; public constant wires are the JSON
// integers 0 and 1. {"width": w, "bits": [...], "noise_bits": [...]}.
Json bit_to_json(const Bit& b);
Bit bit_from_json(const Json& j, const ContextPtr& ctx);
Json encword_to_json(const EncWord& w);
EncWord encword_from_json(const Json& j, const ContextPtr& ctx);

Json schema_to_json(const TableSchema& schema);
TableSchema schema_from_json(const Json& j);

// CSV with a header row naming the schema's columns in any order.
PlainTable table_from_csv(const std::string& text, const TableSchema& schema);
std::string table_to_csv(const PlainTable& table);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// One serialized EncWord per line.
std::string enc_table_to_jsonl(const EncTable& table);
EncTable enc_table_from_jsonl(const std::string& text, const TableSchema& schema,
                              const ContextPtr& ctx);

Json datagram_to_json(const Datagram& d);
Datagram datagram_from_json(const Json& j, const ContextPtr& ctx);

Json poi_store_to_json(const PoiStore& store);
PoiStore poi_store_from_json(const Json& j);
Json lbs_request_to_json(const LbsRequest& req);
LbsRequest lbs_request_from_json(const Json& j, const ContextPtr& ctx);
Json lbs_response_to_json(const LbsResponse& resp);
LbsResponse lbs_response_from_json(const Json& j, const ContextPtr& ctx);

// {"nodes": [{"id", "neighbors": [...], "trust": {"<id>": t}}]}
Json network_to_json(const Network& net);
Network network_from_json(const Json& j);

// {"type": "RR"|"RP", source, dest, path[], acc_trust, adapter_bundle[], pk_ref}
Json route_request_to_json(const RouteRequest& rr);
RouteRequest route_request_from_json(const Json& j, const ContextPtr& ctx);
Json route_reply_to_json(const RouteReply& rp);
RouteReply route_reply_from_json(const Json& j, const ContextPtr& ctx);

// Shared row shape of every bench CSV. records counts bits, rows, targets,
// hops or videos depending on the circuit.
struct BenchRow {
  int lambda = 0;
  std::string circuit;
  std::string profile;
  std::uint64_t records = 0;
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t mixed_adds = 0;
  std::uint64_t mixed_muls = 0;
  double wall_ms = 0;
  std::int64_t predicted_noise_bits = 0;
  std::int64_t measured_noise_bits = 0;
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace blindgate

#endif  // BLINDGATE_FORMATS_HPP_
