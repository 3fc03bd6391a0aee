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

#ifndef BLINDGATE_BLIND_QUERY_HPP_
#define BLINDGATE_BLIND_QUERY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blindgate/circuits.hpp"
#include "blindgate/instrument.hpp"

namespace blindgate {

enum class ColumnKind { kInt, kText };

struct Column {
  std::string name;
  std::size_t width_bits = 0;
  ColumnKind kind = ColumnKind::kInt;
};

// Records are the concatenation of their columns, first column in the low
// bits. Text columns hold 8 bits per character, least significant bit
// first, zero padded.
struct TableSchema {
  std::vector<Column> columns;

  std::size_t record_width() const;
  std::size_t index_of(const std::string& name) const;  // UnknownColumn
  std::size_t offset_of(const std::string& name) const;
  const Column& column(const std::string& name) const;
  void validate() const;
};

// Bits of one record, index 0 least significant.
using PlainRecord = std::vector<std::uint8_t>;

struct PlainTable {
  TableSchema schema;
  std::vector<PlainRecord> rows;
};

struct EncTable {
  TableSchema schema;
  std::vector<EncWord> rows;
};

PlainRecord encode_record(const TableSchema& schema,
                          const std::vector<std::string>& fields);
std::vector<std::string> decode_record(const TableSchema& schema,
                                       const PlainRecord& record);
std::uint64_t field_value(const TableSchema& schema, const PlainRecord& record,
                          const std::string& column);
// Bits of a single field value for the named column.
std::vector<std::uint8_t> encode_field(const Column& column,
                                       const std::string& text);

EncTable encrypt_table(const KeyPair& key, const PlainTable& table, Rng& rng);
PlainTable decrypt_table(const SecretKey& sk, const EncTable& table,
                         bool force = false);

struct QueryOptions {
  PrefixStrategy prefix = PrefixStrategy::kEsp;
  // Throw NoiseOverflow when an output's ledger bound is past decryptability.
  bool check_noise = true;
  // Worker threads for per-row work; 0 uses the process default.
  std::size_t threads = 0;
};

struct QueryResult {
  EncWord record;  // folded result; all-zero when nothing matched
  EncWord count;
  EncWord sum;
};

// n-th (1-based) row whose column equals v. eta is the index word: a
// plain_word for a public index or an encrypted word.
QueryResult select_nth(const EncTable& table, const std::string& column,
                       const EncWord& v, const EncWord& eta,
                       const QueryOptions& options = {});
// Every matching row becomes u.
EncTable update_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const EncWord& u,
                      const QueryOptions& options = {});
// Every matching row becomes all-zero.
EncTable delete_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const QueryOptions& options = {});
EncWord count_where(const EncTable& table, const std::string& column,
                    const EncWord& v, const QueryOptions& options = {});
// Encrypted (sum of target over matches, match count); the client divides.
QueryResult avg_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const std::string& target,
                      const QueryOptions& options = {});

// Request envelope for the generic circuit. Exactly one of f1 (equal),
// f2 (column > v), f3 (column < v) is an encryption of 1; f4 = 1 writes.
struct Datagram {
  Bit f1, f2, f3, f4;
  EncWord criterion;  // v, column width
  EncWord care_mask;  // equality wildcard mask, column width
  EncWord eta;        // match index, plain or encrypted
  EncWord update;     // record width; all-zero for reads and deletes
  std::string column;
};

enum class SqlOp { kSelect, kUpdate, kDelete };
enum class Relation { kEqual, kGreater, kLess };

// Client side: builds an encrypted datagram. eta is encrypted when
// encrypt_eta is set, otherwise sent as a public word. eta_bits fixes the
// index width so every request has the same shape; 0 uses bits_for(n).
Datagram make_datagram(const KeyPair& key, const TableSchema& schema,
                       const std::string& column, SqlOp op, Relation rel,
                       std::uint64_t value, std::uint64_t n,
                       const PlainRecord& update, Rng& rng,
                       bool encrypt_eta = false,
                       const std::vector<std::uint8_t>* care = nullptr,
                       std::size_t eta_bits = 0);

struct GenericResult {
  QueryResult result;
  EncTable table;
  OpCounter ops;
};

// One fixed circuit serving every operation: the gate sequence depends only
// on the schema, the row count and which datagram words are public.
GenericResult generic_execute(const EncTable& table, const Datagram& d,
                              const QueryOptions& options = {});

}  // namespace blindgate

#endif  // BLINDGATE_BLIND_QUERY_HPP_
