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

#include "blindgate/blind_query.hpp"

#include <algorithm>
#include <set>

#include "blindgate/error.hpp"

namespace blindgate {
namespace {

void check_output(const EncWord& w, const QueryOptions& options,
                  const char* what) {
  if (options.check_noise && !w.ledger_valid()) {
    throw Error(ErrorCode::kNoiseOverflow,
                std::string(what) + ": output ledger bound " +
                    std::to_string(w.max_noise_bits()) +
                    " bits is past the decryption limit");
  }
}

void check_table(const EncTable& t) {
  const std::size_t w = t.schema.record_width();
  for (const auto& r : t.rows) {
    if (r.width() != w) {
      throw Error(ErrorCode::kWidthMismatch, "row width differs from schema");
    }
  }
}

// I_R for every row.
std::vector<Bit> match_indicators(const EncTable& table,
                                  const std::string& column, const EncWord& v,
                                  const QueryOptions& options) {
  check_table(table);
  const Column& col = table.schema.column(column);
  const std::size_t off = table.schema.offset_of(column);
  if (v.width() != col.width_bits) {
    throw Error(ErrorCode::kWidthMismatch,
                "criterion width " + std::to_string(v.width()) +
                    " differs from column width " +
                    std::to_string(col.width_bits));
  }
  std::vector<Bit> ind(table.rows.size());
  instrument::parallel_for(
      table.rows.size(),
      [&](std::size_t r) {
        ind[r] = eq_word(table.rows[r].slice(off, col.width_bits), v);
      },
      options.threads);
  return ind;
}

// I'_R = I_R * [S_R == eta].
std::vector<Bit> nth_indicators(const std::vector<Bit>& ind, const EncWord& eta,
                                const QueryOptions& options) {
  std::vector<EncWord> sums = prefix_sums(ind, options.prefix);
  const std::size_t k = std::max(sums.front().width(), eta.width());
  const EncWord target = eta.resized(k);
  std::vector<Bit> out(ind.size());
  instrument::parallel_for(
      ind.size(),
      [&](std::size_t r) {
        out[r] = band(ind[r], eq_word(sums[r].resized(k), target));
      },
      options.threads);
  return out;
}

// Sum over rows of sel_R * R, bit by bit.
EncWord fold_rows(const std::vector<Bit>& sel, const std::vector<EncWord>& rows,
                  std::size_t width, const QueryOptions& options) {
  std::vector<EncWord> masked(rows.size());
  instrument::parallel_for(
      rows.size(),
      [&](std::size_t r) {
        EncWord m;
        m.bits.reserve(width);
        for (std::size_t b = 0; b < width; ++b) {
          m.bits.push_back(band(sel[r], rows[r][b]));
        }
        masked[r] = std::move(m);
      },
      options.threads);
  EncWord out;
  out.bits.reserve(width);
  for (std::size_t b = 0; b < width; ++b) {
    std::vector<Bit> column;
    column.reserve(rows.size());
    for (const auto& m : masked) column.push_back(m[b]);
    out.bits.push_back(xor_all(std::move(column)));
  }
  return out;
}

}  // namespace

std::size_t TableSchema::record_width() const {
  std::size_t w = 0;
  for (const auto& c : columns) w += c.width_bits;
  return w;
}

std::size_t TableSchema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownColumn, "no column named " + name);
}

std::size_t TableSchema::offset_of(const std::string& name) const {
  const std::size_t idx = index_of(name);
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx; ++i) off += columns[i].width_bits;
  return off;
}

const Column& TableSchema::column(const std::string& name) const {
  return columns[index_of(name)];
}

void TableSchema::validate() const {
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (c.width_bits < 1) {
      throw Error(ErrorCode::kInvalidArgument, "column " + c.name + " has zero width");
    }
    if (c.kind == ColumnKind::kText && c.width_bits % 8 != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "text column " + c.name + " width must be a multiple of 8");
    }
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate column " + c.name);
    }
  }
}

std::vector<std::uint8_t> encode_field(const Column& column,
                                       const std::string& text) {
  std::vector<std::uint8_t> bits(column.width_bits, 0);
  if (column.kind == ColumnKind::kText) {
    const std::size_t chars = column.width_bits / 8;
    if (text.size() > chars) {
      throw Error(ErrorCode::kInvalidArgument,
                  "text '" + text + "' longer than column " + column.name);
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto c = static_cast<unsigned char>(text[i]);
      for (std::size_t b = 0; b < 8; ++b) bits[8 * i + b] = (c >> b) & 1u;
    }
    return bits;
  }
  std::uint64_t v = 0;
  try {
    std::size_t pos = 0;
    v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad integer '" + text + "' for column " + column.name);
  }
  if (column.width_bits < 64 && (v >> column.width_bits) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "value " + text + " does not fit column " + column.name);
  }
  for (std::size_t b = 0; b < column.width_bits && b < 64; ++b) {
    bits[b] = (v >> b) & 1u;
  }
  return bits;
}

PlainRecord encode_record(const TableSchema& schema,
                          const std::vector<std::string>& fields) {
  if (fields.size() != schema.columns.size()) {
    throw Error(ErrorCode::kShapeMismatch, "field count differs from schema");
  }
  PlainRecord rec;
  rec.reserve(schema.record_width());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    auto bits = encode_field(schema.columns[i], fields[i]);
    rec.insert(rec.end(), bits.begin(), bits.end());
  }
  return rec;
}

std::vector<std::string> decode_record(const TableSchema& schema,
                                       const PlainRecord& record) {
  std::vector<std::string> out;
  std::size_t off = 0;
  for (const auto& c : schema.columns) {
    if (c.kind == ColumnKind::kText) {
      std::string s;
      for (std::size_t i = 0; i < c.width_bits / 8; ++i) {
        unsigned char ch = 0;
        for (std::size_t b = 0; b < 8; ++b) {
          ch |= static_cast<unsigned char>(record.at(off + 8 * i + b) << b);
        }
        if (ch == 0) break;
        s.push_back(static_cast<char>(ch));
      }
      out.push_back(s);
    } else {
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < c.width_bits && b < 64; ++b) {
        if (record.at(off + b)) v |= std::uint64_t{1} << b;
      }
      out.push_back(std::to_string(v));
    }
    off += c.width_bits;
  }
  return out;
}

std::uint64_t field_value(const TableSchema& schema, const PlainRecord& record,
                          const std::string& column) {
  const Column& c = schema.column(column);
  const std::size_t off = schema.offset_of(column);
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < c.width_bits && b < 64; ++b) {
    if (record.at(off + b)) v |= std::uint64_t{1} << b;
  }
  return v;
}

EncTable encrypt_table(const KeyPair& key, const PlainTable& table, Rng& rng) {
  table.schema.validate();
  EncTable out;
  out.schema = table.schema;
  for (const auto& row : table.rows) {
    if (row.size() != table.schema.record_width()) {
      throw Error(ErrorCode::kWidthMismatch, "plain row width differs from schema");
    }
    out.rows.push_back(encrypt_bits(key, row, rng));
  }
  return out;
}

PlainTable decrypt_table(const SecretKey& sk, const EncTable& table,
                         bool force) {
  PlainTable out;
  out.schema = table.schema;
  for (const auto& row : table.rows) out.rows.push_back(decrypt_bits(sk, row, force));
  return out;
}

QueryResult select_nth(const EncTable& table, const std::string& column,
                       const EncWord& v, const EncWord& eta,
                       const QueryOptions& options) {
  const std::size_t width = table.schema.record_width();
  std::vector<Bit> ind = match_indicators(table, column, v, options);
  QueryResult res;
  if (ind.empty()) {
    res.record = plain_word(0, width);
    return res;
  }
  std::vector<Bit> nth = nth_indicators(ind, eta, options);
  res.record = fold_rows(nth, table.rows, width, options);
  check_output(res.record, options, "select_nth");
  return res;
}

EncTable update_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const EncWord& u,
                      const QueryOptions& options) {
  const std::size_t width = table.schema.record_width();
  if (u.width() != width) {
    throw Error(ErrorCode::kWidthMismatch, "update payload width differs from record");
  }
  std::vector<Bit> ind = match_indicators(table, column, v, options);
  EncTable out;
  out.schema = table.schema;
  out.rows.resize(table.rows.size());
  instrument::parallel_for(
      table.rows.size(),
      [&](std::size_t r) {
        Bit keep = bnot(ind[r]);
        EncWord row;
        row.bits.reserve(width);
        for (std::size_t b = 0; b < width; ++b) {
          row.bits.push_back(
              bxor(band(keep, table.rows[r][b]), band(ind[r], u[b])));
        }
        out.rows[r] = std::move(row);
      },
      options.threads);
  for (const auto& row : out.rows) check_output(row, options, "update_where");
  return out;
}

EncTable delete_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const QueryOptions& options) {
  const std::size_t width = table.schema.record_width();
  std::vector<Bit> ind = match_indicators(table, column, v, options);
  EncTable out;
  out.schema = table.schema;
  out.rows.resize(table.rows.size());
  instrument::parallel_for(
      table.rows.size(),
      [&](std::size_t r) {
        Bit keep = bnot(ind[r]);
        EncWord row;
        row.bits.reserve(width);
        for (std::size_t b = 0; b < width; ++b) {
          row.bits.push_back(band(keep, table.rows[r][b]));
        }
        out.rows[r] = std::move(row);
      },
      options.threads);
  for (const auto& row : out.rows) check_output(row, options, "delete_where");
  return out;
}

EncWord count_where(const EncTable& table, const std::string& column,
                    const EncWord& v, const QueryOptions& options) {
  std::vector<Bit> ind = match_indicators(table, column, v, options);
  if (ind.empty()) return plain_word(0, 1);
  EncWord count = popcount_esp(ind);
  check_output(count, options, "count_where");
  return count;
}

QueryResult avg_where(const EncTable& table, const std::string& column,
                      const EncWord& v, const std::string& target,
                      const QueryOptions& options) {
  const Column& tc = table.schema.column(target);
  const std::size_t toff = table.schema.offset_of(target);
  std::vector<Bit> ind = match_indicators(table, column, v, options);
  QueryResult res;
  if (ind.empty()) {
    res.count = plain_word(0, 1);
    res.sum = plain_word(0, tc.width_bits);
    return res;
  }
  res.count = popcount_esp(ind);
  const std::size_t width = tc.width_bits + bits_for(ind.size());
  EncWord acc;
  for (std::size_t r = 0; r < ind.size(); ++r) {
    EncWord masked;
    masked.bits.reserve(tc.width_bits);
    for (std::size_t b = 0; b < tc.width_bits; ++b) {
      masked.bits.push_back(band(ind[r], table.rows[r][toff + b]));
    }
    if (r == 0) {
      acc = masked.resized(width);
    } else {
      acc = add_words_fold(acc, masked.resized(width)).resized(width);
    }
  }
  res.sum = std::move(acc);
  check_output(res.count, options, "avg_where");
  check_output(res.sum, options, "avg_where");
  return res;
}

Datagram make_datagram(const KeyPair& key, const TableSchema& schema,
                       const std::string& column, SqlOp op, Relation rel,
                       std::uint64_t value, std::uint64_t n,
                       const PlainRecord& update, Rng& rng, bool encrypt_eta,
                       const std::vector<std::uint8_t>* care,
                       std::size_t eta_bits) {
  const Column& col = schema.column(column);
  Datagram d;
  d.column = column;
  d.f1 = encrypt(key, rel == Relation::kEqual, rng);
  d.f2 = encrypt(key, rel == Relation::kGreater, rng);
  d.f3 = encrypt(key, rel == Relation::kLess, rng);
  d.f4 = encrypt(key, op != SqlOp::kSelect, rng);
  d.criterion = encrypt_word(key, value, col.width_bits, rng);
  if (care != nullptr) {
    if (care->size() != col.width_bits) {
      throw Error(ErrorCode::kWidthMismatch, "care mask width differs from column");
    }
    d.care_mask = encrypt_bits(key, *care, rng);
  } else {
    d.care_mask = encrypt_bits(key, std::vector<std::uint8_t>(col.width_bits, 1), rng);
  }
  const std::size_t ew = eta_bits == 0 ? bits_for(n) : eta_bits;
  if (ew < 64 && (n >> ew) != 0) {
    throw Error(ErrorCode::kWidthMismatch, "index does not fit eta_bits");
  }
  d.eta = encrypt_eta ? encrypt_word(key, n, ew, rng) : plain_word(n, ew);
  PlainRecord u(schema.record_width(), 0);
  if (op == SqlOp::kUpdate) {
    if (update.size() != u.size()) {
      throw Error(ErrorCode::kWidthMismatch, "update record width differs from schema");
    }
    u = update;
  }
  d.update = encrypt_bits(key, u, rng);
  return d;
}

GenericResult generic_execute(const EncTable& table, const Datagram& d,
                              const QueryOptions& options) {
  check_table(table);
  OpScope scope;
  const std::size_t width = table.schema.record_width();
  const Column& col = table.schema.column(d.column);
  const std::size_t off = table.schema.offset_of(d.column);
  if (d.criterion.width() != col.width_bits ||
      d.care_mask.width() != col.width_bits) {
    throw Error(ErrorCode::kWidthMismatch, "datagram criterion width differs from column");
  }
  if (d.update.width() != width) {
    throw Error(ErrorCode::kWidthMismatch, "datagram update width differs from record");
  }
  const std::size_t n = table.rows.size();
  std::vector<Bit> ind(n);
  instrument::parallel_for(
      n,
      [&](std::size_t r) {
        EncWord c = table.rows[r].slice(off, col.width_bits);
        Bit eq = eq_word_masked(c, d.criterion, d.care_mask);
        Bit gt = bnot(ge_compare(d.criterion, c));
        Bit lt = bnot(ge_compare(c, d.criterion));
        ind[r] = bxor(bxor(band(d.f1, eq), band(d.f2, gt)), band(d.f3, lt));
      },
      options.threads);

  GenericResult out;
  out.table.schema = table.schema;
  out.table.rows.resize(n);
  if (n == 0) {
    out.result.record = plain_word(0, width);
    out.result.count = plain_word(0, 1);
    out.ops = scope.counter();
    return out;
  }
  std::vector<Bit> nth = nth_indicators(ind, d.eta, options);
  out.result.record = fold_rows(nth, table.rows, width, options);
  out.result.count = popcount_esp(ind);

  Bit keep_old = bnot(d.f4);
  // Per row: (1 + I) R + I (F4 U + (1 + F4) R).
  instrument::parallel_for(
      n,
      [&](std::size_t r) {
        Bit keep = bnot(ind[r]);
        EncWord row;
        row.bits.reserve(width);
        for (std::size_t b = 0; b < width; ++b) {
          const Bit& old = table.rows[r][b];
          Bit w = bxor(band(d.f4, d.update[b]), band(keep_old, old));
          row.bits.push_back(bxor(band(keep, old), band(ind[r], w)));
        }
        out.table.rows[r] = std::move(row);
      },
      options.threads);

  check_output(out.result.record, options, "generic_execute");
  for (const auto& row : out.table.rows) check_output(row, options, "generic_execute");
  out.ops = scope.counter();
  return out;
}

}  // namespace blindgate
