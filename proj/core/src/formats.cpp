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

#include "blindgate/formats.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "blindgate/error.hpp"

namespace blindgate {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

Json bits_json(const std::vector<Bit>& bits) {
  Json arr = Json::array();
  for (const auto& b : bits) arr.push_back(bit_to_json(b));
  return arr;
}

Json triple_to_json(const StarTriple& t) {
  return Json{{"s", t.s.value().to_hex()}, {"x", t.x.value().to_hex()},
              {"y", t.y.value().to_hex()},
              {"noise_bits", {t.s.noise_bits(), t.x.noise_bits(), t.y.noise_bits()}}};
}

StarTriple triple_from_json(const Json& j, const ContextPtr& ctx) {
  const Json& nb = j.at("noise_bits");
  auto ct = [&](const char* key, std::size_t i) {
    return Ciphertext(BigInt::from_hex(j.at(key).get<std::string>()),
                      nb.at(i).get<std::int64_t>(), ctx);
  };
  return StarTriple{ct("s", 0), ct("x", 1), ct("y", 2)};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json bit_to_json(const Bit& b) {
  if (b.is_constant()) return Json(b.constant_value() ? 1 : 0);
  return Json(b.cipher().value().to_hex());
}

Bit bit_from_json(const Json& j, const ContextPtr& ctx) {
  // Noise is carried separately by containers; a bare bit is taken as fresh.
  if (j.is_number_integer()) return Bit::constant(j.get<int>() != 0);
  return Bit(Ciphertext(BigInt::from_hex(j.get<std::string>()),
                        ctx->fresh_noise_bits(), ctx));
}

Json encword_to_json(const EncWord& w) {
  Json noise = Json::array();
  for (const auto& b : w.bits) noise.push_back(b.is_constant() ? 0 : b.noise_bits());
  return Json{{"width", w.width()}, {"bits", bits_json(w.bits)}, {"noise_bits", noise}};
}

EncWord encword_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("EncWord", [&] {
    const Json& bits = j.at("bits");
    const auto width = j.at("width").get<std::size_t>();
    if (bits.size() != width) {
      throw Error(ErrorCode::kWidthMismatch, "EncWord width does not match bit count");
    }
    const Json* noise = j.contains("noise_bits") ? &j.at("noise_bits") : nullptr;
    EncWord w;
    for (std::size_t i = 0; i < width; ++i) {
      const Json& b = bits.at(i);
      if (b.is_number_integer()) {
        w.bits.push_back(Bit::constant(b.get<int>() != 0));
        continue;
      }
      const std::int64_t nb = noise ? noise->at(i).get<std::int64_t>()
                                    : ctx->fresh_noise_bits();
      w.bits.emplace_back(Ciphertext(BigInt::from_hex(b.get<std::string>()), nb, ctx));
    }
    return w;
  });
}

Json schema_to_json(const TableSchema& schema) {
  Json cols = Json::array();
  for (const auto& c : schema.columns) {
    cols.push_back({{"name", c.name},
                    {"width_bits", c.width_bits},
                    {"kind", c.kind == ColumnKind::kText ? "text" : "int"}});
  }
  return Json{{"columns", cols}};
}

TableSchema schema_from_json(const Json& j) {
  TableSchema s = parse_guard("schema", [&] {
    TableSchema out;
    for (const auto& c : j.at("columns")) {
      Column col;
      col.name = c.at("name").get<std::string>();
      col.width_bits = c.at("width_bits").get<std::size_t>();
      const std::string kind = c.value("kind", std::string("int"));
      if (kind == "text") {
        col.kind = ColumnKind::kText;
      } else if (kind == "int") {
        col.kind = ColumnKind::kInt;
      } else {
        throw Error(ErrorCode::kParse, "unknown column kind '" + kind + "'");
      }
      out.columns.push_back(col);
    }
    return out;
  });
  s.validate();
  return s;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(field);
        rows.push_back(row);
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

PlainTable table_from_csv(const std::string& text, const TableSchema& schema) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::kParse, "CSV has no header row");
  const auto& header = rows.front();
  if (header.size() != schema.columns.size()) {
    throw Error(ErrorCode::kParse, "CSV header does not match schema column count");
  }
  std::vector<std::size_t> order(schema.columns.size());
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    order[i] = static_cast<std::size_t>(-1);
    for (std::size_t h = 0; h < header.size(); ++h) {
      if (header[h] == schema.columns[i].name) order[i] = h;
    }
    if (order[i] == static_cast<std::size_t>(-1)) {
      throw Error(ErrorCode::kUnknownColumn,
                  "schema column " + schema.columns[i].name + " missing from CSV header");
    }
  }
  PlainTable t;
  t.schema = schema;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorCode::kParse, "CSV row " + std::to_string(r) + " has wrong field count");
    }
    std::vector<std::string> fields;
    for (auto idx : order) fields.push_back(rows[r][idx]);
    t.rows.push_back(encode_record(schema, fields));
  }
  return t;
}

std::string table_to_csv(const PlainTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.schema.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.schema.columns[i].name);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    auto fields = decode_record(table.schema, row);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::string enc_table_to_jsonl(const EncTable& table) {
  std::string out;
  for (const auto& row : table.rows) {
    out += encword_to_json(row).dump();
    out += '\n';
  }
  return out;
}

EncTable enc_table_from_jsonl(const std::string& text, const TableSchema& schema,
                              const ContextPtr& ctx) {
  EncTable t;
  t.schema = schema;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EncWord w = encword_from_json(
        parse_guard("table line", [&] { return Json::parse(line); }), ctx);
    if (w.width() != schema.record_width()) {
      throw Error(ErrorCode::kWidthMismatch, "encrypted row width differs from schema");
    }
    t.rows.push_back(std::move(w));
  }
  return t;
}

Json datagram_to_json(const Datagram& d) {
  auto noisy = [](const Bit& b) {
    return Json{{"bit", bit_to_json(b)}, {"noise_bits", b.is_constant() ? 0 : b.noise_bits()}};
  };
  return Json{{"f1", noisy(d.f1)},
              {"f2", noisy(d.f2)},
              {"f3", noisy(d.f3)},
              {"f4", noisy(d.f4)},
              {"criterion", encword_to_json(d.criterion)},
              {"care_mask", encword_to_json(d.care_mask)},
              {"eta", encword_to_json(d.eta)},
              {"update", encword_to_json(d.update)},
              {"column", d.column}};
}

Datagram datagram_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("datagram", [&] {
    auto flag = [&](const char* key) {
      const Json& f = j.at(key);
      EncWord w = encword_from_json(
          Json{{"width", 1}, {"bits", {f.at("bit")}}, {"noise_bits", {f.at("noise_bits")}}},
          ctx);
      return w.bits[0];
    };
    Datagram d;
    d.f1 = flag("f1");
    d.f2 = flag("f2");
    d.f3 = flag("f3");
    d.f4 = flag("f4");
    d.criterion = encword_from_json(j.at("criterion"), ctx);
    d.care_mask = encword_from_json(j.at("care_mask"), ctx);
    d.eta = encword_from_json(j.at("eta"), ctx);
    d.update = encword_from_json(j.at("update"), ctx);
    d.column = j.at("column").get<std::string>();
    return d;
  });
}

Json poi_store_to_json(const PoiStore& store) {
  Json cats = Json::array();
  for (const auto& c : store.categories) {
    Json targets = Json::array();
    for (const auto& t : c.targets) {
      targets.push_back({{"x", t.x}, {"y", t.y}, {"payload", t.payload}});
    }
    cats.push_back({{"code", c.code}, {"targets", targets}});
  }
  return Json{{"coord_bits", store.coord_bits},
              {"cat_bits", store.cat_bits},
              {"payload_bits", store.payload_bits},
              {"categories", cats}};
}

PoiStore poi_store_from_json(const Json& j) {
  PoiStore s = parse_guard("store", [&] {
    PoiStore out;
    out.coord_bits = j.at("coord_bits").get<std::size_t>();
    out.cat_bits = j.at("cat_bits").get<std::size_t>();
    out.payload_bits = j.value("payload_bits", std::size_t{8});
    for (const auto& c : j.at("categories")) {
      PoiCategory cat;
      cat.code = c.at("code").get<std::uint64_t>();
      for (const auto& t : c.at("targets")) {
        cat.targets.push_back({t.at("x").get<std::uint64_t>(), t.at("y").get<std::uint64_t>(),
                               t.value("payload", std::uint64_t{0})});
      }
      out.categories.push_back(std::move(cat));
    }
    return out;
  });
  s.validate();
  return s;
}

Json lbs_request_to_json(const LbsRequest& req) {
  return Json{{"pos_x", encword_to_json(req.pos_x)},
              {"pos_y", encword_to_json(req.pos_y)},
              {"category", encword_to_json(req.category)},
              {"radius", encword_to_json(req.radius)},
              {"k", req.k}};
}

LbsRequest lbs_request_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("LBS request", [&] {
    LbsRequest r;
    r.pos_x = encword_from_json(j.at("pos_x"), ctx);
    r.pos_y = encword_from_json(j.at("pos_y"), ctx);
    r.category = encword_from_json(j.at("category"), ctx);
    r.radius = encword_from_json(j.at("radius"), ctx);
    r.k = j.value("k", std::size_t{0});
    return r;
  });
}

Json lbs_response_to_json(const LbsResponse& resp) {
  Json arr = Json::array();
  for (const auto& w : resp.targets) arr.push_back(encword_to_json(w));
  return Json{{"targets", arr}};
}

LbsResponse lbs_response_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("LBS response", [&] {
    LbsResponse r;
    for (const auto& w : j.at("targets")) r.targets.push_back(encword_from_json(w, ctx));
    return r;
  });
}

Json network_to_json(const Network& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes) {
    Json trust = Json::object();
    for (const auto& [nb, t] : n.trust) trust[std::to_string(nb)] = t;
    nodes.push_back({{"id", n.id}, {"neighbors", n.neighbors}, {"trust", trust}});
  }
  return Json{{"nodes", nodes}};
}

Network network_from_json(const Json& j) {
  Network net = parse_guard("topology", [&] {
    Network out;
    for (const auto& jn : j.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<int>();
      n.neighbors = jn.at("neighbors").get<std::vector<int>>();
      std::sort(n.neighbors.begin(), n.neighbors.end());
      for (const auto& [k, v] : jn.at("trust").items()) n.trust[std::stoi(k)] = v.get<int>();
      out.nodes.push_back(std::move(n));
    }
    return out;
  });
  net.validate();
  return net;
}

Json route_request_to_json(const RouteRequest& rr) {
  Json bundle = Json::array();
  for (const auto& t : rr.adapter_bundle) bundle.push_back(triple_to_json(t));
  return Json{{"type", "RR"},
              {"source", rr.source},
              {"dest", rr.dest},
              {"path", rr.path},
              {"acc_trust", encword_to_json(rr.acc_trust)},
              {"adapter_bundle", bundle},
              {"pk_ref", rr.pk_ref}};
}

RouteRequest route_request_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("RR packet", [&] {
    if (j.at("type").get<std::string>() != "RR") {
      throw Error(ErrorCode::kParse, "packet type is not RR");
    }
    RouteRequest rr;
    rr.source = j.at("source").get<int>();
    rr.dest = j.at("dest").get<int>();
    rr.path = j.at("path").get<std::vector<int>>();
    rr.acc_trust = encword_from_json(j.at("acc_trust"), ctx);
    for (const auto& t : j.at("adapter_bundle")) {
      rr.adapter_bundle.push_back(triple_from_json(t, ctx));
    }
    rr.pk_ref = j.at("pk_ref").get<std::string>();
    return rr;
  });
}

Json route_reply_to_json(const RouteReply& rp) {
  return Json{{"type", "RP"},
              {"source", rp.source},
              {"dest", rp.dest},
              {"path", rp.path},
              {"acc_trust", encword_to_json(rp.total_trust)},
              {"adapter_bundle", Json::array()},
              {"pk_ref", rp.pk_ref}};
}

RouteReply route_reply_from_json(const Json& j, const ContextPtr& ctx) {
  return parse_guard("RP packet", [&] {
    if (j.at("type").get<std::string>() != "RP") {
      throw Error(ErrorCode::kParse, "packet type is not RP");
    }
    RouteReply rp;
    rp.source = j.at("source").get<int>();
    rp.dest = j.at("dest").get<int>();
    rp.path = j.at("path").get<std::vector<int>>();
    rp.total_trust = encword_from_json(j.at("acc_trust"), ctx);
    rp.pk_ref = j.at("pk_ref").get<std::string>();
    return rp;
  });
}

std::string bench_csv_header() {
  return "lambda,circuit,profile,records,adds,muls,mixed_adds,mixed_muls,wall_ms,"
         "predicted_noise_bits,measured_noise_bits";
}

std::string bench_csv_row(const BenchRow& r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  std::ostringstream o;
  o << r.lambda << ',' << csv_escape(r.circuit) << ',' << csv_escape(r.profile) << ','
    << r.records << ',' << r.adds << ',' << r.muls << ',' << r.mixed_adds << ','
    << r.mixed_muls << ',' << ms << ',' << r.predicted_noise_bits << ','
    << r.measured_noise_bits;
  return o.str();
}

}  // namespace blindgate
