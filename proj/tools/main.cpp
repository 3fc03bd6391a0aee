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

// blindgate: command-line front end for the encrypted pipelines.
//
// Exit codes: 0 success, 1 other failure, 2 usage error, 3 noise overflow,
// 4 I/O or input-format error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "blindgate/blind_query.hpp"
#include "blindgate/error.hpp"
#include "blindgate/formats.hpp"
#include "blindgate/instrument.hpp"
#include "blindgate/lbs.hpp"
#include "blindgate/plain_oracle.hpp"
#include "blindgate/she_io.hpp"
#include "blindgate/trust_router.hpp"
#include "blindgate/vod.hpp"

namespace bg = blindgate;

namespace {

constexpr const char* kSynopsis =
    "usage: blindgate {keygen|encrypt|decrypt|sql|lbs|route|vod|bench|estimate} "
    "[--seed N] [--lambda N] [--profile a|b|vod|custom] [--threads N] [--csv PATH] "
    "[options] (see --help)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<int> lambda;
  std::optional<std::string> profile;
  std::size_t threads = 0;
  std::string csv;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("BLINDGATE_SEED")) {
      try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(env, &pos, 0);
        if (pos == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw UsageError("BLINDGATE_SEED is not an integer");
    }
    return 1;
  }
};

// Writes to --csv when given, otherwise to stdout.
void emit_csv(const Globals& g, const std::string& text) {
  if (g.csv.empty()) {
    std::cout << text;
  } else {
    bg::write_text_file_atomic(g.csv, text);
    std::cout << "wrote " << g.csv << "\n";
  }
}

bg::KeyPair load_key(const std::string& path) {
  return bg::key_from_json(bg::read_json_file(path));
}

std::string ops_line(const bg::OpCounter& c) {
  std::ostringstream o;
  o << "ops adds=" << c.adds << " muls=" << c.muls << " mixed_adds=" << c.mixed_adds
    << " mixed_muls=" << c.mixed_muls;
  return o.str();
}

std::string join_fields(const std::vector<std::string>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += f[i];
  }
  return out;
}

std::uint64_t bits_to_u64(const std::vector<std::uint8_t>& bits) {
  if (bits.size() > 64) throw UsageError("value wider than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) v |= std::uint64_t{bits[i]} << i;
  return v;
}

// ---- keygen / encrypt / decrypt ---------------------------------------------

struct KeygenArgs {
  std::string out;
  std::string mode = "symmetric";
  bool squash = false;
  std::size_t sk_bits = 0, q_bits = 0, r_bits = 0;
};

int run_keygen(const Globals& g, const KeygenArgs& a) {
  const int lambda = g.lambda.value_or(3);
  const std::string name = bg::canonical_profile_name(g.profile.value_or("profile_b"));
  const bg::KeyMode mode = bg::parse_key_mode(a.mode);
  bg::ParamProfile p;
  if (name == "custom") {
    if (a.sk_bits == 0 || a.q_bits == 0 || a.r_bits == 0) {
      throw UsageError("custom profile needs --sk-bits, --q-bits and --r-bits");
    }
    p = bg::ParamProfile::custom(lambda, a.sk_bits, a.q_bits, a.r_bits, mode);
  } else {
    p = bg::ParamProfile::preset(name, lambda, mode);
  }
  bg::KeygenOptions opts;
  opts.squash = a.squash;
  const bg::KeyPair key = bg::keygen(p, g.resolved_seed(), opts);
  bg::write_json_file(a.out, bg::key_to_json(key));
  std::cout << "wrote " << a.out << " (" << p.name << ", lambda " << p.lambda << ", "
            << bg::key_mode_name(p.mode) << ", sk " << p.sk_bits << " bits, q " << p.q_bits
            << " bits, r " << p.r_bits << " bits, capacity " << bg::capacity(p) << ")\n";
  return 0;
}

struct EncryptArgs {
  std::string key, out;
  std::uint64_t value = 0;
  std::size_t width = 1;
};

int run_encrypt(const Globals& g, const EncryptArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  if (a.width == 0 || a.width > 64) throw UsageError("--width must be in [1, 64]");
  if (a.width < 64 && (a.value >> a.width) != 0) throw UsageError("--value does not fit --width");
  bg::Rng rng(g.resolved_seed());
  const bg::Json j = bg::encword_to_json(bg::encrypt_word(key, a.value, a.width, rng));
  if (a.out.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    bg::write_json_file(a.out, j);
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

struct DecryptArgs {
  std::string key, in;
  bool force = false;
};

int run_decrypt(const Globals&, const DecryptArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  const bg::EncWord w = bg::encword_from_json(bg::read_json_file(a.in), key.ctx);
  const auto bits = bg::decrypt_bits(key.sk, w, a.force);
  std::int64_t measured = 0;
  for (const auto& b : w.bits) {
    if (!b.is_constant()) measured = std::max(measured, bg::measure_noise_bits(key.sk, b.cipher()));
  }
  std::string bitstr;
  for (std::size_t i = bits.size(); i-- > 0;) bitstr += bits[i] ? '1' : '0';
  std::cout << "bits " << bitstr << "\n";
  if (bits.size() <= 64) std::cout << "value " << bits_to_u64(bits) << "\n";
  std::cout << "width " << w.width() << " ledger_bits " << w.max_noise_bits()
            << " measured_bits " << measured << "\n";
  return 0;
}

// ---- sql ----------------------------------------------------------------------

struct SqlArgs {
  std::string key, table, schema, op = "select", where, set, target, engine = "generic";
  std::uint64_t index = 1;
  bool eta_encrypted = false;
  std::string out_table, out_csv, datagram;
};

struct WhereClause {
  std::string column;
  bg::Relation rel = bg::Relation::kEqual;
  std::string value;
};

WhereClause parse_where(const std::string& text) {
  const auto pos = text.find_first_of("=<>");
  if (pos == std::string::npos || pos == 0 || pos + 1 >= text.size()) {
    throw UsageError("--where must look like col=v, col>v or col<v");
  }
  WhereClause w;
  w.column = text.substr(0, pos);
  w.rel = text[pos] == '=' ? bg::Relation::kEqual
          : text[pos] == '>' ? bg::Relation::kGreater
                             : bg::Relation::kLess;
  w.value = text.substr(pos + 1);
  return w;
}

bg::PlainRecord parse_set(const bg::TableSchema& schema, const std::string& text) {
  std::vector<std::string> fields(schema.columns.size());
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    if (schema.columns[i].kind == bg::ColumnKind::kInt) fields[i] = "0";
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--set must look like col=v,col2=w");
    fields[schema.index_of(item.substr(0, eq))] = item.substr(eq + 1);
  }
  return bg::encode_record(schema, fields);
}

int run_sql(const Globals& g, const SqlArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  const bg::TableSchema schema = bg::schema_from_json(bg::read_json_file(a.schema));
  const bg::PlainTable plain = bg::table_from_csv(bg::read_text_file(a.table), schema);
  const WhereClause where = parse_where(a.where);
  const bg::Column& col = schema.column(where.column);
  const std::vector<std::uint8_t> vbits = bg::encode_field(col, where.value);
  bg::Rng rng(g.resolved_seed());
  bg::QueryOptions qo;
  qo.threads = g.threads;

  bg::oracle::SqlQuery q;
  q.column = where.column;
  q.relation = where.rel;
  q.value = bits_to_u64(vbits);
  q.n = a.index;
  q.target = a.target;
  bg::PlainRecord update(schema.record_width(), 0);
  if (a.op == "select") {
    q.kind = bg::oracle::SqlKind::kSelect;
  } else if (a.op == "update") {
    q.kind = bg::oracle::SqlKind::kUpdate;
    if (a.set.empty()) throw UsageError("update needs --set");
    update = parse_set(schema, a.set);
  } else if (a.op == "delete") {
    q.kind = bg::oracle::SqlKind::kDelete;
  } else if (a.op == "count") {
    q.kind = bg::oracle::SqlKind::kCount;
  } else if (a.op == "avg") {
    q.kind = bg::oracle::SqlKind::kAvg;
    if (a.target.empty()) throw UsageError("avg needs --target");
    schema.column(a.target);
  } else {
    throw UsageError("--op must be select, update, delete, count or avg");
  }
  q.update = update;
  const bg::oracle::SqlResult want = bg::oracle::oracle_sql(plain, q);

  const bg::EncTable table = bg::encrypt_table(key, plain, rng);
  const std::size_t eta_bits = bg::bits_for(std::max<std::uint64_t>(plain.rows.size(), a.index));
  const bool generic = a.engine == "generic" && (a.op == "select" || a.op == "update" ||
                                                 a.op == "delete");
  if (a.engine != "generic" && a.engine != "circuit") {
    throw UsageError("--engine must be generic or circuit");
  }
  if (!generic && where.rel != bg::Relation::kEqual) {
    throw UsageError("relations other than = need --engine generic and a select/update/delete");
  }

  bg::EncWord record, count, sum;
  bg::EncTable out_table = table;
  bg::OpCounter ops;
  bool have_record = false, have_count = false, have_table = false;
  {
    bg::OpScope scope;
    if (generic) {
      const bg::SqlOp op = a.op == "select"   ? bg::SqlOp::kSelect
                           : a.op == "update" ? bg::SqlOp::kUpdate
                                              : bg::SqlOp::kDelete;
      bg::Datagram d = bg::make_datagram(key, schema, where.column, op, where.rel, q.value,
                                         a.index, update, rng, a.eta_encrypted, nullptr,
                                         eta_bits);
      if (!a.datagram.empty()) bg::write_json_file(a.datagram, bg::datagram_to_json(d));
      bg::GenericResult gr = bg::generic_execute(table, d, qo);
      record = gr.result.record;
      count = gr.result.count;
      out_table = gr.table;
      have_record = have_count = have_table = true;
    } else {
      const bg::EncWord v = bg::encrypt_bits(key, vbits, rng);
      if (a.op == "select") {
        const bg::EncWord eta = a.eta_encrypted ? bg::encrypt_word(key, a.index, eta_bits, rng)
                                                : bg::plain_word(a.index, eta_bits);
        record = bg::select_nth(table, where.column, v, eta, qo).record;
        have_record = true;
      } else if (a.op == "update") {
        out_table = bg::update_where(table, where.column, v, bg::encrypt_bits(key, update, rng), qo);
        have_table = true;
      } else if (a.op == "delete") {
        out_table = bg::delete_where(table, where.column, v, qo);
        have_table = true;
      } else if (a.op == "count") {
        count = bg::count_where(table, where.column, v, qo);
        have_count = true;
      } else {
        bg::QueryResult r = bg::avg_where(table, where.column, v, a.target, qo);
        count = r.count;
        sum = r.sum;
        have_count = true;
      }
    }
    ops = scope.counter();
  }

  bool match = true;
  std::vector<bg::EncWord> outputs;
  if (have_record) {
    const auto rec = bg::decrypt_bits(key.sk, record);
    std::cout << "record " << join_fields(bg::decode_record(schema, rec)) << "\n";
    match &= rec == want.record;
    outputs.push_back(record);
  }
  if (have_count) {
    const auto c = bg::decrypt_word(key.sk, count);
    std::cout << "count " << c << "\n";
    match &= c == want.count;
    outputs.push_back(count);
  }
  if (a.op == "avg") {
    const auto s = bg::decrypt_word(key.sk, sum);
    const auto c = bg::decrypt_word(key.sk, count);
    std::cout << "sum " << s << "\n";
    if (c != 0) std::cout << "avg " << static_cast<double>(s) / static_cast<double>(c) << "\n";
    match &= s == want.sum;
    outputs.push_back(sum);
  }
  if (have_table && a.op != "select") {
    const bg::PlainTable dec = bg::decrypt_table(key.sk, out_table);
    std::cout << "table\n" << bg::table_to_csv(dec);
    match &= dec.rows == want.table.rows;
    for (const auto& r : out_table.rows) outputs.push_back(r);
    if (!a.out_csv.empty()) bg::write_text_file_atomic(a.out_csv, bg::table_to_csv(dec));
  }
  if (!a.out_table.empty()) bg::write_text_file_atomic(a.out_table, bg::enc_table_to_jsonl(out_table));
  std::cout << ops_line(ops) << "\n";
  std::cout << "oracle " << (match ? "match" : "MISMATCH") << "\n";

  if (!g.csv.empty()) {
    const bg::bench::NoisePair n = bg::bench::words_noise(key.sk, outputs);
    bg::BenchRow row;
    row.lambda = key.profile().lambda;
    row.circuit = std::string(generic ? "sql_generic_" : "sql_") + a.op;
    row.profile = key.profile().name;
    row.records = plain.rows.size();
    row.adds = ops.adds;
    row.muls = ops.muls;
    row.mixed_adds = ops.mixed_adds;
    row.mixed_muls = ops.mixed_muls;
    row.predicted_noise_bits = n.predicted;
    row.measured_noise_bits = n.measured;
    emit_csv(g, bg::bench::to_csv({row}));
  }
  return match ? 0 : 1;
}

// ---- lbs ----------------------------------------------------------------------

struct LbsArgs {
  std::string key, store, filter = "coverage", request_out, response_out;
  std::uint64_t x = 0, y = 0, category = 0, radius = 0;
  std::size_t k = 0;
  bool encrypt_radius = false;
};

void noise_rows(const bg::SecretKey& sk, const std::string& stage,
                const std::vector<bg::EncWord>& words, std::string& csv) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bg::bench::NoisePair n = bg::bench::word_noise(sk, words[i]);
    csv += stage + "," + std::to_string(i) + "," + std::to_string(n.predicted) + "," +
           std::to_string(n.measured) + "\n";
  }
}

std::vector<bg::EncWord> as_words(const std::vector<bg::Bit>& bits) {
  std::vector<bg::EncWord> out;
  for (const auto& b : bits) out.push_back(bg::EncWord({b}));
  return out;
}

int run_lbs(const Globals& g, const LbsArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  const bg::PoiStore store = bg::poi_store_from_json(bg::read_json_file(a.store));
  bg::Rng rng(g.resolved_seed());
  bg::LbsOptions lo;
  lo.threads = g.threads;
  if (a.filter == "sort") {
    lo.filter = bg::LbsFilter::kSort;
  } else if (a.filter != "coverage") {
    throw UsageError("--filter must be coverage or sort");
  }
  const bg::LbsRequest req = bg::make_request(key, store, a.x, a.y, a.category, a.radius, a.k,
                                              rng, a.encrypt_radius);
  if (!a.request_out.empty()) bg::write_json_file(a.request_out, bg::lbs_request_to_json(req));
  bg::LbsTrace trace;
  bg::LbsResponse resp;
  bg::OpCounter ops;
  {
    bg::OpScope scope;
    resp = bg::respond(store, req, lo, &trace);
    ops = scope.counter();
  }
  if (!a.response_out.empty()) bg::write_json_file(a.response_out, bg::lbs_response_to_json(resp));

  std::vector<std::uint64_t> got;
  for (std::size_t j = 0; j < resp.targets.size(); ++j) {
    const std::uint64_t v = bg::decrypt_word(key.sk, resp.targets[j]);
    got.push_back(v);
    const std::uint64_t cm = (std::uint64_t{1} << store.coord_bits) - 1;
    if (v == 0) {
      std::cout << "slot " << j << " empty\n";
    } else {
      std::cout << "slot " << j << " x=" << (v & cm) << " y=" << ((v >> store.coord_bits) & cm)
                << " payload=" << (v >> (2 * store.coord_bits)) << "\n";
    }
  }
  const auto want = bg::oracle::oracle_lbs(store, a.x, a.y, a.category, a.radius, a.k,
                                           lo.filter == bg::LbsFilter::kSort);
  std::cout << ops_line(ops) << "\n";
  std::cout << "oracle " << (got == want ? "match" : "MISMATCH") << "\n";

  std::string csv = "stage,index,predicted_noise_bits,measured_noise_bits\n";
  noise_rows(key.sk, "category_match", as_words(trace.category_match), csv);
  noise_rows(key.sk, "distance", trace.distances, csv);
  noise_rows(key.sk, "in_range", as_words(trace.in_range), csv);
  noise_rows(key.sk, "per_category", trace.per_category, csv);
  noise_rows(key.sk, "target", resp.targets, csv);
  emit_csv(g, csv);
  return got == want ? 0 : 1;
}

// ---- route --------------------------------------------------------------------

struct RouteArgs {
  std::string key, topology, save_topology, packets;
  std::size_t nodes = 20, degree = 4, max_hops = 0;
  int source = 0, dest = -1;
};

int run_route(const Globals& g, const RouteArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  if (key.profile().mode != bg::KeyMode::kAsymmetric) {
    throw UsageError("route needs an asymmetric key (keygen --mode asymmetric)");
  }
  const std::uint64_t seed = g.resolved_seed();
  const bg::Network net = a.topology.empty() ? bg::build_topology(a.nodes, a.degree, seed)
                                             : bg::network_from_json(bg::read_json_file(a.topology));
  if (!a.save_topology.empty()) bg::write_json_file(a.save_topology, bg::network_to_json(net));
  const int dest = a.dest >= 0 ? a.dest : static_cast<int>(net.size()) - 1;
  bg::Rng rng(seed + 1);
  bg::RouterOptions ro;
  ro.max_hops = a.max_hops;
  bg::RouteStats stats;
  std::vector<bg::RouteRequest> packets;
  const auto start = std::chrono::steady_clock::now();
  const bg::RouteReply rp = bg::discover_route(net, a.source, dest, key, rng, ro, &stats, &packets);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!a.packets.empty()) {
    std::string text;
    for (const auto& rr : packets) text += bg::route_request_to_json(rr).dump() + "\n";
    text += bg::route_reply_to_json(rp).dump() + "\n";
    bg::write_text_file_atomic(a.packets, text);
  }
  const std::uint64_t total = bg::decrypt_word(key.sk, rp.total_trust);
  std::string path;
  for (std::size_t i = 0; i < rp.path.size(); ++i) path += (i ? "-" : "") + std::to_string(rp.path[i]);
  std::cout << "path " << path << "\n";
  std::cout << "total_trust " << total << "\n";
  if (!stats.per_hop.empty()) std::cout << "per_hop " << ops_line(stats.per_hop.front()) << "\n";
  const bg::oracle::RouteOutcome want = bg::oracle::oracle_route(net, a.source, dest, a.max_hops);
  const bool match = want.path == rp.path && want.trust_sum == total;
  std::cout << "oracle " << (match ? "match" : "MISMATCH") << "\n";

  const bg::bench::NoisePair n = bg::bench::word_noise(key.sk, rp.total_trust);
  std::ostringstream csv;
  csv << "lambda,profile,hops,wall_ms,predicted_noise_bits,measured_noise_bits\n"
      << key.profile().lambda << ',' << key.profile().name << ',' << stats.hops << ',' << ms
      << ',' << n.predicted << ',' << n.measured << "\n";
  emit_csv(g, csv.str());
  return match ? 0 : 1;
}

// ---- vod ----------------------------------------------------------------------

struct VodArgs {
  std::string key, store, save_store, out, bytes_out;
  std::size_t pseudo = 0, bytes = 1024;
  std::uint64_t id = 0;
};

int run_vod(const Globals& g, const VodArgs& a) {
  const bg::KeyPair key = load_key(a.key);
  if (a.store.empty() == (a.pseudo == 0)) throw UsageError("give exactly one of --store or --pseudo");
  const std::uint64_t seed = g.resolved_seed();
  const bg::VideoStore store =
      a.store.empty() ? bg::make_pseudo_store(a.pseudo, a.bytes, seed) : bg::load_video_store(a.store);
  if (!a.save_store.empty()) bg::save_video_store(store, a.save_store);
  bg::Rng rng(seed + 1);
  const bg::EncWord id = bg::encrypt_word(key, a.id, bg::kVideoIdBits, rng);
  bg::VodOptions vo;
  vo.threads = g.threads;
  bg::OpCounter ops;
  std::vector<bg::Ciphertext> stream;
  {
    bg::OpScope scope;
    stream = bg::request_video(store, id, vo);
    ops = scope.counter();
  }
  if (!a.out.empty()) bg::write_text_file_atomic(a.out, bg::stream_to_text(stream));
  const auto bytes = bg::decrypt_stream(key.sk, stream);
  if (!a.bytes_out.empty()) {
    bg::write_text_file_atomic(a.bytes_out, std::string(bytes.begin(), bytes.end()));
  }
  auto want = bg::oracle::oracle_vod(store, a.id);
  want.resize(store.stream_bytes(), 0);
  std::size_t expansion_bits = 0;
  for (const auto& c : stream) expansion_bits += c.value().bit_length();
  std::cout << "stream_bytes " << bytes.size() << " ciphertexts " << stream.size() << "\n";
  std::cout << "mean_ciphertext_bits "
            << (stream.empty() ? 0.0 : static_cast<double>(expansion_bits) / stream.size()) << "\n";
  std::cout << ops_line(ops) << "\n";
  std::cout << "oracle " << (bytes == want ? "match" : "MISMATCH") << "\n";
  return bytes == want ? 0 : 1;
}

// ---- estimate -----------------------------------------------------------------

struct EstimateArgs {
  double size_mb = 100, bw = 2.5, length_s = -1;
  std::vector<int> lambdas;
};

int run_estimate(const Globals& g, const EstimateArgs& a) {
  std::vector<int> lambdas = a.lambdas;
  if (lambdas.empty()) {
    if (g.lambda) {
      lambdas = {*g.lambda};
    } else {
      lambdas = {3, 4, 5, 6};
    }
  }
  std::ostringstream csv;
  csv << "lambda,original_mb,encrypted_mb,original_bw_mb_s,required_bw_mb_s";
  if (a.length_s >= 0) csv << ",cache_mb";
  csv << "\n";
  for (int lambda : lambdas) {
    const bg::StreamEstimate e = bg::estimate_stream(a.size_mb, a.bw, lambda);
    if (lambdas.size() == 1) {
      std::cout << "encrypted stream: " << e.encrypted_mb << " MB, "
                << static_cast<long long>(std::floor(e.required_bw)) << " MB/s\n";
    }
    csv << lambda << ',' << e.original_mb << ',' << e.encrypted_mb << ',' << e.original_bw << ','
        << static_cast<long long>(std::floor(e.required_bw));
    if (a.length_s >= 0) {
      // Bandwidth in MB/s converted to bit/s for the cache formula.
      csv << ',' << bg::estimate_cache(a.length_s, e.required_bw * 8.0 * 1024 * 1024);
    }
    csv << "\n";
  }
  emit_csv(g, csv.str());
  return 0;
}

// ---- bench --------------------------------------------------------------------

struct BenchArgs {
  std::string kind = "mul";
  std::vector<int> lambdas;
  std::vector<std::size_t> sizes;
  int reps = 3;
};

int run_bench(const Globals& g, const BenchArgs& a) {
  bg::bench::BenchConfig cfg;
  cfg.profile = g.profile.value_or("profile_b");
  cfg.seed = g.resolved_seed();
  cfg.threads = g.threads;
  cfg.reps = a.reps;
  std::vector<int> lambdas = a.lambdas;
  if (lambdas.empty()) lambdas = g.lambda ? std::vector<int>{*g.lambda} : std::vector<int>{3, 4};
  const std::vector<std::string> kinds =
      a.kind == "all" ? std::vector<std::string>{"mul", "sql", "lbs", "route", "vod"}
                      : std::vector<std::string>{a.kind};
  std::vector<bg::BenchRow> rows;
  for (const auto& kind : kinds) {
    for (int lambda : lambdas) {
      std::vector<bg::BenchRow> part;
      if (kind == "mul") {
        part = bg::bench::bench_mul_curve(
            lambda, a.sizes.empty() ? std::vector<std::size_t>{1, 2, 4, 8, 12, 16} : a.sizes, cfg);
      } else if (kind == "sql") {
        part = bg::bench::bench_sql(
            lambda, a.sizes.empty() ? std::vector<std::size_t>{2, 4, 8, 16} : a.sizes, cfg);
      } else if (kind == "lbs") {
        part = bg::bench::bench_lbs(
            lambda, a.sizes.empty() ? std::vector<std::size_t>{1, 2, 4, 8} : a.sizes, cfg);
      } else if (kind == "route") {
        part = bg::bench::bench_route(
            lambda, a.sizes.empty() ? std::vector<std::size_t>{1, 2, 4, 8} : a.sizes, cfg);
      } else if (kind == "vod") {
        part = bg::bench::bench_vod(
            lambda, a.sizes.empty() ? std::vector<std::size_t>{1, 2, 4, 8} : a.sizes, cfg);
      } else {
        throw UsageError("--kind must be mul, sql, lbs, route, vod or all");
      }
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  emit_csv(g, bg::bench::to_csv(rows));
  return 0;
}

int exit_code_for(const bg::Error& e) {
  switch (e.code()) {
    case bg::ErrorCode::kNoiseOverflow: return 3;
    case bg::ErrorCode::kIo:
    case bg::ErrorCode::kParse: return 4;
    case bg::ErrorCode::kInvalidLambda:
    case bg::ErrorCode::kInvalidProfile:
    case bg::ErrorCode::kUnknownColumn:
    case bg::ErrorCode::kInvalidArgument:
    case bg::ErrorCode::kWidthMismatch: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind queries, location lookups, trust routing and video retrieval over "
               "somewhat homomorphic integer encryption"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed (falls back to BLINDGATE_SEED, then 1)");
  app.add_option("--lambda", g.lambda, "Security parameter");
  app.add_option("--profile", g.profile, "Parameter profile: a, b, vod or custom");
  app.add_option("--threads", g.threads, "Worker threads for per-record work");
  app.add_option("--csv", g.csv, "Write CSV output to PATH instead of stdout");

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key file");
  keygen->add_option("--out", kg.out, "Key file to write")->required();
  keygen->add_option("--mode", kg.mode, "symmetric or asymmetric");
  keygen->add_flag("--squash", kg.squash, "Include the squashed-decryption hint");
  keygen->add_option("--sk-bits", kg.sk_bits, "Custom profile: secret key bits");
  keygen->add_option("--q-bits", kg.q_bits, "Custom profile: multiplier bits");
  keygen->add_option("--r-bits", kg.r_bits, "Custom profile: noise bits");

  EncryptArgs en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt an integer as a bit word");
  encrypt->add_option("--key", en.key, "Key file")->required();
  encrypt->add_option("--value", en.value, "Value to encrypt")->required();
  encrypt->add_option("--width", en.width, "Word width in bits");
  encrypt->add_option("--out", en.out, "EncWord JSON to write (default stdout)");

  DecryptArgs de;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt an EncWord JSON file");
  decrypt->add_option("--key", de.key, "Key file")->required();
  decrypt->add_option("--in", de.in, "EncWord JSON")->required();
  decrypt->add_flag("--force", de.force, "Decrypt even past the ledger limit");

  SqlArgs sq;
  auto* sql = app.add_subcommand("sql", "Run a blind query on a CSV table");
  sql->add_option("--key", sq.key, "Key file")->required();
  sql->add_option("--table", sq.table, "CSV table with header")->required();
  sql->add_option("--schema", sq.schema, "Schema JSON")->required();
  sql->add_option("--op", sq.op, "select, update, delete, count or avg");
  sql->add_option("--where", sq.where, "Criterion: col=v, col>v or col<v")->required();
  sql->add_option("--index", sq.index, "1-based match index for select");
  sql->add_option("--set", sq.set, "Update record: col=v,col2=w");
  sql->add_option("--target", sq.target, "Column summed by avg");
  sql->add_option("--engine", sq.engine, "generic (single circuit) or circuit (per operation)");
  sql->add_flag("--eta-encrypted", sq.eta_encrypted, "Encrypt the match index");
  sql->add_option("--out-table", sq.out_table, "Write the resulting encrypted table (JSON lines)");
  sql->add_option("--out-csv", sq.out_csv, "Write the decrypted resulting table");
  sql->add_option("--datagram", sq.datagram, "Write the request datagram JSON");

  LbsArgs lb;
  auto* lbs = app.add_subcommand("lbs", "Find points of interest around an encrypted position");
  lbs->add_option("--key", lb.key, "Key file")->required();
  lbs->add_option("--store", lb.store, "Store JSON")->required();
  lbs->add_option("--x", lb.x, "Position x")->required();
  lbs->add_option("--y", lb.y, "Position y")->required();
  lbs->add_option("--category", lb.category, "Category code")->required();
  lbs->add_option("--radius", lb.radius, "Manhattan radius")->required();
  lbs->add_option("--k", lb.k, "Result slots (0: largest category size)");
  lbs->add_option("--filter", lb.filter, "coverage or sort");
  lbs->add_flag("--encrypt-radius", lb.encrypt_radius, "Send the radius encrypted");
  lbs->add_option("--request-out", lb.request_out, "Write the request JSON");
  lbs->add_option("--response-out", lb.response_out, "Write the response JSON");

  RouteArgs ra;
  auto* route = app.add_subcommand("route", "Discover a route with encrypted trust accumulation");
  route->add_option("--key", ra.key, "Asymmetric key file")->required();
  route->add_option("--topology", ra.topology, "Topology JSON (default: generate)");
  route->add_option("--nodes", ra.nodes, "Generated topology size");
  route->add_option("--degree", ra.degree, "Generated topology degree cap");
  route->add_option("--source", ra.source, "Source node");
  route->add_option("--dest", ra.dest, "Destination node (default: last node)");
  route->add_option("--max-hops", ra.max_hops, "Hop limit (default: nodes - 1)");
  route->add_option("--save-topology", ra.save_topology, "Write the topology JSON");
  route->add_option("--packets", ra.packets, "Write RR/RP packets as JSON lines");

  VodArgs vd;
  auto* vod = app.add_subcommand("vod", "Retrieve a video by encrypted id");
  vod->add_option("--key", vd.key, "Key file")->required();
  vod->add_option("--store", vd.store, "Store directory");
  vod->add_option("--pseudo", vd.pseudo, "Use N generated videos instead of --store");
  vod->add_option("--bytes", vd.bytes, "Generated video size in bytes");
  vod->add_option("--id", vd.id, "Video id")->required();
  vod->add_option("--save-store", vd.save_store, "Write the store directory");
  vod->add_option("--out", vd.out, "Write the encrypted stream");
  vod->add_option("--bytes-out", vd.bytes_out, "Write the decrypted bytes");

  EstimateArgs es;
  auto* estimate = app.add_subcommand("estimate", "Encrypted stream size and bandwidth");
  estimate->add_option("--size-mb", es.size_mb, "Original stream size in MB");
  estimate->add_option("--bw", es.bw, "Original bandwidth in MB/s");
  estimate->add_option("--length-s", es.length_s, "Stream length for the cache estimate");
  estimate->add_option("--lambdas", es.lambdas, "Lambda values (default --lambda or 3..6)")
      ->delimiter(',');

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Sweep circuits and write CSV");
  bench->add_option("--kind", be.kind, "mul, sql, lbs, route, vod or all");
  bench->add_option("--lambdas", be.lambdas, "Lambda values")->delimiter(',');
  bench->add_option("--sizes", be.sizes, "Circuit sizes")->delimiter(',');
  bench->add_option("--reps", be.reps, "Timed repetitions per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << kSynopsis << ": " << e.what() << "\n";
    return 2;
  }

  try {
    if (g.threads > 0) bg::instrument::set_default_threads(g.threads);
    if (*keygen) return run_keygen(g, kg);
    if (*encrypt) return run_encrypt(g, en);
    if (*decrypt) return run_decrypt(g, de);
    if (*sql) return run_sql(g, sq);
    if (*lbs) return run_lbs(g, lb);
    if (*route) return run_route(g, ra);
    if (*vod) return run_vod(g, vd);
    if (*estimate) return run_estimate(g, es);
    if (*bench) return run_bench(g, be);
  } catch (const UsageError& e) {
    std::cerr << kSynopsis << ": " << e.what() << "\n";
    return 2;
  } catch (const bg::Error& e) {
    const int code = exit_code_for(e);
    if (code == 2) {
      std::cerr << kSynopsis << ": " << e.what() << "\n";
    } else {
      std::cerr << "blindgate: " << e.what() << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "blindgate: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
