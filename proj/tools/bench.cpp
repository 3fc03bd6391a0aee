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

#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>

#include "blindgate/blind_query.hpp"
#include "blindgate/instrument.hpp"
#include "blindgate/lbs.hpp"
#include "blindgate/trust_router.hpp"
#include "blindgate/vod.hpp"

namespace blindgate::bench {

namespace {

struct Timed {
  double ms = 0;
  OpCounter ops;
};

// Runs body reps times and keeps the fastest wall time; op counts come from
// the last run (they are identical across runs).
Timed time_best(int reps, const std::function<void()>& body) {
  Timed t;
  t.ms = std::numeric_limits<double>::infinity();
  for (int i = 0; i < std::max(reps, 1); ++i) {
    OpScope scope;
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    t.ms = std::min(t.ms, std::chrono::duration<double, std::milli>(stop - start).count());
    t.ops = scope.counter();
  }
  return t;
}

BenchRow make_row(int lambda, const std::string& circuit, const ParamProfile& p,
                  std::uint64_t records, const Timed& t, const NoisePair& n) {
  BenchRow r;
  r.lambda = lambda;
  r.circuit = circuit;
  r.profile = p.name;
  r.records = records;
  r.adds = t.ops.adds;
  r.muls = t.ops.muls;
  r.mixed_adds = t.ops.mixed_adds;
  r.mixed_muls = t.ops.mixed_muls;
  r.wall_ms = t.ms;
  r.predicted_noise_bits = n.predicted;
  r.measured_noise_bits = n.measured;
  return r;
}

}  // namespace

NoisePair word_noise(const SecretKey& sk, const EncWord& w) {
  NoisePair n;
  for (const auto& b : w.bits) {
    if (b.is_constant()) continue;
    n.predicted = std::max(n.predicted, b.noise_bits());
    n.measured = std::max(n.measured, measure_noise_bits(sk, b.cipher()));
  }
  return n;
}

NoisePair words_noise(const SecretKey& sk, const std::vector<EncWord>& ws) {
  NoisePair n;
  for (const auto& w : ws) {
    NoisePair x = word_noise(sk, w);
    n.predicted = std::max(n.predicted, x.predicted);
    n.measured = std::max(n.measured, x.measured);
  }
  return n;
}

std::vector<BenchRow> bench_mul_curve(int lambda, const std::vector<std::size_t>& n_bits,
                                      const BenchConfig& config) {
  const ParamProfile p = ParamProfile::preset(config.profile, lambda);
  const KeyPair key = keygen(p, config.seed);
  Rng rng(config.seed + 1);
  std::vector<BenchRow> rows;
  for (std::size_t n : n_bits) {
    const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    EncWord a = encrypt_word(key, rng.next_u64() & mask, n, rng);
    EncWord b = encrypt_word(key, rng.next_u64() & mask, n, rng);
    EncWord out;
    Timed t = time_best(config.reps, [&] { out = multiply_words(a, b); });
    rows.push_back(make_row(lambda, "mul", p, n, t, word_noise(key.sk, out)));
  }
  return rows;
}

std::vector<BenchRow> bench_sql(int lambda, const std::vector<std::size_t>& row_counts,
                                const BenchConfig& config) {
  const ParamProfile p = ParamProfile::preset(config.profile, lambda);
  const KeyPair key = keygen(p, config.seed);
  Rng rng(config.seed + 2);
  TableSchema schema;
  schema.columns = {{"id", 3, ColumnKind::kInt}, {"val", 4, ColumnKind::kInt}};
  QueryOptions qo;
  qo.check_noise = false;
  qo.threads = config.threads;
  std::vector<BenchRow> rows;
  for (std::size_t n : row_counts) {
    PlainTable plain;
    plain.schema = schema;
    for (std::size_t r = 0; r < n; ++r) {
      plain.rows.push_back(encode_record(
          schema, {std::to_string(rng.uniform(8)), std::to_string(rng.uniform(16))}));
    }
    const EncTable table = encrypt_table(key, plain, rng);
    const EncWord v = encrypt_word(key, 2, 3, rng);
    const EncWord eta = encrypt_word(key, 1, bits_for(n), rng);
    const EncWord u = encrypt_bits(key, PlainRecord(schema.record_width(), 1), rng);
    const PlainRecord upd(schema.record_width(), 1);

    for (auto [op, name] : {std::pair{SqlOp::kSelect, "sql_generic_select"},
                            std::pair{SqlOp::kUpdate, "sql_generic_update"},
                            std::pair{SqlOp::kDelete, "sql_generic_delete"}}) {
      Datagram d = make_datagram(key, schema, "id", op, Relation::kEqual, 2, 1, upd, rng, true,
                                 nullptr, bits_for(n));
      GenericResult g;
      Timed t = time_best(config.reps, [&] { g = generic_execute(table, d, qo); });
      std::vector<EncWord> outs = g.table.rows;
      outs.push_back(g.result.record);
      rows.push_back(make_row(lambda, name, p, n, t, words_noise(key.sk, outs)));
    }
    {
      QueryResult res;
      Timed t = time_best(config.reps, [&] { res = select_nth(table, "id", v, eta, qo); });
      rows.push_back(make_row(lambda, "sql_select", p, n, t, word_noise(key.sk, res.record)));
    }
    {
      EncTable out;
      Timed t = time_best(config.reps, [&] { out = update_where(table, "id", v, u, qo); });
      rows.push_back(make_row(lambda, "sql_update", p, n, t, words_noise(key.sk, out.rows)));
    }
    {
      EncTable out;
      Timed t = time_best(config.reps, [&] { out = delete_where(table, "id", v, qo); });
      rows.push_back(make_row(lambda, "sql_delete", p, n, t, words_noise(key.sk, out.rows)));
    }
    {
      EncWord out;
      Timed t = time_best(config.reps, [&] { out = count_where(table, "id", v, qo); });
      rows.push_back(make_row(lambda, "sql_count", p, n, t, word_noise(key.sk, out)));
    }
  }
  return rows;
}

std::vector<BenchRow> bench_lbs(int lambda, const std::vector<std::size_t>& targets,
                                const BenchConfig& config) {
  const ParamProfile p = ParamProfile::preset(config.profile, lambda);
  const KeyPair key = keygen(p, config.seed);
  Rng rng(config.seed + 3);
  LbsOptions lo;
  lo.check_noise = false;
  lo.threads = config.threads;
  std::vector<BenchRow> rows;
  for (std::size_t n : targets) {
    PoiStore store;
    store.coord_bits = 3;
    store.cat_bits = 1;
    store.payload_bits = 4;
    store.categories = {{0, {}}, {1, {}}};
    for (std::size_t i = 0; i < n; ++i) {
      store.categories[0].targets.push_back({rng.uniform(8), rng.uniform(8), rng.uniform(16)});
    }
    store.categories[1].targets.push_back({0, 0, 1});
    LbsRequest req = make_request(key, store, rng.uniform(8), rng.uniform(8), 0, 4, 0, rng, true);
    LbsResponse resp;
    Timed t = time_best(config.reps, [&] { resp = respond(store, req, lo); });
    rows.push_back(make_row(lambda, "lbs_coverage", p, n, t, words_noise(key.sk, resp.targets)));
  }
  return rows;
}

std::vector<BenchRow> bench_route(int lambda, const std::vector<std::size_t>& hops,
                                  const BenchConfig& config) {
  ParamProfile p = ParamProfile::preset(config.profile, lambda, KeyMode::kAsymmetric);
  const KeyPair key = keygen(p, config.seed);
  Rng rng(config.seed + 4);
  RouterOptions ro;
  ro.check_noise = false;
  std::vector<BenchRow> rows;
  for (std::size_t h : hops) {
    Network net;
    net.nodes.resize(h + 1);
    for (std::size_t i = 0; i <= h; ++i) net.nodes[i].id = static_cast<int>(i);
    for (std::size_t i = 0; i < h; ++i) {
      const int a = static_cast<int>(i), b = a + 1;
      net.nodes[i].neighbors.push_back(b);
      net.nodes[i + 1].neighbors.push_back(a);
      net.nodes[i].trust[b] = static_cast<int>(rng.uniform_int(kMinTrust, kMaxTrust));
      net.nodes[i + 1].trust[a] = static_cast<int>(rng.uniform_int(kMinTrust, kMaxTrust));
    }
    for (auto& node : net.nodes) std::sort(node.neighbors.begin(), node.neighbors.end());
    RouteReply rp;
    Timed t = time_best(config.reps, [&] {
      rp = discover_route(net, 0, static_cast<int>(h), key, rng, ro);
    });
    rows.push_back(make_row(lambda, "route", p, h, t, word_noise(key.sk, rp.total_trust)));
  }
  return rows;
}

std::vector<BenchRow> bench_vod(int lambda, const std::vector<std::size_t>& videos,
                                const BenchConfig& config) {
  const ParamProfile p = ParamProfile::preset(config.profile, lambda);
  const KeyPair key = keygen(p, config.seed);
  Rng rng(config.seed + 5);
  VodOptions vo;
  vo.check_noise = false;
  vo.threads = config.threads;
  std::vector<BenchRow> rows;
  for (std::size_t n : videos) {
    VideoStore store = make_pseudo_store(n, 64, config.seed);
    EncWord id = encrypt_word(key, n / 2, kVideoIdBits, rng);
    std::vector<Ciphertext> stream;
    Timed t = time_best(config.reps, [&] { stream = request_video(store, id, vo); });
    EncWord w;
    for (const auto& c : stream) w.bits.emplace_back(c);
    rows.push_back(make_row(lambda, "vod", p, n, t, word_noise(key.sk, w)));
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = bench_csv_header() + "\n";
  for (const auto& r : rows) out += bench_csv_row(r) + "\n";
  return out;
}

}  // namespace blindgate::bench
