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

#include "blindgate/trust_router.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "blindgate/error.hpp"

namespace blindgate {
namespace {

void check_trust(int t) {
  if (t < kMinTrust || t > kMaxTrust) {
    throw Error(ErrorCode::kInvalidArgument,
                "trust " + std::to_string(t) + " outside [1, 10]");
  }
}

int local_trust(const Node& node, int neighbor) {
  auto it = node.trust.find(neighbor);
  if (it == node.trust.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "node " + std::to_string(node.id) + " has no trust entry for " +
                    std::to_string(neighbor));
  }
  return it->second;
}

Ciphertext fresh(const ContextPtr& ctx, int m, Rng& rng) {
  return encrypt_public(ctx, m, rng);
}

}  // namespace

const Node& Network::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || nodes[id].id != id) {
    throw Error(ErrorCode::kInvalidArgument, "unknown node " + std::to_string(id));
  }
  return nodes[id];
}

bool Network::connected() const {
  if (nodes.empty()) return true;
  std::vector<char> seen(nodes.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : nodes[u].neighbors) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == nodes.size();
}

void Network::validate() const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id != static_cast<int>(i)) {
      throw Error(ErrorCode::kInvalidArgument, "node ids must be 0..n-1 in order");
    }
    for (int v : n.neighbors) {
      const Node& m = node(v);
      if (!std::binary_search(m.neighbors.begin(), m.neighbors.end(), n.id)) {
        throw Error(ErrorCode::kInvalidArgument, "neighbor relation is not symmetric");
      }
      check_trust(local_trust(n, v));
    }
  }
}

Network build_topology(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "topology needs at least 2 nodes");
  Rng rng(seed);
  constexpr int kRetries = 100;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<std::vector<int>> adj(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[rng.uniform(i + 1)]);
    }
    auto has_room = [&](int v) { return adj[v].size() < max_degree; };
    auto linked = [&](int a, int b) {
      return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    };
    bool ok = true;
    for (std::size_t i = 1; i < n && ok; ++i) {
      std::vector<int> candidates;
      for (std::size_t j = 0; j < i; ++j) {
        if (has_room(order[j])) candidates.push_back(order[j]);
      }
      if (candidates.empty() || !has_room(order[i])) {
        ok = false;
        break;
      }
      int parent = candidates[rng.uniform(candidates.size())];
      adj[parent].push_back(order[i]);
      adj[order[i]].push_back(parent);
    }
    if (!ok) continue;
    for (std::size_t e = 0; e < n; ++e) {
      int a = static_cast<int>(rng.uniform(n));
      int b = static_cast<int>(rng.uniform(n));
      if (a == b || linked(a, b) || !has_room(a) || !has_room(b)) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    Network net;
    net.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Node& node = net.nodes[i];
      node.id = static_cast<int>(i);
      node.neighbors = adj[i];
      std::sort(node.neighbors.begin(), node.neighbors.end());
      for (int v : node.neighbors) {
        node.trust[v] = static_cast<int>(rng.uniform_int(kMinTrust, kMaxTrust));
      }
    }
    return net;
  }
  throw Error(ErrorCode::kDisconnected,
              "no connected topology with max degree " + std::to_string(max_degree));
}

std::size_t acc_bits_for(std::size_t max_hops) {
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < max_hops) ++lg;
  return kTrustBits + lg;
}

std::optional<int> next_hop(const Node& node, int dest,
                            const std::vector<int>& visited) {
  if (std::binary_search(node.neighbors.begin(), node.neighbors.end(), dest)) {
    return dest;
  }
  std::optional<int> best;
  int best_trust = -1;
  for (int v : node.neighbors) {
    if (std::find(visited.begin(), visited.end(), v) != visited.end()) continue;
    int t = local_trust(node, v);
    if (t > best_trust) {
      best_trust = t;
      best = v;
    }
  }
  return best;
}

EncWord hop_update(const EncWord& acc, int trust) {
  check_trust(trust);
  const std::size_t w = acc.width();
  if (w < kTrustBits) {
    throw Error(ErrorCode::kWidthMismatch, "accumulator narrower than a trust value");
  }
  return add_words(acc, plain_word(static_cast<std::uint64_t>(trust), w)).resized(w);
}

AdapterBundle adapt(const EncWord& acc, const AdderShape& shape,
                    const ContextPtr& pk, Rng& rng) {
  if (acc.width() != shape.acc_bits) {
    throw Error(ErrorCode::kShapeMismatch, "accumulator width differs from shape");
  }
  AdapterBundle bundle;
  bundle.reserve(shape.gate_count());
  for (std::size_t g = 0; g < shape.gate_count(); ++g) {
    StarTriple t;
    t.s = fresh(pk, shape.gate(g) == GateKind::kAnd ? 1 : 0, rng);
    t.x = acc[g / 2].to_ciphertext(pk);
    t.y = fresh(pk, 0, rng);
    bundle.push_back(std::move(t));
  }
  return bundle;
}

EncWord evaluate_bundle(const AdapterBundle& bundle, const AdderShape& shape,
                        int trust) {
  check_trust(trust);
  if (bundle.size() != shape.gate_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                "bundle has " + std::to_string(bundle.size()) + " triples, shape expects " +
                    std::to_string(shape.gate_count()));
  }
  const std::size_t w = shape.acc_bits;
  std::vector<Bit> p(w), g(w);
  for (std::size_t i = 0; i < w; ++i) {
    const int ti = i < 64 ? (trust >> i) & 1 : 0;
    const StarTriple& xg = bundle[2 * i];
    const StarTriple& ag = bundle[2 * i + 1];
    p[i] = star(xg.s, xg.x, mixed_add(ti, xg.y));
    g[i] = star(ag.s, ag.x, mixed_add(ti, ag.y));
  }
  EncWord out;
  out.bits.reserve(w);
  Bit c = Bit::constant(false);
  for (std::size_t i = 0; i < w; ++i) {
    out.bits.push_back(fold_xor(p[i], c));
    if (i + 1 < w) c = fold_xor(g[i], fold_and(c, p[i]));
  }
  return out;
}

EncWord bundle_value(const AdapterBundle& bundle, const AdderShape& shape) {
  if (bundle.size() != shape.gate_count()) {
    throw Error(ErrorCode::kShapeMismatch, "bundle size differs from shape");
  }
  EncWord out;
  for (std::size_t i = 0; i < shape.acc_bits; ++i) out.bits.emplace_back(bundle[2 * i].x);
  return out;
}

RouteReply discover_route(const Network& net, int source, int dest,
                          const KeyPair& key, Rng& rng,
                          const RouterOptions& options, RouteStats* stats,
                          std::vector<RouteRequest>* packets) {
  if (source == dest) {
    throw Error(ErrorCode::kInvalidArgument, "source and destination coincide");
  }
  net.node(source);
  net.node(dest);
  const ContextPtr& pk = key.ctx;
  const std::size_t max_hops = options.max_hops != 0 ? options.max_hops : net.size() - 1;
  const AdderShape shape{acc_bits_for(max_hops)};
  const std::string pk_ref = "lineage:" + std::to_string(pk->lineage);

  std::vector<int> path{source};
  auto step = [&](int u) {
    auto nxt = next_hop(net.node(u), dest, path);
    if (!nxt) {
      throw Error(ErrorCode::kNoRoute,
                  "dead end at node " + std::to_string(u) + " after " +
                      std::to_string(path.size() - 1) + " hops");
    }
    if (path.size() > max_hops) {
      throw Error(ErrorCode::kNoRoute, "route exceeds " + std::to_string(max_hops) + " hops");
    }
    return *nxt;
  };

  // The source seeds the accumulator with its own trust in the first hop.
  int u = source;
  int nxt = step(u);
  EncWord acc = encrypt_word(key, static_cast<std::uint64_t>(local_trust(net.node(u), nxt)),
                             shape.acc_bits, rng);
  std::size_t edges = 1;
  auto trim = [&] {
    if (!options.trim_known_zero) return;
    const std::size_t live = bits_for(static_cast<std::uint64_t>(kMaxTrust) * edges);
    for (std::size_t i = live; i < acc.width(); ++i) acc[i] = trivial(pk, 0);
  };
  trim();
  AdapterBundle bundle = adapt(acc, shape, pk, rng);
  auto emit = [&] {
    if (packets == nullptr) return;
    RouteRequest rr;
    rr.source = source;
    rr.dest = dest;
    rr.path = path;
    rr.acc_trust = acc;
    rr.adapter_bundle = bundle;
    rr.pk_ref = pk_ref;
    packets->push_back(std::move(rr));
  };
  path.push_back(nxt);
  emit();
  u = nxt;
  if (stats != nullptr) *stats = RouteStats{};

  while (u != dest) {
    nxt = step(u);
    OpScope scope;
    acc = evaluate_bundle(bundle, shape, local_trust(net.node(u), nxt));
    ++edges;
    trim();
    if (stats != nullptr) stats->per_hop.push_back(scope.counter());
    bundle = adapt(acc, shape, pk, rng);
    path.push_back(nxt);
    emit();
    u = nxt;
  }

  RouteReply rp;
  rp.source = source;
  rp.dest = dest;
  rp.path = path;
  rp.total_trust = bundle_value(bundle, shape);
  rp.pk_ref = pk_ref;
  if (stats != nullptr) stats->hops = edges;
  if (options.check_noise && !rp.total_trust.ledger_valid()) {
    throw Error(ErrorCode::kNoiseOverflow,
                "accumulated trust ledger bound " +
                    std::to_string(rp.total_trust.max_noise_bits()) +
                    " bits is past the decryption limit");
  }
  return rp;
}

}  // namespace blindgate
