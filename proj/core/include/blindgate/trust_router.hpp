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

#ifndef BLINDGATE_TRUST_ROUTER_HPP_
#define BLINDGATE_TRUST_ROUTER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blindgate/circuits.hpp"
#include "blindgate/instrument.hpp"

namespace blindgate {

struct Node {
  int id = 0;
  std::vector<int> neighbors;  // sorted
  std::map<int, int> trust;    // neighbor -> trust in [1, 10]
};

struct Network {
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
  const Node& node(int id) const;
  bool connected() const;
  void validate() const;
};

inline constexpr int kMinTrust = 1;
inline constexpr int kMaxTrust = 10;
inline constexpr std::size_t kTrustBits = 4;

// Random connected graph: a random spanning tree whose degrees never exceed
// max_degree, plus extra random edges under the same cap. Trust tables are
// directed and uniform in [1, 10].
Network build_topology(std::size_t n, std::size_t max_degree, std::uint64_t seed);

// 4 + ceil(log2(max_hops)).
std::size_t acc_bits_for(std::size_t max_hops);

// Greedy next hop: the destination when adjacent, otherwise the unvisited
// neighbor with the highest trust (lowest id on ties); nullopt on a dead end.
std::optional<int> next_hop(const Node& node, int dest,
                            const std::vector<int>& visited);

// acc + local_trust over acc.width() bits via mixed plain/encrypted ripple add.
EncWord hop_update(const EncWord& acc, int local_trust);

enum class GateKind : std::uint8_t { kXor = 0, kAnd = 1 };

// The public skeleton of a hop: for each accumulator bit one XOR gate and one
// AND gate between the incoming bit and the local trust bit, followed by a
// fixed internal carry chain.
struct AdderShape {
  std::size_t acc_bits = 0;

  std::size_t gate_count() const { return 2 * acc_bits; }
  GateKind gate(std::size_t g) const { return g % 2 == 0 ? GateKind::kXor : GateKind::kAnd; }
};

// One Star gate's wires: selector, incoming value, port for the local input.
struct StarTriple {
  Ciphertext s;
  Ciphertext x;
  Ciphertext y;
};

using AdapterBundle = std::vector<StarTriple>;

// Re-expresses acc as Star triples for the next hop's interface, encrypting
// the gate kinds under the route's public key.
AdapterBundle adapt(const EncWord& acc, const AdderShape& shape,
                    const ContextPtr& pk, Rng& rng);
// Evaluates a bundle with the local trust folded into the ports. Equals
// hop_update(acc, local_trust) after decryption.
EncWord evaluate_bundle(const AdapterBundle& bundle, const AdderShape& shape,
                        int local_trust);
// The accumulator carried by a bundle (its X wires).
EncWord bundle_value(const AdapterBundle& bundle, const AdderShape& shape);

struct RouteRequest {
  int source = 0;
  int dest = 0;
  std::vector<int> path;
  EncWord acc_trust;
  AdapterBundle adapter_bundle;
  std::string pk_ref;
};

struct RouteReply {
  int source = 0;
  int dest = 0;
  std::vector<int> path;
  EncWord total_trust;
  std::string pk_ref;
};

struct RouteStats {
  std::vector<OpCounter> per_hop;  // one entry per intermediate node
  std::size_t hops = 0;
};

struct RouterOptions {
  std::size_t max_hops = 0;  // 0: network size - 1
  // Replace accumulator bits that are zero for every possible path of the
  // current length (sum <= 10 * edges) with trivial zeros. Public
  // information only; the operation count is unchanged.
  bool trim_known_zero = true;
  bool check_noise = true;
};

// Runs route discovery under a key pair generated by the source. Only the
// returned reply's total decrypts, and only with key.sk.
RouteReply discover_route(const Network& net, int source, int dest,
                          const KeyPair& key, Rng& rng,
                          const RouterOptions& options = {},
                          RouteStats* stats = nullptr,
                          std::vector<RouteRequest>* packets = nullptr);

}  // namespace blindgate

#endif  // BLINDGATE_TRUST_ROUTER_HPP_
