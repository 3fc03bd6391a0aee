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

#ifndef BLINDGATE_INSTRUMENT_HPP_
#define BLINDGATE_INSTRUMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace blindgate {

enum class OpKind : std::uint8_t { kAdd, kMul, kMixedAdd, kMixedMul };

// Tally of homomorphic operations. merge() is commutative and associative.
struct OpCounter {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t mixed_adds = 0;
  std::uint64_t mixed_muls = 0;

  void record(OpKind kind);
  OpCounter& merge(const OpCounter& other);
  std::uint64_t total() const { return adds + muls + mixed_adds + mixed_muls; }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

OpCounter merge(OpCounter a, const OpCounter& b);

// Collects every homomorphic operation executed on the current thread while
// alive. Scopes nest: on destruction a scope folds its tally and trace into
// the enclosing scope, so outer scopes see the operations of inner ones.
class OpScope {
 public:
  explicit OpScope(bool keep_trace = false);
  ~OpScope();
  OpScope(const OpScope&) = delete;
  OpScope& operator=(const OpScope&) = delete;

  const OpCounter& counter() const { return counter_; }
  const std::vector<OpKind>& trace() const { return trace_; }

  void record(OpKind kind);
  // Folds a finished worker's tally and trace as if executed here.
  void absorb(const OpCounter& counter, const std::vector<OpKind>& trace);

 private:
  OpCounter counter_;
  std::vector<OpKind> trace_;
  bool keep_trace_;
  OpScope* parent_;
};

namespace instrument {

// Called by the scheme for every operation it performs.
void record(OpKind kind);
OpScope* current_scope();

// Worker count used by parallel_for when threads == 0. Default 1.
void set_default_threads(std::size_t threads);
std::size_t default_threads();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks; each
// chunk's operations are tallied separately and folded into the caller's
// scope in chunk order, so counters and traces equal those of a serial run.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace instrument
}  // namespace blindgate

#endif  // BLINDGATE_INSTRUMENT_HPP_
