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

#include "blindgate/instrument.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace blindgate {
namespace {

thread_local OpScope* t_scope = nullptr;
std::atomic<std::size_t> g_threads{1};

}  // namespace

void OpCounter::record(OpKind kind) {
  switch (kind) {
    case OpKind::kAdd: ++adds; break;
    case OpKind::kMul: ++muls; break;
    case OpKind::kMixedAdd: ++mixed_adds; break;
    case OpKind::kMixedMul: ++mixed_muls; break;
  }
}

OpCounter& OpCounter::merge(const OpCounter& o) {
  adds += o.adds;
  muls += o.muls;
  mixed_adds += o.mixed_adds;
  mixed_muls += o.mixed_muls;
  return *this;
}

OpCounter merge(OpCounter a, const OpCounter& b) { return a.merge(b); }

OpScope::OpScope(bool keep_trace) : keep_trace_(keep_trace), parent_(t_scope) {
  if (parent_ != nullptr && parent_->keep_trace_) keep_trace_ = true;
  t_scope = this;
}

OpScope::~OpScope() {
  t_scope = parent_;
  if (parent_ != nullptr) parent_->absorb(counter_, trace_);
}

void OpScope::record(OpKind kind) {
  counter_.record(kind);
  if (keep_trace_) trace_.push_back(kind);
}

void OpScope::absorb(const OpCounter& counter,
                     const std::vector<OpKind>& trace) {
  counter_.merge(counter);
  if (keep_trace_) trace_.insert(trace_.end(), trace.begin(), trace.end());
}

namespace instrument {

void record(OpKind kind) {
  if (t_scope != nullptr) t_scope->record(kind);
}

OpScope* current_scope() { return t_scope; }

void set_default_threads(std::size_t threads) {
  g_threads.store(std::max<std::size_t>(threads, 1));
}

std::size_t default_threads() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads) {
  if (threads == 0) threads = default_threads();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  OpScope* caller = t_scope;
  struct Chunk {
    OpCounter counter;
    std::vector<OpKind> trace;
    std::exception_ptr error;
  };
  std::vector<Chunk> chunks(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t per = n / threads, extra = n % threads;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t end = begin + per + (t < extra ? 1 : 0);
    workers.emplace_back([&, t, begin, end] {
      try {
        OpScope scope(true);
        for (std::size_t i = begin; i < end; ++i) body(i);
        chunks[t].counter = scope.counter();
        chunks[t].trace = scope.trace();
      } catch (...) {
        chunks[t].error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
  for (auto& c : chunks) {
    if (c.error) std::rethrow_exception(c.error);
  }
  if (caller != nullptr) {
    for (auto& c : chunks) caller->absorb(c.counter, c.trace);
  }
}

}  // namespace instrument
}  // namespace blindgate
