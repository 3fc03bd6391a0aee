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

#include "blindgate/lbs.hpp"

#include <algorithm>
#include <set>

#include "blindgate/error.hpp"
#include "blindgate/instrument.hpp"

namespace blindgate {
namespace {

void check_word(const EncWord& w, bool enabled, const char* what) {
  if (enabled && !w.ledger_valid()) {
    throw Error(ErrorCode::kNoiseOverflow,
                std::string(what) + ": ledger bound " +
                    std::to_string(w.max_noise_bits()) +
                    " bits is past the decryption limit");
  }
}

bool fits(std::uint64_t v, std::size_t bits) {
  return bits >= 64 || (v >> bits) == 0;
}

}  // namespace

void PoiStore::validate() const {
  if (coord_bits < 1 || cat_bits < 1) {
    throw Error(ErrorCode::kInvalidArgument, "store needs coord_bits and cat_bits");
  }
  if (record_width() > 64) {
    throw Error(ErrorCode::kInvalidArgument, "target record wider than 64 bits");
  }
  std::set<std::uint64_t> codes;
  for (const auto& c : categories) {
    if (!fits(c.code, cat_bits) || !codes.insert(c.code).second) {
      throw Error(ErrorCode::kInvalidArgument, "category codes must be unique and fit cat_bits");
    }
    for (const auto& t : c.targets) {
      if (!fits(t.x, coord_bits) || !fits(t.y, coord_bits) ||
          !fits(t.payload, payload_bits)) {
        throw Error(ErrorCode::kInvalidArgument, "target does not fit store widths");
      }
    }
  }
}

std::size_t PoiStore::max_targets() const {
  std::size_t m = 0;
  for (const auto& c : categories) m = std::max(m, c.targets.size());
  return m;
}

std::uint64_t PoiStore::record_value(const PoiTarget& t) const {
  std::uint64_t v = t.x | (t.y << coord_bits);
  if (payload_bits > 0) v |= t.payload << (2 * coord_bits);
  return v;
}

LbsRequest make_request(const KeyPair& key, const PoiStore& store,
                        std::uint64_t x, std::uint64_t y, std::uint64_t category,
                        std::uint64_t radius, std::size_t k, Rng& rng,
                        bool encrypt_radius) {
  LbsRequest req;
  req.pos_x = encrypt_word(key, x, store.coord_bits, rng);
  req.pos_y = encrypt_word(key, y, store.coord_bits, rng);
  req.category = encrypt_word(key, category, store.cat_bits, rng);
  const std::uint64_t max_r = (std::uint64_t{1} << store.dist_bits()) - 1;
  radius = std::min(radius, max_r);
  req.radius = encrypt_radius ? encrypt_word(key, radius, store.dist_bits(), rng)
                              : plain_word(radius, store.dist_bits());
  req.k = k;
  return req;
}

std::vector<Bit> match_category(const PoiStore& store, const EncWord& category) {
  if (category.width() != store.cat_bits) {
    throw Error(ErrorCode::kWidthMismatch, "category width differs from store");
  }
  std::vector<Bit> out;
  out.reserve(store.categories.size());
  for (const auto& c : store.categories) {
    out.push_back(eq_word(category, plain_word(c.code, store.cat_bits)));
  }
  return out;
}

EncWord manhattan(const EncWord& ax, const EncWord& ay, const EncWord& bx,
                  const EncWord& by) {
  const std::size_t w = ax.width();
  if (ay.width() != w || bx.width() != w || by.width() != w) {
    throw Error(ErrorCode::kWidthMismatch, "manhattan coordinate widths differ");
  }
  // |b - a| as a sign-conditioned choice between b - a and a - b, both taken
  // in w + 1 bit two's complement.
  auto absdiff = [w](const EncWord& a, const EncWord& b) {
    EncWord a1 = a.resized(w + 1), b1 = b.resized(w + 1);
    EncWord ba = sub_words(b1, a1);
    EncWord ab = sub_words(a1, b1);
    return blind_mux(ba[w], ab, ba).resized(w);
  };
  return add_words(absdiff(ax, bx), absdiff(ay, by));
}

std::vector<SortItem> blind_sort(std::vector<SortItem> items,
                                 const LbsOptions& options) {
  const std::size_t n = items.size();
  if (n < 2) return items;
  const std::size_t dw = items.front().dist.width();
  const std::size_t pw = items.front().payload.width();
  for (const auto& it : items) {
    if (it.dist.width() != dw || it.payload.width() != pw) {
      throw Error(ErrorCode::kWidthMismatch, "sort items have mixed widths");
    }
  }
  std::vector<EncWord> packed;
  packed.reserve(n);
  for (auto& it : items) packed.push_back(concat(it.dist, it.payload));
  for (std::size_t pass = 0; pass < n; ++pass) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      // Keep the pair unless the later distance is strictly smaller.
      Bit keep = ge_compare(packed[i + 1].slice(0, dw), packed[i].slice(0, dw));
      auto [first, second] = blind_swap(keep, packed[i], packed[i + 1]);
      packed[i] = std::move(first);
      packed[i + 1] = std::move(second);
    }
  }
  std::vector<SortItem> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].dist = packed[i].slice(0, dw);
    out[i].payload = packed[i].slice(dw, pw);
    check_word(packed[i], options.check_noise, "blind_sort");
  }
  return out;
}

CoverageResult coverage_filter(const std::vector<SortItem>& items,
                               const EncWord& radius, std::size_t k,
                               const LbsOptions& options) {
  CoverageResult res;
  const std::size_t n = items.size();
  if (n == 0) return res;
  const std::size_t pw = items.front().payload.width();
  for (const auto& it : items) {
    if (it.dist.width() != radius.width() || it.payload.width() != pw) {
      throw Error(ErrorCode::kWidthMismatch, "coverage item widths differ");
    }
  }
  res.in_range.resize(n);
  instrument::parallel_for(
      n, [&](std::size_t i) { res.in_range[i] = ge_compare(radius, items[i].dist); },
      options.threads);
  std::vector<EncWord> sums = prefix_sums(res.in_range, options.prefix);
  const std::size_t sw = std::max(sums.front().width(), bits_for(std::max(k, n)));
  res.selected.resize(k);
  instrument::parallel_for(
      k,
      [&](std::size_t j) {
        const EncWord want = plain_word(j + 1, sw);
        std::vector<EncWord> masked;
        masked.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          Bit first_j = band(res.in_range[i], eq_word(sums[i].resized(sw), want));
          EncWord m;
          m.bits.reserve(pw);
          for (std::size_t b = 0; b < pw; ++b) {
            m.bits.push_back(band(first_j, items[i].payload[b]));
          }
          masked.push_back(std::move(m));
        }
        EncWord out;
        out.bits.reserve(pw);
        for (std::size_t b = 0; b < pw; ++b) {
          std::vector<Bit> col;
          col.reserve(n);
          for (const auto& m : masked) col.push_back(m[b]);
          out.bits.push_back(xor_all(std::move(col)));
        }
        res.selected[j] = std::move(out);
      },
      options.threads);
  for (const auto& s : res.selected) check_word(s, options.check_noise, "coverage_filter");
  return res;
}

LbsResponse respond(const PoiStore& store, const LbsRequest& req,
                    const LbsOptions& options, LbsTrace* trace) {
  store.validate();
  if (req.pos_x.width() != store.coord_bits || req.pos_y.width() != store.coord_bits) {
    throw Error(ErrorCode::kWidthMismatch, "position width differs from store");
  }
  if (req.radius.width() != store.dist_bits()) {
    throw Error(ErrorCode::kWidthMismatch, "radius width differs from store");
  }
  const std::size_t k = req.k != 0 ? req.k : store.max_targets();
  const std::size_t rw = store.record_width();
  std::vector<Bit> ic = match_category(store, req.category);
  if (trace != nullptr) trace->category_match = ic;

  std::vector<std::vector<Bit>> slots(k);
  for (std::size_t c = 0; c < store.categories.size(); ++c) {
    const auto& targets = store.categories[c].targets;
    std::vector<SortItem> items(targets.size());
    instrument::parallel_for(
        targets.size(),
        [&](std::size_t i) {
          const auto& t = targets[i];
          items[i].dist = manhattan(req.pos_x, req.pos_y,
                                    plain_word(t.x, store.coord_bits),
                                    plain_word(t.y, store.coord_bits));
          items[i].payload = plain_word(store.record_value(t), rw);
        },
        options.threads);
    if (trace != nullptr) {
      for (const auto& it : items) trace->distances.push_back(it.dist);
    }

    std::vector<EncWord> selected(k, plain_word(0, rw));
    if (options.filter == LbsFilter::kCoverage) {
      CoverageResult cov = coverage_filter(items, req.radius, k, options);
      if (trace != nullptr) {
        trace->in_range.insert(trace->in_range.end(), cov.in_range.begin(),
                               cov.in_range.end());
      }
      for (std::size_t j = 0; j < cov.selected.size(); ++j) selected[j] = cov.selected[j];
    } else {
      std::vector<SortItem> sorted = blind_sort(std::move(items), options);
      for (std::size_t j = 0; j < sorted.size() && j < k; ++j) {
        Bit inside = ge_compare(req.radius, sorted[j].dist);
        if (trace != nullptr) trace->in_range.push_back(inside);
        EncWord m;
        m.bits.reserve(rw);
        for (std::size_t b = 0; b < rw; ++b) m.bits.push_back(band(inside, sorted[j].payload[b]));
        selected[j] = std::move(m);
      }
    }
    // R'' = I_C * R'
    for (std::size_t j = 0; j < k; ++j) {
      EncWord masked;
      masked.bits.reserve(rw);
      for (std::size_t b = 0; b < rw; ++b) masked.bits.push_back(band(ic[c], selected[j][b]));
      if (trace != nullptr) trace->per_category.push_back(masked);
      if (slots[j].empty()) {
        slots[j] = std::move(masked.bits);
      } else {
        for (std::size_t b = 0; b < rw; ++b) slots[j][b] = bxor(slots[j][b], masked[b]);
      }
    }
  }
  LbsResponse resp;
  for (std::size_t j = 0; j < k; ++j) {
    EncWord w = slots[j].empty() ? plain_word(0, rw) : EncWord(std::move(slots[j]));
    check_word(w, options.check_noise, "respond");
    resp.targets.push_back(std::move(w));
  }
  return resp;
}

}  // namespace blindgate
