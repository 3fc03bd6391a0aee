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

#include "blindgate/circuits.hpp"

#include <algorithm>
#include <bit>

#include "blindgate/error.hpp"

namespace blindgate {
namespace {

void require_same_width(const EncWord& a, const EncWord& b, const char* op) {
  if (a.width() != b.width()) {
    throw Error(ErrorCode::kWidthMismatch,
                std::string(op) + ": widths " + std::to_string(a.width()) +
                    " and " + std::to_string(b.width()));
  }
}

// One ripple stage: carry-out of x + y + c, given t = x ^ y.
Bit carry_out(const Bit& x, const Bit& y, const Bit& t, const Bit& c) {
  Bit g = band(x, y);
  if (c.is_constant()) return c.constant_value() ? bxor(g, t) : g;
  return bxor(g, band(c, t));
}

EncWord not_word(const EncWord& a) {
  EncWord out;
  out.bits.reserve(a.width());
  for (const auto& b : a.bits) out.bits.push_back(bnot(b));
  return out;
}

// Carry-out of a + b + carry_in without the sum bits.
Bit carry_chain(const EncWord& a, const EncWord& b, Bit c) {
  for (std::size_t i = 0; i < a.width(); ++i) {
    Bit t = bxor(a[i], b[i]);
    c = carry_out(a[i], b[i], t, c);
  }
  return c;
}

}  // namespace

std::int64_t Bit::noise_bits() const {
  if (is_constant()) return constant_value() ? 1 : 0;
  return cipher().noise_bits();
}

Ciphertext Bit::to_ciphertext(const ContextPtr& ctx) const {
  if (is_constant()) return trivial(ctx, constant_value() ? 1 : 0);
  return cipher();
}

Bit bxor(const Bit& a, const Bit& b) {
  if (a.is_constant() && b.is_constant()) {
    return Bit::constant(a.constant_value() != b.constant_value());
  }
  if (a.is_constant()) return mixed_add(a.constant_value(), b.cipher());
  if (b.is_constant()) return mixed_add(b.constant_value(), a.cipher());
  return he_add(a.cipher(), b.cipher());
}

Bit band(const Bit& a, const Bit& b) {
  if (a.is_constant() && b.is_constant()) {
    return Bit::constant(a.constant_value() && b.constant_value());
  }
  if (a.is_constant()) return mixed_mul(a.constant_value(), b.cipher());
  if (b.is_constant()) return mixed_mul(b.constant_value(), a.cipher());
  return he_mul(a.cipher(), b.cipher());
}

Bit bnot(const Bit& a) {
  if (a.is_constant()) return Bit::constant(!a.constant_value());
  return mixed_add(1, a.cipher());
}

Bit fold_xor(const Bit& a, const Bit& b) {
  if (a.is_constant() && !a.constant_value()) return b;
  if (b.is_constant() && !b.constant_value()) return a;
  if (a.is_constant()) return bnot(b);
  if (b.is_constant()) return bnot(a);
  return he_add(a.cipher(), b.cipher());
}

Bit fold_and(const Bit& a, const Bit& b) {
  if (a.is_constant()) return a.constant_value() ? b : Bit::constant(false);
  if (b.is_constant()) return b.constant_value() ? a : Bit::constant(false);
  return he_mul(a.cipher(), b.cipher());
}

Bit and_all(std::vector<Bit> bits) {
  if (bits.empty()) return Bit::constant(true);
  while (bits.size() > 1) {
    std::vector<Bit> next;
    next.reserve((bits.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
      next.push_back(band(bits[i], bits[i + 1]));
    }
    if (bits.size() % 2 == 1) next.push_back(std::move(bits.back()));
    bits = std::move(next);
  }
  return std::move(bits.front());
}

Bit xor_all(std::vector<Bit> bits) {
  if (bits.empty()) return Bit::constant(false);
  while (bits.size() > 1) {
    std::vector<Bit> next;
    next.reserve((bits.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
      next.push_back(bxor(bits[i], bits[i + 1]));
    }
    if (bits.size() % 2 == 1) next.push_back(std::move(bits.back()));
    bits = std::move(next);
  }
  return std::move(bits.front());
}

int decrypt_bit(const SecretKey& sk, const Bit& b, bool force) {
  if (b.is_constant()) return b.constant_value() ? 1 : 0;
  return decrypt(sk, b.cipher(), force);
}

EncWord EncWord::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > bits.size()) {
    throw Error(ErrorCode::kWidthMismatch, "slice out of range");
  }
  return EncWord(std::vector<Bit>(bits.begin() + begin,
                                  bits.begin() + begin + count));
}

EncWord EncWord::resized(std::size_t w) const {
  EncWord out = *this;
  out.bits.resize(w, Bit::constant(false));
  return out;
}

std::int64_t EncWord::max_noise_bits() const {
  std::int64_t n = 0;
  for (const auto& b : bits) n = std::max(n, b.noise_bits());
  return n;
}

bool EncWord::ledger_valid() const {
  for (const auto& b : bits) {
    if (!b.is_constant() && !b.cipher().ledger_valid()) return false;
  }
  return true;
}

EncWord concat(const EncWord& low, const EncWord& high) {
  EncWord out = low;
  out.bits.insert(out.bits.end(), high.bits.begin(), high.bits.end());
  return out;
}

EncWord plain_word(std::uint64_t value, std::size_t width) {
  EncWord out;
  out.bits.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits.push_back(Bit::constant(i < 64 && ((value >> i) & 1u)));
  }
  return out;
}

EncWord plain_word_bits(const std::vector<std::uint8_t>& bits) {
  EncWord out;
  out.bits.reserve(bits.size());
  for (auto b : bits) out.bits.push_back(Bit::constant(b != 0));
  return out;
}

EncWord encrypt_word(const KeyPair& key, std::uint64_t value, std::size_t width,
                     Rng& rng) {
  EncWord out;
  out.bits.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits.emplace_back(encrypt(key, i < 64 ? (value >> i) & 1u : 0, rng));
  }
  return out;
}

EncWord encrypt_bits(const KeyPair& key, const std::vector<std::uint8_t>& bits,
                     Rng& rng) {
  EncWord out;
  out.bits.reserve(bits.size());
  for (auto b : bits) out.bits.emplace_back(encrypt(key, b != 0, rng));
  return out;
}

std::vector<std::uint8_t> decrypt_bits(const SecretKey& sk, const EncWord& w,
                                       bool force) {
  std::vector<std::uint8_t> out;
  out.reserve(w.width());
  for (const auto& b : w.bits) {
    out.push_back(static_cast<std::uint8_t>(decrypt_bit(sk, b, force)));
  }
  return out;
}

std::uint64_t decrypt_word(const SecretKey& sk, const EncWord& w, bool force) {
  if (w.width() > 64) {
    throw Error(ErrorCode::kWidthMismatch, "decrypt_word supports at most 64 bits");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < w.width(); ++i) {
    if (decrypt_bit(sk, w[i], force)) v |= std::uint64_t{1} << i;
  }
  return v;
}

std::uint64_t plain_value(const EncWord& w) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < w.width() && i < 64; ++i) {
    if (!w[i].is_constant()) {
      throw Error(ErrorCode::kInvalidArgument, "word is not public");
    }
    if (w[i].constant_value()) v |= std::uint64_t{1} << i;
  }
  return v;
}

Bit star(const Bit& s, const Bit& x, const Bit& y) {
  Bit and_branch = band(band(s, x), y);
  Bit xor_branch = band(bnot(s), bxor(x, y));
  return bxor(and_branch, xor_branch);
}

Ciphertext star(const Ciphertext& s, const Ciphertext& x, const Ciphertext& y) {
  return star(Bit(s), Bit(x), Bit(y)).cipher();
}

Bit eq_word(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "eq_word");
  std::vector<Bit> terms;
  terms.reserve(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    // A public operand folds into the single mixed NOT: 1 + a + k.
    if (b[i].is_constant()) {
      terms.push_back(bxor(a[i], Bit::constant(!b[i].constant_value())));
    } else if (a[i].is_constant()) {
      terms.push_back(bxor(b[i], Bit::constant(!a[i].constant_value())));
    } else {
      terms.push_back(bnot(bxor(a[i], b[i])));
    }
  }
  return and_all(std::move(terms));
}

Bit eq_word_masked(const EncWord& a, const EncWord& b, const EncWord& care) {
  require_same_width(a, b, "eq_word_masked");
  require_same_width(a, care, "eq_word_masked");
  std::vector<Bit> terms;
  terms.reserve(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    terms.push_back(bnot(band(care[i], bxor(a[i], b[i]))));
  }
  return and_all(std::move(terms));
}

EncWord add_words(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "add_words");
  EncWord out;
  out.bits.reserve(a.width() + 1);
  Bit c = Bit::constant(false);
  for (std::size_t i = 0; i < a.width(); ++i) {
    Bit t = bxor(a[i], b[i]);
    if (i == 0) {
      out.bits.push_back(t);
      c = band(a[i], b[i]);
    } else {
      out.bits.push_back(bxor(t, c));
      c = carry_out(a[i], b[i], t, c);
    }
  }
  out.bits.push_back(c);
  return out;
}

EncWord add_words(const EncWord& a, const EncWord& b, const Bit& carry_in) {
  require_same_width(a, b, "add_words");
  EncWord out;
  out.bits.reserve(a.width() + 1);
  Bit c = carry_in;
  for (std::size_t i = 0; i < a.width(); ++i) {
    Bit t = bxor(a[i], b[i]);
    out.bits.push_back(fold_xor(t, c));
    c = carry_out(a[i], b[i], t, c);
  }
  out.bits.push_back(c);
  return out;
}

EncWord add_words_fold(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "add_words_fold");
  EncWord out;
  out.bits.reserve(a.width() + 1);
  Bit c = Bit::constant(false);
  for (std::size_t i = 0; i < a.width(); ++i) {
    Bit t = fold_xor(a[i], b[i]);
    out.bits.push_back(fold_xor(t, c));
    c = fold_xor(fold_and(a[i], b[i]), fold_and(c, t));
  }
  out.bits.push_back(c);
  return out;
}

EncWord sub_words(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "sub_words");
  EncWord s = add_words(a, not_word(b), Bit::constant(true));
  s.bits.pop_back();
  return s;
}

Bit sub_compare(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "sub_compare");
  return carry_chain(a, not_word(b), Bit::constant(true));
}

Bit gt_compare(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "gt_compare");
  return carry_chain(a, not_word(b), Bit::constant(false));
}

SplitCompare split_compare(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "split_compare");
  if (a.width() % 2 != 0 || a.width() == 0) {
    throw Error(ErrorCode::kOddWidth, "split_compare needs an even width");
  }
  const std::size_t h = a.width() / 2;
  EncWord al = a.slice(0, h), ah = a.slice(h, h);
  EncWord bl = b.slice(0, h), bh = b.slice(h, h);
  Bit low_ge = sub_compare(al, bl);
  Bit high_gt = gt_compare(ah, bh);
  Bit high_eq = eq_word(ah, bh);
  SplitCompare out;
  out.naive_bit = bxor(high_gt, band(low_ge, bnot(high_gt)));
  out.corrected_bit = bxor(high_gt, band(high_eq, low_ge));
  return out;
}

Bit ge_compare(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "ge_compare");
  if (a.width() >= 4 && a.width() % 2 == 0) {
    return split_compare(a, b).corrected_bit;
  }
  return sub_compare(a, b);
}

EncWord blind_mux(const Bit& sel, const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "blind_mux");
  Bit nsel = bnot(sel);
  EncWord out;
  out.bits.reserve(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    out.bits.push_back(bxor(band(sel, a[i]), band(nsel, b[i])));
  }
  return out;
}

std::pair<EncWord, EncWord> blind_swap(const Bit& sel, const EncWord& a,
                                       const EncWord& b) {
  require_same_width(a, b, "blind_swap");
  Bit nsel = bnot(sel);
  EncWord first, second;
  first.bits.reserve(a.width());
  second.bits.reserve(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    first.bits.push_back(bxor(band(sel, a[i]), band(nsel, b[i])));
    second.bits.push_back(bxor(band(nsel, a[i]), band(sel, b[i])));
  }
  return {std::move(first), std::move(second)};
}

EncWord twos_complement(const EncWord& a) {
  EncWord out;
  out.bits.reserve(a.width());
  Bit c = Bit::constant(true);
  for (std::size_t i = 0; i < a.width(); ++i) {
    Bit na = bnot(a[i]);
    out.bits.push_back(fold_xor(na, c));
    if (i + 1 < a.width()) c = fold_and(na, c);
  }
  return out;
}

EncWord abs_value(const EncWord& a) {
  if (a.width() < 2) {
    throw Error(ErrorCode::kWidthMismatch, "abs_value needs width >= 2");
  }
  return blind_mux(a[a.width() - 1], twos_complement(a), a);
}

std::size_t bits_for(std::uint64_t max_value) {
  std::size_t b = 64 - std::countl_zero(max_value);
  return std::max<std::size_t>(b, 1);
}

namespace {

// Running elementary symmetric polynomials e_0..e_d over a bit stream.
class EspAccumulator {
 public:
  explicit EspAccumulator(std::size_t degree)
      : e_(degree + 1, Bit::constant(false)) {
    e_[0] = Bit::constant(true);
  }

  void push(const Bit& x) {
    const std::size_t top = std::min(seen_ + 1, e_.size() - 1);
    for (std::size_t j = top; j >= 1; --j) {
      e_[j] = fold_xor(e_[j], fold_and(e_[j - 1], x));
    }
    ++seen_;
  }

  // Bits k < width of the running Hamming weight.
  EncWord weight(std::size_t width) const {
    EncWord out;
    out.bits.reserve(width);
    for (std::size_t k = 0; k < width; ++k) {
      std::size_t j = std::size_t{1} << k;
      out.bits.push_back(j < e_.size() ? e_[j] : Bit::constant(false));
    }
    return out;
  }

 private:
  std::vector<Bit> e_;
  std::size_t seen_ = 0;
};

}  // namespace

EncWord popcount_esp(const std::vector<Bit>& bits) {
  if (bits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "popcount of an empty vector");
  }
  const std::size_t width = bits_for(bits.size());
  EspAccumulator acc(std::size_t{1} << (width - 1));
  for (const auto& b : bits) acc.push(b);
  return acc.weight(width);
}

std::vector<EncWord> prefix_sums(const std::vector<Bit>& indicators,
                                 PrefixStrategy strategy) {
  if (indicators.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "prefix sums of an empty vector");
  }
  const std::size_t width = bits_for(indicators.size());
  std::vector<EncWord> out;
  out.reserve(indicators.size());
  if (strategy == PrefixStrategy::kEsp) {
    EspAccumulator acc(std::size_t{1} << (width - 1));
    for (const auto& x : indicators) {
      acc.push(x);
      out.push_back(acc.weight(width));
    }
    return out;
  }
  EncWord acc = plain_word(0, width);
  for (const auto& x : indicators) {
    Bit c = x;
    for (std::size_t i = 0; i < width; ++i) {
      Bit s = fold_xor(acc[i], c);
      if (i + 1 < width) c = fold_and(acc[i], c);
      acc[i] = s;
    }
    out.push_back(acc);
  }
  return out;
}

EncWord multiply_words(const EncWord& a, const EncWord& b) {
  require_same_width(a, b, "multiply_words");
  const std::size_t n = a.width();
  if (n == 0) return EncWord();
  auto row = [&](std::size_t j) {
    EncWord r;
    r.bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.bits.push_back(band(a[i], b[j]));
    return r;
  };
  EncWord acc = row(0);
  for (std::size_t j = 1; j < n; ++j) {
    EncWord hi = acc.slice(j, acc.width() - j).resized(n);
    EncWord sum = add_words_fold(hi, row(j));
    acc.bits.resize(j);
    acc.bits.insert(acc.bits.end(), sum.bits.begin(), sum.bits.end());
  }
  return acc.resized(2 * n);
}

MulCount multiply_words_cost(std::size_t n) {
  if (n == 0) return {0, 0};
  const std::uint64_t m = n;
  if (m == 1) return {0, 1};
  // Row 1 adds onto an (n - 1)-bit high part, saving one XOR pair and one AND.
  return {(m - 1) * (3 * m - 2) - 2, m * m + (m - 1) * (2 * m - 1) - 1};
}

}  // namespace blindgate
