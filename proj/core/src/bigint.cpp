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

#include "blindgate/bigint.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace blindgate {
namespace {

using Limb = BigInt::Limb;
using Wide = unsigned __int128;
using Mag = std::vector<Limb>;

std::atomic<std::size_t> g_karatsuba_threshold{32};

void trim(Mag& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int cmp_mag(std::span<const Limb> a, std::span<const Limb> b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Mag add_mag(std::span<const Limb> a, std::span<const Limb> b) {
  if (a.size() < b.size()) std::swap(a, b);
  Mag r(a.size() + 1);
  Limb carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Wide s = static_cast<Wide>(a[i]) + carry + (i < b.size() ? b[i] : 0);
    r[i] = static_cast<Limb>(s);
    carry = static_cast<Limb>(s >> 64);
  }
  r[a.size()] = carry;
  trim(r);
  return r;
}

// a -= b in place, requires a >= b.
void sub_mag_inplace(Mag& a, std::span<const Limb> b) {
  Limb borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Limb bi = i < b.size() ? b[i] : 0;
    if (i >= b.size() && borrow == 0) break;
    Limb d = a[i] - bi;
    Limb b1 = a[i] < bi;
    Limb d2 = d - borrow;
    Limb b2 = d < borrow;
    a[i] = d2;
    borrow = b1 | b2;
  }
  trim(a);
}

// acc[offset..] += v, growing acc as needed.
void add_shifted(Mag& acc, std::span<const Limb> v, std::size_t offset) {
  if (acc.size() < offset + v.size() + 1) acc.resize(offset + v.size() + 1, 0);
  Limb carry = 0;
  std::size_t i = 0;
  for (; i < v.size(); ++i) {
    Wide s = static_cast<Wide>(acc[offset + i]) + v[i] + carry;
    acc[offset + i] = static_cast<Limb>(s);
    carry = static_cast<Limb>(s >> 64);
  }
  for (std::size_t j = offset + i; carry != 0; ++j) {
    if (j == acc.size()) acc.push_back(0);
    Wide s = static_cast<Wide>(acc[j]) + carry;
    acc[j] = static_cast<Limb>(s);
    carry = static_cast<Limb>(s >> 64);
  }
}

Mag mul_school(std::span<const Limb> a, std::span<const Limb> b) {
  if (a.empty() || b.empty()) return {};
  Mag r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Limb carry = 0;
    Wide ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      Wide t = ai * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<Limb>(t);
      carry = static_cast<Limb>(t >> 64);
    }
    r[i + b.size()] = carry;
  }
  trim(r);
  return r;
}

std::span<const Limb> trimmed(std::span<const Limb> a) {
  std::size_t n = a.size();
  while (n > 0 && a[n - 1] == 0) --n;
  return a.first(n);
}

Mag mul_kara(std::span<const Limb> a, std::span<const Limb> b,
             std::size_t threshold) {
  a = trimmed(a);
  b = trimmed(b);
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t na = a.size(), nb = b.size();
  if (nb == 0) return {};
  if (nb < threshold) return mul_school(a, b);
  if (na >= 2 * nb) {
    Mag acc;
    for (std::size_t off = 0; off < na; off += nb) {
      std::size_t len = std::min(nb, na - off);
      Mag part = mul_kara(a.subspan(off, len), b, threshold);
      add_shifted(acc, part, off);
    }
    trim(acc);
    return acc;
  }
  const std::size_t h = na / 2;  // nb > h because na < 2 * nb
  auto a0 = a.first(h), a1 = a.subspan(h);
  auto b0 = b.first(h), b1 = b.subspan(h);
  Mag z0 = mul_kara(a0, b0, threshold);
  Mag z2 = mul_kara(a1, b1, threshold);
  Mag sa = add_mag(trimmed(a0), a1);
  Mag sb = add_mag(trimmed(b0), b1);
  Mag z1 = mul_kara(sa, sb, threshold);
  sub_mag_inplace(z1, z0);
  sub_mag_inplace(z1, z2);
  Mag r = z0;
  add_shifted(r, z1, h);
  add_shifted(r, z2, 2 * h);
  trim(r);
  return r;
}

Mag mul_dispatch(std::span<const Limb> a, std::span<const Limb> b) {
  std::size_t t = g_karatsuba_threshold.load(std::memory_order_relaxed);
  if (std::min(a.size(), b.size()) < t) return mul_school(a, b);
  return mul_kara(a, b, t);
}

Mag shl_mag(std::span<const Limb> a, std::size_t k) {
  if (a.empty()) return {};
  std::size_t limbs = k / 64, bits = k % 64;
  Mag r(a.size() + limbs + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i + limbs] |= a[i] << bits;
    if (bits != 0) r[i + limbs + 1] |= a[i] >> (64 - bits);
  }
  trim(r);
  return r;
}

Mag shr_mag(std::span<const Limb> a, std::size_t k) {
  std::size_t limbs = k / 64, bits = k % 64;
  if (limbs >= a.size()) return {};
  Mag r(a.size() - limbs, 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = a[i + limbs] >> bits;
    if (bits != 0 && i + limbs + 1 < a.size()) {
      r[i] |= a[i + limbs + 1] << (64 - bits);
    }
  }
  trim(r);
  return r;
}

// Knuth algorithm D on magnitudes; b must be non-zero.
void divmod_mag(std::span<const Limb> a, std::span<const Limb> b, Mag& q,
                Mag& r) {
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r.assign(a.begin(), a.end());
    return;
  }
  if (b.size() == 1) {
    q.assign(a.size(), 0);
    Wide rem = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
      Wide cur = (rem << 64) | a[i];
      q[i] = static_cast<Limb>(cur / b[0]);
      rem = cur % b[0];
    }
    trim(q);
    r.clear();
    if (rem != 0) r.push_back(static_cast<Limb>(rem));
    return;
  }
  const int s = __builtin_clzll(b.back());
  Mag v = shl_mag(b, s);
  Mag u = shl_mag(a, s);
  const std::size_t n = v.size();
  if (u.size() == a.size()) u.push_back(0);
  if (u.size() < a.size() + 1) u.resize(a.size() + 1, 0);
  const std::size_t m = u.size() - n;
  q.assign(m, 0);
  const Wide base = static_cast<Wide>(1) << 64;
  for (std::size_t j = m; j-- > 0;) {
    Wide num = (static_cast<Wide>(u[j + n]) << 64) | u[j + n - 1];
    Wide qhat = num / v[n - 1];
    Wide rhat = num % v[n - 1];
    while (qhat >= base ||
           qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= base) break;
    }
    // u[j..j+n] -= qhat * v
    Limb borrow = 0, carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Wide p = qhat * v[i] + carry;
      carry = static_cast<Limb>(p >> 64);
      Limb pl = static_cast<Limb>(p);
      Limb t = u[i + j] - pl;
      Limb b1 = u[i + j] < pl;
      Limb t2 = t - borrow;
      Limb b2 = t < borrow;
      u[i + j] = t2;
      borrow = b1 | b2;
    }
    Limb top = u[j + n];
    Limb t = top - carry;
    Limb b1 = top < carry;
    Limb t2 = t - borrow;
    Limb b2 = t < borrow;
    u[j + n] = t2;
    if (b1 | b2) {
      --qhat;
      Limb c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        Wide sum = static_cast<Wide>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<Limb>(sum);
        c = static_cast<Limb>(sum >> 64);
      }
      u[j + n] += c;
    }
    q[j] = static_cast<Limb>(qhat);
  }
  trim(q);
  u.resize(n);
  trim(u);
  r = shr_mag(u, s);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BigInt::BigInt(std::int64_t v) {
  if (v < 0) {
    neg_ = true;
    mag_.push_back(static_cast<Limb>(0) - static_cast<Limb>(v));
  } else if (v > 0) {
    mag_.push_back(static_cast<Limb>(v));
  }
}

BigInt BigInt::from_u64(std::uint64_t v) {
  BigInt r;
  if (v != 0) r.mag_.push_back(v);
  return r;
}

BigInt BigInt::from_limbs(std::vector<Limb> limbs, bool negative) {
  BigInt r;
  r.mag_ = std::move(limbs);
  r.neg_ = negative;
  r.normalize();
  return r;
}

BigInt BigInt::from_hex(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  if (text.empty()) throw std::invalid_argument("empty hex literal");
  Mag mag((text.size() + 15) / 16, 0);
  std::size_t nibble = 0;
  for (std::size_t i = text.size(); i-- > 0; ++nibble) {
    int v = hex_value(text[i]);
    if (v < 0) throw std::invalid_argument("bad hex digit");
    mag[nibble / 16] |= static_cast<Limb>(v) << (4 * (nibble % 16));
  }
  return from_limbs(std::move(mag), neg);
}

BigInt BigInt::from_dec(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("empty decimal literal");
  BigInt r;
  const BigInt ten(10);
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
    r *= ten;
    r += BigInt(c - '0');
  }
  if (neg) r = -r;
  return r;
}

BigInt BigInt::pow2(std::size_t k) {
  Mag m(k / 64 + 1, 0);
  m.back() = static_cast<Limb>(1) << (k % 64);
  return from_limbs(std::move(m));
}

std::string BigInt::to_hex() const {
  if (mag_.empty()) return "0x0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    for (int sh = 60; sh >= 0; sh -= 4) {
      char c = kDigits[(mag_[i] >> sh) & 0xf];
      if (out.empty() && c == '0') continue;
      out.push_back(c);
    }
  }
  return (neg_ ? "-0x" : "0x") + out;
}

std::string BigInt::to_string() const {
  if (mag_.empty()) return "0";
  constexpr Limb kChunk = 10000000000000000000ull;  // 10^19
  Mag cur = mag_;
  std::vector<Limb> parts;
  while (!cur.empty()) {
    Wide rem = 0;
    for (std::size_t i = cur.size(); i-- > 0;) {
      Wide v = (rem << 64) | cur[i];
      cur[i] = static_cast<Limb>(v / kChunk);
      rem = v % kChunk;
    }
    trim(cur);
    parts.push_back(static_cast<Limb>(rem));
  }
  std::string out = neg_ ? "-" : "";
  out += std::to_string(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    std::string s = std::to_string(parts[i]);
    out += std::string(19 - s.size(), '0') + s;
  }
  return out;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  return 64 * (mag_.size() - 1) + (64 - __builtin_clzll(mag_.back()));
}

bool BigInt::bit(std::size_t i) const {
  std::size_t limb = i / 64;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 64)) & 1u;
}

BigInt BigInt::low_bits(std::size_t k) const {
  std::size_t limbs = (k + 63) / 64;
  Mag m(mag_.begin(), mag_.begin() + std::min(limbs, mag_.size()));
  if (m.size() == limbs && k % 64 != 0) {
    m.back() &= (static_cast<Limb>(1) << (k % 64)) - 1;
  }
  return from_limbs(std::move(m));
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.neg_ = false;
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.mag_.empty()) r.neg_ = !r.neg_;
  return r;
}

void BigInt::normalize() {
  trim(mag_);
  if (mag_.empty()) neg_ = false;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (neg_ == o.neg_) {
    mag_ = add_mag(mag_, o.mag_);
  } else if (cmp_mag(mag_, o.mag_) >= 0) {
    sub_mag_inplace(mag_, o.mag_);
  } else {
    Mag t = o.mag_;
    sub_mag_inplace(t, mag_);
    mag_ = std::move(t);
    neg_ = o.neg_;
  }
  normalize();
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.mag_ = mul_dispatch(a.mag_, b.mag_);
  r.neg_ = a.neg_ != b.neg_;
  r.normalize();
  return r;
}

BigInt& BigInt::operator*=(const BigInt& o) { return *this = *this * o; }

std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  BigInt q, r;
  divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
  q.neg_ = a.neg_ != b.neg_;
  r.neg_ = a.neg_;
  q.normalize();
  r.normalize();
  return {std::move(q), std::move(r)};
}

BigInt& BigInt::operator/=(const BigInt& o) {
  return *this = divmod(*this, o).first;
}

BigInt& BigInt::operator%=(const BigInt& o) {
  return *this = divmod(*this, o).second;
}

BigInt BigInt::mod_floor(const BigInt& m) const {
  BigInt r = divmod(*this, m).second;
  if (r.neg_) r += m.abs();
  return r;
}

BigInt& BigInt::operator<<=(std::size_t k) {
  mag_ = shl_mag(mag_, k);
  normalize();
  return *this;
}

BigInt& BigInt::operator>>=(std::size_t k) {
  mag_ = shr_mag(mag_, k);
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  if (a.neg_ != b.neg_) {
    return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int c = cmp_mag(a.mag_, b.mag_);
  if (a.neg_) c = -c;
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace bigint {

void set_karatsuba_threshold(std::size_t limbs) {
  g_karatsuba_threshold.store(std::max<std::size_t>(limbs, 4));
}

std::size_t karatsuba_threshold() { return g_karatsuba_threshold.load(); }

BigInt mul_schoolbook(const BigInt& a, const BigInt& b) {
  Mag m = mul_school(a.limbs(), b.limbs());
  return BigInt::from_limbs(std::move(m), a.is_negative() != b.is_negative());
}

BigInt mul_karatsuba(const BigInt& a, const BigInt& b) {
  Mag m = mul_kara(a.limbs(), b.limbs(), 4);
  return BigInt::from_limbs(std::move(m), a.is_negative() != b.is_negative());
}

}  // namespace bigint

BarrettReducer::BarrettReducer(BigInt modulus) : m_(std::move(modulus)) {
  if (m_.sign() <= 0) throw std::domain_error("Barrett modulus must be positive");
  n_ = m_.bit_length();
  mu_ = BigInt::pow2(2 * n_) / m_;
}

BigInt BarrettReducer::reduce(const BigInt& x) const {
  if (x.is_negative() || x.bit_length() > 2 * n_) return x.mod_floor(m_);
  BigInt q = ((x >> (n_ - 1)) * mu_) >> (n_ + 1);
  BigInt r = x - q * m_;
  while (r >= m_) r -= m_;
  return r;
}

}  // namespace blindgate
