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

#ifndef BLINDGATE_BIGINT_HPP_
#define BLINDGATE_BIGINT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blindgate {

// Arbitrary-precision signed integer, sign-magnitude with 64-bit limbs stored
// least significant first. Division truncates toward zero like built-in ints.
class BigInt {
 public:
  using Limb = std::uint64_t;

  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT(google-explicit-constructor)
  static BigInt from_u64(std::uint64_t v);
  static BigInt from_limbs(std::vector<Limb> limbs, bool negative = false);

  // Accepts an optional sign, an optional "0x" prefix and hex digits.
  static BigInt from_hex(std::string_view text);
  static BigInt from_dec(std::string_view text);
  // 2^k.
  static BigInt pow2(std::size_t k);

  // Lowercase, big-endian, "0x" prefixed; zero is "0x0".
  std::string to_hex() const;
  std::string to_string() const;

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return neg_; }
  bool is_odd() const { return !mag_.empty() && (mag_[0] & 1u); }
  int sign() const { return mag_.empty() ? 0 : (neg_ ? -1 : 1); }

  // Bit length of the magnitude; zero has length 0.
  std::size_t bit_length() const;
  // Bit i of the magnitude.
  bool bit(std::size_t i) const;
  std::uint64_t low_u64() const { return mag_.empty() ? 0 : mag_[0]; }
  // |this| mod 2^k, non-negative.
  BigInt low_bits(std::size_t k) const;
  std::size_t limb_count() const { return mag_.size(); }
  std::span<const Limb> limbs() const { return mag_; }

  BigInt abs() const;
  BigInt operator-() const;

  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);
  BigInt& operator/=(const BigInt& o);
  BigInt& operator%=(const BigInt& o);
  // Shifts act on the magnitude and keep the sign.
  BigInt& operator<<=(std::size_t k);
  BigInt& operator>>=(std::size_t k);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }
  friend BigInt operator<<(BigInt a, std::size_t k) { return a <<= k; }
  friend BigInt operator>>(BigInt a, std::size_t k) { return a >>= k; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.mag_ == b.mag_;
  }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  // Truncated quotient and remainder. Throws std::domain_error on zero divisor.
  static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);
  // Remainder in [0, |m|).
  BigInt mod_floor(const BigInt& m) const;

 private:
  void normalize();

  bool neg_ = false;
  std::vector<Limb> mag_;
};

namespace bigint {

// Limb count at which multiplication switches from schoolbook to Karatsuba.
void set_karatsuba_threshold(std::size_t limbs);
std::size_t karatsuba_threshold();

// Explicit algorithm entry points used by tests and benchmarks.
BigInt mul_schoolbook(const BigInt& a, const BigInt& b);
BigInt mul_karatsuba(const BigInt& a, const BigInt& b);

}  // namespace bigint

// Barrett reduction by a fixed positive modulus m. Inputs below m^2 take the
// fast path; anything larger falls back to long division.
class BarrettReducer {
 public:
  explicit BarrettReducer(BigInt modulus);

  const BigInt& modulus() const { return m_; }
  // x mod m in [0, m) for non-negative x.
  BigInt reduce(const BigInt& x) const;

 private:
  BigInt m_;
  BigInt mu_;
  std::size_t n_ = 0;
};

}  // namespace blindgate

#endif  // BLINDGATE_BIGINT_HPP_
