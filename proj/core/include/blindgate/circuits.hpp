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

#ifndef BLINDGATE_CIRCUITS_HPP_
#define BLINDGATE_CIRCUITS_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "blindgate/she.hpp"

namespace blindgate {

// A circuit wire: either a public constant known to everyone or a
// ciphertext. Gates between two constants fold without touching the scheme;
// any gate with a ciphertext input produces a ciphertext and is counted, so
// the operation trace depends only on which wires are public, never on data.
class Bit {
 public:
  Bit() : v_(false) {}
  Bit(Ciphertext c) : v_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  static Bit constant(bool b) {
    Bit out;
    out.v_ = b;
    return out;
  }

  bool is_constant() const { return std::holds_alternative<bool>(v_); }
  bool constant_value() const { return std::get<bool>(v_); }
  const Ciphertext& cipher() const { return std::get<Ciphertext>(v_); }
  // Ledger bound; constants have residue 0 or 1.
  std::int64_t noise_bits() const;
  // Ciphertext form; constants become trivial encryptions under ctx.
  Ciphertext to_ciphertext(const ContextPtr& ctx) const;

 private:
  std::variant<bool, Ciphertext> v_;
};

Bit bxor(const Bit& a, const Bit& b);
Bit band(const Bit& a, const Bit& b);
Bit bnot(const Bit& a);
// Balanced product / sum; empty input gives constant 1 / constant 0.
Bit and_all(std::vector<Bit> bits);
Bit xor_all(std::vector<Bit> bits);

// Structural gates for wires whose constness is fixed by circuit shape (carry
// inputs, accumulator seeds): constant operands fold away entirely instead of
// issuing mixed operations. XOR with constant 1 still costs a NOT.
Bit fold_xor(const Bit& a, const Bit& b);
Bit fold_and(const Bit& a, const Bit& b);

int decrypt_bit(const SecretKey& sk, const Bit& b, bool force = false);

// Fixed-width word, index 0 least significant.
struct EncWord {
  std::vector<Bit> bits;

  EncWord() = default;
  explicit EncWord(std::vector<Bit> b) : bits(std::move(b)) {}

  std::size_t width() const { return bits.size(); }
  const Bit& operator[](std::size_t i) const { return bits[i]; }
  Bit& operator[](std::size_t i) { return bits[i]; }

  EncWord slice(std::size_t begin, std::size_t count) const;
  // Truncates or pads with constant zeros.
  EncWord resized(std::size_t width) const;
  std::int64_t max_noise_bits() const;
  bool ledger_valid() const;
};

EncWord concat(const EncWord& low, const EncWord& high);

// Public word of constants.
EncWord plain_word(std::uint64_t value, std::size_t width);
EncWord plain_word_bits(const std::vector<std::uint8_t>& bits);
EncWord encrypt_word(const KeyPair& key, std::uint64_t value, std::size_t width,
                     Rng& rng);
EncWord encrypt_bits(const KeyPair& key, const std::vector<std::uint8_t>& bits,
                     Rng& rng);
std::uint64_t decrypt_word(const SecretKey& sk, const EncWord& w,
                           bool force = false);
std::vector<std::uint8_t> decrypt_bits(const SecretKey& sk, const EncWord& w,
                                       bool force = false);
std::uint64_t plain_value(const EncWord& w);  // requires all-constant word

// Selector: encrypted 0 gives XOR, encrypted 1 gives AND.
Bit star(const Bit& s, const Bit& x, const Bit& y);
Ciphertext star(const Ciphertext& s, const Ciphertext& x, const Ciphertext& y);

// 1 iff a == b. b may be a plain word.
Bit eq_word(const EncWord& a, const EncWord& b);
// prod(1 + care_i * (a_i + b_i)).
Bit eq_word_masked(const EncWord& a, const EncWord& b, const EncWord& care);

// Ripple-carry sum of width w + 1. Without a carry-in, bit 0 is a half adder.
EncWord add_words(const EncWord& a, const EncWord& b);
EncWord add_words(const EncWord& a, const EncWord& b, const Bit& carry_in);
// Ripple add for structurally padded operands: constant wires fold instead
// of issuing mixed operations. Width w + 1.
EncWord add_words_fold(const EncWord& a, const EncWord& b);
// a - b modulo 2^w.
EncWord sub_words(const EncWord& a, const EncWord& b);

// 1 iff a >= b: complemented sign of a - b, i.e. carry-out of a + ~b + 1.
Bit sub_compare(const EncWord& a, const EncWord& b);
// 1 iff a > b: carry-out of a + ~b.
Bit gt_compare(const EncWord& a, const EncWord& b);

struct SplitCompare {
  Bit naive_bit;      // B'' OR B' on the high/low halves
  Bit corrected_bit;  // B'' XOR (E'' AND B'), equals a >= b
};
SplitCompare split_compare(const EncWord& a, const EncWord& b);
// a >= b using the corrected split comparator when the width is even and at
// least 4, otherwise sub_compare.
Bit ge_compare(const EncWord& a, const EncWord& b);

// sel ? a : b, as sel * a + (1 + sel) * b.
EncWord blind_mux(const Bit& sel, const EncWord& a, const EncWord& b);
// sel = 1 keeps the order, sel = 0 exchanges.
std::pair<EncWord, EncWord> blind_swap(const Bit& sel, const EncWord& a,
                                       const EncWord& b);

EncWord twos_complement(const EncWord& a);
// Top bit is the sign.
EncWord abs_value(const EncWord& a);

// Hamming weight via elementary symmetric polynomials: bit k is
// e_{2^k}(inputs) mod 2. Width ceil(log2(n + 1)).
EncWord popcount_esp(const std::vector<Bit>& bits);

enum class PrefixStrategy { kRipple, kEsp };
// k-th output is the popcount of the first k + 1 indicators; every output
// has width ceil(log2(n + 1)).
std::vector<EncWord> prefix_sums(const std::vector<Bit>& indicators,
                                 PrefixStrategy strategy = PrefixStrategy::kEsp);

// Array multiplier: n * n -> 2n bits (n = 1 gives a single AND).
EncWord multiply_words(const EncWord& a, const EncWord& b);
// Operation counts of multiply_words on two fully encrypted n-bit words.
struct MulCount {
  std::uint64_t adds;
  std::uint64_t muls;
};
MulCount multiply_words_cost(std::size_t n);

std::size_t bits_for(std::uint64_t max_value);  // ceil(log2(max_value + 1)), >= 1

}  // namespace blindgate

#endif  // BLINDGATE_CIRCUITS_HPP_
