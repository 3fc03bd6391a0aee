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

#ifndef BLINDGATE_SHE_HPP_
#define BLINDGATE_SHE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blindgate/bigint.hpp"
#include "blindgate/rng.hpp"

namespace blindgate {

enum class KeyMode { kSymmetric, kAsymmetric };

std::string_view key_mode_name(KeyMode mode);
KeyMode parse_key_mode(std::string_view text);

// Bit lengths of the scheme for one security parameter.
struct ParamProfile {
  int lambda = 0;
  std::size_t sk_bits = 0;
  std::size_t q_bits = 0;
  std::size_t r_bits = 0;
  KeyMode mode = KeyMode::kSymmetric;
  std::string name = "custom";

  // name is one of profile_a, profile_b, profile_vod (or a, b, vod).
  static ParamProfile preset(std::string_view name, int lambda,
                             KeyMode mode = KeyMode::kSymmetric);
  static ParamProfile custom(int lambda, std::size_t sk_bits,
                             std::size_t q_bits, std::size_t r_bits,
                             KeyMode mode = KeyMode::kSymmetric);
  // Throws InvalidLambda or InvalidProfile.
  void validate() const;

  friend bool operator==(const ParamProfile&, const ParamProfile&) = default;
};

std::string canonical_profile_name(std::string_view name);

struct SquashKey {
  std::vector<std::uint8_t> s;  // length beta, Hamming weight alpha
  std::size_t alpha = 0;
};

struct SecretKey {
  BigInt p;
  std::optional<SquashKey> squash;
};

struct PublicKey {
  std::vector<BigInt> zeros;  // asymmetric mode only
  // Squashing hint: y_i as integers scaled by 2^kappa, each in [0, 2^(kappa+1)).
  std::vector<BigInt> y;
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t kappa = 0;
  // Noise-free multiple of p; ciphertext sums and products are reduced
  // modulo x0 when present.
  std::optional<BigInt> x0;
};

// Everything needed to evaluate on ciphertexts, shared by every ciphertext
// produced under one key.
struct EvalContext {
  ParamProfile profile;
  PublicKey pk;
  std::optional<BarrettReducer> reducer;
  std::uint64_t lineage = 0;

  bool has_hint() const { return !pk.y.empty(); }
  // Ledger bound of a freshly encrypted bit.
  std::int64_t fresh_noise_bits() const;
};

using ContextPtr = std::shared_ptr<const EvalContext>;

struct KeyPair {
  SecretKey sk;
  ContextPtr ctx;

  const ParamProfile& profile() const { return ctx->profile; }
};

struct KeygenOptions {
  bool squash = false;
  // Reduce ciphertext sums and products modulo a public x0 = p * q0.
  bool reduce = true;
  // Zero encryptions in asymmetric mode; 0 selects 2 * lambda.
  std::size_t zero_count = 0;
  // Squashing parameters; 0 selects beta = 5 * lambda, alpha = lambda.
  std::size_t beta = 0;
  std::size_t alpha = 0;
};

KeyPair keygen(const ParamProfile& profile, std::uint64_t seed,
               const KeygenOptions& options = {});
KeyPair keygen(int lambda, std::string_view profile_name, std::uint64_t seed,
               const KeygenOptions& options = {});

class Ciphertext {
 public:
  Ciphertext() = default;
  Ciphertext(BigInt value, std::int64_t noise_bits, ContextPtr ctx)
      : value_(std::move(value)), noise_bits_(noise_bits), ctx_(std::move(ctx)) {}

  const BigInt& value() const { return value_; }
  std::int64_t noise_bits() const { return noise_bits_; }
  const ContextPtr& context() const { return ctx_; }
  const ParamProfile& profile() const { return ctx_->profile; }
  // Ledger says the residue is small enough to decrypt.
  bool ledger_valid() const;

  const std::optional<std::vector<BigInt>>& zhint() const { return zhint_; }
  // Copy carrying the squashed-decryption hint z_i = value * y_i mod 2^(kappa+1).
  Ciphertext with_hint() const;

 private:
  BigInt value_;
  std::int64_t noise_bits_ = 0;
  ContextPtr ctx_;
  std::optional<std::vector<BigInt>> zhint_;
};

// Randomness used by one encryption, exposed for tests.
struct EncryptWitness {
  BigInt r;
  BigInt q;
  std::vector<std::size_t> subset;
};

Ciphertext encrypt(const KeyPair& key, int m, Rng& rng,
                   EncryptWitness* witness = nullptr);
// Public-key encryption; requires an asymmetric context.
Ciphertext encrypt_public(const ContextPtr& ctx, int m, Rng& rng,
                          EncryptWitness* witness = nullptr);
// Trivial encryption of a public constant (value m, residue m).
Ciphertext trivial(const ContextPtr& ctx, int m);

// Throws NoiseOverflow when the ledger is invalid unless force is set.
int decrypt(const SecretKey& sk, const Ciphertext& c, bool force = false);
// Throws MissingHint when the ciphertext or key lacks squashing material.
int decrypt_squashed(const SecretKey& sk, const Ciphertext& c);

// c mod p mapped into (-p/2, p/2].
BigInt centered_residue(const BigInt& value, const BigInt& p);

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b);
Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b);
Ciphertext mixed_add(int p, const Ciphertext& c);
Ciphertext mixed_mul(int p, const Ciphertext& c);

struct NoiseProbe {
  std::int64_t residue_bits = 0;
  bool parity_ok = true;
};

NoiseProbe measure_noise(const SecretKey& sk, const Ciphertext& c,
                         int intended);
std::int64_t measure_noise_bits(const SecretKey& sk, const Ciphertext& c);

// Decrypt and re-encrypt. Test utility, not bootstrapping.
Ciphertext trusted_refresh(const KeyPair& key, const Ciphertext& c, Rng& rng);

// Largest d with (r_bits + 1) * 2^d + d < sk_bits - 1.
int capacity(const ParamProfile& profile);

}  // namespace blindgate

#endif  // BLINDGATE_SHE_HPP_
