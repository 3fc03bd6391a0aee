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

#include "blindgate/she.hpp"

#include <algorithm>
#include <bit>

#include "blindgate/error.hpp"
#include "blindgate/instrument.hpp"

namespace blindgate {
namespace {

constexpr std::int64_t kNoiseCap = std::int64_t{1} << 40;

std::int64_t sat(std::int64_t v) { return std::min(v, kNoiseCap); }

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::int64_t ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return 64 - std::countl_zero(x - 1);
}

void check_lineage(const Ciphertext& a, const Ciphertext& b) {
  if (!a.context() || !b.context()) {
    throw Error(ErrorCode::kProfileMismatch, "ciphertext without key context");
  }
  if (a.context() != b.context() &&
      (a.context()->lineage != b.context()->lineage ||
       !(a.context()->profile == b.context()->profile))) {
    throw Error(ErrorCode::kProfileMismatch,
                "operands come from different keys or profiles");
  }
}

BigInt reduce(const EvalContext& ctx, BigInt v) {
  if (ctx.reducer) return ctx.reducer->reduce(v);
  return v;
}

void check_bit(int m) {
  if (m != 0 && m != 1) {
    throw Error(ErrorCode::kInvalidArgument, "plaintext must be 0 or 1");
  }
}

}  // namespace

std::string_view key_mode_name(KeyMode mode) {
  return mode == KeyMode::kSymmetric ? "symmetric" : "asymmetric";
}

KeyMode parse_key_mode(std::string_view text) {
  if (text == "symmetric" || text == "sym") return KeyMode::kSymmetric;
  if (text == "asymmetric" || text == "asym") return KeyMode::kAsymmetric;
  throw Error(ErrorCode::kInvalidArgument, "unknown key mode: " + std::string(text));
}

std::string canonical_profile_name(std::string_view name) {
  if (name == "a" || name == "profile_a") return "profile_a";
  if (name == "b" || name == "profile_b") return "profile_b";
  if (name == "vod" || name == "profile_vod") return "profile_vod";
  if (name == "custom") return "custom";
  throw Error(ErrorCode::kInvalidProfile, "unknown profile: " + std::string(name));
}

ParamProfile ParamProfile::preset(std::string_view name, int lambda,
                                  KeyMode mode) {
  if (lambda < 2) {
    throw Error(ErrorCode::kInvalidLambda, "lambda must be at least 2");
  }
  ParamProfile p;
  p.lambda = lambda;
  p.mode = mode;
  p.name = canonical_profile_name(name);
  const auto l = static_cast<std::size_t>(lambda);
  if (p.name == "profile_a") {
    p.sk_bits = ipow(l, 2);
    p.q_bits = ipow(l, 5);
  } else if (p.name == "profile_b") {
    p.sk_bits = ipow(l, 5);
    p.q_bits = ipow(l, 2);
  } else if (p.name == "profile_vod") {
    const std::size_t l4 = ipow(l, 4);
    p.sk_bits = (l4 + 1) / 2;
    p.q_bits = l4 / 2;
  } else {
    throw Error(ErrorCode::kInvalidProfile, "custom profile needs explicit bit lengths");
  }
  p.r_bits = l;
  p.validate();
  return p;
}

ParamProfile ParamProfile::custom(int lambda, std::size_t sk_bits,
                                  std::size_t q_bits, std::size_t r_bits,
                                  KeyMode mode) {
  ParamProfile p;
  p.lambda = lambda;
  p.sk_bits = sk_bits;
  p.q_bits = q_bits;
  p.r_bits = r_bits;
  p.mode = mode;
  p.name = "custom";
  p.validate();
  return p;
}

void ParamProfile::validate() const {
  if (lambda < 2) {
    throw Error(ErrorCode::kInvalidLambda, "lambda must be at least 2");
  }
  if (sk_bits <= r_bits + 2) {
    throw Error(ErrorCode::kInvalidProfile,
                name + " at lambda " + std::to_string(lambda) + ": sk_bits " +
                    std::to_string(sk_bits) + " must exceed r_bits + 2 = " +
                    std::to_string(r_bits + 2));
  }
  if (q_bits < 1 || r_bits < 1) {
    throw Error(ErrorCode::kInvalidProfile, "q_bits and r_bits must be positive");
  }
}

std::int64_t EvalContext::fresh_noise_bits() const {
  std::int64_t n = static_cast<std::int64_t>(profile.r_bits) + 1;
  if (profile.mode == KeyMode::kAsymmetric) {
    n += ceil_log2(pk.zeros.size() + 1);
  }
  return n;
}

KeyPair keygen(int lambda, std::string_view profile_name, std::uint64_t seed,
               const KeygenOptions& options) {
  return keygen(ParamProfile::preset(profile_name, lambda), seed, options);
}

KeyPair keygen(const ParamProfile& profile, std::uint64_t seed,
               const KeygenOptions& options) {
  profile.validate();
  Rng rng(seed);
  auto ctx = std::make_shared<EvalContext>();
  ctx->profile = profile;
  ctx->lineage = rng.next_u64();

  KeyPair kp;
  BigInt p = rng.random_bits(profile.sk_bits, true);
  if (!p.is_odd()) p += BigInt(1);
  if (p.bit_length() != profile.sk_bits) p -= BigInt(2);
  kp.sk.p = p;

  if (options.reduce) {
    BigInt q0 = rng.random_bits(profile.q_bits, true);
    BigInt x0 = p * q0;
    ctx->pk.x0 = x0;
    ctx->reducer.emplace(x0);
  }

  if (profile.mode == KeyMode::kAsymmetric) {
    std::size_t count = options.zero_count != 0
                            ? options.zero_count
                            : 2 * static_cast<std::size_t>(profile.lambda);
    for (std::size_t i = 0; i < count; ++i) {
      BigInt q = rng.random_bits(profile.q_bits, true);
      BigInt r = rng.random_bits(profile.r_bits);
      ctx->pk.zeros.push_back(p * q + (r << 1));
    }
  }

  if (options.squash) {
    const auto l = static_cast<std::size_t>(profile.lambda);
    const std::size_t beta = options.beta != 0 ? options.beta : 5 * l;
    const std::size_t alpha = options.alpha != 0 ? options.alpha : l;
    if (alpha == 0 || alpha > beta) {
      throw Error(ErrorCode::kInvalidArgument, "squash needs 0 < alpha <= beta");
    }
    // The hint must stay exact for products of two reduced ciphertexts whose
    // residue sits just below p/2.
    const std::size_t kappa = 2 * profile.sk_bits + profile.q_bits + 4;
    std::vector<std::size_t> idx(beta);
    for (std::size_t i = 0; i < beta; ++i) idx[i] = i;
    for (std::size_t i = 0; i < alpha; ++i) {
      std::size_t j = i + rng.uniform(beta - i);
      std::swap(idx[i], idx[j]);
    }
    SquashKey sq;
    sq.alpha = alpha;
    sq.s.assign(beta, 0);
    for (std::size_t i = 0; i < alpha; ++i) sq.s[idx[i]] = 1;

    const BigInt modulus = BigInt::pow2(kappa + 1);
    // round(2^kappa / p)
    const BigInt target = (BigInt::pow2(kappa + 1) + p) / (p << 1);
    std::vector<BigInt> y(beta);
    for (auto& v : y) v = rng.random_bits(kappa + 1);
    BigInt partial;
    for (std::size_t i = 1; i < alpha; ++i) partial += y[idx[i]];
    y[idx[0]] = (target - partial).mod_floor(modulus);

    ctx->pk.y = std::move(y);
    ctx->pk.alpha = alpha;
    ctx->pk.beta = beta;
    ctx->pk.kappa = kappa;
    kp.sk.squash = std::move(sq);
  }
  kp.ctx = std::move(ctx);
  return kp;
}

bool Ciphertext::ledger_valid() const {
  return noise_bits_ < static_cast<std::int64_t>(ctx_->profile.sk_bits) - 1;
}

Ciphertext Ciphertext::with_hint() const {
  if (!ctx_ || !ctx_->has_hint()) {
    throw Error(ErrorCode::kMissingHint, "public key carries no squashing hint");
  }
  Ciphertext out = *this;
  std::vector<BigInt> z;
  z.reserve(ctx_->pk.y.size());
  for (const auto& y : ctx_->pk.y) {
    z.push_back((value_ * y).low_bits(ctx_->pk.kappa + 1));
  }
  out.zhint_ = std::move(z);
  return out;
}

Ciphertext encrypt(const KeyPair& key, int m, Rng& rng,
                   EncryptWitness* witness) {
  check_bit(m);
  const ParamProfile& prof = key.profile();
  if (prof.mode == KeyMode::kAsymmetric) {
    return encrypt_public(key.ctx, m, rng, witness);
  }
  BigInt r = rng.random_bits(prof.r_bits);
  BigInt q = rng.random_bits(prof.q_bits, true);
  BigInt value = BigInt(m) + (r << 1) + key.sk.p * q;
  if (witness != nullptr) {
    witness->r = r;
    witness->q = q;
    witness->subset.clear();
  }
  return Ciphertext(std::move(value), key.ctx->fresh_noise_bits(), key.ctx);
}

Ciphertext encrypt_public(const ContextPtr& ctx, int m, Rng& rng,
                          EncryptWitness* witness) {
  check_bit(m);
  if (ctx->profile.mode != KeyMode::kAsymmetric || ctx->pk.zeros.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "public-key encryption needs an asymmetric key");
  }
  BigInt r = rng.random_bits(ctx->profile.r_bits);
  BigInt value = BigInt(m) + (r << 1);
  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < ctx->pk.zeros.size(); ++i) {
    if (rng.coin()) {
      value += ctx->pk.zeros[i];
      subset.push_back(i);
    }
  }
  if (witness != nullptr) {
    witness->r = r;
    witness->q = BigInt();
    witness->subset = std::move(subset);
  }
  return Ciphertext(std::move(value), ctx->fresh_noise_bits(), ctx);
}

Ciphertext trivial(const ContextPtr& ctx, int m) {
  check_bit(m);
  return Ciphertext(BigInt(m), m, ctx);
}

BigInt centered_residue(const BigInt& value, const BigInt& p) {
  BigInt r = value.mod_floor(p);
  if ((r << 1) > p) r -= p;
  return r;
}

int decrypt(const SecretKey& sk, const Ciphertext& c, bool force) {
  if (!force && !c.ledger_valid()) {
    throw Error(ErrorCode::kNoiseOverflow,
                "ledger bound " + std::to_string(c.noise_bits()) +
                    " bits reaches sk_bits - 1 = " +
                    std::to_string(c.profile().sk_bits - 1));
  }
  return centered_residue(c.value(), sk.p).is_odd() ? 1 : 0;
}

int decrypt_squashed(const SecretKey& sk, const Ciphertext& c) {
  if (!sk.squash) {
    throw Error(ErrorCode::kMissingHint, "secret key carries no squash vector");
  }
  if (!c.zhint()) {
    throw Error(ErrorCode::kMissingHint, "ciphertext carries no z hint");
  }
  const auto& z = *c.zhint();
  const auto& s = sk.squash->s;
  if (z.size() != s.size()) {
    throw Error(ErrorCode::kMissingHint, "hint length does not match squash vector");
  }
  const std::size_t kappa = c.context()->pk.kappa;
  BigInt sum;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) sum += z[i];
  }
  // round(sum / 2^kappa) mod 2
  BigInt rounded = (sum + BigInt::pow2(kappa - 1)) >> kappa;
  int lsb_sum = rounded.bit(0) ? 1 : 0;
  int lsb_c = c.value().bit(0) ? 1 : 0;
  if (c.value().is_negative()) lsb_c = c.value().is_odd() ? 1 : 0;
  return lsb_c ^ lsb_sum;
}

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b) {
  check_lineage(a, b);
  instrument::record(OpKind::kAdd);
  const EvalContext& ctx = *a.context();
  return Ciphertext(reduce(ctx, a.value() + b.value()),
                    sat(std::max(a.noise_bits(), b.noise_bits()) + 1),
                    a.context());
}

Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b) {
  check_lineage(a, b);
  instrument::record(OpKind::kMul);
  const EvalContext& ctx = *a.context();
  return Ciphertext(reduce(ctx, a.value() * b.value()),
                    sat(a.noise_bits() + b.noise_bits() + 1), a.context());
}

Ciphertext mixed_add(int p, const Ciphertext& c) {
  check_bit(p);
  instrument::record(OpKind::kMixedAdd);
  if (p == 0) return Ciphertext(c.value(), c.noise_bits(), c.context());
  BigInt v = c.value() + BigInt(1);
  if (c.context()->reducer) v = c.context()->reducer->reduce(v);
  std::int64_t n = c.noise_bits() == 0 ? 1 : sat(c.noise_bits() + 1);
  return Ciphertext(std::move(v), n, c.context());
}

Ciphertext mixed_mul(int p, const Ciphertext& c) {
  check_bit(p);
  instrument::record(OpKind::kMixedMul);
  if (p == 0) return Ciphertext(BigInt(), 0, c.context());
  return Ciphertext(c.value(), c.noise_bits(), c.context());
}

std::int64_t measure_noise_bits(const SecretKey& sk, const Ciphertext& c) {
  return static_cast<std::int64_t>(centered_residue(c.value(), sk.p).bit_length());
}

NoiseProbe measure_noise(const SecretKey& sk, const Ciphertext& c,
                         int intended) {
  BigInt res = centered_residue(c.value(), sk.p);
  NoiseProbe probe;
  probe.residue_bits = static_cast<std::int64_t>(res.bit_length());
  probe.parity_ok = (res.is_odd() ? 1 : 0) == (intended & 1);
  return probe;
}

Ciphertext trusted_refresh(const KeyPair& key, const Ciphertext& c, Rng& rng) {
  int m = decrypt(key.sk, c);
  return encrypt(key, m, rng);
}

int capacity(const ParamProfile& profile) {
  profile.validate();
  const long double limit = static_cast<long double>(profile.sk_bits) - 1;
  const long double base = static_cast<long double>(profile.r_bits) + 1;
  int d = -1;
  for (int k = 0; k < 62; ++k) {
    long double lhs = base * static_cast<long double>(std::uint64_t{1} << k) + k;
    if (lhs < limit) {
      d = k;
    } else {
      break;
    }
  }
  return std::max(d, 0);
}

}  // namespace blindgate
