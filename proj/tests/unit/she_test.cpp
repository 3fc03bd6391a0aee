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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "blindgate/error.hpp"
#include "blindgate/instrument.hpp"
#include "blindgate/she.hpp"

namespace blindgate {
namespace {

int residue_parity(const BigInt& r) { return r.is_odd() ? 1 : 0; }

TEST(Profile, PresetBitLengths) {
  auto a = ParamProfile::preset("profile_a", 3);
  EXPECT_EQ(a.sk_bits, 9u);
  EXPECT_EQ(a.q_bits, 243u);
  EXPECT_EQ(a.r_bits, 3u);
  auto b = ParamProfile::preset("b", 2);
  EXPECT_EQ(b.sk_bits, 32u);
  EXPECT_EQ(b.q_bits, 4u);
  auto v = ParamProfile::preset("vod", 3);
  EXPECT_EQ(v.sk_bits, 41u);  // ceil(81 / 2)
  EXPECT_EQ(v.q_bits, 40u);
  EXPECT_EQ(canonical_profile_name("a"), "profile_a");
}

TEST(Profile, RejectsBadParameters) {
  EXPECT_THROW(ParamProfile::preset("profile_b", 0).validate(), Error);
  try {
    ParamProfile::preset("profile_a", 2).validate();  // sk 4 bits, r 2 bits
    FAIL() << "expected InvalidProfile";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidProfile);
  }
  EXPECT_THROW(ParamProfile::preset("profile_z", 3), Error);
}

TEST(Keygen, SecretKeyShape) {
  auto k = keygen(3, "profile_a", 11);
  EXPECT_EQ(k.sk.p.bit_length(), 9u);
  EXPECT_TRUE(k.sk.p.is_odd());
  auto kb = keygen(2, "profile_b", 11);
  EXPECT_EQ(kb.sk.p.bit_length(), 32u);
  EXPECT_TRUE(kb.sk.p.is_odd());
}

TEST(Keygen, DeterministicForSeed) {
  KeygenOptions o;
  o.squash = true;
  auto p = ParamProfile::preset("profile_b", 3, KeyMode::kAsymmetric);
  auto k1 = keygen(p, 5, o), k2 = keygen(p, 5, o), k3 = keygen(p, 6, o);
  EXPECT_EQ(k1.sk.p, k2.sk.p);
  EXPECT_EQ(k1.ctx->pk.zeros, k2.ctx->pk.zeros);
  EXPECT_EQ(k1.ctx->pk.y, k2.ctx->pk.y);
  EXPECT_NE(k1.sk.p, k3.sk.p);
  EXPECT_GE(k1.ctx->pk.zeros.size(), 6u);
  EXPECT_EQ(k1.ctx->pk.y.size(), 15u);
  EXPECT_EQ(k1.sk.squash->alpha, 3u);
  std::size_t weight = 0;
  for (auto s : k1.sk.squash->s) weight += s;
  EXPECT_EQ(weight, 3u);
}

TEST(Keygen, SquashOnlyWhenRequested) {
  auto k = keygen(3, "profile_b", 1);
  EXPECT_FALSE(k.sk.squash.has_value());
  EXPECT_FALSE(k.ctx->has_hint());
}

TEST(Encrypt, ResidueEqualsMessagePlusTwiceNoise) {
  auto k = keygen(4, "profile_b", 3);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const int m = i & 1;
    EncryptWitness w;
    auto c = encrypt(k, m, rng, &w);
    EXPECT_EQ(centered_residue(c.value(), k.sk.p), BigInt(m) + (w.r << 1));
    EXPECT_LE(w.r.bit_length(), k.profile().r_bits);
    EXPECT_EQ(c.noise_bits(), 5);
  }
}

TEST(Encrypt, PublicKeyResidueIncludesZeroNoise) {
  auto k = keygen(ParamProfile::preset("profile_b", 3, KeyMode::kAsymmetric), 3);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const int m = (i >> 1) & 1;
    EncryptWitness w;
    auto c = encrypt_public(k.ctx, m, rng, &w);
    BigInt expect = BigInt(m) + (w.r << 1);
    for (auto idx : w.subset) expect += centered_residue(k.ctx->pk.zeros[idx], k.sk.p);
    EXPECT_EQ(centered_residue(c.value(), k.sk.p), expect);
    EXPECT_LE(measure_noise_bits(k.sk, c), c.noise_bits());
    EXPECT_EQ(decrypt(k.sk, c), m);
  }
}

TEST(Encrypt, RoundTripAcrossPresets) {
  for (int lambda : {3, 4, 5}) {
    for (const char* prof : {"profile_a", "profile_b"}) {
      if (std::string(prof) == "profile_a" && lambda < 3) continue;
      auto k = keygen(lambda, prof, 100 + lambda);
      Rng rng(lambda);
      for (int i = 0; i < 500; ++i) {
        const int m = static_cast<int>(rng.uniform(2));
        ASSERT_EQ(decrypt(k.sk, encrypt(k, m, rng)), m) << prof << " lambda " << lambda;
      }
    }
  }
}

TEST(Encrypt, RejectsNonBit) {
  auto k = keygen(3, "profile_b", 1);
  Rng rng(1);
  EXPECT_THROW(encrypt(k, 2, rng), Error);
}

TEST(Homomorphic, GateTruthTables) {
  auto k = keygen(3, "profile_b", 4);
  Rng rng(2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      auto ca = encrypt(k, a, rng), cb = encrypt(k, b, rng);
      EXPECT_EQ(decrypt(k.sk, he_add(ca, cb)), a ^ b);
      EXPECT_EQ(decrypt(k.sk, he_mul(ca, cb)), a & b);
      EXPECT_EQ(decrypt(k.sk, mixed_add(a, cb)), a ^ b);
      EXPECT_EQ(decrypt(k.sk, mixed_mul(a, cb)), a & b);
    }
  }
}

TEST(Homomorphic, LedgerRules) {
  auto k = keygen(3, "profile_b", 4);
  Rng rng(3);
  auto a = encrypt(k, 1, rng), b = encrypt(k, 1, rng);
  EXPECT_EQ(he_add(a, b).noise_bits(), 5);
  EXPECT_EQ(he_mul(a, b).noise_bits(), 9);
  auto z = mixed_mul(0, a);
  EXPECT_TRUE(z.value().is_zero());
  EXPECT_EQ(z.noise_bits(), 0);
  EXPECT_EQ(mixed_mul(1, a).noise_bits(), a.noise_bits());
  EXPECT_EQ(mixed_add(0, a).noise_bits(), a.noise_bits());
  EXPECT_EQ(mixed_add(1, a).noise_bits(), a.noise_bits() + 1);
  EXPECT_EQ(mixed_add(1, z).noise_bits(), 1);
}

TEST(Homomorphic, OperationsAreCounted) {
  auto k = keygen(3, "profile_b", 4);
  Rng rng(3);
  auto a = encrypt(k, 1, rng), b = encrypt(k, 0, rng);
  OpScope scope;
  he_add(a, b);
  he_mul(a, b);
  he_mul(a, b);
  mixed_add(1, a);
  mixed_mul(0, a);
  EXPECT_EQ(scope.counter(), (OpCounter{1, 2, 1, 1}));
}

TEST(Homomorphic, LineageMismatchThrows) {
  auto k1 = keygen(3, "profile_b", 1), k2 = keygen(3, "profile_b", 2);
  Rng rng(1);
  try {
    he_add(encrypt(k1, 1, rng), encrypt(k2, 1, rng));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProfileMismatch);
  }
}

TEST(Homomorphic, DepthThreeAndTrees) {
  for (int lambda : {3, 4, 5}) {
    auto k = keygen(lambda, "profile_b", 40 + lambda);
    Rng rng(lambda * 7);
    for (int t = 0; t < 50; ++t) {
      std::vector<int> m(8);
      std::vector<Ciphertext> c;
      int expect = 1;
      for (auto& x : m) {
        x = static_cast<int>(rng.uniform(2));
        expect &= x;
        c.push_back(encrypt(k, x, rng));
      }
      while (c.size() > 1) {
        std::vector<Ciphertext> next;
        for (std::size_t i = 0; i < c.size(); i += 2) next.push_back(he_mul(c[i], c[i + 1]));
        c = next;
      }
      ASSERT_TRUE(c[0].ledger_valid());
      EXPECT_EQ(decrypt(k.sk, c[0]), expect);
    }
  }
}

TEST(Noise, ProbeWithinLedgerAlongProductChain) {
  auto k = keygen(4, "profile_b", 6);
  Rng rng(6);
  auto acc = encrypt(k, 1, rng);
  for (int i = 0; i < 6; ++i) {
    acc = he_mul(acc, encrypt(k, 1, rng));
    auto probe = measure_noise(k.sk, acc, 1);
    EXPECT_LE(probe.residue_bits, acc.noise_bits());
    if (acc.ledger_valid()) EXPECT_TRUE(probe.parity_ok);
  }
}

TEST(Noise, OverflowedChainLosesParity) {
  auto k = keygen(3, "profile_b", 6);  // sk 243 bits
  Rng rng(7);
  bool wrong = false;
  for (int trial = 0; trial < 20 && !wrong; ++trial) {
    auto acc = encrypt(k, 1, rng);
    for (int i = 0; i < 200 && !wrong; ++i) {
      acc = he_mul(acc, encrypt(k, 1, rng));
      if (!acc.ledger_valid()) {
        wrong = !measure_noise(k.sk, acc, 1).parity_ok;
      }
    }
  }
  EXPECT_TRUE(wrong);
}

TEST(Noise, DecryptRefusesInvalidLedger) {
  auto k = keygen(3, "profile_b", 6);
  Rng rng(7);
  auto acc = encrypt(k, 1, rng);
  while (acc.ledger_valid()) acc = he_mul(acc, encrypt(k, 1, rng));
  try {
    decrypt(k.sk, acc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoiseOverflow);
  }
  EXPECT_NO_THROW(decrypt(k.sk, acc, true));
  EXPECT_THROW(trusted_refresh(k, acc, rng), Error);
}

TEST(Refresh, ResetsNoise) {
  auto k = keygen(3, "profile_b", 8);
  Rng rng(8);
  auto c = he_mul(encrypt(k, 1, rng), encrypt(k, 1, rng));
  auto r = trusted_refresh(k, c, rng);
  EXPECT_EQ(decrypt(k.sk, r), 1);
  EXPECT_EQ(r.noise_bits(), 4);
}

TEST(Refresh, DeepCircuitWithRefreshMatchesOracle) {
  auto k = keygen(3, "profile_b", 9);
  Rng rng(9);
  int plain = 1;
  auto acc = encrypt(k, 1, rng);
  for (int i = 0; i < 100; ++i) {
    const int m = static_cast<int>(rng.uniform(2));
    const int op = static_cast<int>(rng.uniform(3));
    auto c = encrypt(k, m, rng);
    if (op == 0) {
      acc = he_mul(acc, c);
      plain &= m;
    } else if (op == 1) {
      acc = he_add(acc, c);
      plain ^= m;
    } else {
      acc = mixed_add(1, acc);
      plain ^= 1;
    }
    acc = trusted_refresh(k, acc, rng);
    ASSERT_EQ(decrypt(k.sk, acc), plain);
  }
}

// Direct evaluation of (r + 1) * 2^d + d < sk - 1.
int capacity_reference(std::size_t sk, std::size_t r) {
  int best = -1;
  for (int d = 0; d < 40; ++d) {
    if (static_cast<double>(r + 1) * std::ldexp(1.0, d) + d < static_cast<double>(sk) - 1) {
      best = d;
    }
  }
  return best;
}

TEST(Capacity, ProfileBLambdaTwo) {
  EXPECT_EQ(capacity(ParamProfile::preset("profile_b", 2)), 3);
  EXPECT_EQ(capacity_reference(32, 2), 3);
}

TEST(Capacity, MatchesReferenceAndIsMonotone) {
  for (const char* prof : {"profile_a", "profile_b", "profile_vod"}) {
    int prev = -1;
    for (int lambda = 3; lambda <= 8; ++lambda) {
      auto p = ParamProfile::preset(prof, lambda);
      const int d = capacity(p);
      EXPECT_EQ(d, capacity_reference(p.sk_bits, p.r_bits)) << prof << lambda;
      EXPECT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(Capacity, BalancedProductsAtCapacityDecrypt) {
  for (int lambda : {3, 4}) {
    auto p = ParamProfile::preset("profile_b", lambda);
    auto k = keygen(p, 12 + lambda);
    const int d = capacity(p);
    Rng rng(lambda);
    for (int t = 0; t < 30; ++t) {
      std::vector<Ciphertext> c;
      int expect = 1;
      for (int i = 0; i < (1 << d); ++i) {
        const int m = rng.uniform(8) ? 1 : 0;
        expect &= m;
        c.push_back(encrypt(k, m, rng));
      }
      while (c.size() > 1) {
        std::vector<Ciphertext> next;
        for (std::size_t i = 0; i < c.size(); i += 2) next.push_back(he_mul(c[i], c[i + 1]));
        c = next;
      }
      ASSERT_TRUE(c[0].ledger_valid());
      EXPECT_EQ(decrypt(k.sk, c[0]), expect);
    }
  }
}

TEST(Squash, AgreesWithPlainDecrypt) {
  KeygenOptions o;
  o.squash = true;
  for (const char* prof : {"profile_a", "profile_b"}) {
    auto k = keygen(4, prof, 21, o);
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      auto c = encrypt(k, static_cast<int>(rng.uniform(2)), rng);
      if (i % 3 == 0) c = he_mul(c, encrypt(k, 1, rng));
      EXPECT_EQ(decrypt_squashed(k.sk, c.with_hint()), decrypt(k.sk, c)) << prof << " " << i;
    }
  }
}

TEST(Squash, MissingHintThrows) {
  KeygenOptions o;
  o.squash = true;
  auto k = keygen(3, "profile_b", 2, o);
  Rng rng(2);
  auto c = encrypt(k, 1, rng);
  try {
    decrypt_squashed(k.sk, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingHint);
  }
  auto plain = keygen(3, "profile_b", 2);
  EXPECT_THROW(decrypt_squashed(plain.sk, encrypt(plain, 1, rng)), Error);
}

TEST(Squash, HintDroppedByOperations) {
  KeygenOptions o;
  o.squash = true;
  auto k = keygen(3, "profile_b", 2, o);
  Rng rng(2);
  auto c = encrypt(k, 1, rng).with_hint();
  EXPECT_TRUE(c.zhint().has_value());
  EXPECT_FALSE(he_add(c, c).zhint().has_value());
}

TEST(Determinism, SameSeedSameCiphertexts) {
  auto k1 = keygen(4, "profile_b", 77), k2 = keygen(4, "profile_b", 77);
  Rng r1(5), r2(5);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(encrypt(k1, i & 1, r1).value(), encrypt(k2, i & 1, r2).value());
  }
}

TEST(Reduction, CiphertextsStayBelowX0) {
  auto k = keygen(4, "profile_b", 3);
  ASSERT_TRUE(k.ctx->pk.x0.has_value());
  Rng rng(3);
  auto c = encrypt(k, 1, rng);
  for (int i = 0; i < 4; ++i) c = he_mul(c, encrypt(k, 1, rng));
  EXPECT_LT(c.value(), *k.ctx->pk.x0);
  EXPECT_EQ(decrypt(k.sk, c), 1);
  KeygenOptions o;
  o.reduce = false;
  auto kr = keygen(ParamProfile::preset("profile_b", 4), 3, o);
  EXPECT_FALSE(kr.ctx->pk.x0.has_value());
  auto u = he_mul(encrypt(kr, 1, rng), encrypt(kr, 1, rng));
  EXPECT_GT(u.value().bit_length(), 2 * (kr.profile().sk_bits + kr.profile().q_bits) - 4);
}

}  // namespace
}  // namespace blindgate
