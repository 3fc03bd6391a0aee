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

#include <filesystem>

#include "blindgate/error.hpp"
#include "blindgate/she_io.hpp"

namespace blindgate {
namespace {

TEST(SheIo, KeyRoundTripPreservesEverything) {
  KeygenOptions o;
  o.squash = true;
  auto key = keygen(ParamProfile::preset("profile_b", 3, KeyMode::kAsymmetric), 8, o);
  Json j = key_to_json(key);
  for (const char* f : {"lambda", "profile", "mode", "sk_hex", "zeros_hex", "y_fixedpoint_hex",
                        "alpha", "beta", "kappa"}) {
    EXPECT_TRUE(j.contains(f)) << f;
  }
  auto back = key_from_json(j);
  EXPECT_EQ(back.sk.p, key.sk.p);
  EXPECT_EQ(back.sk.squash->s, key.sk.squash->s);
  EXPECT_EQ(back.ctx->pk.zeros, key.ctx->pk.zeros);
  EXPECT_EQ(back.ctx->pk.y, key.ctx->pk.y);
  EXPECT_EQ(back.ctx->pk.x0, key.ctx->pk.x0);
  EXPECT_EQ(back.profile(), key.profile());
  EXPECT_EQ(back.ctx->lineage, key.ctx->lineage);
  EXPECT_EQ(key_to_json(back).dump(), j.dump());
  // Ciphertexts made under the original key combine with ones from the copy.
  Rng rng(1);
  auto c = he_add(encrypt(key, 1, rng), encrypt(back, 1, rng));
  EXPECT_EQ(decrypt(back.sk, c), 0);
}

TEST(SheIo, PublicContextHasNoSecret) {
  auto key = keygen(ParamProfile::preset("profile_b", 3, KeyMode::kAsymmetric), 8);
  Json j = public_context_to_json(*key.ctx);
  EXPECT_FALSE(j.contains("sk_hex"));
  auto ctx = public_context_from_json(j);
  EXPECT_EQ(ctx->lineage, key.ctx->lineage);
  Rng rng(2);
  EXPECT_EQ(decrypt(key.sk, encrypt_public(ctx, 1, rng)), 1);
}

TEST(SheIo, CiphertextFormat) {
  auto key = keygen(3, "profile_b", 8);
  Rng rng(3);
  auto c = encrypt(key, 1, rng);
  Json j = ciphertext_to_json(c);
  const std::string hex = j.at("value").get<std::string>();
  EXPECT_EQ(hex.substr(0, 2), "0x");
  EXPECT_EQ(hex.find_first_of("ABCDEF"), std::string::npos);
  EXPECT_EQ(j.at("noise_bits").get<int>(), 4);
  auto back = ciphertext_from_json(j, key.ctx);
  EXPECT_EQ(back.value(), c.value());
  EXPECT_THROW(ciphertext_from_json(Json{{"value", 3}}, key.ctx), Error);
}

TEST(SheIo, MalformedKeyIsParseError) {
  try {
    key_from_json(Json{{"lambda", 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(SheIo, AtomicWriteAndRead) {
  auto path = (std::filesystem::temp_directory_path() / "blindgate_io_test.json").string();
  write_json_file(path, Json{{"a", 1}});
  EXPECT_EQ(read_json_file(path).at("a").get<int>(), 1);
  write_text_file_atomic(path, "{\"a\": 2}\n");
  EXPECT_EQ(read_json_file(path).at("a").get<int>(), 2);
  std::filesystem::remove(path);
  try {
    read_text_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(SheIo, KeyFilesAreByteIdenticalForSeed) {
  EXPECT_EQ(key_to_json(keygen(3, "profile_b", 7)).dump(),
            key_to_json(keygen(3, "profile_b", 7)).dump());
}

}  // namespace
}  // namespace blindgate
