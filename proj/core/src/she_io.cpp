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

#include "blindgate/she_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blindgate/error.hpp"

namespace blindgate {
namespace {

std::vector<std::string> hex_list(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_hex());
  return out;
}

std::vector<BigInt> parse_hex_list(const Json& j) {
  std::vector<BigInt> out;
  for (const auto& s : j) out.push_back(BigInt::from_hex(s.get<std::string>()));
  return out;
}

void fill_public(Json& j, const EvalContext& ctx) {
  const ParamProfile& p = ctx.profile;
  j["lambda"] = p.lambda;
  j["profile"] = p.name;
  j["mode"] = std::string(key_mode_name(p.mode));
  j["sk_bits"] = p.sk_bits;
  j["q_bits"] = p.q_bits;
  j["r_bits"] = p.r_bits;
  j["zeros_hex"] = hex_list(ctx.pk.zeros);
  j["y_fixedpoint_hex"] = hex_list(ctx.pk.y);
  j["alpha"] = ctx.pk.alpha;
  j["beta"] = ctx.pk.beta;
  j["kappa"] = ctx.pk.kappa;
  j["x0_hex"] = ctx.pk.x0 ? Json(ctx.pk.x0->to_hex()) : Json(nullptr);
  j["lineage"] = ctx.lineage;
}

std::shared_ptr<EvalContext> parse_public(const Json& j) {
  auto ctx = std::make_shared<EvalContext>();
  ParamProfile& p = ctx->profile;
  p.lambda = j.at("lambda").get<int>();
  p.name = canonical_profile_name(j.at("profile").get<std::string>());
  p.mode = parse_key_mode(j.at("mode").get<std::string>());
  if (j.contains("sk_bits")) {
    p.sk_bits = j.at("sk_bits").get<std::size_t>();
    p.q_bits = j.at("q_bits").get<std::size_t>();
    p.r_bits = j.at("r_bits").get<std::size_t>();
    p.validate();
  } else {
    p = ParamProfile::preset(p.name, p.lambda, p.mode);
  }
  ctx->pk.zeros = parse_hex_list(j.value("zeros_hex", Json::array()));
  ctx->pk.y = parse_hex_list(j.value("y_fixedpoint_hex", Json::array()));
  ctx->pk.alpha = j.value("alpha", std::size_t{0});
  ctx->pk.beta = j.value("beta", std::size_t{0});
  ctx->pk.kappa = j.value("kappa", std::size_t{0});
  if (j.contains("x0_hex") && !j.at("x0_hex").is_null()) {
    ctx->pk.x0 = BigInt::from_hex(j.at("x0_hex").get<std::string>());
    ctx->reducer.emplace(*ctx->pk.x0);
  }
  ctx->lineage = j.value("lineage", std::uint64_t{0});
  return ctx;
}

template <typename F>
auto guard_parse(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

Json key_to_json(const KeyPair& key) {
  Json j;
  fill_public(j, *key.ctx);
  j["sk_hex"] = key.sk.p.to_hex();
  Json idx = Json::array();
  if (key.sk.squash) {
    for (std::size_t i = 0; i < key.sk.squash->s.size(); ++i) {
      if (key.sk.squash->s[i]) idx.push_back(i);
    }
  }
  j["squash_indices"] = idx;
  return j;
}

KeyPair key_from_json(const Json& j) {
  return guard_parse([&] {
    KeyPair kp;
    auto ctx = parse_public(j);
    kp.sk.p = BigInt::from_hex(j.at("sk_hex").get<std::string>());
    if (!ctx->pk.y.empty()) {
      SquashKey sq;
      sq.alpha = ctx->pk.alpha;
      sq.s.assign(ctx->pk.beta, 0);
      for (const auto& i : j.at("squash_indices")) {
        sq.s.at(i.get<std::size_t>()) = 1;
      }
      kp.sk.squash = std::move(sq);
    }
    kp.ctx = std::move(ctx);
    return kp;
  });
}

Json public_context_to_json(const EvalContext& ctx) {
  Json j;
  fill_public(j, ctx);
  return j;
}

ContextPtr public_context_from_json(const Json& j) {
  return guard_parse([&]() -> ContextPtr { return parse_public(j); });
}

Json ciphertext_to_json(const Ciphertext& c) {
  return Json{{"value", c.value().to_hex()}, {"noise_bits", c.noise_bits()}};
}

Ciphertext ciphertext_from_json(const Json& j, const ContextPtr& ctx) {
  return guard_parse([&] {
    return Ciphertext(BigInt::from_hex(j.at("value").get<std::string>()),
                      j.at("noise_bits").get<std::int64_t>(), ctx);
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void write_text_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + path);
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace blindgate
