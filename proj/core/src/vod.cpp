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

#include "blindgate/vod.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "blindgate/error.hpp"
#include "blindgate/instrument.hpp"
#include "blindgate/she_io.hpp"

namespace blindgate {

void VideoStore::validate() const {
  std::set<std::uint64_t> ids;
  for (const auto& v : videos) {
    if ((v.id >> kVideoIdBits) != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "video id " + std::to_string(v.id) + " does not fit 10 bits");
    }
    if (!ids.insert(v.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate video id " + std::to_string(v.id));
    }
  }
}

std::size_t VideoStore::stream_bytes() const {
  std::size_t m = 0;
  for (const auto& v : videos) m = std::max(m, v.bytes.size());
  return m;
}

VideoStore make_pseudo_store(std::size_t count, std::size_t bytes_each,
                             std::uint64_t seed) {
  Rng rng(seed);
  VideoStore store;
  for (std::size_t i = 0; i < count; ++i) {
    Video v;
    v.id = i;
    v.bytes.resize(bytes_each);
    for (auto& b : v.bytes) b = static_cast<std::uint8_t>(rng.next_u64() >> 56);
    store.videos.push_back(std::move(v));
  }
  store.validate();
  return store;
}

VideoStore load_video_store(const std::string& dir) {
  namespace fs = std::filesystem;
  Json manifest = read_json_file((fs::path(dir) / "manifest.json").string());
  VideoStore store;
  try {
    for (const auto& e : manifest.at("videos")) {
      Video v;
      v.id = e.at("id").get<std::uint64_t>();
      std::string file = e.value("file", std::to_string(v.id) + ".bin");
      std::string data = read_text_file((fs::path(dir) / file).string());
      v.bytes.assign(data.begin(), data.end());
      store.videos.push_back(std::move(v));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  store.validate();
  return store;
}

void save_video_store(const VideoStore& store, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir);
  Json list = Json::array();
  for (const auto& v : store.videos) {
    std::string file = std::to_string(v.id) + ".bin";
    write_text_file_atomic((fs::path(dir) / file).string(),
                           std::string(v.bytes.begin(), v.bytes.end()));
    list.push_back({{"id", v.id}, {"file", file}, {"bytes", v.bytes.size()}});
  }
  write_json_file((fs::path(dir) / "manifest.json").string(),
                  Json{{"id_bits", kVideoIdBits}, {"videos", list}});
}

std::vector<Ciphertext> request_video(const VideoStore& store,
                                      const EncWord& enc_id,
                                      const VodOptions& options) {
  store.validate();
  if (enc_id.width() != kVideoIdBits) {
    throw Error(ErrorCode::kWidthMismatch, "video id must be 10 bits");
  }
  ContextPtr ctx;
  for (const auto& b : enc_id.bits) {
    if (!b.is_constant()) ctx = b.cipher().context();
  }
  if (!ctx) throw Error(ErrorCode::kInvalidArgument, "video id is not encrypted");

  std::vector<Bit> ind(store.videos.size());
  for (std::size_t v = 0; v < store.videos.size(); ++v) {
    ind[v] = eq_word(enc_id, plain_word(store.videos[v].id, kVideoIdBits));
  }
  const std::size_t nbits = store.stream_bytes() * 8;
  std::vector<Ciphertext> stream(nbits);
  instrument::parallel_for(
      nbits,
      [&](std::size_t b) {
        std::vector<Bit> terms;
        terms.reserve(store.videos.size());
        for (std::size_t v = 0; v < store.videos.size(); ++v) {
          const auto& bytes = store.videos[v].bytes;
          const bool bit = b / 8 < bytes.size() && ((bytes[b / 8] >> (b % 8)) & 1u);
          terms.push_back(band(ind[v], Bit::constant(bit)));
        }
        stream[b] = xor_all(std::move(terms)).to_ciphertext(ctx);
      },
      options.threads);
  if (options.check_noise) {
    for (const auto& c : stream) {
      if (!c.ledger_valid()) {
        throw Error(ErrorCode::kNoiseOverflow,
                    "stream ledger bound " + std::to_string(c.noise_bits()) +
                        " bits is past the decryption limit");
      }
    }
  }
  return stream;
}

std::vector<std::uint8_t> decrypt_stream(const SecretKey& sk,
                                         const std::vector<Ciphertext>& stream) {
  std::vector<std::uint8_t> out((stream.size() + 7) / 8, 0);
  for (std::size_t b = 0; b < stream.size(); ++b) {
    if (decrypt(sk, stream[b])) out[b / 8] |= static_cast<std::uint8_t>(1u << (b % 8));
  }
  return out;
}

std::string stream_to_text(const std::vector<Ciphertext>& stream) {
  std::string out = std::to_string(stream.size()) + "\n";
  for (const auto& c : stream) {
    out += c.value().to_hex();
    out += ' ';
    out += std::to_string(c.noise_bits());
    out += '\n';
  }
  return out;
}

std::vector<Ciphertext> stream_from_text(const std::string& text,
                                         const ContextPtr& ctx) {
  std::istringstream in(text);
  std::size_t count = 0;
  if (!(in >> count)) throw Error(ErrorCode::kParse, "stream: missing count");
  std::vector<Ciphertext> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string hex;
    std::int64_t noise = 0;
    if (!(in >> hex >> noise)) throw Error(ErrorCode::kParse, "stream: truncated");
    try {
      out.emplace_back(BigInt::from_hex(hex), noise, ctx);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::kParse, std::string("stream: ") + e.what());
    }
  }
  return out;
}

StreamEstimate estimate_stream(double original_mb, double original_bw, int lambda) {
  if (original_mb < 0 || original_bw < 0 || lambda < 1) {
    throw Error(ErrorCode::kInvalidArgument, "estimate needs non-negative sizes and lambda >= 1");
  }
  const double l4 = static_cast<double>(lambda) * lambda * lambda * lambda;
  return {original_mb, original_mb * l4, original_bw, original_bw * l4};
}

double estimate_cache(double length_s, double bandwidth_bits_per_s) {
  if (length_s < 0 || bandwidth_bits_per_s < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cache estimate needs non-negative inputs");
  }
  return length_s * bandwidth_bits_per_s / (8.0 * 1024.0 * 1024.0);
}

}  // namespace blindgate
