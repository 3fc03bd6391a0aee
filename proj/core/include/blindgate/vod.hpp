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

#ifndef BLINDGATE_VOD_HPP_
#define BLINDGATE_VOD_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blindgate/circuits.hpp"

namespace blindgate {

inline constexpr std::size_t kVideoIdBits = 10;

struct Video {
  std::uint64_t id = 0;
  std::vector<std::uint8_t> bytes;
};

struct VideoStore {
  std::vector<Video> videos;

  void validate() const;
  // Length of every served stream, in bytes.
  std::size_t stream_bytes() const;
};

// Deterministic pseudo-random blobs with ids 0..count-1.
VideoStore make_pseudo_store(std::size_t count, std::size_t bytes_each,
                             std::uint64_t seed);

// Directory layout: <id>.bin per video plus manifest.json.
VideoStore load_video_store(const std::string& dir);
void save_video_store(const VideoStore& store, const std::string& dir);

struct VodOptions {
  bool check_noise = true;
  std::size_t threads = 0;
};

// Blind selection over the whole store: stream bit b is the fold over videos
// of I_v * V_v[b], with the store's bits entering as plaintext. The stream
// always has stream_bytes() * 8 bits; bit 8i + j is bit j of byte i.
std::vector<Ciphertext> request_video(const VideoStore& store,
                                      const EncWord& enc_id,
                                      const VodOptions& options = {});
std::vector<std::uint8_t> decrypt_stream(const SecretKey& sk,
                                         const std::vector<Ciphertext>& stream);

// Text form: first line the ciphertext count, then "0x<hex> <noise_bits>".
std::string stream_to_text(const std::vector<Ciphertext>& stream);
std::vector<Ciphertext> stream_from_text(const std::string& text,
                                         const ContextPtr& ctx);

struct StreamEstimate {
  double original_mb = 0;
  double encrypted_mb = 0;
  double original_bw = 0;
  double required_bw = 0;
};

// Encrypted size and bandwidth scale by lambda^4.
StreamEstimate estimate_stream(double original_mb, double original_bw, int lambda);
// length * bandwidth / (8 * 1024 * 1024) megabytes.
double estimate_cache(double length_s, double bandwidth_bits_per_s);

}  // namespace blindgate

#endif  // BLINDGATE_VOD_HPP_
