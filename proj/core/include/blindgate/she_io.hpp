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

#ifndef BLINDGATE_SHE_IO_HPP_
#define BLINDGATE_SHE_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "blindgate/she.hpp"

namespace blindgate {

using Json = nlohmann::json;

// Key file: {lambda, profile, mode, sk_hex, zeros_hex[], y_fixedpoint_hex[],
// alpha, beta, kappa} plus sk_bits, q_bits, r_bits, x0_hex, squash_indices
// and lineage so a key round-trips exactly.
Json key_to_json(const KeyPair& key);
KeyPair key_from_json(const Json& j);

// Public half only: everything in the key file except the secret material.
Json public_context_to_json(const EvalContext& ctx);
ContextPtr public_context_from_json(const Json& j);

// {"value": "0x...", "noise_bits": N}
Json ciphertext_to_json(const Ciphertext& c);
Ciphertext ciphertext_from_json(const Json& j, const ContextPtr& ctx);

// Reads/writes whole files; errors surface as Error(kIo) or Error(kParse).
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
// Writes to a temporary sibling then renames over the target.
void write_text_file_atomic(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const Json& j);

}  // namespace blindgate

#endif  // BLINDGATE_SHE_IO_HPP_
