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

#ifndef BLINDGATE_ERROR_HPP_
#define BLINDGATE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace blindgate {

enum class ErrorCode {
  kInvalidLambda,
  kInvalidProfile,
  kNoiseOverflow,
  kMissingHint,
  kProfileMismatch,
  kWidthMismatch,
  kOddWidth,
  kUnknownColumn,
  kShapeMismatch,
  kDisconnected,
  kNoRoute,
  kParse,
  kIo,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidLambda: return "InvalidLambda";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kNoiseOverflow: return "NoiseOverflow";
    case ErrorCode::kMissingHint: return "MissingHint";
    case ErrorCode::kProfileMismatch: return "ProfileMismatch";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kOddWidth: return "OddWidth";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNoRoute: return "NoRoute";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace blindgate

#endif  // BLINDGATE_ERROR_HPP_
