// Copyright 2026 The Authors.
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

#ifndef STREAMLINE_ERROR_H_
#define STREAMLINE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace streamline {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kZeroVector,
  kOutOfRange,
  kEmptyInput,
  kEmptySlice,
  kMixedKinds,
  kFormat,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception. The code is stable and
// meant for programmatic handling; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kZeroVector: return "zero_vector";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kEmptySlice: return "empty_slice";
    case ErrorCode::kMixedKinds: return "mixed_kinds";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace streamline

#endif  // STREAMLINE_ERROR_H_
