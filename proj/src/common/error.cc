// Copyright 2026 The MCE Authors. All Rights Reserved.
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

#include "mce/common/error.h"

namespace mce {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidGraph: return "invalid graph";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kUnknownOpCode: return "unknown op code";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kChecksumMismatch: return "checksum mismatch";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kMissingInput: return "missing input";
    case ErrorCode::kMissingEntry: return "missing entry";
    case ErrorCode::kScaleUnderflow: return "scale underflow";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kIo: return "io error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace mce
