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

#ifndef MCE_COMMON_ERROR_H_
#define MCE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mce {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidGraph,
  kBadMagic,
  kTruncated,
  kUnknownOpCode,
  kVersionMismatch,
  kChecksumMismatch,
  kShapeMismatch,
  kMissingInput,
  kMissingEntry,
  kScaleUnderflow,
  kNonFinite,
  kNotFound,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as mce::Error; the code distinguishes
// failure classes that callers (and the CLI exit-code mapping) care about.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mce

#endif  // MCE_COMMON_ERROR_H_
