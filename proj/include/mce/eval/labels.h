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

#ifndef MCE_EVAL_LABELS_H_
#define MCE_EVAL_LABELS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mce {

enum class BinaryLabel : int { kOther = 0, kSkinCancer = 1 };

std::string_view BinaryLabelName(BinaryLabel label);

// The fourteen source classes of the skin-lesion corpus.
std::span<const std::string_view> SourceClasses();

// Throws Error(kNotFound) for a name outside SourceClasses().
BinaryLabel MapLabel(std::string_view class_name);

// Accepts a source class name, "SkinCancer"/"Other", or "1"/"0".
BinaryLabel ParseBinaryLabel(std::string_view text);

struct CondensedCounts {
  int64_t skin_cancer = 0;
  int64_t other = 0;
  int64_t total() const { return skin_cancer + other; }
};

CondensedCounts Condense(std::span<const std::pair<std::string, int64_t>> class_counts);

}  // namespace mce

#endif  // MCE_EVAL_LABELS_H_
