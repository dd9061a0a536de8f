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

#include "mce/eval/labels.h"

#include <algorithm>
#include <array>

#include "mce/common/error.h"

namespace mce {
namespace {

constexpr std::array<std::string_view, 3> kSkinCancerClasses = {
    "Basal cell carcinoma", "Melanoma", "Squamous cell carcinoma"};

constexpr std::array<std::string_view, 14> kSourceClasses = {
    "Actinic keratoses",
    "Basal cell carcinoma",
    "Benign keratosis-like lesions",
    "Chickenpox",
    "Cowpox",
    "Dermatofibroma",
    "Healthy",
    "HFMD",
    "Measles",
    "Melanocytic nevi",
    "Melanoma",
    "Monkeypox",
    "Squamous cell carcinoma",
    "Vascular lesions",
};

}  // namespace

std::string_view BinaryLabelName(BinaryLabel label) {
  return label == BinaryLabel::kSkinCancer ? "SkinCancer" : "Other";
}

std::span<const std::string_view> SourceClasses() { return kSourceClasses; }

BinaryLabel MapLabel(std::string_view class_name) {
  if (std::find(kSourceClasses.begin(), kSourceClasses.end(), class_name) == kSourceClasses.end()) {
    throw Error(ErrorCode::kNotFound, "unknown class '" + std::string(class_name) + "'");
  }
  const bool cancer = std::find(kSkinCancerClasses.begin(), kSkinCancerClasses.end(),
                                class_name) != kSkinCancerClasses.end();
  return cancer ? BinaryLabel::kSkinCancer : BinaryLabel::kOther;
}

BinaryLabel ParseBinaryLabel(std::string_view text) {
  if (text == "1" || text == "SkinCancer") return BinaryLabel::kSkinCancer;
  if (text == "0" || text == "Other") return BinaryLabel::kOther;
  return MapLabel(text);
}

CondensedCounts Condense(std::span<const std::pair<std::string, int64_t>> class_counts) {
  CondensedCounts counts;
  for (const auto& [name, n] : class_counts) {
    if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative count for '" + name + "'");
    (MapLabel(name) == BinaryLabel::kSkinCancer ? counts.skin_cancer : counts.other) += n;
  }
  return counts;
}

}  // namespace mce
