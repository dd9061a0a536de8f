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

#include "mce/ir/types.h"

#include <algorithm>
#include <cmath>

namespace mce {

std::string_view DTypeName(DType dtype) {
  switch (dtype) {
    case DType::kFP32: return "fp32";
    case DType::kFP16: return "fp16";
    case DType::kINT8: return "int8";
    case DType::kINT32: return "int32";
  }
  return "?";
}

std::optional<DType> DTypeFromCode(uint8_t code) {
  if (code > static_cast<uint8_t>(DType::kINT32)) return std::nullopt;
  return static_cast<DType>(code);
}

int32_t QuantParams::Quantize(double real, int32_t qmin, int32_t qmax) const {
  const double q = std::nearbyint(real / scale) + zero_point;
  if (std::isnan(q)) return zero_point;
  return static_cast<int32_t>(std::clamp(q, static_cast<double>(qmin), static_cast<double>(qmax)));
}

int64_t TensorSpec::NumElements() const {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return n;
}

std::string ShapeString(const std::vector<int64_t>& shape) {
  std::string out = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

namespace {
constexpr std::array<std::string_view, 10> kOpNames = {
    "Conv2D", "DepthwiseConv2dNative", "MatMul", "Relu6", "Mean",
    "Mul",    "AddV2",                 "Const",  "Pad",   "Cast"};
}  // namespace

std::string_view OpKindName(OpKind kind) { return kOpNames[static_cast<size_t>(kind)]; }

std::optional<OpKind> OpKindFromName(std::string_view name) {
  for (size_t i = 0; i < kOpNames.size(); ++i) {
    if (kOpNames[i] == name) return static_cast<OpKind>(i);
  }
  return std::nullopt;
}

std::optional<OpKind> OpKindFromCode(uint8_t code) {
  if (code >= kOpNames.size()) return std::nullopt;
  return static_cast<OpKind>(code);
}

std::string_view PrecisionTagName(PrecisionTag tag) {
  switch (tag) {
    case PrecisionTag::kOriginal: return "original";
    case PrecisionTag::kFP32: return "fp32";
    case PrecisionTag::kFP16: return "fp16";
    case PrecisionTag::kINT8: return "int8";
  }
  return "?";
}

std::optional<PrecisionTag> PrecisionTagFromName(std::string_view name) {
  for (auto tag : {PrecisionTag::kOriginal, PrecisionTag::kFP32, PrecisionTag::kFP16,
                   PrecisionTag::kINT8}) {
    if (PrecisionTagName(tag) == name) return tag;
  }
  return std::nullopt;
}

}  // namespace mce
