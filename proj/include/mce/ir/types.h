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

#ifndef MCE_IR_TYPES_H_
#define MCE_IR_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mce {

enum class DType : uint8_t { kFP32 = 0, kFP16 = 1, kINT8 = 2, kINT32 = 3 };

constexpr size_t ByteWidth(DType dtype) {
  switch (dtype) {
    case DType::kFP32: return 4;
    case DType::kFP16: return 2;
    case DType::kINT8: return 1;
    case DType::kINT32: return 4;
  }
  return 0;
}

std::string_view DTypeName(DType dtype);
std::optional<DType> DTypeFromCode(uint8_t code);

// Affine mapping real = scale * (q - zero_point).
struct QuantParams {
  double scale = 1.0;
  int32_t zero_point = 0;

  double Dequantize(int32_t q) const { return scale * (q - zero_point); }

  // Round-half-to-even onto the grid, then saturate to [qmin, qmax].
  int32_t Quantize(double real, int32_t qmin = -128, int32_t qmax = 127) const;

  bool operator==(const QuantParams&) const = default;
};

inline constexpr int32_t kInt8Min = -128;
inline constexpr int32_t kInt8Max = 127;
// Weights are symmetric and use the narrow range.
inline constexpr int32_t kWeightQMax = 127;

struct TensorSpec {
  std::vector<int64_t> shape;
  DType dtype = DType::kFP32;
  std::optional<QuantParams> quant;  // present iff dtype == kINT8

  int64_t NumElements() const;
  size_t ByteSize() const { return static_cast<size_t>(NumElements()) * ByteWidth(dtype); }

  bool operator==(const TensorSpec&) const = default;
};

std::string ShapeString(const std::vector<int64_t>& shape);

enum class OpKind : uint8_t {
  kConv2D = 0,
  kDepthwiseConv2dNative = 1,
  kMatMul = 2,
  kRelu6 = 3,
  kMean = 4,
  kMul = 5,
  kAddV2 = 6,
  kConst = 7,
  kPad = 8,
  kCast = 9,
};

inline constexpr std::array<OpKind, 10> kAllOpKinds = {
    OpKind::kConv2D, OpKind::kDepthwiseConv2dNative, OpKind::kMatMul, OpKind::kRelu6,
    OpKind::kMean,   OpKind::kMul,                   OpKind::kAddV2,  OpKind::kConst,
    OpKind::kPad,    OpKind::kCast};

std::string_view OpKindName(OpKind kind);
std::optional<OpKind> OpKindFromName(std::string_view name);
std::optional<OpKind> OpKindFromCode(uint8_t code);

// Fixed input count per kind.
constexpr int Arity(OpKind kind) {
  switch (kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2dNative:
    case OpKind::kMatMul:
    case OpKind::kMul:
    case OpKind::kAddV2:
      return 2;
    case OpKind::kRelu6:
    case OpKind::kMean:
    case OpKind::kPad:
    case OpKind::kCast:
      return 1;
    case OpKind::kConst:
      return 0;
  }
  return -1;
}

enum class Padding : uint8_t { kValid = 0, kSame = 1 };

// Kind-specific attributes. Only the fields relevant to a node's kind are
// serialized; the rest stay at their defaults.
struct NodeAttrs {
  std::array<int32_t, 2> strides = {1, 1};             // Conv2D, Depthwise
  Padding padding = Padding::kValid;                    // Conv2D, Depthwise
  std::vector<std::array<int32_t, 2>> pads;             // Pad: (before, after) per dim
  std::vector<int32_t> axes;                            // Mean
  DType cast_to = DType::kFP32;                         // Cast

  bool operator==(const NodeAttrs&) const = default;
};

enum class PrecisionTag : uint16_t { kOriginal = 0, kFP32 = 1, kFP16 = 2, kINT8 = 3 };

std::string_view PrecisionTagName(PrecisionTag tag);
std::optional<PrecisionTag> PrecisionTagFromName(std::string_view name);

}  // namespace mce

#endif  // MCE_IR_TYPES_H_
