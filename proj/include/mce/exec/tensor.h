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

#ifndef MCE_EXEC_TENSOR_H_
#define MCE_EXEC_TENSOR_H_

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "mce/common/error.h"
#include "mce/ir/types.h"

namespace mce {

template <typename T>
constexpr DType DTypeOf();
template <> constexpr DType DTypeOf<float>() { return DType::kFP32; }
template <> constexpr DType DTypeOf<uint16_t>() { return DType::kFP16; }
template <> constexpr DType DTypeOf<int8_t>() { return DType::kINT8; }
template <> constexpr DType DTypeOf<int32_t>() { return DType::kINT32; }

// A dense row-major value. FP16 elements are stored as raw binary16 bits.
class Tensor {
 public:
  Tensor() = default;
  // Zero-filled.
  explicit Tensor(TensorSpec spec);
  Tensor(TensorSpec spec, std::vector<uint8_t> bytes);

  static Tensor FromFloats(std::vector<int64_t> shape, std::span<const float> values);

  const TensorSpec& spec() const { return spec_; }
  DType dtype() const { return spec_.dtype; }
  const std::vector<int64_t>& shape() const { return spec_.shape; }
  int64_t dim(size_t i) const { return spec_.shape.at(i); }
  size_t rank() const { return spec_.shape.size(); }
  int64_t size() const { return spec_.NumElements(); }

  template <typename T>
  std::span<T> data() {
    CheckType(DTypeOf<T>());
    return {reinterpret_cast<T*>(bytes_.data()), static_cast<size_t>(size())};
  }
  template <typename T>
  std::span<const T> data() const {
    CheckType(DTypeOf<T>());
    return {reinterpret_cast<const T*>(bytes_.data()), static_cast<size_t>(size())};
  }

  std::span<const uint8_t> bytes() const { return bytes_; }
  std::span<uint8_t> mutable_bytes() { return bytes_; }

  // Real values of every element: widened FP16, dequantized INT8.
  std::vector<float> ToFloats() const;

  bool operator==(const Tensor&) const = default;

 private:
  void CheckType(DType requested) const;

  TensorSpec spec_;
  std::vector<uint8_t> bytes_;
};

// Re-encode real values as `spec.dtype`: FP16 rounds to nearest even with
// saturation, INT8 quantizes with spec.quant (round half to even, clamp to
// [-128, 127]). Throws when INT8 lacks quant params.
Tensor EncodeFloats(TensorSpec spec, std::span<const float> values);

}  // namespace mce

#endif  // MCE_EXEC_TENSOR_H_
