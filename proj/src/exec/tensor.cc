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

#include "mce/exec/tensor.h"

#include <algorithm>
#include <cmath>

#include "mce/common/half.h"

namespace mce {

Tensor::Tensor(TensorSpec spec) : spec_(std::move(spec)), bytes_(spec_.ByteSize(), 0) {}

Tensor::Tensor(TensorSpec spec, std::vector<uint8_t> bytes)
    : spec_(std::move(spec)), bytes_(std::move(bytes)) {
  if (bytes_.size() != spec_.ByteSize()) {
    throw Error(ErrorCode::kShapeMismatch,
                "buffer of " + std::to_string(bytes_.size()) + " bytes for " +
                    ShapeString(spec_.shape) + " " + std::string(DTypeName(spec_.dtype)));
  }
}

Tensor Tensor::FromFloats(std::vector<int64_t> shape, std::span<const float> values) {
  Tensor t(TensorSpec{std::move(shape), DType::kFP32, std::nullopt});
  if (static_cast<int64_t>(values.size()) != t.size()) {
    throw Error(ErrorCode::kShapeMismatch, "value count does not match shape");
  }
  std::memcpy(t.bytes_.data(), values.data(), values.size() * sizeof(float));
  return t;
}

void Tensor::CheckType(DType requested) const {
  if (requested != spec_.dtype) {
    throw Error(ErrorCode::kInvalidArgument,
                "tensor is " + std::string(DTypeName(spec_.dtype)) + ", accessed as " +
                    std::string(DTypeName(requested)));
  }
}

std::vector<float> Tensor::ToFloats() const {
  const size_t n = static_cast<size_t>(size());
  std::vector<float> out(n);
  switch (spec_.dtype) {
    case DType::kFP32: {
      auto src = data<float>();
      std::copy(src.begin(), src.end(), out.begin());
      break;
    }
    case DType::kFP16: {
      auto src = data<uint16_t>();
      for (size_t i = 0; i < n; ++i) out[i] = HalfToFloat(src[i]);
      break;
    }
    case DType::kINT8: {
      auto src = data<int8_t>();
      const QuantParams q = spec_.quant.value_or(QuantParams{});
      for (size_t i = 0; i < n; ++i) out[i] = static_cast<float>(q.Dequantize(src[i]));
      break;
    }
    case DType::kINT32: {
      auto src = data<int32_t>();
      for (size_t i = 0; i < n; ++i) out[i] = static_cast<float>(src[i]);
      break;
    }
  }
  return out;
}

Tensor EncodeFloats(TensorSpec spec, std::span<const float> values) {
  Tensor out(std::move(spec));
  if (static_cast<int64_t>(values.size()) != out.size()) {
    throw Error(ErrorCode::kShapeMismatch, "value count does not match shape");
  }
  switch (out.dtype()) {
    case DType::kFP32: {
      auto dst = out.data<float>();
      std::copy(values.begin(), values.end(), dst.begin());
      break;
    }
    case DType::kFP16: {
      auto dst = out.data<uint16_t>();
      for (size_t i = 0; i < values.size(); ++i) dst[i] = FloatToHalf(values[i]);
      break;
    }
    case DType::kINT8: {
      if (!out.spec().quant) {
        throw Error(ErrorCode::kInvalidArgument, "cast to int8 requires quant params");
      }
      const QuantParams q = *out.spec().quant;
      auto dst = out.data<int8_t>();
      for (size_t i = 0; i < values.size(); ++i) {
        dst[i] = static_cast<int8_t>(q.Quantize(values[i]));
      }
      break;
    }
    case DType::kINT32: {
      auto dst = out.data<int32_t>();
      for (size_t i = 0; i < values.size(); ++i) {
        dst[i] = static_cast<int32_t>(std::nearbyint(values[i]));
      }
      break;
    }
  }
  return out;
}

}  // namespace mce
