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

#ifndef MCE_EXEC_KERNELS_H_
#define MCE_EXEC_KERNELS_H_

#include <array>
#include <optional>
#include <span>

#include "mce/exec/tensor.h"
#include "mce/ir/types.h"

namespace mce {

// Reference kernels. FP32 kernels accumulate in FP32 with a fixed ascending
// summation order; INT8 kernels accumulate (q - zero_point) * w in INT32 and
// requantize with multiplier (scale_in * scale_w) / scale_out in double,
// rounding half to even and saturating to [-128, 127].

struct ConvParams {
  std::array<int32_t, 2> strides = {1, 1};
  Padding padding = Padding::kValid;
};

struct SpatialPlan {
  int64_t out = 0;
  int64_t pad_before = 0;
  int64_t pad_after = 0;
};

// SAME: out = ceil(in / stride), total pad = max((out-1)*stride + k - in, 0)
// split floor/ceil before/after. VALID: no padding. Throws on a zero-sized
// output or non-positive stride.
SpatialPlan PlanSpatial(int64_t in, int64_t kernel, int64_t stride, Padding padding);

// input NHWC, weights HWIO.
Tensor Conv2D(const Tensor& input, const Tensor& weights, const ConvParams& params);
// input NHWC, weights (H, W, C) with channel multiplier 1.
Tensor DepthwiseConv2D(const Tensor& input, const Tensor& weights, const ConvParams& params);
// a [N, K] x b [K, M].
Tensor MatMul(const Tensor& a, const Tensor& b);

Tensor Conv2DInt8(const Tensor& input, const Tensor& weights, const ConvParams& params,
                  const QuantParams& output_quant);
Tensor DepthwiseConv2DInt8(const Tensor& input, const Tensor& weights, const ConvParams& params,
                           const QuantParams& output_quant);
Tensor MatMulInt8(const Tensor& a, const Tensor& b, const QuantParams& output_quant);

Tensor Relu6(const Tensor& x);
// Zero padding; `pads` holds (before, after) per dimension.
Tensor Pad(const Tensor& x, std::span<const std::array<int32_t, 2>> pads);
// NHWC -> [N, C], mean over H and W.
Tensor GlobalMean(const Tensor& x);
// AddV2 or Mul. Operands have identical shapes, or one is a scalar or a
// vector matching the other's last (channel) dimension.
Tensor Elementwise(OpKind kind, const Tensor& a, const Tensor& b);

// Converts between any two dtypes through real values. INT8 targets need
// `quant`.
Tensor Cast(const Tensor& x, DType target, const std::optional<QuantParams>& quant);

}  // namespace mce

#endif  // MCE_EXEC_KERNELS_H_
