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

#include "mce/exec/kernels.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mce/common/error.h"

namespace mce {
namespace {

void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

void RequireRank(const Tensor& t, size_t rank, const char* what) {
  Require(t.rank() == rank, ErrorCode::kShapeMismatch,
          std::string(what) + " must have rank " + std::to_string(rank) + ", got " +
              ShapeString(t.shape()));
}

int8_t Requantize(int32_t acc, double multiplier, int32_t zero_point) {
  const double q = std::nearbyint(static_cast<double>(acc) * multiplier) + zero_point;
  return static_cast<int8_t>(std::clamp(q, static_cast<double>(kInt8Min),
                                        static_cast<double>(kInt8Max)));
}

struct ConvGeometry {
  int64_t n, h, w, ci, kh, kw, co;
  SpatialPlan rows, cols;
  int64_t sh, sw;
};

ConvGeometry PlanConv(const Tensor& input, const Tensor& weights, const ConvParams& params,
                      bool depthwise) {
  RequireRank(input, 4, "conv input");
  RequireRank(weights, depthwise ? 3 : 4, "conv weights");
  ConvGeometry g{};
  g.n = input.dim(0);
  g.h = input.dim(1);
  g.w = input.dim(2);
  g.ci = input.dim(3);
  g.kh = weights.dim(0);
  g.kw = weights.dim(1);
  Require(weights.dim(2) == g.ci, ErrorCode::kShapeMismatch,
          "channel mismatch: input has " + std::to_string(g.ci) + ", weights expect " +
              std::to_string(weights.dim(2)));
  g.co = depthwise ? g.ci : weights.dim(3);
  g.sh = params.strides[0];
  g.sw = params.strides[1];
  g.rows = PlanSpatial(g.h, g.kh, g.sh, params.padding);
  g.cols = PlanSpatial(g.w, g.kw, g.sw, params.padding);
  return g;
}

// out_acc is [N, OH, OW, CO]; input elements are offset by `in_offset`
// (the zero point for INT8, zero for floats).
template <typename In, typename W, typename Acc>
void ConvLoop(const ConvGeometry& g, const In* in, const W* w, Acc in_offset, Acc* out_acc) {
  const int64_t oh_n = g.rows.out, ow_n = g.cols.out;
  for (int64_t n = 0; n < g.n; ++n) {
    for (int64_t oh = 0; oh < oh_n; ++oh) {
      for (int64_t ow = 0; ow < ow_n; ++ow) {
        Acc* acc = out_acc + ((n * oh_n + oh) * ow_n + ow) * g.co;
        std::fill(acc, acc + g.co, Acc(0));
        for (int64_t kh = 0; kh < g.kh; ++kh) {
          const int64_t ih = oh * g.sh - g.rows.pad_before + kh;
          if (ih < 0 || ih >= g.h) continue;
          for (int64_t kw = 0; kw < g.kw; ++kw) {
            const int64_t iw = ow * g.sw - g.cols.pad_before + kw;
            if (iw < 0 || iw >= g.w) continue;
            const In* px = in + ((n * g.h + ih) * g.w + iw) * g.ci;
            const W* pw = w + (kh * g.kw + kw) * g.ci * g.co;
            for (int64_t ci = 0; ci < g.ci; ++ci) {
              const Acc xv = static_cast<Acc>(px[ci]) - in_offset;
              const W* wr = pw + ci * g.co;
              for (int64_t co = 0; co < g.co; ++co) acc[co] += xv * static_cast<Acc>(wr[co]);
            }
          }
        }
      }
    }
  }
}

template <typename In, typename W, typename Acc>
void DepthwiseLoop(const ConvGeometry& g, const In* in, const W* w, Acc in_offset, Acc* out_acc) {
  const int64_t oh_n = g.rows.out, ow_n = g.cols.out, c_n = g.ci;
  for (int64_t n = 0; n < g.n; ++n) {
    for (int64_t oh = 0; oh < oh_n; ++oh) {
      for (int64_t ow = 0; ow < ow_n; ++ow) {
        Acc* acc = out_acc + ((n * oh_n + oh) * ow_n + ow) * c_n;
        std::fill(acc, acc + c_n, Acc(0));
        for (int64_t kh = 0; kh < g.kh; ++kh) {
          const int64_t ih = oh * g.sh - g.rows.pad_before + kh;
          if (ih < 0 || ih >= g.h) continue;
          for (int64_t kw = 0; kw < g.kw; ++kw) {
            const int64_t iw = ow * g.sw - g.cols.pad_before + kw;
            if (iw < 0 || iw >= g.w) continue;
            const In* px = in + ((n * g.h + ih) * g.w + iw) * c_n;
            const W* pw = w + (kh * g.kw + kw) * c_n;
            for (int64_t c = 0; c < c_n; ++c) {
              acc[c] += (static_cast<Acc>(px[c]) - in_offset) * static_cast<Acc>(pw[c]);
            }
          }
        }
      }
    }
  }
}

template <typename In, typename W, typename Acc>
void MatMulLoop(int64_t rows, int64_t inner, int64_t cols, const In* a, const W* b, Acc a_offset,
                Acc* out) {
  for (int64_t n = 0; n < rows; ++n) {
    Acc* acc = out + n * cols;
    std::fill(acc, acc + cols, Acc(0));
    for (int64_t k = 0; k < inner; ++k) {
      const Acc av = static_cast<Acc>(a[n * inner + k]) - a_offset;
      const W* br = b + k * cols;
      for (int64_t m = 0; m < cols; ++m) acc[m] += av * static_cast<Acc>(br[m]);
    }
  }
}

void RequireFloat(const Tensor& t, const char* what) {
  Require(t.dtype() == DType::kFP32, ErrorCode::kInvalidArgument,
          std::string(what) + " must be fp32");
}

struct Int8Operands {
  QuantParams in;
  QuantParams w;
};

Int8Operands RequireInt8(const Tensor& input, const Tensor& weights) {
  Require(input.dtype() == DType::kINT8 && weights.dtype() == DType::kINT8 &&
              input.spec().quant && weights.spec().quant,
          ErrorCode::kInvalidArgument, "int8 kernel needs quantized int8 operands");
  return {*input.spec().quant, *weights.spec().quant};
}

Tensor RequantizeAll(std::vector<int64_t> shape, const std::vector<int32_t>& acc,
                     const Int8Operands& q, const QuantParams& out_q) {
  Tensor out(TensorSpec{std::move(shape), DType::kINT8, out_q});
  const double multiplier = q.in.scale * q.w.scale / out_q.scale;
  auto dst = out.data<int8_t>();
  for (size_t i = 0; i < acc.size(); ++i) dst[i] = Requantize(acc[i], multiplier, out_q.zero_point);
  return out;
}

}  // namespace

SpatialPlan PlanSpatial(int64_t in, int64_t kernel, int64_t stride, Padding padding) {
  Require(stride >= 1, ErrorCode::kInvalidArgument, "stride must be >= 1");
  SpatialPlan plan;
  if (padding == Padding::kSame) {
    plan.out = (in + stride - 1) / stride;
    const int64_t total = std::max<int64_t>((plan.out - 1) * stride + kernel - in, 0);
    plan.pad_before = total / 2;
    plan.pad_after = total - plan.pad_before;
  } else {
    plan.out = in >= kernel ? (in - kernel) / stride + 1 : 0;
  }
  Require(plan.out > 0, ErrorCode::kShapeMismatch,
          "zero-sized output: input " + std::to_string(in) + ", kernel " + std::to_string(kernel));
  return plan;
}

Tensor Conv2D(const Tensor& input, const Tensor& weights, const ConvParams& params) {
  RequireFloat(input, "conv input");
  RequireFloat(weights, "conv weights");
  const ConvGeometry g = PlanConv(input, weights, params, false);
  Tensor out(TensorSpec{{g.n, g.rows.out, g.cols.out, g.co}, DType::kFP32, std::nullopt});
  ConvLoop(g, input.data<float>().data(), weights.data<float>().data(), 0.0f,
           out.data<float>().data());
  return out;
}

Tensor DepthwiseConv2D(const Tensor& input, const Tensor& weights, const ConvParams& params) {
  RequireFloat(input, "depthwise input");
  RequireFloat(weights, "depthwise weights");
  const ConvGeometry g = PlanConv(input, weights, params, true);
  Tensor out(TensorSpec{{g.n, g.rows.out, g.cols.out, g.co}, DType::kFP32, std::nullopt});
  DepthwiseLoop(g, input.data<float>().data(), weights.data<float>().data(), 0.0f,
                out.data<float>().data());
  return out;
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireFloat(a, "matmul lhs");
  RequireFloat(b, "matmul rhs");
  RequireRank(a, 2, "matmul lhs");
  RequireRank(b, 2, "matmul rhs");
  Require(a.dim(1) == b.dim(0), ErrorCode::kShapeMismatch,
          "matmul inner dims " + ShapeString(a.shape()) + " x " + ShapeString(b.shape()));
  Tensor out(TensorSpec{{a.dim(0), b.dim(1)}, DType::kFP32, std::nullopt});
  MatMulLoop(a.dim(0), a.dim(1), b.dim(1), a.data<float>().data(), b.data<float>().data(), 0.0f,
             out.data<float>().data());
  return out;
}

Tensor Conv2DInt8(const Tensor& input, const Tensor& weights, const ConvParams& params,
                  const QuantParams& output_quant) {
  const Int8Operands q = RequireInt8(input, weights);
  const ConvGeometry g = PlanConv(input, weights, params, false);
  std::vector<int32_t> acc(static_cast<size_t>(g.n * g.rows.out * g.cols.out * g.co));
  ConvLoop(g, input.data<int8_t>().data(), weights.data<int8_t>().data(), q.in.zero_point,
           acc.data());
  return RequantizeAll({g.n, g.rows.out, g.cols.out, g.co}, acc, q, output_quant);
}

Tensor DepthwiseConv2DInt8(const Tensor& input, const Tensor& weights, const ConvParams& params,
                           const QuantParams& output_quant) {
  const Int8Operands q = RequireInt8(input, weights);
  const ConvGeometry g = PlanConv(input, weights, params, true);
  std::vector<int32_t> acc(static_cast<size_t>(g.n * g.rows.out * g.cols.out * g.co));
  DepthwiseLoop(g, input.data<int8_t>().data(), weights.data<int8_t>().data(), q.in.zero_point,
                acc.data());
  return RequantizeAll({g.n, g.rows.out, g.cols.out, g.co}, acc, q, output_quant);
}

Tensor MatMulInt8(const Tensor& a, const Tensor& b, const QuantParams& output_quant) {
  const Int8Operands q = RequireInt8(a, b);
  RequireRank(a, 2, "matmul lhs");
  RequireRank(b, 2, "matmul rhs");
  Require(a.dim(1) == b.dim(0), ErrorCode::kShapeMismatch,
          "matmul inner dims " + ShapeString(a.shape()) + " x " + ShapeString(b.shape()));
  std::vector<int32_t> acc(static_cast<size_t>(a.dim(0) * b.dim(1)));
  MatMulLoop(a.dim(0), a.dim(1), b.dim(1), a.data<int8_t>().data(), b.data<int8_t>().data(),
             q.in.zero_point, acc.data());
  return RequantizeAll({a.dim(0), b.dim(1)}, acc, q, output_quant);
}

Tensor Relu6(const Tensor& x) {
  RequireFloat(x, "relu6 input");
  Tensor out(x.spec());
  auto src = x.data<float>();
  auto dst = out.data<float>();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = std::min(std::max(src[i], 0.0f), 6.0f);
  return out;
}

Tensor Pad(const Tensor& x, std::span<const std::array<int32_t, 2>> pads) {
  RequireFloat(x, "pad input");
  Require(pads.size() == x.rank(), ErrorCode::kShapeMismatch,
          "pad amounts for " + std::to_string(pads.size()) + " dims, tensor has rank " +
              std::to_string(x.rank()));
  std::vector<int64_t> shape = x.shape();
  for (size_t d = 0; d < shape.size(); ++d) {
    Require(pads[d][0] >= 0 && pads[d][1] >= 0, ErrorCode::kInvalidArgument,
            "pad amounts must be non-negative");
    shape[d] += pads[d][0] + pads[d][1];
  }
  Tensor out(TensorSpec{shape, DType::kFP32, std::nullopt});
  if (x.size() == 0) return out;

  // Copy each innermost row into place; the rest of `out` stays zero.
  const size_t rank = x.rank();
  std::vector<int64_t> out_strides(rank, 1);
  for (size_t d = rank - 1; d > 0; --d) out_strides[d - 1] = out_strides[d] * shape[d];
  const int64_t row = x.shape().back();
  const int64_t rows = x.size() / row;
  auto src = x.data<float>();
  auto dst = out.data<float>();
  std::vector<int64_t> index(rank, 0);
  for (int64_t r = 0; r < rows; ++r) {
    int64_t offset = 0;
    for (size_t d = 0; d < rank; ++d) offset += (index[d] + pads[d][0]) * out_strides[d];
    std::copy_n(src.begin() + r * row, row, dst.begin() + offset);
    for (size_t d = rank - 1; d-- > 0;) {
      if (++index[d] < x.shape()[d]) break;
      index[d] = 0;
    }
  }
  return out;
}

Tensor GlobalMean(const Tensor& x) {
  RequireFloat(x, "mean input");
  RequireRank(x, 4, "mean input");
  const int64_t n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
  Tensor out(TensorSpec{{n, c}, DType::kFP32, std::nullopt});
  auto src = x.data<float>();
  auto dst = out.data<float>();
  const float count = static_cast<float>(h * w);
  std::vector<float> acc(static_cast<size_t>(c));
  for (int64_t b = 0; b < n; ++b) {
    std::fill(acc.begin(), acc.end(), 0.0f);
    const float* base = src.data() + b * h * w * c;
    for (int64_t p = 0; p < h * w; ++p) {
      for (int64_t ch = 0; ch < c; ++ch) acc[ch] += base[p * c + ch];
    }
    for (int64_t ch = 0; ch < c; ++ch) dst[b * c + ch] = acc[ch] / count;
  }
  return out;
}

Tensor Elementwise(OpKind kind, const Tensor& a, const Tensor& b) {
  Require(kind == OpKind::kAddV2 || kind == OpKind::kMul, ErrorCode::kInvalidArgument,
          "elementwise kind must be AddV2 or Mul");
  RequireFloat(a, "elementwise lhs");
  RequireFloat(b, "elementwise rhs");

  // Broadcast the smaller operand; `big` fixes the output shape.
  const bool a_is_big = a.size() > b.size() || (a.size() == b.size() && a.rank() >= b.rank());
  const Tensor& big = a_is_big ? a : b;
  const Tensor& small = a_is_big ? b : a;
  int64_t period = 0;  // 0: same shape, 1: scalar, C: per-channel
  if (big.shape() == small.shape()) {
    period = 0;
  } else if (small.size() == 1) {
    period = 1;
  } else if (small.rank() == 1 && big.rank() >= 1 && small.dim(0) == big.shape().back()) {
    period = small.dim(0);
  } else {
    throw Error(ErrorCode::kShapeMismatch,
                "cannot broadcast " + ShapeString(a.shape()) + " with " + ShapeString(b.shape()));
  }

  Tensor out(big.spec());
  auto pb = big.data<float>();
  auto ps = small.data<float>();
  auto dst = out.data<float>();
  const bool add = kind == OpKind::kAddV2;
  for (size_t i = 0; i < pb.size(); ++i) {
    const float s = period == 0 ? ps[i] : ps[i % static_cast<size_t>(period)];
    // Keep the operand order of the node so results do not depend on which
    // side broadcasts.
    const float lhs = a_is_big ? pb[i] : s;
    const float rhs = a_is_big ? s : pb[i];
    dst[i] = add ? lhs + rhs : lhs * rhs;
  }
  return out;
}

Tensor Cast(const Tensor& x, DType target, const std::optional<QuantParams>& quant) {
  TensorSpec spec{x.shape(), target, target == DType::kINT8 ? quant : std::nullopt};
  if (target == DType::kINT8 && !quant) {
    throw Error(ErrorCode::kInvalidArgument, "cast to int8 requires quant params");
  }
  if (x.dtype() == target && x.spec().quant == spec.quant) return x;
  const std::vector<float> real = x.ToFloats();
  return EncodeFloats(std::move(spec), real);
}

}  // namespace mce
