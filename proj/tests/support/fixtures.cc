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

#include "fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <cstdio>

namespace mce::testing {

std::vector<float> RandomFloats(Rng& rng, int64_t n, double lo, double hi) {
  std::vector<float> values(n);
  for (float& v : values) v = static_cast<float>(rng.Uniform(lo, hi));
  return values;
}

Tensor RandomTensor(Rng& rng, std::vector<int64_t> shape, double lo, double hi) {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return Tensor::FromFloats(std::move(shape), RandomFloats(rng, n, lo, hi));
}

Tensor RandomImage(Rng& rng, int resolution, int batch) {
  return RandomTensor(rng, {batch, resolution, resolution, 3});
}

std::vector<Sample> RandomSamples(uint64_t seed, int count, int resolution, bool labelled) {
  Rng rng(seed);
  std::vector<Sample> samples;
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%05d.mct", i);
    Sample s{name, RandomTensor(rng, {resolution, resolution, 3}), std::nullopt};
    if (labelled) s.label = i % 2 ? "Healthy" : "Melanoma";
    samples.push_back(std::move(s));
  }
  return samples;
}

std::filesystem::path FreshTempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mce_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Graph RandomGraph(uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b("random_" + std::to_string(seed));
  const int64_t h0 = 3 + static_cast<int64_t>(rng.Below(10));
  const int64_t w0 = 3 + static_cast<int64_t>(rng.Below(10));
  std::vector<int64_t> shape = {1, h0, w0, 1 + static_cast<int64_t>(rng.Below(4))};
  NodeId cur = b.AddInput("input", TensorSpec{shape, DType::kFP32, std::nullopt});
  std::vector<std::pair<NodeId, std::vector<int64_t>>> history = {{cur, shape}};
  auto spec = [](std::vector<int64_t> s) { return TensorSpec{std::move(s), DType::kFP32, std::nullopt}; };

  const int steps = 1 + static_cast<int>(rng.Below(8));
  for (int i = 0; i < steps; ++i) {
    const int64_t c = shape[3];
    switch (rng.Below(6)) {
      case 0:
      case 1: {  // Conv2D or depthwise
        const bool depthwise = rng.Below(2);
        const int64_t k = std::min<int64_t>({1 + 2 * static_cast<int64_t>(rng.Below(2)), shape[1], shape[2]});
        NodeAttrs attrs;
        attrs.strides = {static_cast<int32_t>(1 + rng.Below(2)), static_cast<int32_t>(1 + rng.Below(2))};
        attrs.padding = rng.Below(2) ? Padding::kSame : Padding::kValid;
        auto out_dim = [&](int64_t in, int32_t s) {
          return attrs.padding == Padding::kSame ? (in + s - 1) / s : (in - k) / s + 1;
        };
        const int64_t co = depthwise ? c : 1 + static_cast<int64_t>(rng.Below(6));
        std::vector<int64_t> wshape = depthwise ? std::vector<int64_t>{k, k, c}
                                                : std::vector<int64_t>{k, k, c, co};
        const NodeId w = b.AddConstFloats(wshape, RandomFloats(rng, k * k * c * (depthwise ? 1 : co)));
        shape = {1, out_dim(shape[1], attrs.strides[0]), out_dim(shape[2], attrs.strides[1]), co};
        cur = b.AddOp(depthwise ? OpKind::kDepthwiseConv2dNative : OpKind::kConv2D, {cur, w},
                      spec(shape), attrs);
        break;
      }
      case 2:
        cur = b.AddOp(OpKind::kRelu6, {cur}, spec(shape));
        break;
      case 3: {  // per-channel Mul or AddV2
        const NodeId k = b.AddConstFloats({c}, RandomFloats(rng, c));
        cur = b.AddOp(rng.Below(2) ? OpKind::kMul : OpKind::kAddV2, {cur, k}, spec(shape));
        break;
      }
      case 4: {
        NodeAttrs attrs;
        attrs.pads = {{0, 0}, {static_cast<int32_t>(rng.Below(2)), static_cast<int32_t>(rng.Below(3))},
                      {static_cast<int32_t>(rng.Below(3)), static_cast<int32_t>(rng.Below(2))}, {0, 0}};
        shape[1] += attrs.pads[1][0] + attrs.pads[1][1];
        shape[2] += attrs.pads[2][0] + attrs.pads[2][1];
        cur = b.AddOp(OpKind::kPad, {cur}, spec(shape), attrs);
        break;
      }
      case 5: {  // residual add with an earlier tensor of the same shape
        for (const auto& [id, s] : history) {
          if (id != cur && s == shape) {
            cur = b.AddOp(OpKind::kAddV2, {id, cur}, spec(shape));
            break;
          }
        }
        break;
      }
    }
    history.emplace_back(cur, shape);
  }
  NodeAttrs mean;
  mean.axes = {1, 2};
  cur = b.AddOp(OpKind::kMean, {cur}, spec({1, shape[3]}), mean);
  const int64_t outputs = 1 + static_cast<int64_t>(rng.Below(3));
  const NodeId fc = b.AddConstFloats({shape[3], outputs}, RandomFloats(rng, shape[3] * outputs));
  cur = b.AddOp(OpKind::kMatMul, {cur, fc}, spec({1, outputs}));
  b.SetOutputs({cur});
  return std::move(b).Build();
}

Graph TinyNet(uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b("tiny");
  const NodeId x = b.AddInput("input", TensorSpec{{1, 8, 8, 3}, DType::kFP32, std::nullopt});
  const NodeId w = b.AddConstFloats({3, 3, 3, 4}, RandomFloats(rng, 3 * 3 * 3 * 4, -0.5, 0.5));
  NodeAttrs conv;
  conv.strides = {2, 2};
  conv.padding = Padding::kSame;
  const NodeId c = b.AddOp(OpKind::kConv2D, {x, w}, TensorSpec{{1, 4, 4, 4}, DType::kFP32, std::nullopt}, conv);
  const NodeId bias = b.AddConstFloats({4}, RandomFloats(rng, 4, -0.1, 0.1));
  const NodeId add = b.AddOp(OpKind::kAddV2, {c, bias}, TensorSpec{{1, 4, 4, 4}, DType::kFP32, std::nullopt});
  const NodeId r = b.AddOp(OpKind::kRelu6, {add}, TensorSpec{{1, 4, 4, 4}, DType::kFP32, std::nullopt});
  NodeAttrs mean;
  mean.axes = {1, 2};
  const NodeId m = b.AddOp(OpKind::kMean, {r}, TensorSpec{{1, 4}, DType::kFP32, std::nullopt}, mean);
  const NodeId fc = b.AddConstFloats({4, 1}, RandomFloats(rng, 4));
  const NodeId out = b.AddOp(OpKind::kMatMul, {m, fc}, TensorSpec{{1, 1}, DType::kFP32, std::nullopt});
  b.SetOutputs({out});
  return std::move(b).Build();
}

}  // namespace mce::testing
