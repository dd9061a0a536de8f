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

#include "mce/ir/mobilenet_v2.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mce/common/error.h"
#include "mce/common/rng.h"

namespace mce {
namespace {

struct BlockSpec {
  int expansion;
  int channels;
  int repeats;
  int stride;
};

constexpr std::array<BlockSpec, 7> kBlocks = {{
    {1, 16, 1, 1},
    {6, 24, 2, 2},
    {6, 32, 3, 2},
    {6, 64, 4, 2},
    {6, 96, 3, 1},
    {6, 160, 3, 2},
    {6, 320, 1, 1},
}};

constexpr int kStemChannels = 32;
constexpr int kHeadChannels = 1280;

TensorSpec Activation(int64_t h, int64_t w, int64_t c) {
  return TensorSpec{{1, h, w, c}, DType::kFP32, std::nullopt};
}

class NetBuilder {
 public:
  NetBuilder(const MobileNetV2Config& config, MobileNetV2Build& tags)
      : builder_("mobilenet_v2_" + std::to_string(config.resolution)),
        rng_(config.seed),
        tags_(tags),
        height_(config.resolution),
        width_(config.resolution),
        channels_(3) {
    current_ = builder_.AddInput("input", Activation(height_, width_, channels_));
  }

  NodeId current() const { return current_; }
  int64_t channels() const { return channels_; }

  NodeId Weights(std::vector<int64_t> shape, double bound) {
    int64_t n = 1;
    for (int64_t d : shape) n *= d;
    std::vector<float> values(static_cast<size_t>(n));
    for (float& v : values) v = static_cast<float>(rng_.Uniform(-bound, bound));
    return builder_.AddConstFloats(std::move(shape), values);
  }

  NodeId UniformConst(int64_t n, double lo, double hi) {
    std::vector<float> values(static_cast<size_t>(n));
    for (float& v : values) v = static_cast<float>(rng_.Uniform(lo, hi));
    return builder_.AddConstFloats({n}, values);
  }

  void Bias() {
    const NodeId bias = UniformConst(channels_, -0.05, 0.05);
    current_ = Op(OpKind::kAddV2, {current_, bias});
    tags_.bias_adds.push_back(current_);
  }

  void Relu6() { current_ = Op(OpKind::kRelu6, {current_}); }

  // Kaiming-uniform weights for convs feeding Relu6; narrower bound for the
  // linear projections so the residual stream stays O(1).
  void Conv(int64_t kernel, int64_t out_channels, int stride, bool linear) {
    const int64_t fan_in = kernel * kernel * channels_;
    const double bound = std::sqrt((linear ? 3.0 : 6.0) / static_cast<double>(fan_in));
    const NodeId w = Weights({kernel, kernel, channels_, out_channels}, bound);
    NodeAttrs attrs;
    attrs.strides = {stride, stride};
    attrs.padding = Padding::kSame;
    height_ = (height_ + stride - 1) / stride;
    width_ = (width_ + stride - 1) / stride;
    channels_ = out_channels;
    current_ = Op(OpKind::kConv2D, {current_, w}, attrs);
    Bias();
  }

  void Depthwise(int stride) {
    NodeAttrs attrs;
    attrs.strides = {stride, stride};
    if (stride == 1) {
      attrs.padding = Padding::kSame;
    } else {
      // Explicit SAME-equivalent padding, then a VALID depthwise conv.
      const int64_t out_h = (height_ + stride - 1) / stride;
      const int64_t out_w = (width_ + stride - 1) / stride;
      const int64_t total_h = std::max<int64_t>((out_h - 1) * stride + 3 - height_, 0);
      const int64_t total_w = std::max<int64_t>((out_w - 1) * stride + 3 - width_, 0);
      NodeAttrs pad;
      pad.pads = {{0, 0},
                  {static_cast<int32_t>(total_h / 2), static_cast<int32_t>(total_h - total_h / 2)},
                  {static_cast<int32_t>(total_w / 2), static_cast<int32_t>(total_w - total_w / 2)},
                  {0, 0}};
      height_ += total_h;
      width_ += total_w;
      current_ = Op(OpKind::kPad, {current_}, pad);
      attrs.padding = Padding::kValid;
    }
    const NodeId w = Weights({3, 3, channels_}, std::sqrt(6.0 / 9.0));
    if (attrs.padding == Padding::kSame) {
      height_ = (height_ + stride - 1) / stride;
      width_ = (width_ + stride - 1) / stride;
    } else {
      height_ = (height_ - 3) / stride + 1;
      width_ = (width_ - 3) / stride + 1;
    }
    current_ = Op(OpKind::kDepthwiseConv2dNative, {current_, w}, attrs);
    const NodeId scale = UniformConst(channels_, 0.5, 1.0);
    current_ = Op(OpKind::kMul, {current_, scale});
    Bias();
    Relu6();
  }

  void Residual(NodeId shortcut) {
    current_ = Op(OpKind::kAddV2, {current_, shortcut});
    tags_.residual_adds.push_back(current_);
  }

  void GlobalMean() {
    NodeAttrs attrs;
    attrs.axes = {1, 2};
    current_ = builder_.AddOp(OpKind::kMean, {current_},
                              TensorSpec{{1, channels_}, DType::kFP32, std::nullopt}, attrs);
  }

  void Classifier(int64_t outputs) {
    const NodeId w = Weights({channels_, outputs}, std::sqrt(3.0 / static_cast<double>(channels_)));
    channels_ = outputs;
    current_ = builder_.AddOp(OpKind::kMatMul, {current_, w},
                              TensorSpec{{1, outputs}, DType::kFP32, std::nullopt});
    const NodeId bias = UniformConst(outputs, -0.05, 0.05);
    current_ = builder_.AddOp(OpKind::kAddV2, {current_, bias},
                              TensorSpec{{1, outputs}, DType::kFP32, std::nullopt});
    tags_.bias_adds.push_back(current_);
  }

  Graph Finish() && {
    builder_.SetOutputs({current_});
    return std::move(builder_).Build();
  }

 private:
  NodeId Op(OpKind kind, std::vector<NodeId> inputs, NodeAttrs attrs = {}) {
    return builder_.AddOp(kind, std::move(inputs), Activation(height_, width_, channels_),
                          std::move(attrs));
  }

  GraphBuilder builder_;
  Rng rng_;
  MobileNetV2Build& tags_;
  int64_t height_;
  int64_t width_;
  int64_t channels_;
  NodeId current_ = 0;
};

}  // namespace

int ScaledChannels(int channels, double width) {
  const double scaled = channels * width;
  const int rounded = static_cast<int>(std::floor(scaled / 8.0 + 0.5)) * 8;
  return std::max(8, rounded);
}

MobileNetV2Build BuildMobileNetV2Tagged(const MobileNetV2Config& config) {
  if (config.resolution <= 0 || config.resolution % 32 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "resolution must be a positive multiple of 32, got " +
                    std::to_string(config.resolution));
  }
  if (!(config.width > 0.0) || !std::isfinite(config.width)) {
    throw Error(ErrorCode::kInvalidArgument, "width multiplier must be positive");
  }
  if (config.num_outputs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_outputs must be at least 1");
  }

  MobileNetV2Build result;
  NetBuilder net(config, result);

  net.Conv(3, ScaledChannels(kStemChannels, config.width), 2, /*linear=*/false);
  net.Relu6();

  for (const BlockSpec& block : kBlocks) {
    const int out_channels = ScaledChannels(block.channels, config.width);
    for (int i = 0; i < block.repeats; ++i) {
      const int stride = i == 0 ? block.stride : 1;
      const NodeId shortcut = net.current();
      const int64_t in_channels = net.channels();
      if (block.expansion != 1) {
        net.Conv(1, in_channels * block.expansion, 1, /*linear=*/false);
        net.Relu6();
      }
      net.Depthwise(stride);
      net.Conv(1, out_channels, 1, /*linear=*/true);
      if (stride == 1 && in_channels == out_channels) net.Residual(shortcut);
    }
  }

  const int head = config.width > 1.0 ? ScaledChannels(kHeadChannels, config.width)
                                      : kHeadChannels;
  net.Conv(1, head, 1, /*linear=*/false);
  net.Relu6();
  net.GlobalMean();
  net.Classifier(config.num_outputs);

  result.graph = std::move(net).Finish();
  return result;
}

Graph BuildMobileNetV2(const MobileNetV2Config& config) {
  return BuildMobileNetV2Tagged(config).graph;
}

}  // namespace mce
