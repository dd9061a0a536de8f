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

#ifndef MCE_IR_MOBILENET_V2_H_
#define MCE_IR_MOBILENET_V2_H_

#include <cstdint>
#include <vector>

#include "mce/ir/graph.h"

namespace mce {

struct MobileNetV2Config {
  int resolution = 224;  // must be a positive multiple of 32
  double width = 1.0;
  int num_outputs = 1;
  uint64_t seed = 0;
};

// Builds the MobileNetV2 classifier as a frozen inference graph:
//
//   stem 3x3/2 conv -> 17 inverted-residual blocks -> 1x1 head conv ->
//   global Mean -> MatMul classifier emitting `num_outputs` logits.
//
// Batch norm after regular convs is folded into the conv weights and bias.
// After each depthwise conv it stays visible as a per-channel Mul followed
// by a bias AddV2. Every conv/matmul bias is an explicit AddV2, and the
// four stride-2 depthwise convs are preceded by an explicit Pad and run
// VALID. Weights come from a seeded generator, so the same config always
// yields byte-identical models.
Graph BuildMobileNetV2(const MobileNetV2Config& config);

struct MobileNetV2Build {
  Graph graph;
  // AddV2 nodes tagged at construction time by what they add.
  std::vector<NodeId> bias_adds;
  std::vector<NodeId> residual_adds;
};

MobileNetV2Build BuildMobileNetV2Tagged(const MobileNetV2Config& config);

// Channel count scaled by the width multiplier, rounded to the nearest
// multiple of 8 and never below 8.
int ScaledChannels(int channels, double width);

}  // namespace mce

#endif  // MCE_IR_MOBILENET_V2_H_
