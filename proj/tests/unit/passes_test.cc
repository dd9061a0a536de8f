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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "fixtures.h"
#include "mce/common/error.h"
#include "mce/common/half.h"
#include "mce/exec/executor.h"
#include "mce/ir/mobilenet_v2.h"
#include "mce/ir/serialize.h"
#include "mce/ir/validate.h"
#include "mce/quant/calibration.h"
#include "mce/quant/passes.h"
#include "mce/quant/size_report.h"

namespace mce {
namespace {

int64_t CastCount(const Graph& g) { return OpHistogram(g).at(OpKind::kCast); }

std::map<OpKind, int64_t> WithoutCasts(const Graph& g) {
  auto h = OpHistogram(g);
  h.erase(OpKind::kCast);
  return h;
}

// A graph whose weights include 1.0, 65504, 70000 and 0.
Graph SpecialWeights() {
  GraphBuilder b("special");
  const NodeId x = b.AddInput("input", TensorSpec{{1, 4}, DType::kFP32, std::nullopt});
  const std::vector<float> w = {1.0f, 65504.0f, 70000.0f, 0.0f, -2.54f, 0.5f, 2.54f, -1.0f};
  const NodeId c = b.AddConstFloats({4, 2}, w);
  const NodeId m = b.AddOp(OpKind::kMatMul, {x, c}, TensorSpec{{1, 2}, DType::kFP32, std::nullopt});
  b.SetOutputs({m});
  return std::move(b).Build();
}

CalibrationTable CalibrateRandom(const Graph& g, int resolution, int count, uint64_t seed) {
  Rng rng(seed);
  std::vector<Tensor> batches;
  for (int i = 0; i < count; ++i) batches.push_back(testing::RandomImage(rng, resolution, 2));
  return Calibrate(g, batches, CalibrationMethod::MinMax());
}

TEST(PolicyTest, InputsAndOutputsAlwaysKept) {
  const PrecisionPolicy p(DType::kINT8, {});
  EXPECT_TRUE(p.Keeps(KeepRole::kGraphInputs));
  EXPECT_TRUE(p.Keeps(KeepRole::kGraphOutputs));
  EXPECT_FALSE(p.Keeps(KeepRole::kMean));
  EXPECT_TRUE(PrecisionPolicy::Default(DType::kFP16).Keeps(KeepRole::kMean));
  EXPECT_THROW(PrecisionPolicy(DType::kFP32), Error);
}

TEST(PolicyTest, JsonRoundTrip) {
  const PrecisionPolicy p = PrecisionPolicy::FromJson(
      nlohmann::ordered_json::parse(R"({"target": "int8", "keep_fp32": ["mean"]})"));
  EXPECT_EQ(p.target(), DType::kINT8);
  EXPECT_TRUE(p.Keeps(KeepRole::kMean));
  const PrecisionPolicy back = PrecisionPolicy::FromJson(p.ToJson());
  EXPECT_EQ(back.keep_fp32(), p.keep_fp32());
  EXPECT_EQ(back.target(), p.target());
  EXPECT_THROW(PrecisionPolicy::FromJson(nlohmann::ordered_json::parse(R"({"target": "fp64"})")), Error);
  EXPECT_THROW(PrecisionPolicy::FromJson(nlohmann::ordered_json::parse(R"({"target": "fp16", "keep_fp32": ["conv"]})")), Error);
  EXPECT_THROW(PrecisionPolicy::FromJson(nlohmann::ordered_json::parse(R"({"keep_fp32": []})")), Error);
}

TEST(LowerFp16Test, WeightEncodingAndSaturation) {
  const Graph lowered = LowerFp16(SpecialWeights(), PrecisionPolicy::Default(DType::kFP16));
  const Node* weights = nullptr;
  for (const Node& n : lowered.nodes()) {
    if (n.kind == OpKind::kConst) weights = &n;
  }
  ASSERT_NE(weights, nullptr);
  ASSERT_EQ(weights->output.dtype, DType::kFP16);
  ASSERT_EQ(weights->payload.size(), 16u);
  std::vector<uint16_t> bits(8);
  std::memcpy(bits.data(), weights->payload.data(), 16);
  EXPECT_EQ(bits[0], 0x3c00);
  EXPECT_EQ(HalfToFloat(bits[1]), 65504.0f);
  EXPECT_EQ(HalfToFloat(bits[2]), 65504.0f);
  EXPECT_EQ(bits[3], 0);
}

TEST(LowerFp16Test, MobileNetGetsFourCastsAtTheBoundaries) {
  const Graph source = BuildMobileNetV2({});
  const Graph g = LowerFp16(source, PrecisionPolicy::Default(DType::kFP16));
  EXPECT_TRUE(Validate(g).ok) << Validate(g).Summary();
  EXPECT_EQ(g.precision(), PrecisionTag::kFP16);
  EXPECT_EQ(CastCount(g), 4);
  EXPECT_EQ(WithoutCasts(g), WithoutCasts(source));

  // Placement: input -> cast, cast -> Mean, Mean -> cast, cast -> output.
  const NodeId input = g.inputs()[0].id;
  int after_input = 0, before_mean = 0, after_mean = 0, before_output = 0;
  for (const Node& n : g.nodes()) {
    if (n.kind != OpKind::kCast) continue;
    const Node* src = g.FindNode(n.inputs[0]);
    if (n.inputs[0] == input) ++after_input;
    if (src && src->kind == OpKind::kMean) ++after_mean;
    if (n.id == g.outputs()[0]) ++before_output;
    for (const auto& [id, consumers] : g.Consumers()) {
      if (id != n.id) continue;
      for (NodeId c : consumers) before_mean += g.node(c).kind == OpKind::kMean;
    }
  }
  EXPECT_EQ(after_input, 1);
  EXPECT_EQ(before_mean, 1);
  EXPECT_EQ(after_mean, 1);
  EXPECT_EQ(before_output, 1);
  for (const Node& n : g.nodes()) {
    if (n.kind == OpKind::kMean) {
      EXPECT_EQ(n.output.dtype, DType::kFP32);
    }
  }
  EXPECT_EQ(g.SpecOf(g.outputs()[0])->dtype, DType::kFP32);
}

TEST(LowerFp16Test, WithoutMeanKeepOnlyIoCasts) {
  const Graph g = LowerFp16(BuildMobileNetV2({}), PrecisionPolicy(DType::kFP16, {}));
  EXPECT_EQ(CastCount(g), 2);
  EXPECT_TRUE(Validate(g).ok);
}

TEST(LowerFp16Test, SerializedRoundTripKeepsHalfBits) {
  const Graph g = LowerFp16(BuildMobileNetV2({96, 1.0, 1, 2}), PrecisionPolicy::Default(DType::kFP16));
  const Graph back = Deserialize(Serialize(g));
  EXPECT_TRUE(back == g);
  for (const Node& n : g.nodes()) {
    if (n.kind == OpKind::kConst) {
      EXPECT_EQ(back.node(n.id).payload, n.payload);
    }
  }
}

TEST(LowerFp16Test, RunsCloseToFp32) {
  const Graph source = BuildMobileNetV2({96, 1.0, 1, 3});
  const Graph half = LowerFp16(source, PrecisionPolicy::Default(DType::kFP16));
  Rng rng(3);
  const Tensor x = testing::RandomImage(rng, 96, 4);
  const auto a = Executor(source).Run(x).outputs[0].ToFloats();
  const auto b = Executor(half).Run(x).outputs[0].ToFloats();
  for (size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), 2e-2);
}

TEST(InsertCastsTest, IdempotentAndNoOpOnFp32) {
  const PrecisionPolicy policy = PrecisionPolicy::Default(DType::kFP16);
  const Graph once = LowerFp16(BuildMobileNetV2({64, 1.0, 1, 1}), policy);
  const Graph twice = InsertCasts(once, policy);
  EXPECT_TRUE(twice == once);

  const Graph fp32 = BuildMobileNetV2({64, 1.0, 1, 1});
  const Graph same = InsertCasts(fp32, policy);
  EXPECT_TRUE(same == fp32);
  EXPECT_EQ(CastCount(same), 0);
}

TEST(InsertCastsTest, CollapsesCancellingCasts) {
  // input(fp32) -> cast fp16 -> cast fp32 -> relu6(fp32): both casts go.
  GraphBuilder b("casts", PrecisionTag::kFP16);
  const NodeId x = b.AddInput("input", TensorSpec{{1, 4}, DType::kFP32, std::nullopt});
  const NodeId c1 = b.AddOp(OpKind::kCast, {x}, TensorSpec{{1, 4}, DType::kFP16, std::nullopt}, {.cast_to = DType::kFP16});
  const NodeId c2 = b.AddOp(OpKind::kCast, {c1}, TensorSpec{{1, 4}, DType::kFP32, std::nullopt}, {.cast_to = DType::kFP32});
  const NodeId r = b.AddOp(OpKind::kRelu6, {c2}, TensorSpec{{1, 4}, DType::kFP32, std::nullopt});
  b.SetOutputs({r});
  const Graph g = InsertCasts(std::move(b).Build(), PrecisionPolicy::Default(DType::kFP16));
  EXPECT_EQ(CastCount(g), 0);
  EXPECT_EQ(g.node(r).inputs[0], x);
}

TEST(QuantizeInt8Test, WeightsSymmetricWithinHalfScale) {
  const Graph g = testing::TinyNet(9);
  const CalibrationTable t = CalibrateRandom(g, 8, 2, 9);
  const Graph q = QuantizeInt8(g, t, PrecisionPolicy::Default(DType::kINT8));
  EXPECT_TRUE(Validate(q).ok) << Validate(q).Summary();
  EXPECT_EQ(q.precision(), PrecisionTag::kINT8);
  EXPECT_EQ(CastCount(q), 4);
  for (const Node& n : g.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    const Node& qn = q.node(n.id);
    ASSERT_EQ(qn.output.dtype, DType::kINT8);
    const QuantParams params = *qn.output.quant;
    EXPECT_EQ(params.zero_point, 0);
    const auto original = Tensor(n.output, n.payload).ToFloats();
    for (size_t i = 0; i < original.size(); ++i) {
      const auto stored = static_cast<int8_t>(qn.payload[i]);
      EXPECT_GE(stored, -127);
      EXPECT_LE(std::abs(params.Dequantize(stored) - original[i]), params.scale / 2 * (1 + 1e-9));
    }
  }
}

TEST(QuantizeInt8Test, StoresExpectedCodes) {
  const Graph g = SpecialWeights();
  CalibrationTable table;
  const NodeId input = g.inputs()[0].id;
  NodeId weights = 0, matmul = 0;
  for (const Node& n : g.nodes()) (n.kind == OpKind::kConst ? weights : matmul) = n.id;
  table.Set({input, -1, 1, AffineParams(-1, 1), TensorKind::kActivation});
  table.Set({matmul, -10, 10, AffineParams(-10, 10), TensorKind::kActivation});
  // Scale as if max |w| were 2.54 so that 1.0 stores 50 and 0 stores 0.
  table.Set({weights, -2.54, 2.54, SymmetricParams(-2.54, 2.54), TensorKind::kWeight});
  const Graph q = QuantizeInt8(g, table, PrecisionPolicy::Default(DType::kINT8));
  const auto& payload = q.node(weights).payload;
  EXPECT_EQ(static_cast<int8_t>(payload[0]), 50);
  EXPECT_EQ(static_cast<int8_t>(payload[1]), 127);
  EXPECT_EQ(static_cast<int8_t>(payload[3]), 0);
  EXPECT_EQ(static_cast<int8_t>(payload[4]), -127);
}

TEST(QuantizeInt8Test, MissingEntryAndUnderflowErrors) {
  const Graph g = testing::TinyNet(10);
  CalibrationTable table = CalibrateRandom(g, 8, 1, 10);
  CalibrationTable missing;
  for (const auto& [id, e] : table.entries()) {
    if (id != g.outputs()[0]) missing.Set(e);
  }
  try {
    QuantizeInt8(g, missing, PrecisionPolicy::Default(DType::kINT8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingEntry);
  }
  CalibrationEntry tiny = table.At(g.outputs()[0]);
  tiny.params.scale = 1e-15;
  table.Set(tiny);
  try {
    QuantizeInt8(g, table, PrecisionPolicy::Default(DType::kINT8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScaleUnderflow);
  }
  EXPECT_THROW(QuantizeInt8(g, table, PrecisionPolicy::Default(DType::kFP16)), Error);
}

TEST(QuantizeInt8Test, MobileNetRunsAndKeepsConfidentSigns) {
  const Graph source = BuildMobileNetV2({64, 1.0, 1, 11});
  Rng rng(11);
  std::vector<Tensor> calib;
  for (int i = 0; i < 8; ++i) calib.push_back(testing::RandomImage(rng, 64, 4));
  const CalibrationTable table = Calibrate(source, calib, CalibrationMethod::MinMax());
  const Graph q = QuantizeInt8(source, table, PrecisionPolicy::Default(DType::kINT8));
  EXPECT_EQ(CastCount(q), 4);
  EXPECT_EQ(WithoutCasts(q), WithoutCasts(source));
  EXPECT_TRUE(Deserialize(Serialize(q)) == q);

  const double logit_scale = table.At(source.outputs()[0]).params.scale;
  const Executor fp32(source), int8(q);
  for (const Tensor& x : calib) {
    const auto a = fp32.Run(x).outputs[0].ToFloats();
    const auto b = int8.Run(x).outputs[0].ToFloats();
    for (size_t i = 0; i < a.size(); ++i) {
      ASSERT_TRUE(std::isfinite(b[i]));
      if (std::abs(a[i]) >= logit_scale) {
        EXPECT_EQ(a[i] > 0, b[i] > 0) << a[i] << " vs " << b[i];
      }
    }
  }
}

TEST(SizeReportTest, RatiosOnMobileNet) {
  const Graph source = BuildMobileNetV2({});
  const auto fp32 = Serialize(source);
  const auto fp16 = Serialize(LowerFp16(source, PrecisionPolicy::Default(DType::kFP16)));
  const SizeReport same = MakeSizeReport(fp32, fp32);
  EXPECT_EQ(same.ratio, 1.0);
  EXPECT_EQ(same.weight_ratio, 1.0);
  const SizeReport half = MakeSizeReport(fp32, fp16);
  EXPECT_NEAR(half.weight_ratio, 0.5, 0.001);
  EXPECT_GE(half.ratio, 0.50);
  EXPECT_LE(half.ratio, 0.55);
  EXPECT_EQ(half.bytes_before, fp32.size());
}

TEST(RetagTest, Fp32VariantKeepsWeights) {
  const Graph g = testing::TinyNet(12);
  const Graph r = RetagFp32(g);
  EXPECT_EQ(r.precision(), PrecisionTag::kFP32);
  EXPECT_EQ(WeightPayloadBytes(r), WeightPayloadBytes(g));
  EXPECT_EQ(CastCount(r), 0);
  EXPECT_THROW(RetagFp32(LowerFp16(g, PrecisionPolicy::Default(DType::kFP16))), Error);
}

}  // namespace
}  // namespace mce
