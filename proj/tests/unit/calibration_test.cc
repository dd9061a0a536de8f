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
#include <limits>

#include "fixtures.h"
#include "mce/common/error.h"
#include "mce/exec/executor.h"
#include "mce/quant/calibration.h"
#include "mce/quant/passes.h"

namespace mce {
namespace {

TEST(ParamsTest, SymmetricAndAffineArithmetic) {
  const QuantParams sym = SymmetricParams(-2.54, 2.54);
  EXPECT_NEAR(sym.scale, 0.02, 1e-15);
  EXPECT_EQ(sym.zero_point, 0);
  EXPECT_EQ(sym.Quantize(1.0, -127, 127), 50);
  EXPECT_EQ(SymmetricParams(-3.0, 1.0).scale, 3.0 / 127);

  const QuantParams pos = AffineParams(0.5, 2.55);  // range widened to include 0
  EXPECT_NEAR(pos.scale, 0.01, 1e-15);
  EXPECT_EQ(pos.zero_point, -128);
  const QuantParams centred = AffineParams(-1.0, 1.0);
  EXPECT_EQ(centred.scale, 2.0 / 255);
  EXPECT_EQ(centred.zero_point, 0);  // -128 + 127.5 rounds to even
  const QuantParams neg = AffineParams(-5.1, -1.0);
  EXPECT_EQ(neg.zero_point, 127);

  const QuantParams zero = AffineParams(0.0, 0.0);
  EXPECT_EQ(zero.scale, kScaleEpsilon);
  EXPECT_EQ(zero.zero_point, 0);
  EXPECT_EQ(SymmetricParams(0.0, 0.0).scale, kScaleEpsilon);
}

TEST(ParamsTest, AffineEndpointsMapIntoRange) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.Uniform(-10, 10), b = rng.Uniform(-10, 10);
    const QuantParams q = AffineParams(std::min(a, b), std::max(a, b));
    ASSERT_GT(q.scale, 0);
    // Zero is always exactly representable.
    EXPECT_EQ(q.Dequantize(q.Quantize(0.0)), 0.0);
    EXPECT_LE(std::abs(q.Dequantize(q.Quantize(std::min(a, b))) - std::min(a, b)), q.scale / 2 + 1e-12);
    EXPECT_LE(std::abs(q.Dequantize(q.Quantize(std::max(a, b))) - std::max(a, b)), q.scale / 2 + 1e-12);
  }
}

TEST(MethodTest, TagsParse) {
  EXPECT_EQ(CalibrationMethod::Parse("minmax").kind, CalibrationMethod::Kind::kMinMax);
  const auto p = CalibrationMethod::Parse("percentile:99.9");
  EXPECT_EQ(p.kind, CalibrationMethod::Kind::kPercentile);
  EXPECT_EQ(p.percentile, 99.9);
  EXPECT_EQ(CalibrationMethod::Parse(p.Tag()).percentile, 99.9);
  EXPECT_THROW(CalibrationMethod::Parse("entropy"), Error);
  EXPECT_THROW(CalibrationMethod::Parse("percentile:0"), Error);
}

TEST(RangeObserverTest, TracksExtremesAndMergesLikeOneStream) {
  Rng rng(2);
  RangeObserver whole, left, right;
  std::vector<float> a = testing::RandomFloats(rng, 1000, -3, 2);
  std::vector<float> b = testing::RandomFloats(rng, 1000, -1, 7);
  whole.Observe(a);
  whole.Observe(b);
  left.Observe(a);
  right.Observe(b);
  left.Merge(right);
  EXPECT_EQ(left.count(), 2000);
  EXPECT_EQ(left.min(), whole.min());
  EXPECT_EQ(left.max(), whole.max());
  EXPECT_EQ(left.MagnitudePercentile(99.0), whole.MagnitudePercentile(99.0));
  EXPECT_EQ(*std::min_element(a.begin(), a.end()), whole.min());
  EXPECT_EQ(*std::max_element(b.begin(), b.end()), whole.max());
}

TEST(RangeObserverTest, PercentileClipsOneOutlier) {
  Rng rng(3);
  std::vector<float> values = testing::RandomFloats(rng, 10000, -1, 1);
  values[1234] = 500.0f;
  RangeObserver obs;
  obs.Observe(values);
  const auto [lo_mm, hi_mm] = obs.Range(CalibrationMethod::MinMax());
  const auto [lo_p, hi_p] = obs.Range(CalibrationMethod::Percentile(99.9));
  EXPECT_EQ(hi_mm, 500.0);
  EXPECT_LT(hi_p, 2.0);
  EXPECT_LT(AffineParams(lo_p, hi_p).scale, AffineParams(lo_mm, hi_mm).scale);
  EXPECT_LT(SymmetricParams(lo_p, hi_p).scale, SymmetricParams(lo_mm, hi_mm).scale);
  // The clipped range never extends past the observed one.
  EXPECT_GE(lo_p, lo_mm);
  EXPECT_EQ(obs.Range(CalibrationMethod::Percentile(100)).second, 500.0);
}

TEST(RangeObserverTest, RejectsNonFinite) {
  RangeObserver obs;
  const std::vector<float> bad = {1.0f, std::numeric_limits<float>::quiet_NaN()};
  try {
    obs.Observe(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(CalibrateTest, EntriesMatchBruteForceExtremes) {
  const Graph g = testing::TinyNet(4);
  Rng rng(4);
  std::vector<Tensor> batches;
  for (int i = 0; i < 4; ++i) batches.push_back(testing::RandomImage(rng, 8, 2));

  std::map<NodeId, std::pair<double, double>> extremes;
  const Executor exec(g);
  for (const Tensor& b : batches) {
    exec.Run(b, [&](NodeId id, const Tensor& t) {
      auto [it, fresh] = extremes.try_emplace(id, INFINITY, -INFINITY);
      for (float v : t.ToFloats()) {
        it->second.first = std::min<double>(it->second.first, v);
        it->second.second = std::max<double>(it->second.second, v);
      }
    });
  }

  const CalibrationTable table = Calibrate(g, batches, CalibrationMethod::MinMax());
  EXPECT_EQ(table.entries().size(), g.nodes().size() + g.inputs().size());
  for (const auto& [id, range] : extremes) {
    const CalibrationEntry& e = table.At(id);
    EXPECT_EQ(e.kind, TensorKind::kActivation);
    EXPECT_EQ(e.min, range.first);
    EXPECT_EQ(e.max, range.second);
    EXPECT_EQ(e.params, AffineParams(range.first, range.second));
  }
  for (const Node& n : g.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    const CalibrationEntry& e = table.At(n.id);
    EXPECT_EQ(e.kind, TensorKind::kWeight);
    EXPECT_EQ(e.params.zero_point, 0);
    EXPECT_LE(e.min, e.max);
  }
  EXPECT_THROW(table.At(9999), Error);
}

TEST(CalibrateTest, BatchingDoesNotChangeMinMax) {
  const Graph g = testing::TinyNet(5);
  Rng rng(5);
  const Tensor all = testing::RandomImage(rng, 8, 4);
  const auto v = all.ToFloats();
  std::vector<Tensor> singles;
  for (int i = 0; i < 4; ++i) {
    singles.push_back(Tensor::FromFloats({1, 8, 8, 3}, std::span<const float>(v.data() + i * 192, 192)));
  }
  const auto one = Calibrate(g, std::span<const Tensor>(&all, 1), CalibrationMethod::MinMax());
  const auto four = Calibrate(g, singles, CalibrationMethod::MinMax());
  EXPECT_EQ(one.entries(), four.entries());
}

TEST(CalibrateTest, ErrorsOnEmptyNonFiniteAndLoweredGraphs) {
  const Graph g = testing::TinyNet(6);
  EXPECT_THROW(Calibrate(g, std::span<const Tensor>(), CalibrationMethod::MinMax()), Error);
  std::vector<float> values(192, 0.5f);
  values[7] = std::numeric_limits<float>::infinity();
  const Tensor bad = Tensor::FromFloats({1, 8, 8, 3}, values);
  try {
    Calibrate(g, std::span<const Tensor>(&bad, 1), CalibrationMethod::MinMax());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
  const Graph half = LowerFp16(g, PrecisionPolicy::Default(DType::kFP16));
  EXPECT_THROW(Calibrator(half, CalibrationMethod::MinMax()), Error);
}

TEST(CalibrateTest, DatasetFormMatchesBatchForm) {
  const Graph g = testing::TinyNet(7);
  const Dataset data(testing::RandomSamples(7, 5, 8));
  const std::vector<size_t> order = data.Order();
  const Tensor batch = data.Batch(order);
  const auto a = Calibrate(g, data, CalibrationMethod::MinMax(), 2);
  const auto b = Calibrate(g, std::span<const Tensor>(&batch, 1), CalibrationMethod::MinMax());
  EXPECT_EQ(a.entries(), b.entries());
}

TEST(CalibrationTableTest, JsonRoundTrip) {
  const Graph g = testing::TinyNet(8);
  Rng rng(8);
  const Tensor x = testing::RandomImage(rng, 8, 3);
  const CalibrationTable table = Calibrate(g, std::span<const Tensor>(&x, 1), CalibrationMethod::Percentile(99.0));
  const nlohmann::ordered_json json = table.ToJson();
  ASSERT_TRUE(json.is_array());
  const auto& first = json.at(0);
  for (const char* key : {"tensor_id", "min", "max", "scale", "zero_point", "kind"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
  const CalibrationTable back = CalibrationTable::FromJson(nlohmann::ordered_json::parse(json.dump()));
  EXPECT_EQ(back.entries(), table.entries());
  EXPECT_THROW(CalibrationTable::FromJson(nlohmann::ordered_json::parse(R"([{"tensor_id": 1}])")), Error);
  EXPECT_THROW(CalibrationTable::FromJson(nlohmann::ordered_json::parse("{}")), Error);
}

}  // namespace
}  // namespace mce
