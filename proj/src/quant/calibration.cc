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

#include "mce/quant/calibration.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mce/common/csv.h"
#include "mce/common/error.h"
#include "mce/exec/executor.h"

namespace mce {

std::string CalibrationMethod::Tag() const {
  if (kind == Kind::kMinMax) return "minmax";
  return "percentile(" + FormatDouble(percentile) + ")";
}

CalibrationMethod CalibrationMethod::Parse(std::string_view tag) {
  if (tag == "minmax") return MinMax();
  for (std::string_view prefix : {"percentile(", "percentile:"}) {
    if (tag.substr(0, prefix.size()) != prefix) continue;
    std::string_view rest = tag.substr(prefix.size());
    if (prefix.back() == '(') {
      if (rest.empty() || rest.back() != ')') break;
      rest.remove_suffix(1);
    }
    const double p = ParseDouble(rest);
    if (!(p > 0.0 && p <= 100.0)) {
      throw Error(ErrorCode::kInvalidArgument, "percentile must be in (0, 100]");
    }
    return Percentile(p);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown calibration method '" + std::string(tag) + "'");
}

QuantParams SymmetricParams(double min, double max) {
  const double magnitude = std::max(std::abs(min), std::abs(max));
  return {std::max(magnitude / kWeightQMax, kScaleEpsilon), 0};
}

QuantParams AffineParams(double min, double max) {
  const double lo = std::min(min, 0.0);
  const double hi = std::max(max, 0.0);
  if (!(hi - lo > 0.0)) return {kScaleEpsilon, 0};
  const double scale = std::max((hi - lo) / (kInt8Max - kInt8Min), kScaleEpsilon);
  const double zp = std::nearbyint(kInt8Min - lo / scale);
  return {scale, static_cast<int32_t>(std::clamp(zp, double{kInt8Min}, double{kInt8Max}))};
}

void RangeObserver::GrowTo(double magnitude) {
  if (range_ == 0.0) {
    range_ = magnitude;
    return;
  }
  while (range_ < magnitude) {
    for (int i = 0; i < kBins / 2; ++i) bins_[i] = bins_[2 * i] + bins_[2 * i + 1];
    std::fill(bins_.begin() + kBins / 2, bins_.end(), 0);
    range_ *= 2.0;
  }
}

void RangeObserver::Observe(std::span<const float> values) {
  if (values.empty()) return;
  double batch_min = values[0], batch_max = values[0], batch_mag = 0.0;
  for (float v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite activation");
    batch_min = std::min<double>(batch_min, v);
    batch_max = std::max<double>(batch_max, v);
    batch_mag = std::max<double>(batch_mag, std::abs(v));
  }
  min_ = count_ == 0 ? batch_min : std::min(min_, batch_min);
  max_ = count_ == 0 ? batch_max : std::max(max_, batch_max);
  if (batch_mag > range_) GrowTo(batch_mag);
  for (float v : values) {
    int bin = 0;
    if (range_ > 0.0) {
      bin = static_cast<int>(std::abs(v) / range_ * kBins);
      bin = std::min(bin, kBins - 1);
    }
    ++bins_[bin];
  }
  count_ += static_cast<int64_t>(values.size());
}

void RangeObserver::Merge(const RangeObserver& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
  // Bring both histograms to the wider range, then add bin-wise.
  RangeObserver incoming = other;
  const double target = std::max(range_, incoming.range_);
  if (range_ < target) GrowTo(target);
  if (incoming.range_ < target) incoming.GrowTo(target);
  if (range_ == incoming.range_) {
    for (int i = 0; i < kBins; ++i) bins_[i] += incoming.bins_[i];
  } else {
    // Ranges that are not power-of-two multiples of each other: re-bin the
    // incoming counts by bin centre.
    for (int i = 0; i < kBins; ++i) {
      if (incoming.bins_[i] == 0) continue;
      const double centre = (i + 0.5) * incoming.range_ / kBins;
      const int bin = std::min(static_cast<int>(centre / range_ * kBins), kBins - 1);
      bins_[bin] += incoming.bins_[i];
    }
  }
  count_ += other.count_;
}

double RangeObserver::MagnitudePercentile(double percentile) const {
  if (count_ == 0) throw Error(ErrorCode::kInvalidArgument, "no observations");
  const double max_magnitude = std::max(std::abs(min_), std::abs(max_));
  const double target = std::ceil(percentile / 100.0 * static_cast<double>(count_));
  int64_t cumulative = 0;
  for (int i = 0; i < kBins; ++i) {
    cumulative += bins_[i];
    if (static_cast<double>(cumulative) >= target) {
      return std::min((i + 1) * range_ / kBins, max_magnitude);
    }
  }
  return max_magnitude;
}

std::pair<double, double> RangeObserver::Range(const CalibrationMethod& method) const {
  if (method.kind == CalibrationMethod::Kind::kMinMax) return {min_, max_};
  const double limit = MagnitudePercentile(method.percentile);
  return {std::max(min_, -limit), std::min(max_, limit)};
}

void CalibrationTable::Set(CalibrationEntry entry) { entries_[entry.tensor_id] = entry; }

const CalibrationEntry* CalibrationTable::Find(NodeId id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

const CalibrationEntry& CalibrationTable::At(NodeId id) const {
  const CalibrationEntry* e = Find(id);
  if (!e) throw Error(ErrorCode::kMissingEntry, "no calibration entry for tensor " + std::to_string(id));
  return *e;
}

nlohmann::ordered_json CalibrationTable::ToJson() const {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& [id, e] : entries_) {
    nlohmann::ordered_json item;
    item["tensor_id"] = id;
    item["min"] = e.min;
    item["max"] = e.max;
    item["scale"] = e.params.scale;
    item["zero_point"] = e.params.zero_point;
    item["kind"] = e.kind == TensorKind::kWeight ? "weight" : "activation";
    array.push_back(std::move(item));
  }
  return array;
}

CalibrationTable CalibrationTable::FromJson(const nlohmann::ordered_json& json) {
  if (!json.is_array()) throw Error(ErrorCode::kInvalidArgument, "calibration table must be an array");
  CalibrationTable table;
  try {
    for (const auto& item : json) {
      CalibrationEntry e;
      e.tensor_id = item.at("tensor_id").get<NodeId>();
      e.min = item.at("min").get<double>();
      e.max = item.at("max").get<double>();
      e.params.scale = item.at("scale").get<double>();
      e.params.zero_point = item.at("zero_point").get<int32_t>();
      const std::string kind = item.at("kind").get<std::string>();
      if (kind != "weight" && kind != "activation") {
        throw Error(ErrorCode::kInvalidArgument, "unknown entry kind '" + kind + "'");
      }
      e.kind = kind == "weight" ? TensorKind::kWeight : TensorKind::kActivation;
      table.Set(e);
    }
  } catch (const nlohmann::ordered_json::exception& ex) {
    throw Error(ErrorCode::kInvalidArgument, std::string("calibration table: ") + ex.what());
  }
  return table;
}

Calibrator::Calibrator(const Graph& graph, CalibrationMethod method)
    : graph_(graph), method_(method), executor_(graph) {
  if (graph.precision() != PrecisionTag::kOriginal && graph.precision() != PrecisionTag::kFP32) {
    throw Error(ErrorCode::kInvalidArgument, "calibration needs an fp32 graph");
  }
}

void Calibrator::Observe(const Tensor& batch) {
  executor_.Run(batch, [&](NodeId id, const Tensor& value) {
    if (value.dtype() != DType::kFP32) {
      throw Error(ErrorCode::kInvalidArgument, "calibration needs an fp32 graph");
    }
    try {
      observers_[id].Observe(value.data<float>());
    } catch (const Error& e) {
      throw Error(e.code(), "tensor " + std::to_string(id) + ": " + e.what());
    }
  });
  ++batches_;
}

CalibrationTable Calibrator::Finish() const {
  if (batches_ == 0) throw Error(ErrorCode::kInvalidArgument, "empty calibration set");
  CalibrationTable table;
  table.method = method_;
  for (const auto& [id, observer] : observers_) {
    const auto [lo, hi] = observer.Range(method_);
    table.Set({id, lo, hi, AffineParams(lo, hi), TensorKind::kActivation});
  }
  for (const Node& n : graph_.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    const std::vector<float> values = Tensor(n.output, n.payload).ToFloats();
    RangeObserver weights;
    weights.Observe(values);
    table.Set({n.id, weights.min(), weights.max(), SymmetricParams(weights.min(), weights.max()),
               TensorKind::kWeight});
  }
  return table;
}

CalibrationTable Calibrate(const Graph& graph, std::span<const Tensor> batches,
                           const CalibrationMethod& method) {
  if (batches.empty()) throw Error(ErrorCode::kInvalidArgument, "empty calibration set");
  Calibrator calibrator(graph, method);
  for (const Tensor& batch : batches) calibrator.Observe(batch);
  return calibrator.Finish();
}

CalibrationTable Calibrate(const Graph& graph, const Dataset& data,
                           const CalibrationMethod& method, int batch_size) {
  if (data.empty()) throw Error(ErrorCode::kInvalidArgument, "empty calibration set");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  Calibrator calibrator(graph, method);
  const std::vector<size_t> order = data.Order();
  for (size_t start = 0; start < order.size(); start += static_cast<size_t>(batch_size)) {
    const size_t end = std::min(order.size(), start + static_cast<size_t>(batch_size));
    calibrator.Observe(data.Batch(std::span(order).subspan(start, end - start)));
  }
  return calibrator.Finish();
}

}  // namespace mce
