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

#ifndef MCE_QUANT_CALIBRATION_H_
#define MCE_QUANT_CALIBRATION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mce/exec/dataset.h"
#include "mce/exec/executor.h"
#include "mce/exec/tensor.h"
#include "mce/ir/graph.h"

namespace mce {

// Floor for degenerate (all-constant) ranges.
inline constexpr double kScaleEpsilon = 1e-12;

struct CalibrationMethod {
  enum class Kind { kMinMax, kPercentile };
  Kind kind = Kind::kMinMax;
  double percentile = 99.99;  // kPercentile only, in (0, 100]

  static CalibrationMethod MinMax() { return {}; }
  static CalibrationMethod Percentile(double p) { return {Kind::kPercentile, p}; }

  // "minmax" or "percentile(99.9)"; Parse also accepts "percentile:99.9".
  std::string Tag() const;
  static CalibrationMethod Parse(std::string_view tag);
};

// Symmetric narrow-range mapping: scale = max(|min|, |max|) / 127, zp = 0.
QuantParams SymmetricParams(double min, double max);
// Affine mapping of [min(min, 0), max(max, 0)] onto [-128, 127].
QuantParams AffineParams(double min, double max);

// Streaming range statistics for one tensor. Memory is constant: running
// min/max plus a 2048-bin histogram of |x| over [0, range]. When a value
// exceeds the range, the range doubles and adjacent bins merge pairwise,
// so merging observers and re-binning are both deterministic.
class RangeObserver {
 public:
  static constexpr int kBins = 2048;

  RangeObserver() : bins_(kBins, 0) {}

  // Throws Error(kNonFinite) on NaN or infinity.
  void Observe(std::span<const float> values);
  void Merge(const RangeObserver& other);

  int64_t count() const { return count_; }
  double min() const { return min_; }
  double max() const { return max_; }

  // Magnitude below which `percentile` percent of observed values fall,
  // resolved to the histogram's upper bin edge and capped at max |x|.
  double MagnitudePercentile(double percentile) const;

  // Clipping range the method selects.
  std::pair<double, double> Range(const CalibrationMethod& method) const;

 private:
  void GrowTo(double magnitude);

  double min_ = 0.0;
  double max_ = 0.0;
  double range_ = 0.0;
  int64_t count_ = 0;
  std::vector<int64_t> bins_;
};

enum class TensorKind { kActivation, kWeight };

struct CalibrationEntry {
  NodeId tensor_id = 0;
  double min = 0.0;
  double max = 0.0;
  QuantParams params;
  TensorKind kind = TensorKind::kActivation;

  bool operator==(const CalibrationEntry&) const = default;
};

class CalibrationTable {
 public:
  CalibrationMethod method;

  void Set(CalibrationEntry entry);
  const CalibrationEntry* Find(NodeId id) const;
  // Throws Error(kMissingEntry).
  const CalibrationEntry& At(NodeId id) const;
  const std::map<NodeId, CalibrationEntry>& entries() const { return entries_; }

  // Array of {tensor_id, min, max, scale, zero_point, kind}.
  nlohmann::ordered_json ToJson() const;
  static CalibrationTable FromJson(const nlohmann::ordered_json& json);

 private:
  std::map<NodeId, CalibrationEntry> entries_;
};

// Streams calibration batches through the FP32 graph, keeping one
// RangeObserver per graph input and node output.
class Calibrator {
 public:
  Calibrator(const Graph& graph, CalibrationMethod method);

  void Observe(const Tensor& batch);
  CalibrationTable Finish() const;

 private:
  const Graph& graph_;
  CalibrationMethod method_;
  Executor executor_;
  std::unordered_map<NodeId, RangeObserver> observers_;
  int64_t batches_ = 0;
};

// Runs the FP32 graph over every batch, observing every graph input and node
// output. Activation entries get affine params from the method's range;
// Const weights get exact symmetric params.
CalibrationTable Calibrate(const Graph& graph, std::span<const Tensor> batches,
                           const CalibrationMethod& method);
CalibrationTable Calibrate(const Graph& graph, const Dataset& data,
                           const CalibrationMethod& method, int batch_size = 32);

}  // namespace mce

#endif  // MCE_QUANT_CALIBRATION_H_
