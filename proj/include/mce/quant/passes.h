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

#ifndef MCE_QUANT_PASSES_H_
#define MCE_QUANT_PASSES_H_

#include <set>

#include "json.hpp"
#include "mce/ir/graph.h"
#include "mce/quant/calibration.h"

namespace mce {

// Structural roles that can be pinned to FP32 in a compressed graph.
enum class KeepRole { kGraphInputs, kGraphOutputs, kMean };

std::string_view KeepRoleName(KeepRole role);

class PrecisionPolicy {
 public:
  // Graph inputs and outputs are always kept in FP32, whatever `keep`
  // says. `target` must be FP16 or INT8.
  explicit PrecisionPolicy(DType target, std::set<KeepRole> keep = {KeepRole::kMean});

  // Default: inputs, outputs and the global Mean stay FP32.
  static PrecisionPolicy Default(DType target) { return PrecisionPolicy(target); }

  DType target() const { return target_; }
  bool Keeps(KeepRole role) const { return keep_.contains(role); }
  const std::set<KeepRole>& keep_fp32() const { return keep_; }

  // {"target": "fp16"|"int8", "keep_fp32": ["inputs", "outputs", "mean"]}
  nlohmann::ordered_json ToJson() const;
  static PrecisionPolicy FromJson(const nlohmann::ordered_json& json);

 private:
  DType target_;
  std::set<KeepRole> keep_;
};

// Relabels an original graph as the FP32 engine variant; weights and ops
// are unchanged.
Graph RetagFp32(const Graph& graph);

// Re-encodes hidden-layer weights as FP16 (round to nearest even, saturating
// at +/-65504), retags node dtypes per the policy and inserts casts.
Graph LowerFp16(const Graph& graph, const PrecisionPolicy& policy);

// Stores weights as symmetric per-tensor INT8, gives activations affine
// params from `table`, keeps the policy's FP32 roles and inserts casts.
// Throws Error(kMissingEntry) when the table lacks a tensor and
// Error(kScaleUnderflow) for a scale below kScaleEpsilon.
Graph QuantizeInt8(const Graph& graph, const CalibrationTable& table,
                   const PrecisionPolicy& policy);

// Adds a Cast on every edge whose producer dtype differs from the dtype
// its consumer computes in, and on every graph output that is not FP32.
// Casts to INT8 take the producer tensor's params from `table`. A cast
// feeding a consumer that wants the cast's own input dtype is bypassed, so
// no two adjacent casts cancel. Applying the pass twice equals applying it
// once; an FP32 graph is returned unchanged.
Graph InsertCasts(const Graph& graph, const PrecisionPolicy& policy,
                  const CalibrationTable* table = nullptr);

}  // namespace mce

#endif  // MCE_QUANT_PASSES_H_
