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

#include "mce/quant/passes.h"

#include <cmath>
#include <cstring>
#include <map>
#include <unordered_map>

#include "mce/common/error.h"
#include "mce/common/half.h"
#include "mce/exec/tensor.h"
#include "mce/ir/validate.h"

namespace mce {

std::string_view KeepRoleName(KeepRole role) {
  switch (role) {
    case KeepRole::kGraphInputs: return "inputs";
    case KeepRole::kGraphOutputs: return "outputs";
    case KeepRole::kMean: return "mean";
  }
  return "?";
}

PrecisionPolicy::PrecisionPolicy(DType target, std::set<KeepRole> keep)
    : target_(target), keep_(std::move(keep)) {
  if (target != DType::kFP16 && target != DType::kINT8) {
    throw Error(ErrorCode::kInvalidArgument, "policy target must be fp16 or int8");
  }
  keep_.insert(KeepRole::kGraphInputs);
  keep_.insert(KeepRole::kGraphOutputs);
}

nlohmann::ordered_json PrecisionPolicy::ToJson() const {
  nlohmann::ordered_json json;
  json["target"] = std::string(DTypeName(target_));
  json["keep_fp32"] = nlohmann::ordered_json::array();
  for (KeepRole role : keep_) json["keep_fp32"].push_back(std::string(KeepRoleName(role)));
  return json;
}

PrecisionPolicy PrecisionPolicy::FromJson(const nlohmann::ordered_json& json) {
  try {
    const std::string target = json.at("target").get<std::string>();
    DType dtype;
    if (target == "fp16") dtype = DType::kFP16;
    else if (target == "int8") dtype = DType::kINT8;
    else throw Error(ErrorCode::kInvalidArgument, "policy target '" + target + "'");
    std::set<KeepRole> keep;
    if (json.contains("keep_fp32")) {
      for (const auto& item : json.at("keep_fp32")) {
        const std::string name = item.get<std::string>();
        bool found = false;
        for (KeepRole role : {KeepRole::kGraphInputs, KeepRole::kGraphOutputs, KeepRole::kMean}) {
          if (KeepRoleName(role) == name) {
            keep.insert(role);
            found = true;
          }
        }
        if (!found) throw Error(ErrorCode::kInvalidArgument, "unknown keep_fp32 role '" + name + "'");
      }
    }
    return PrecisionPolicy(dtype, std::move(keep));
  } catch (const nlohmann::ordered_json::exception& ex) {
    throw Error(ErrorCode::kInvalidArgument, std::string("policy: ") + ex.what());
  }
}

namespace {

void RequireFp32Source(const Graph& graph) {
  RequireValid(graph);
  if (graph.precision() != PrecisionTag::kOriginal && graph.precision() != PrecisionTag::kFP32) {
    throw Error(ErrorCode::kInvalidArgument, "source graph must be fp32, is " +
                                                 std::string(PrecisionTagName(graph.precision())));
  }
  for (const Node& n : graph.nodes()) {
    if (n.output.dtype != DType::kFP32) {
      throw Error(ErrorCode::kInvalidArgument,
                  "node " + std::to_string(n.id) + " is not fp32 in the source graph");
    }
  }
}

// Compute dtype for every node under the policy. A Const takes the target
// dtype only when every consumer computes in the target dtype.
std::unordered_map<NodeId, DType> AssignDTypes(const Graph& graph, const PrecisionPolicy& policy) {
  std::unordered_map<NodeId, DType> dtypes;
  for (const Node& n : graph.nodes()) {
    if (n.kind == OpKind::kConst) continue;
    const bool keep = n.kind == OpKind::kMean && policy.Keeps(KeepRole::kMean);
    dtypes[n.id] = keep ? DType::kFP32 : policy.target();
  }
  const auto consumers = graph.Consumers();
  for (const Node& n : graph.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    DType dtype = policy.target();
    auto it = consumers.find(n.id);
    if (it == consumers.end()) dtype = DType::kFP32;
    else {
      for (NodeId c : it->second) {
        if (dtypes.at(c) != policy.target()) dtype = DType::kFP32;
      }
    }
    dtypes[n.id] = dtype;
  }
  return dtypes;
}

std::vector<uint8_t> EncodeHalfPayload(const Node& n) {
  const std::vector<float> values = Tensor(n.output, n.payload).ToFloats();
  std::vector<uint8_t> payload(values.size() * sizeof(uint16_t));
  for (size_t i = 0; i < values.size(); ++i) {
    const uint16_t bits = FloatToHalf(values[i]);
    std::memcpy(payload.data() + i * sizeof(uint16_t), &bits, sizeof(bits));
  }
  return payload;
}

const QuantParams& CheckedParams(const CalibrationTable& table, NodeId id) {
  const CalibrationEntry& entry = table.At(id);
  if (!std::isfinite(entry.params.scale) || entry.params.scale < kScaleEpsilon) {
    throw Error(ErrorCode::kScaleUnderflow,
                "tensor " + std::to_string(id) + " has scale " + std::to_string(entry.params.scale));
  }
  return entry.params;
}

}  // namespace

Graph RetagFp32(const Graph& graph) {
  RequireFp32Source(graph);
  std::vector<Node> nodes(graph.nodes().begin(), graph.nodes().end());
  return Graph(graph.name(), PrecisionTag::kFP32, std::move(nodes),
               {graph.inputs().begin(), graph.inputs().end()},
               {graph.outputs().begin(), graph.outputs().end()});
}

Graph LowerFp16(const Graph& graph, const PrecisionPolicy& policy) {
  if (policy.target() != DType::kFP16) {
    throw Error(ErrorCode::kInvalidArgument, "LowerFp16 needs an fp16 policy");
  }
  RequireFp32Source(graph);
  const auto dtypes = AssignDTypes(graph, policy);
  std::vector<Node> nodes;
  for (const Node& source : graph.nodes()) {
    Node n = source;
    if (dtypes.at(n.id) == DType::kFP16) {
      if (n.kind == OpKind::kConst) n.payload = EncodeHalfPayload(source);
      n.output.dtype = DType::kFP16;
    }
    nodes.push_back(std::move(n));
  }
  Graph retagged(graph.name(), PrecisionTag::kFP16, std::move(nodes),
                 {graph.inputs().begin(), graph.inputs().end()},
                 {graph.outputs().begin(), graph.outputs().end()});
  return InsertCasts(retagged, policy);
}

Graph QuantizeInt8(const Graph& graph, const CalibrationTable& table,
                   const PrecisionPolicy& policy) {
  if (policy.target() != DType::kINT8) {
    throw Error(ErrorCode::kInvalidArgument, "QuantizeInt8 needs an int8 policy");
  }
  RequireFp32Source(graph);
  const auto dtypes = AssignDTypes(graph, policy);
  std::vector<Node> nodes;
  for (const Node& source : graph.nodes()) {
    Node n = source;
    if (dtypes.at(n.id) == DType::kINT8) {
      const QuantParams params = CheckedParams(table, n.id);
      if (n.kind == OpKind::kConst) {
        if (params.zero_point != 0) {
          throw Error(ErrorCode::kInvalidArgument,
                      "weight tensor " + std::to_string(n.id) + " must be symmetric (zero point 0)");
        }
        const std::vector<float> values = Tensor(source.output, source.payload).ToFloats();
        n.payload.resize(values.size());
        for (size_t i = 0; i < values.size(); ++i) {
          const int8_t q = static_cast<int8_t>(params.Quantize(values[i], -kWeightQMax, kWeightQMax));
          std::memcpy(&n.payload[i], &q, 1);
        }
      }
      n.output.dtype = DType::kINT8;
      n.output.quant = params;
    }
    nodes.push_back(std::move(n));
  }
  Graph retagged(graph.name(), PrecisionTag::kINT8, std::move(nodes),
                 {graph.inputs().begin(), graph.inputs().end()},
                 {graph.outputs().begin(), graph.outputs().end()});
  return InsertCasts(retagged, policy, &table);
}

Graph InsertCasts(const Graph& graph, const PrecisionPolicy& policy,
                  const CalibrationTable* table) {
  auto dtype_of = [&](NodeId id) -> DType {
    const TensorSpec* spec = graph.SpecOf(id);
    if (!spec) throw Error(ErrorCode::kInvalidGraph, "edge to missing tensor " + std::to_string(id));
    return spec->dtype;
  };

  std::vector<Node> nodes(graph.nodes().begin(), graph.nodes().end());
  std::map<std::pair<NodeId, DType>, NodeId> casts;
  std::vector<Node> added;
  NodeId next_id = graph.NextFreeId();

  auto cast_of = [&](NodeId src, DType target) -> NodeId {
    auto key = std::make_pair(src, target);
    if (auto it = casts.find(key); it != casts.end()) return it->second;
    Node cast;
    cast.id = next_id++;
    cast.kind = OpKind::kCast;
    cast.inputs = {src};
    cast.attrs.cast_to = target;
    cast.output = TensorSpec{graph.SpecOf(src)->shape, target, std::nullopt};
    if (target == DType::kINT8) {
      if (!table) {
        throw Error(ErrorCode::kMissingEntry, "int8 cast of tensor " + std::to_string(src) +
                                                  " needs a calibration table");
      }
      cast.output.quant = CheckedParams(*table, src);
    }
    casts.emplace(key, cast.id);
    added.push_back(cast);
    return cast.id;
  };

  // Skips cast pairs that return a tensor to its own dtype.
  auto collapse = [&](NodeId src) {
    for (;;) {
      const Node* outer = graph.FindNode(src);
      if (!outer || outer->kind != OpKind::kCast) return src;
      const Node* inner = graph.FindNode(outer->inputs[0]);
      if (!inner || inner->kind != OpKind::kCast || dtype_of(inner->inputs[0]) != dtype_of(src)) return src;
      src = inner->inputs[0];
    }
  };

  for (Node& n : nodes) {
    if (n.kind == OpKind::kCast || n.kind == OpKind::kConst) continue;
    const DType wanted = n.output.dtype;
    for (NodeId& src : n.inputs) {
      src = collapse(src);
      if (dtype_of(src) == wanted) continue;
      const Node* producer = graph.FindNode(src);
      if (producer && producer->kind == OpKind::kCast &&
          dtype_of(producer->inputs[0]) == wanted) {
        src = producer->inputs[0];
        continue;
      }
      src = cast_of(src, wanted);
    }
  }

  std::vector<NodeId> outputs(graph.outputs().begin(), graph.outputs().end());
  for (NodeId& out : outputs) out = collapse(out);
  if (policy.Keeps(KeepRole::kGraphOutputs)) {
    for (NodeId& out : outputs) {
      if (dtype_of(out) != DType::kFP32) out = cast_of(out, DType::kFP32);
    }
  }

  nodes.insert(nodes.end(), added.begin(), added.end());

  // Drop casts orphaned by the bypasses above, including whole chains.
  for (size_t before = 0; before != nodes.size();) {
    before = nodes.size();
    std::unordered_map<NodeId, int> uses;
    for (const Node& n : nodes) {
      for (NodeId src : n.inputs) ++uses[src];
    }
    for (NodeId out : outputs) ++uses[out];
    std::erase_if(nodes, [&](const Node& n) { return n.kind == OpKind::kCast && uses[n.id] == 0; });
  }

  return Graph(graph.name(), graph.precision(), std::move(nodes),
               {graph.inputs().begin(), graph.inputs().end()}, std::move(outputs));
}

}  // namespace mce
