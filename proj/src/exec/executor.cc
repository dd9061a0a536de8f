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

#include "mce/exec/executor.h"

#include <chrono>

#include "mce/common/error.h"
#include "mce/exec/kernels.h"
#include "mce/ir/validate.h"

namespace mce {
namespace {

bool SameIgnoringBatch(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 1; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::string NodeLabel(const Node& node) {
  return std::string(OpKindName(node.kind)) + " node " + std::to_string(node.id);
}

}  // namespace

Executor::Executor(const Graph& graph, ExecOptions options)
    : graph_(graph), options_(options) {
  RequireValid(graph_);
  order_ = TopoSort(graph_);
  for (const Node& n : graph_.nodes()) {
    for (NodeId src : n.inputs) ++uses_[src];
    if (n.kind == OpKind::kConst) constants_.emplace(n.id, Tensor(n.output, n.payload));
  }
  for (NodeId out : graph_.outputs()) ++uses_[out];
}

RunResult Executor::Run(const Tensor& input, const NodeObserver& observer) const {
  if (graph_.inputs().size() != 1) {
    throw Error(ErrorCode::kMissingInput, "graph has " + std::to_string(graph_.inputs().size()) +
                                              " inputs; pass them by name");
  }
  return Run({{graph_.inputs()[0].name, input}}, observer);
}

RunResult Executor::Run(const std::map<std::string, Tensor>& inputs,
                        const NodeObserver& observer) const {
  std::unordered_map<NodeId, Tensor> values;
  std::unordered_map<NodeId, int> remaining = uses_;

  for (const GraphInput& in : graph_.inputs()) {
    auto it = inputs.find(in.name);
    if (it == inputs.end()) throw Error(ErrorCode::kMissingInput, "input '" + in.name + "'");
    const Tensor& t = it->second;
    if (t.dtype() != in.spec.dtype || !SameIgnoringBatch(t.shape(), in.spec.shape)) {
      throw Error(ErrorCode::kShapeMismatch,
                  "input '" + in.name + "' is " + ShapeString(t.shape()) + " " +
                      std::string(DTypeName(t.dtype())) + ", graph expects " +
                      ShapeString(in.spec.shape) + " " + std::string(DTypeName(in.spec.dtype)));
    }
    if (observer) observer(in.id, t);
    values.emplace(in.id, t);
  }

  RunResult result;
  std::vector<const Tensor*> args;
  for (NodeId id : order_) {
    const Node& node = graph_.node(id);
    if (node.kind == OpKind::kConst) continue;

    args.clear();
    for (NodeId src : node.inputs) {
      if (auto c = constants_.find(src); c != constants_.end()) {
        args.push_back(&c->second);
      } else {
        args.push_back(&values.at(src));
      }
    }

    const auto start = std::chrono::steady_clock::now();
    Tensor out;
    try {
      out = Evaluate(node, args);
    } catch (const Error& e) {
      throw Error(e.code(), NodeLabel(node) + ": " + e.what());
    }
    if (options_.record_per_node_timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      result.timings.push_back({id, elapsed.count()});
    }

    if (options_.check_shapes &&
        (out.dtype() != node.output.dtype || !SameIgnoringBatch(out.shape(), node.output.shape))) {
      throw Error(ErrorCode::kShapeMismatch,
                  NodeLabel(node) + " produced " + ShapeString(out.shape()) + " " +
                      std::string(DTypeName(out.dtype())) + ", spec says " +
                      ShapeString(node.output.shape) + " " +
                      std::string(DTypeName(node.output.dtype)));
    }
    if (observer) observer(id, out);
    values.emplace(id, std::move(out));

    for (NodeId src : node.inputs) {
      if (--remaining[src] == 0) values.erase(src);
    }
  }

  for (NodeId out : graph_.outputs()) {
    if (auto c = constants_.find(out); c != constants_.end()) {
      result.outputs.push_back(c->second);
    } else {
      result.outputs.push_back(values.at(out));
    }
  }
  return result;
}

Tensor Executor::Evaluate(const Node& node, const std::vector<const Tensor*>& args) const {
  if (node.kind == OpKind::kCast) return Cast(*args[0], node.attrs.cast_to, node.output.quant);

  const DType dtype = node.output.dtype;
  for (const Tensor* arg : args) {
    if (arg->dtype() != dtype) {
      throw Error(ErrorCode::kInvalidGraph,
                  "operand is " + std::string(DTypeName(arg->dtype())) + " but node computes in " +
                      std::string(DTypeName(dtype)) + " (missing Cast)");
    }
  }

  const ConvParams conv{node.attrs.strides, node.attrs.padding};
  if (dtype == DType::kINT8) {
    switch (node.kind) {
      case OpKind::kConv2D: return Conv2DInt8(*args[0], *args[1], conv, *node.output.quant);
      case OpKind::kDepthwiseConv2dNative:
        return DepthwiseConv2DInt8(*args[0], *args[1], conv, *node.output.quant);
      case OpKind::kMatMul: return MatMulInt8(*args[0], *args[1], *node.output.quant);
      default: break;
    }
  }

  // Everything else is computed in FP32 and re-encoded to the node dtype.
  std::vector<Tensor> storage;
  storage.reserve(args.size());
  std::vector<const Tensor*> x;
  for (const Tensor* arg : args) {
    if (arg->dtype() == DType::kFP32) {
      x.push_back(arg);
    } else {
      storage.push_back(Cast(*arg, DType::kFP32, std::nullopt));
      x.push_back(&storage.back());
    }
  }

  Tensor result;
  switch (node.kind) {
    case OpKind::kConv2D: result = Conv2D(*x[0], *x[1], conv); break;
    case OpKind::kDepthwiseConv2dNative: result = DepthwiseConv2D(*x[0], *x[1], conv); break;
    case OpKind::kMatMul: result = MatMul(*x[0], *x[1]); break;
    case OpKind::kRelu6: result = Relu6(*x[0]); break;
    case OpKind::kPad: result = Pad(*x[0], node.attrs.pads); break;
    case OpKind::kMean:
      if (node.attrs.axes != std::vector<int32_t>{1, 2}) {
        throw Error(ErrorCode::kInvalidArgument, "Mean supports axes {1, 2} only");
      }
      result = GlobalMean(*x[0]);
      break;
    case OpKind::kMul:
    case OpKind::kAddV2: result = Elementwise(node.kind, *x[0], *x[1]); break;
    case OpKind::kConst:
    case OpKind::kCast: throw Error(ErrorCode::kInvalidGraph, "unexpected node kind");
  }
  if (dtype == DType::kFP32) return result;
  TensorSpec spec{result.shape(), dtype, node.output.quant};
  return EncodeFloats(std::move(spec), result.data<float>());
}

}  // namespace mce
