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

#ifndef MCE_EXEC_EXECUTOR_H_
#define MCE_EXEC_EXECUTOR_H_

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mce/exec/tensor.h"
#include "mce/ir/graph.h"

namespace mce {

struct ExecOptions {
  // Compare every node result against the node's recorded output spec
  // (batch dimension excluded).
  bool check_shapes = true;
  bool record_per_node_timing = false;
};

struct NodeTiming {
  NodeId id = 0;
  double seconds = 0.0;
};

struct RunResult {
  std::vector<Tensor> outputs;  // graph output order
  std::vector<NodeTiming> timings;
};

// Called with each graph input and each node result as it is produced.
using NodeObserver = std::function<void(NodeId, const Tensor&)>;

// Executes a graph node by node in TopoSort order.
//
// FP32 nodes run the FP32 kernels. FP16 nodes widen their inputs, compute in
// FP32 and round the result to FP16. INT8 Conv2D, DepthwiseConv2dNative and
// MatMul use integer accumulation; other INT8 nodes dequantize, compute in
// FP32 and requantize with the node's output params.
//
// An Executor owns scratch state and must not be shared between threads.
// Several executors may run concurrently over the same Graph, which must
// outlive them. Per-node timings are wall-clock and assume the calling
// thread is not shared with other timed work.
class Executor {
 public:
  explicit Executor(const Graph& graph, ExecOptions options = {});

  RunResult Run(const std::map<std::string, Tensor>& inputs,
                const NodeObserver& observer = {}) const;
  // Single-input shorthand.
  RunResult Run(const Tensor& input, const NodeObserver& observer = {}) const;

  const Graph& graph() const { return graph_; }

 private:
  Tensor Evaluate(const Node& node, const std::vector<const Tensor*>& args) const;

  const Graph& graph_;
  ExecOptions options_;
  std::vector<NodeId> order_;
  std::unordered_map<NodeId, Tensor> constants_;
  std::unordered_map<NodeId, int> uses_;
};

}  // namespace mce

#endif  // MCE_EXEC_EXECUTOR_H_
