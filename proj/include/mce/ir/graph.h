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

#ifndef MCE_IR_GRAPH_H_
#define MCE_IR_GRAPH_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mce/ir/types.h"

namespace mce {

using NodeId = uint32_t;

struct Node {
  NodeId id = 0;
  OpKind kind = OpKind::kConst;
  std::vector<NodeId> inputs;
  NodeAttrs attrs;
  // Output tensor. For activations dim 0 is the batch and is recorded as 1;
  // the executor accepts any batch size at run time.
  TensorSpec output;
  // Raw little-endian elements of `output`; Const only.
  std::vector<uint8_t> payload;

  bool operator==(const Node&) const = default;
};

// Graph inputs are external tensors, not nodes. Their ids share the node id
// space so edges can reference them.
struct GraphInput {
  NodeId id = 0;
  std::string name;
  TensorSpec spec;

  bool operator==(const GraphInput&) const = default;
};

// Immutable computation graph. Construction does not validate; call
// Validate() before executing or serializing an untrusted graph.
class Graph {
 public:
  Graph() = default;
  Graph(std::string name, PrecisionTag precision, std::vector<Node> nodes,
        std::vector<GraphInput> inputs, std::vector<NodeId> outputs);

  const std::string& name() const { return name_; }
  PrecisionTag precision() const { return precision_; }
  // Sorted by ascending id.
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const GraphInput> inputs() const { return inputs_; }
  std::span<const NodeId> outputs() const { return outputs_; }

  size_t node_count() const { return nodes_.size(); }

  // nullptr when `id` is not a node.
  const Node* FindNode(NodeId id) const;
  const GraphInput* FindInput(NodeId id) const;
  // Throws Error(kNotFound) when absent.
  const Node& node(NodeId id) const;
  // Spec of a node output or a graph input; nullptr when neither.
  const TensorSpec* SpecOf(NodeId id) const;

  // Consumers of each id, in ascending consumer order (one entry per edge).
  std::unordered_map<NodeId, std::vector<NodeId>> Consumers() const;

  // Largest id in use across nodes and inputs, plus one.
  NodeId NextFreeId() const;

  bool operator==(const Graph& other) const;

 private:
  std::string name_;
  PrecisionTag precision_ = PrecisionTag::kOriginal;
  std::vector<Node> nodes_;
  std::vector<GraphInput> inputs_;
  std::vector<NodeId> outputs_;
  std::unordered_map<NodeId, size_t> index_;
};

// Mutable staging area; ids are handed out sequentially.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name, PrecisionTag precision = PrecisionTag::kOriginal)
      : name_(std::move(name)), precision_(precision) {}

  NodeId AddInput(std::string name, TensorSpec spec);
  NodeId AddConst(TensorSpec spec, std::vector<uint8_t> payload);
  NodeId AddConstFloats(std::vector<int64_t> shape, std::span<const float> values);
  NodeId AddOp(OpKind kind, std::vector<NodeId> inputs, TensorSpec output, NodeAttrs attrs = {});
  // Inserts a fully formed node, keeping its id.
  void AddNode(Node node);
  void SetOutputs(std::vector<NodeId> outputs) { outputs_ = std::move(outputs); }

  const TensorSpec& SpecOf(NodeId id) const;

  Graph Build() &&;

 private:
  std::string name_;
  PrecisionTag precision_;
  std::vector<Node> nodes_;
  std::vector<GraphInput> inputs_;
  std::vector<NodeId> outputs_;
  std::map<NodeId, TensorSpec> specs_;
  NodeId next_id_ = 0;
};

// Count of nodes per kind; every kind appears, possibly with zero.
std::map<OpKind, int64_t> OpHistogram(const Graph& graph);

}  // namespace mce

#endif  // MCE_IR_GRAPH_H_
