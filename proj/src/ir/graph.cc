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

#include "mce/ir/graph.h"

#include <algorithm>
#include <cstring>

#include "mce/common/error.h"

namespace mce {

Graph::Graph(std::string name, PrecisionTag precision, std::vector<Node> nodes,
             std::vector<GraphInput> inputs, std::vector<NodeId> outputs)
    : name_(std::move(name)),
      precision_(precision),
      nodes_(std::move(nodes)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)) {
  std::stable_sort(nodes_.begin(), nodes_.end(),
                   [](const Node& a, const Node& b) { return a.id < b.id; });
  index_.reserve(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].id, i);
}

const Node* Graph::FindNode(NodeId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const GraphInput* Graph::FindInput(NodeId id) const {
  for (const auto& in : inputs_) {
    if (in.id == id) return &in;
  }
  return nullptr;
}

const Node& Graph::node(NodeId id) const {
  const Node* n = FindNode(id);
  if (!n) throw Error(ErrorCode::kNotFound, "no node with id " + std::to_string(id));
  return *n;
}

const TensorSpec* Graph::SpecOf(NodeId id) const {
  if (const Node* n = FindNode(id)) return &n->output;
  if (const GraphInput* in = FindInput(id)) return &in->spec;
  return nullptr;
}

std::unordered_map<NodeId, std::vector<NodeId>> Graph::Consumers() const {
  std::unordered_map<NodeId, std::vector<NodeId>> consumers;
  for (const Node& n : nodes_) {
    for (NodeId src : n.inputs) consumers[src].push_back(n.id);
  }
  return consumers;
}

NodeId Graph::NextFreeId() const {
  NodeId next = 0;
  for (const Node& n : nodes_) next = std::max(next, n.id + 1);
  for (const GraphInput& in : inputs_) next = std::max(next, in.id + 1);
  return next;
}

bool Graph::operator==(const Graph& other) const {
  return name_ == other.name_ && precision_ == other.precision_ && nodes_ == other.nodes_ &&
         inputs_ == other.inputs_ && outputs_ == other.outputs_;
}

NodeId GraphBuilder::AddInput(std::string name, TensorSpec spec) {
  const NodeId id = next_id_++;
  specs_[id] = spec;
  inputs_.push_back({id, std::move(name), std::move(spec)});
  return id;
}

NodeId GraphBuilder::AddConst(TensorSpec spec, std::vector<uint8_t> payload) {
  Node n;
  n.id = next_id_++;
  n.kind = OpKind::kConst;
  n.output = std::move(spec);
  n.payload = std::move(payload);
  specs_[n.id] = n.output;
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

NodeId GraphBuilder::AddConstFloats(std::vector<int64_t> shape, std::span<const float> values) {
  std::vector<uint8_t> payload(values.size() * sizeof(float));
  std::memcpy(payload.data(), values.data(), payload.size());
  return AddConst(TensorSpec{std::move(shape), DType::kFP32, std::nullopt}, std::move(payload));
}

NodeId GraphBuilder::AddOp(OpKind kind, std::vector<NodeId> inputs, TensorSpec output,
                           NodeAttrs attrs) {
  Node n;
  n.id = next_id_++;
  n.kind = kind;
  n.inputs = std::move(inputs);
  n.attrs = std::move(attrs);
  n.output = std::move(output);
  specs_[n.id] = n.output;
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

void GraphBuilder::AddNode(Node node) {
  next_id_ = std::max(next_id_, node.id + 1);
  specs_[node.id] = node.output;
  nodes_.push_back(std::move(node));
}

const TensorSpec& GraphBuilder::SpecOf(NodeId id) const {
  auto it = specs_.find(id);
  if (it == specs_.end()) throw Error(ErrorCode::kNotFound, "no tensor " + std::to_string(id));
  return it->second;
}

Graph GraphBuilder::Build() && {
  return Graph(std::move(name_), precision_, std::move(nodes_), std::move(inputs_),
               std::move(outputs_));
}

std::map<OpKind, int64_t> OpHistogram(const Graph& graph) {
  std::map<OpKind, int64_t> histogram;
  for (OpKind kind : kAllOpKinds) histogram[kind] = 0;
  for (const Node& n : graph.nodes()) ++histogram[n.kind];
  return histogram;
}

}  // namespace mce
