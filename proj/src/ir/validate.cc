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

#include "mce/ir/validate.h"

#include <functional>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mce/common/error.h"

namespace mce {

bool ValidationReport::Has(std::string_view rule) const {
  for (const auto& v : violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

std::string ValidationReport::Summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.rule;
    if (v.node) out += " @" + std::to_string(*v.node);
    out += ": " + v.message;
  }
  return out;
}

namespace {

void CheckSpec(const TensorSpec& spec, std::optional<NodeId> id, ValidationReport& report) {
  auto add = [&](std::string msg) { report.violations.push_back({id, "spec", std::move(msg)}); };
  if (spec.shape.size() > 4) add("rank " + std::to_string(spec.shape.size()) + " exceeds 4");
  for (int64_t d : spec.shape) {
    if (d < 1) add("non-positive dim in " + ShapeString(spec.shape));
  }
  const bool is_int8 = spec.dtype == DType::kINT8;
  if (is_int8 != spec.quant.has_value()) {
    add(is_int8 ? "int8 tensor without quant params" : "quant params on non-int8 tensor");
  }
  if (spec.quant && !(spec.quant->scale > 0.0)) add("quant scale must be positive");
  if (spec.quant && (spec.quant->zero_point < kInt8Min || spec.quant->zero_point > kInt8Max)) {
    add("zero point outside int8 range");
  }
}

}  // namespace

ValidationReport Validate(const Graph& graph) {
  ValidationReport report;
  auto add = [&](std::optional<NodeId> id, std::string rule, std::string msg) {
    report.violations.push_back({id, std::move(rule), std::move(msg)});
  };

  std::unordered_set<NodeId> seen;
  for (const GraphInput& in : graph.inputs()) {
    if (!seen.insert(in.id).second) add(in.id, "duplicate-id", "input id reused");
    CheckSpec(in.spec, in.id, report);
  }
  for (const Node& n : graph.nodes()) {
    if (!seen.insert(n.id).second) add(n.id, "duplicate-id", "id used more than once");
  }

  for (const Node& n : graph.nodes()) {
    const int arity = Arity(n.kind);
    if (static_cast<int>(n.inputs.size()) != arity) {
      add(n.id, "arity",
          std::string(OpKindName(n.kind)) + " expects " + std::to_string(arity) +
              " inputs, has " + std::to_string(n.inputs.size()));
    }
    if (n.kind == OpKind::kConst) {
      if (n.payload.empty()) add(n.id, "payload", "Const without payload");
      else if (n.payload.size() != n.output.ByteSize()) {
        add(n.id, "payload", "payload size " + std::to_string(n.payload.size()) +
                                 " does not match spec size " +
                                 std::to_string(n.output.ByteSize()));
      }
    } else if (!n.payload.empty()) {
      add(n.id, "payload", std::string(OpKindName(n.kind)) + " carries a payload");
    }
    for (NodeId src : n.inputs) {
      if (!seen.contains(src)) {
        add(n.id, "dangling-input", "input " + std::to_string(src) + " does not exist");
      }
    }
    CheckSpec(n.output, n.id, report);
  }

  for (NodeId out : graph.outputs()) {
    if (!seen.contains(out)) add(out, "dangling-output", "output id does not exist");
  }

  // Cycle detection by iterative three-colour DFS over input edges.
  std::unordered_map<NodeId, int> colour;
  bool has_cycle = false;
  for (const Node& root : graph.nodes()) {
    if (colour[root.id] != 0) continue;
    std::vector<std::pair<NodeId, size_t>> stack{{root.id, 0}};
    colour[root.id] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const Node* n = graph.FindNode(id);
      if (!n || next >= n->inputs.size()) {
        colour[id] = 2;
        stack.pop_back();
        continue;
      }
      const NodeId src = n->inputs[next++];
      if (!graph.FindNode(src)) continue;
      if (colour[src] == 1) {
        if (!has_cycle) add(src, "cycle", "node participates in a cycle");
        has_cycle = true;
      } else if (colour[src] == 0) {
        colour[src] = 1;
        stack.emplace_back(src, 0);
      }
    }
  }

  // Forward reachability from graph inputs; Const nodes are exempt.
  std::unordered_set<NodeId> reachable;
  {
    auto consumers = graph.Consumers();
    std::vector<NodeId> frontier;
    for (const GraphInput& in : graph.inputs()) frontier.push_back(in.id);
    while (!frontier.empty()) {
      NodeId id = frontier.back();
      frontier.pop_back();
      if (!reachable.insert(id).second) continue;
      if (auto it = consumers.find(id); it != consumers.end()) {
        for (NodeId c : it->second) frontier.push_back(c);
      }
    }
  }
  for (const Node& n : graph.nodes()) {
    if (n.kind != OpKind::kConst && !reachable.contains(n.id)) {
      add(n.id, "unreachable", "not reachable from any graph input");
    }
  }

  report.ok = report.violations.empty();
  return report;
}

std::vector<NodeId> TopoSort(const Graph& graph) {
  std::unordered_map<NodeId, size_t> pending;
  std::unordered_map<NodeId, std::vector<NodeId>> consumers;
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;

  for (const Node& n : graph.nodes()) {
    size_t count = 0;
    for (NodeId src : n.inputs) {
      if (graph.FindNode(src)) {
        ++count;
        consumers[src].push_back(n.id);
      } else if (!graph.FindInput(src)) {
        throw Error(ErrorCode::kInvalidGraph, "node " + std::to_string(n.id) +
                                                  " references missing id " + std::to_string(src));
      }
    }
    pending[n.id] = count;
    if (count == 0) ready.push(n.id);
  }

  std::vector<NodeId> order;
  order.reserve(graph.node_count());
  while (!ready.empty()) {
    const NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId c : consumers[id]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order.size() != graph.node_count()) {
    throw Error(ErrorCode::kInvalidGraph, "graph contains a cycle");
  }
  return order;
}

void RequireValid(const Graph& graph) {
  auto report = Validate(graph);
  if (!report.ok) throw Error(ErrorCode::kInvalidGraph, report.Summary());
}

}  // namespace mce
