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

#ifndef MCE_IR_VALIDATE_H_
#define MCE_IR_VALIDATE_H_

#include <optional>
#include <string>
#include <vector>

#include "mce/ir/graph.h"

namespace mce {

struct Violation {
  std::optional<NodeId> node;  // absent for graph-level rules
  std::string rule;            // short tag: "cycle", "arity", "dangling-input", ...
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool Has(std::string_view rule) const;
  std::string Summary() const;
};

// Checks every structural invariant of Graph and Node. Violations are data;
// this never throws.
ValidationReport Validate(const Graph& graph);

// Kahn's algorithm with a min-id ready queue, so the order is unique for a
// given graph. Throws Error(kInvalidGraph) on a cycle or dangling edge.
std::vector<NodeId> TopoSort(const Graph& graph);

// Throws Error(kInvalidGraph) carrying the summary when validation fails.
void RequireValid(const Graph& graph);

}  // namespace mce

#endif  // MCE_IR_VALIDATE_H_
