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

#ifndef MCE_IR_MANIFEST_H_
#define MCE_IR_MANIFEST_H_

#include <filesystem>

#include "json.hpp"
#include "mce/ir/graph.h"

namespace mce {

// Sidecar written next to every model: "<model path>.json".
std::filesystem::path ManifestPath(const std::filesystem::path& model_path);

// {name, precision, node_count, histogram: {OpKind name: count}}. Kinds
// with zero count are omitted.
nlohmann::ordered_json ManifestJson(const Graph& graph);

}  // namespace mce

#endif  // MCE_IR_MANIFEST_H_
