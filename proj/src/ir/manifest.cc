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

#include "mce/ir/manifest.h"

namespace mce {

std::filesystem::path ManifestPath(const std::filesystem::path& model_path) {
  auto out = model_path;
  out += ".json";
  return out;
}

nlohmann::ordered_json ManifestJson(const Graph& graph) {
  nlohmann::ordered_json manifest;
  manifest["name"] = graph.name();
  manifest["precision"] = std::string(PrecisionTagName(graph.precision()));
  manifest["node_count"] = graph.node_count();
  nlohmann::ordered_json histogram = nlohmann::ordered_json::object();
  for (const auto& [kind, count] : OpHistogram(graph)) {
    if (count > 0) histogram[std::string(OpKindName(kind))] = count;
  }
  manifest["histogram"] = std::move(histogram);
  return manifest;
}

}  // namespace mce
