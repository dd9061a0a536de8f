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

#ifndef MCE_IR_SERIALIZE_H_
#define MCE_IR_SERIALIZE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mce/ir/graph.h"

namespace mce {

inline constexpr char kModelMagic[4] = {'M', 'C', 'E', '1'};
inline constexpr uint16_t kModelVersion = 1;

// Binary model layout (all little-endian):
//   "MCE1" | u16 version | u16 precision | u32 node count
//   node table:   u32 id, u8 op, u8 arity, u32 input id * arity,
//                 u32 attr length, attr bytes
//   spec table:   one tensor spec per node, node-table order
//   interface:    name, inputs (id, name, spec), output ids
//   weights:      u32 length + raw bytes per Const, node-table order
//   u32 CRC32 of every preceding byte
// A tensor spec is u8 dtype, u8 rank, u32 dims, u8 has_quant
// [f64 scale, i32 zero_point].
std::vector<uint8_t> Serialize(const Graph& graph);

// Distinct Error codes for bad magic, version mismatch, unknown op code,
// truncated section and checksum mismatch.
Graph Deserialize(std::span<const uint8_t> bytes);

// Bytes the weight section occupies for this graph (length prefixes and raw
// payloads) plus the stored quantization parameters of every INT8 Const.
uint64_t WeightPayloadBytes(const Graph& graph);

void SaveModel(const Graph& graph, const std::filesystem::path& path);
Graph LoadModel(const std::filesystem::path& path);

}  // namespace mce

#endif  // MCE_IR_SERIALIZE_H_
