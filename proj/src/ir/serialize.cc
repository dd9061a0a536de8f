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

#include "mce/ir/serialize.h"

#include <zlib.h>

#include <cstring>

#include "mce/common/byte_io.h"
#include "mce/common/error.h"
#include "mce/ir/manifest.h"
#include "mce/ir/validate.h"

namespace mce {
namespace {

constexpr size_t kQuantParamBytes = 8 + 4;

uint32_t Crc32(std::span<const uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<uint32_t>(crc);
}

void WriteSpec(ByteWriter& w, const TensorSpec& spec) {
  w.U8(static_cast<uint8_t>(spec.dtype));
  w.U8(static_cast<uint8_t>(spec.shape.size()));
  for (int64_t d : spec.shape) w.U32(static_cast<uint32_t>(d));
  w.U8(spec.quant ? 1 : 0);
  if (spec.quant) {
    w.F64(spec.quant->scale);
    w.I32(spec.quant->zero_point);
  }
}

TensorSpec ReadSpec(ByteReader& r) {
  TensorSpec spec;
  const uint8_t code = r.U8();
  auto dtype = DTypeFromCode(code);
  if (!dtype) throw Error(ErrorCode::kInvalidArgument, "unknown dtype code " + std::to_string(code));
  spec.dtype = *dtype;
  const uint8_t rank = r.U8();
  if (rank > 4) throw Error(ErrorCode::kInvalidGraph, "tensor rank " + std::to_string(rank));
  for (uint8_t i = 0; i < rank; ++i) spec.shape.push_back(r.U32());
  if (r.U8()) {
    QuantParams q;
    q.scale = r.F64();
    q.zero_point = r.I32();
    spec.quant = q;
  }
  return spec;
}

std::vector<uint8_t> EncodeAttrs(const Node& n) {
  ByteWriter w;
  switch (n.kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2dNative:
      w.I32(n.attrs.strides[0]);
      w.I32(n.attrs.strides[1]);
      w.U8(static_cast<uint8_t>(n.attrs.padding));
      break;
    case OpKind::kPad:
      w.U8(static_cast<uint8_t>(n.attrs.pads.size()));
      for (const auto& [before, after] : n.attrs.pads) {
        w.I32(before);
        w.I32(after);
      }
      break;
    case OpKind::kMean:
      w.U8(static_cast<uint8_t>(n.attrs.axes.size()));
      for (int32_t axis : n.attrs.axes) w.I32(axis);
      break;
    case OpKind::kCast:
      w.U8(static_cast<uint8_t>(n.attrs.cast_to));
      break;
    default:
      break;
  }
  return w.Take();
}

NodeAttrs DecodeAttrs(OpKind kind, std::span<const uint8_t> bytes, NodeId id) {
  ByteReader r(bytes);
  r.set_section("attribute block of node " + std::to_string(id));
  NodeAttrs attrs;
  switch (kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2dNative: {
      attrs.strides = {r.I32(), r.I32()};
      const uint8_t padding = r.U8();
      if (padding > 1) throw Error(ErrorCode::kInvalidGraph, "bad padding mode");
      attrs.padding = static_cast<Padding>(padding);
      break;
    }
    case OpKind::kPad: {
      const uint8_t n = r.U8();
      for (uint8_t i = 0; i < n; ++i) {
        const int32_t before = r.I32();
        const int32_t after = r.I32();
        attrs.pads.push_back({before, after});
      }
      break;
    }
    case OpKind::kMean: {
      const uint8_t n = r.U8();
      for (uint8_t i = 0; i < n; ++i) attrs.axes.push_back(r.I32());
      break;
    }
    case OpKind::kCast: {
      auto dtype = DTypeFromCode(r.U8());
      if (!dtype) throw Error(ErrorCode::kInvalidGraph, "bad cast target dtype");
      attrs.cast_to = *dtype;
      break;
    }
    default:
      break;
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kInvalidGraph,
                "attribute block of node " + std::to_string(id) + " has trailing bytes");
  }
  return attrs;
}

}  // namespace

std::vector<uint8_t> Serialize(const Graph& graph) {
  RequireValid(graph);
  ByteWriter w;
  w.Bytes({reinterpret_cast<const uint8_t*>(kModelMagic), 4});
  w.U16(kModelVersion);
  w.U16(static_cast<uint16_t>(graph.precision()));
  w.U32(static_cast<uint32_t>(graph.node_count()));

  for (const Node& n : graph.nodes()) {
    w.U32(n.id);
    w.U8(static_cast<uint8_t>(n.kind));
    w.U8(static_cast<uint8_t>(n.inputs.size()));
    for (NodeId src : n.inputs) w.U32(src);
    const auto attrs = EncodeAttrs(n);
    w.U32(static_cast<uint32_t>(attrs.size()));
    w.Bytes(attrs);
  }
  for (const Node& n : graph.nodes()) WriteSpec(w, n.output);

  w.String(graph.name());
  w.U32(static_cast<uint32_t>(graph.inputs().size()));
  for (const GraphInput& in : graph.inputs()) {
    w.U32(in.id);
    w.String(in.name);
    WriteSpec(w, in.spec);
  }
  w.U32(static_cast<uint32_t>(graph.outputs().size()));
  for (NodeId out : graph.outputs()) w.U32(out);

  for (const Node& n : graph.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    w.U32(static_cast<uint32_t>(n.payload.size()));
    w.Bytes(n.payload);
  }

  w.U32(Crc32(w.buffer()));
  return w.Take();
}

Graph Deserialize(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kModelMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an MCE model (expected \"MCE1\")");
  }
  ByteReader header(bytes.subspan(4));
  header.set_section("header");
  const uint16_t version = header.U16();
  if (version != kModelVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "model version " + std::to_string(version) + ", reader supports " +
                    std::to_string(kModelVersion));
  }
  if (bytes.size() < 4 + 8 + 4) throw Error(ErrorCode::kTruncated, "header section incomplete");

  // Everything between the magic and the trailing checksum.
  ByteReader r(bytes.subspan(4, bytes.size() - 8));
  r.set_section("header");
  r.U16();
  const uint16_t precision_code = r.U16();
  if (precision_code > static_cast<uint16_t>(PrecisionTag::kINT8)) {
    throw Error(ErrorCode::kInvalidArgument, "unknown precision tag " +
                                                 std::to_string(precision_code));
  }
  const uint32_t node_count = r.U32();
  if (node_count > r.remaining() / 10) {
    throw Error(ErrorCode::kTruncated, "node table cannot hold " + std::to_string(node_count) +
                                           " nodes");
  }

  std::vector<Node> nodes(node_count);
  r.set_section("node table");
  for (Node& n : nodes) {
    n.id = r.U32();
    const uint8_t code = r.U8();
    auto kind = OpKindFromCode(code);
    if (!kind) {
      throw Error(ErrorCode::kUnknownOpCode,
                  "op code " + std::to_string(code) + " on node " + std::to_string(n.id));
    }
    n.kind = *kind;
    const uint8_t arity = r.U8();
    for (uint8_t i = 0; i < arity; ++i) n.inputs.push_back(r.U32());
    const uint32_t attr_len = r.U32();
    n.attrs = DecodeAttrs(n.kind, r.Bytes(attr_len), n.id);
  }

  r.set_section("tensor-spec table");
  for (Node& n : nodes) n.output = ReadSpec(r);

  r.set_section("interface");
  std::string name = r.String();
  std::vector<GraphInput> inputs(r.U32());
  for (GraphInput& in : inputs) {
    in.id = r.U32();
    in.name = r.String();
    in.spec = ReadSpec(r);
  }
  std::vector<NodeId> outputs(r.U32());
  for (NodeId& out : outputs) out = r.U32();

  r.set_section("weight");
  for (Node& n : nodes) {
    if (n.kind != OpKind::kConst) continue;
    const uint32_t len = r.U32();
    auto blob = r.Bytes(len);
    n.payload.assign(blob.begin(), blob.end());
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kInvalidGraph,
                std::to_string(r.remaining()) + " unexpected bytes before checksum");
  }

  ByteReader tail(bytes.subspan(bytes.size() - 4));
  const uint32_t stored = tail.U32();
  const uint32_t actual = Crc32(bytes.subspan(0, bytes.size() - 4));
  if (stored != actual) throw Error(ErrorCode::kChecksumMismatch, "CRC32 does not match");

  return Graph(std::move(name), static_cast<PrecisionTag>(precision_code), std::move(nodes),
               std::move(inputs), std::move(outputs));
}

uint64_t WeightPayloadBytes(const Graph& graph) {
  uint64_t total = 0;
  for (const Node& n : graph.nodes()) {
    if (n.kind != OpKind::kConst) continue;
    total += 4 + n.payload.size();
    if (n.output.quant) total += kQuantParamBytes;
  }
  return total;
}

void SaveModel(const Graph& graph, const std::filesystem::path& path) {
  WriteFileBytes(path, Serialize(graph));
  WriteFileText(ManifestPath(path), ManifestJson(graph).dump(2) + "\n");
}

Graph LoadModel(const std::filesystem::path& path) { return Deserialize(ReadFileBytes(path)); }

}  // namespace mce
