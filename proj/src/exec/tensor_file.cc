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

#include "mce/exec/tensor_file.h"

#include <cstring>

#include "mce/common/byte_io.h"
#include "mce/common/error.h"

namespace mce {
namespace {
constexpr char kTensorMagic[4] = {'M', 'C', 'T', '1'};
}  // namespace

std::vector<uint8_t> EncodeTensorFile(const Tensor& tensor) {
  if (tensor.dtype() == DType::kINT8) {
    throw Error(ErrorCode::kInvalidArgument, "int8 tensors cannot be stored in MCT files");
  }
  ByteWriter w;
  w.Bytes({reinterpret_cast<const uint8_t*>(kTensorMagic), 4});
  w.U8(static_cast<uint8_t>(tensor.dtype()));
  w.U8(static_cast<uint8_t>(tensor.rank()));
  for (int64_t d : tensor.shape()) w.U32(static_cast<uint32_t>(d));
  w.Bytes(tensor.bytes());
  return w.Take();
}

Tensor DecodeTensorFile(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an MCT tensor file (expected \"MCT1\")");
  }
  ByteReader r(bytes.subspan(4));
  r.set_section("tensor header");
  const uint8_t code = r.U8();
  auto dtype = DTypeFromCode(code);
  if (!dtype || *dtype == DType::kINT8) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported tensor dtype code " +
                                                 std::to_string(code));
  }
  const uint8_t rank = r.U8();
  if (rank > 4) throw Error(ErrorCode::kInvalidArgument, "tensor rank above 4");
  TensorSpec spec;
  spec.dtype = *dtype;
  for (uint8_t i = 0; i < rank; ++i) {
    const uint32_t d = r.U32();
    if (d == 0) throw Error(ErrorCode::kInvalidArgument, "zero-sized tensor dimension");
    spec.shape.push_back(d);
  }
  r.set_section("tensor payload");
  auto payload = r.Bytes(spec.ByteSize());
  if (r.remaining() != 0) throw Error(ErrorCode::kInvalidArgument, "trailing bytes in tensor file");
  return Tensor(std::move(spec), std::vector<uint8_t>(payload.begin(), payload.end()));
}

void SaveTensorFile(const Tensor& tensor, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeTensorFile(tensor));
}

Tensor LoadTensorFile(const std::filesystem::path& path) {
  return DecodeTensorFile(ReadFileBytes(path));
}

}  // namespace mce
