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

#ifndef MCE_EXEC_TENSOR_FILE_H_
#define MCE_EXEC_TENSOR_FILE_H_

#include <filesystem>
#include <span>
#include <vector>

#include "mce/exec/tensor.h"

namespace mce {

// "MCT1" | u8 dtype | u8 rank | u32 dims | raw row-major payload,
// little-endian. INT8 is rejected: the format has no room for quant params.
std::vector<uint8_t> EncodeTensorFile(const Tensor& tensor);
Tensor DecodeTensorFile(std::span<const uint8_t> bytes);

void SaveTensorFile(const Tensor& tensor, const std::filesystem::path& path);
Tensor LoadTensorFile(const std::filesystem::path& path);

}  // namespace mce

#endif  // MCE_EXEC_TENSOR_FILE_H_
