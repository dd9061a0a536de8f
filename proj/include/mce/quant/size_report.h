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

#ifndef MCE_QUANT_SIZE_REPORT_H_
#define MCE_QUANT_SIZE_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <span>

namespace mce {

struct SizeReport {
  uint64_t bytes_before = 0;
  uint64_t bytes_after = 0;
  uint64_t weight_bytes_before = 0;
  uint64_t weight_bytes_after = 0;
  double ratio = 0.0;         // bytes_after / bytes_before
  double weight_ratio = 0.0;  // weight_bytes_after / weight_bytes_before
};

// Both buffers must parse as models; weight bytes come from the parsed
// graphs, totals from the buffer sizes.
SizeReport MakeSizeReport(std::span<const uint8_t> before, std::span<const uint8_t> after);
SizeReport MakeSizeReport(const std::filesystem::path& before, const std::filesystem::path& after);

}  // namespace mce

#endif  // MCE_QUANT_SIZE_REPORT_H_
