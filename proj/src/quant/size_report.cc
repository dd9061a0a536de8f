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

#include "mce/quant/size_report.h"

#include "mce/common/byte_io.h"
#include "mce/common/error.h"
#include "mce/ir/serialize.h"

namespace mce {

SizeReport MakeSizeReport(std::span<const uint8_t> before, std::span<const uint8_t> after) {
  const Graph g_before = Deserialize(before);
  const Graph g_after = Deserialize(after);
  SizeReport report;
  report.bytes_before = before.size();
  report.bytes_after = after.size();
  report.weight_bytes_before = WeightPayloadBytes(g_before);
  report.weight_bytes_after = WeightPayloadBytes(g_after);
  if (report.weight_bytes_before == 0 || report.weight_bytes_after == 0) {
    throw Error(ErrorCode::kInvalidArgument, "models without weights have no size ratio");
  }
  report.ratio = static_cast<double>(report.bytes_after) / static_cast<double>(report.bytes_before);
  report.weight_ratio = static_cast<double>(report.weight_bytes_after) /
                        static_cast<double>(report.weight_bytes_before);
  return report;
}

SizeReport MakeSizeReport(const std::filesystem::path& before, const std::filesystem::path& after) {
  return MakeSizeReport(ReadFileBytes(before), ReadFileBytes(after));
}

}  // namespace mce
