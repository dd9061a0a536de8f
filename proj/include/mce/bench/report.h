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

#ifndef MCE_BENCH_REPORT_H_
#define MCE_BENCH_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mce {

struct BenchRow {
  std::string precision;
  uint64_t size_bytes = 0;
  double mean_latency_ms = 0.0;
  double throughput_ips = 0.0;
  std::optional<double> power_mean_w;
  std::optional<double> power_delta_w;
  std::optional<double> power_ratio;

  bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  // precision,size_bytes,mean_latency_ms,throughput_ips,power_mean_w,
  // power_delta_w,power_ratio; absent values are empty fields.
  std::string ToCsv() const;
  // {"metadata": {...}, "rows": [{...}]} with the CSV column names.
  nlohmann::ordered_json ToJson() const;
  static BenchReport FromCsv(std::string_view text);
};

// Rejects an empty row set and repeated precisions. When an "original" row
// carries a power mean, every row with a power mean gets
// power_ratio = power_mean_w / original power_mean_w.
BenchReport MakeReport(std::vector<BenchRow> rows,
                       nlohmann::ordered_json metadata = nlohmann::ordered_json::object());

}  // namespace mce

#endif  // MCE_BENCH_REPORT_H_
