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

#include "mce/bench/report.h"

#include <charconv>
#include <set>

#include "mce/bench/power.h"
#include "mce/common/csv.h"
#include "mce/common/error.h"

namespace mce {
namespace {

constexpr std::string_view kHeader =
    "precision,size_bytes,mean_latency_ms,throughput_ips,power_mean_w,power_delta_w,power_ratio";

std::string Field(const std::optional<double>& v) { return v ? FormatDouble(*v) : std::string(); }

std::optional<double> ParseOptional(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return ParseDouble(text);
}

uint64_t ParseSize(const std::string& text) {
  uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument, "bad size_bytes '" + text + "'");
  }
  return value;
}

}  // namespace

std::string BenchReport::ToCsv() const {
  std::string out(kHeader);
  out += '\n';
  for (const BenchRow& r : rows) {
    out += r.precision + "," + std::to_string(r.size_bytes) + "," + FormatDouble(r.mean_latency_ms) +
           "," + FormatDouble(r.throughput_ips) + "," + Field(r.power_mean_w) + "," +
           Field(r.power_delta_w) + "," + Field(r.power_ratio) + "\n";
  }
  return out;
}

nlohmann::ordered_json BenchReport::ToJson() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json json;
  json["metadata"] = metadata;
  json["rows"] = nlohmann::ordered_json::array();
  for (const BenchRow& r : rows) {
    nlohmann::ordered_json row;
    row["precision"] = r.precision;
    row["size_bytes"] = r.size_bytes;
    row["mean_latency_ms"] = r.mean_latency_ms;
    row["throughput_ips"] = r.throughput_ips;
    row["power_mean_w"] = opt(r.power_mean_w);
    row["power_delta_w"] = opt(r.power_delta_w);
    row["power_ratio"] = opt(r.power_ratio);
    json["rows"].push_back(std::move(row));
  }
  return json;
}

BenchReport BenchReport::FromCsv(std::string_view text) {
  const CsvTable table = ParseCsv(text);
  std::string header;
  for (size_t i = 0; i < table.header.size(); ++i) header += (i ? "," : "") + table.header[i];
  if (header != kHeader) throw Error(ErrorCode::kInvalidArgument, "unexpected report header");
  BenchReport report;
  for (const auto& row : table.rows) {
    if (row.size() != 7) throw Error(ErrorCode::kInvalidArgument, "report row needs 7 fields");
    report.rows.push_back(BenchRow{row[0], ParseSize(row[1]), ParseDouble(row[2]),
                                   ParseDouble(row[3]), ParseOptional(row[4]),
                                   ParseOptional(row[5]), ParseOptional(row[6])});
  }
  return report;
}

BenchReport MakeReport(std::vector<BenchRow> rows, nlohmann::ordered_json metadata) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "report needs at least one row");
  std::set<std::string> seen;
  const BenchRow* original = nullptr;
  for (const BenchRow& r : rows) {
    if (!seen.insert(r.precision).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate precision row '" + r.precision + "'");
    }
    if (r.precision == "original") original = &r;
  }
  if (original && original->power_mean_w) {
    // Ratios are taken in whole microwatts, as in PowerDeltaRatio.
    const Microwatts reference = Microwatts::FromWatts(*original->power_mean_w);
    if (reference.value <= 0) throw Error(ErrorCode::kInvalidArgument, "reference power must be positive");
    for (BenchRow& r : rows) {
      if (r.power_mean_w) {
        r.power_ratio = static_cast<double>(Microwatts::FromWatts(*r.power_mean_w).value) /
                        static_cast<double>(reference.value);
      }
    }
  }
  return BenchReport{std::move(rows), std::move(metadata)};
}

}  // namespace mce
