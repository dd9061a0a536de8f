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

#include "mce/bench/power.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mce/common/byte_io.h"
#include "mce/common/csv.h"
#include "mce/common/error.h"

namespace mce {

Microwatts Microwatts::FromWatts(double watts) {
  if (!std::isfinite(watts)) throw Error(ErrorCode::kNonFinite, "power reading is not finite");
  return Microwatts{std::llround(watts * 1e6)};
}

TracePowerSampler::TracePowerSampler(std::vector<PowerReading> readings)
    : readings_(std::move(readings)) {
  std::stable_sort(readings_.begin(), readings_.end(),
                   [](const PowerReading& a, const PowerReading& b) {
                     return a.timestamp_s < b.timestamp_s;
                   });
}

TracePowerSampler TracePowerSampler::FromCsvText(std::string_view text) {
  const CsvTable table = ParseCsv(text);
  const int t_col = table.Column("timestamp_s");
  const int w_col = table.Column("watts");
  if (t_col < 0 || w_col < 0) {
    throw Error(ErrorCode::kInvalidArgument, "power trace needs timestamp_s,watts columns");
  }
  std::vector<PowerReading> readings;
  for (const auto& row : table.rows) {
    if (row.size() <= static_cast<size_t>(std::max(t_col, w_col))) {
      throw Error(ErrorCode::kInvalidArgument, "short row in power trace");
    }
    readings.push_back({ParseDouble(row[t_col]), Microwatts::FromWatts(ParseDouble(row[w_col]))});
  }
  return TracePowerSampler(std::move(readings));
}

TracePowerSampler TracePowerSampler::FromCsv(const std::filesystem::path& path) {
  return FromCsvText(ReadFileText(path));
}

std::vector<PowerReading> TracePowerSampler::Readings(PowerWindow window) const {
  std::vector<PowerReading> out;
  for (const PowerReading& r : readings_) {
    if (r.timestamp_s >= window.begin && r.timestamp_s < window.end) out.push_back(r);
  }
  return out;
}

SysfsPowerSampler::SysfsPowerSampler(std::filesystem::path path, double watts_per_unit,
                                     std::chrono::microseconds interval)
    : path_(std::move(path)), watts_per_unit_(watts_per_unit), interval_(interval) {
  if (!(watts_per_unit > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "watts_per_unit must be positive");
  }
}

SysfsPowerSampler::~SysfsPowerSampler() { Stop(); }

void SysfsPowerSampler::Start() {
  if (running_.exchange(true)) return;
  epoch_ = std::chrono::steady_clock::now();
  {
    std::lock_guard lock(mutex_);
    readings_.clear();
  }
  thread_ = std::thread([this] { Poll(); });
}

void SysfsPowerSampler::Stop() {
  if (!running_.exchange(false)) return;
  if (thread_.joinable()) thread_.join();
}

double SysfsPowerSampler::Now() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_).count();
}

void SysfsPowerSampler::Poll() {
  while (running_.load()) {
    std::ifstream in(path_);
    double value = 0.0;
    if (in >> value) {
      const PowerReading reading{Now(), Microwatts::FromWatts(value * watts_per_unit_)};
      std::lock_guard lock(mutex_);
      readings_.push_back(reading);
    }
    std::this_thread::sleep_for(interval_);
  }
}

std::vector<PowerReading> SysfsPowerSampler::Readings(PowerWindow window) const {
  std::lock_guard lock(mutex_);
  std::vector<PowerReading> out;
  for (const PowerReading& r : readings_) {
    if (r.timestamp_s >= window.begin && r.timestamp_s < window.end) out.push_back(r);
  }
  return out;
}

Microwatts SamplePower(const PowerSampler& sampler, PowerWindow window) {
  const std::vector<PowerReading> readings = sampler.Readings(window);
  if (readings.empty()) throw Error(ErrorCode::kNotFound, "no power readings in window");
  int64_t sum = 0;
  for (const PowerReading& r : readings) sum += r.power.value;
  const auto n = static_cast<int64_t>(readings.size());
  // Round half away from zero.
  const int64_t mean = sum >= 0 ? (sum + n / 2) / n : -((-sum + n / 2) / n);
  return Microwatts{mean};
}

PowerDelta PowerDeltaRatio(Microwatts run, Microwatts idle, std::optional<Microwatts> reference) {
  if (run.value <= 0 || idle.value <= 0 || (reference && reference->value <= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "power values must be positive");
  }
  PowerDelta result;
  result.delta = Microwatts{run.value - idle.value};
  if (reference) {
    result.ratio = static_cast<double>(run.value) / static_cast<double>(reference->value);
  }
  return result;
}

}  // namespace mce
