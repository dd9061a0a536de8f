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

#ifndef MCE_BENCH_POWER_H_
#define MCE_BENCH_POWER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace mce {

// Power in integer microwatts. Readings are rounded once on entry, so
// means and differences of watt values with at most six decimals are
// exact.
struct Microwatts {
  int64_t value = 0;

  static Microwatts FromWatts(double watts);
  double watts() const { return static_cast<double>(value) / 1e6; }
  auto operator<=>(const Microwatts&) const = default;
};

struct PowerReading {
  double timestamp_s = 0.0;
  Microwatts power;
};

// Half-open interval [begin, end) in sampler seconds.
struct PowerWindow {
  double begin = 0.0;
  double end = 0.0;
};

class PowerSampler {
 public:
  virtual ~PowerSampler() = default;
  // Readings with begin <= timestamp < end, in timestamp order.
  virtual std::vector<PowerReading> Readings(PowerWindow window) const = 0;
};

// Replays a recorded `timestamp_s,watts` trace.
class TracePowerSampler : public PowerSampler {
 public:
  explicit TracePowerSampler(std::vector<PowerReading> readings);
  static TracePowerSampler FromCsv(const std::filesystem::path& path);
  static TracePowerSampler FromCsvText(std::string_view text);

  std::vector<PowerReading> Readings(PowerWindow window) const override;

 private:
  std::vector<PowerReading> readings_;
};

// Polls a file holding one number (for example a sysfs power rail) on a
// background thread. `watts_per_unit` converts the file's unit, e.g. 1e-6
// for a microwatt counter. Timestamps are seconds on the steady clock since
// Start().
class SysfsPowerSampler : public PowerSampler {
 public:
  SysfsPowerSampler(std::filesystem::path path, double watts_per_unit,
                    std::chrono::microseconds interval = std::chrono::milliseconds(10));
  ~SysfsPowerSampler() override;

  void Start();
  void Stop();
  // Seconds since Start() on the sampler's timeline.
  double Now() const;

  std::vector<PowerReading> Readings(PowerWindow window) const override;

 private:
  void Poll();

  std::filesystem::path path_;
  double watts_per_unit_;
  std::chrono::microseconds interval_;
  std::chrono::steady_clock::time_point epoch_;
  std::atomic<bool> running_{false};
  std::thread thread_;
  mutable std::mutex mutex_;
  std::vector<PowerReading> readings_;
};

// Mean of the readings in `window`, rounded to the nearest microwatt.
// Throws Error(kNotFound) when the window holds no reading.
Microwatts SamplePower(const PowerSampler& sampler, PowerWindow window);

struct PowerDelta {
  Microwatts delta;             // run - idle
  std::optional<double> ratio;  // run / reference
};

// All inputs must be positive.
PowerDelta PowerDeltaRatio(Microwatts run, Microwatts idle,
                           std::optional<Microwatts> reference = std::nullopt);

}  // namespace mce

#endif  // MCE_BENCH_POWER_H_
