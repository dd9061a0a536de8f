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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "fixtures.h"
#include "mce/bench/harness.h"
#include "mce/bench/power.h"
#include "mce/bench/report.h"
#include "mce/bench/stats.h"
#include "mce/common/error.h"
#include "mce/quant/calibration.h"
#include "mce/quant/passes.h"

namespace mce {
namespace {

// Returns start/stop pairs so that batch b takes durations[b] seconds.
Clock ScriptedClock(std::vector<double> durations) {
  auto state = std::make_shared<std::pair<size_t, double>>(0, 100.0);
  return [state, durations = std::move(durations)]() {
    auto& [calls, now] = *state;
    if (calls % 2 == 1) now += durations[(calls / 2) % durations.size()];
    ++calls;
    return now;
  };
}

Dataset TinyData(int count, uint64_t seed = 5) { return Dataset(testing::RandomSamples(seed, count, 8)); }

TEST(LatencyStatsTest, NearestRankAndMedian) {
  std::vector<double> samples;
  for (int i = 1; i <= 20; ++i) samples.push_back(i);
  const LatencyStats s = MakeLatencyStats(samples, 0, 1);
  EXPECT_EQ(s.p95, 19.0);
  EXPECT_EQ(s.median, 10.5);
  EXPECT_EQ(s.mean, 10.5);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 20.0);
  EXPECT_EQ(MakeLatencyStats(std::vector<double>{3.0}, 0, 1).p95, 3.0);
  EXPECT_THROW(MakeLatencyStats(std::vector<double>{1.0, 2.0}, 2, 1), Error);
  EXPECT_THROW(MakeLatencyStats(std::vector<double>{0.0}, 0, 1), Error);
}

TEST(HarnessTest, ScriptedLatencyPerImage) {
  const Graph g = testing::TinyNet(1);
  const Executor exec(g);
  const Dataset data = TinyData(40);
  const LatencyRun run = BenchLatency(exec, data, {}, ScriptedClock({0.5}));
  EXPECT_EQ(run.stats.batch_seconds.size(), 10u);
  EXPECT_EQ(run.stats.mean * 1000.0, 15.625);
  EXPECT_EQ(run.schedule.size(), 13u);
  EXPECT_EQ(run.schedule[1][0], 32u);  // wraps past the end of the 40 images
  EXPECT_EQ(run.schedule[1][8], 0u);
}

TEST(HarnessTest, WarmupBatchesAreExcluded) {
  const Graph g = testing::TinyNet(1);
  const Executor exec(g);
  const Dataset data = TinyData(8);
  LatencyOptions opt;
  opt.batch_size = 4;
  opt.warmup = 3;
  opt.timed = 5;
  const LatencyRun run = BenchLatency(exec, data, opt, ScriptedClock({9, 9, 9, 2, 2, 2, 2, 2}));
  EXPECT_EQ(run.stats.mean, 0.5);
  EXPECT_EQ(run.stats.max, 0.5);
}

TEST(HarnessTest, ThroughputCoversEveryImageOnce) {
  const Graph g = testing::TinyNet(2);
  const Executor exec(g);
  const Dataset data = TinyData(3666);
  const ThroughputStats t = BenchThroughput(exec, data, 32, ScriptedClock({0.1}));
  EXPECT_EQ(t.invocations(), 115u);
  EXPECT_EQ(t.batch_sizes.back(), 18u);
  EXPECT_EQ(t.images, 3666);
  EXPECT_EQ(t.images_per_second * t.seconds, 3666.0);
  EXPECT_NEAR(t.seconds, 11.5, 1e-9);
}

TEST(HarnessTest, EmptyDatasetIsRejected) {
  const Graph g = testing::TinyNet(1);
  const Executor exec(g);
  EXPECT_THROW(BenchLatency(exec, Dataset(), {}), Error);
  EXPECT_THROW(BenchThroughput(exec, Dataset(), 32), Error);
}

TEST(HarnessTest, RealClockProducesPositiveTimes) {
  const Graph g = testing::TinyNet(1);
  const Executor exec(g);
  const LatencyRun run = BenchLatency(exec, TinyData(4), {.batch_size = 2, .warmup = 1, .timed = 3});
  EXPECT_GT(run.stats.min, 0.0);
  EXPECT_LE(run.stats.min, run.stats.mean);
  EXPECT_LE(run.stats.mean, run.stats.max);
  EXPECT_GT(SteadyResolution(), 0.0);
}

TEST(HarnessTest, ScheduleIndependentOfPrecision) {
  const Graph g = testing::TinyNet(3);
  const Dataset data = TinyData(50);
  std::vector<Tensor> calib = {data.Batch(std::vector<size_t>{0, 1, 2, 3})};
  const Graph q = QuantizeInt8(g, Calibrate(g, calib, CalibrationMethod::MinMax()),
                               PrecisionPolicy::Default(DType::kINT8));
  const Executor e32(g), e8(q);
  const LatencyOptions opt{.batch_size = 16, .warmup = 1, .timed = 4, .shuffle_seed = 11};
  EXPECT_EQ(BenchLatency(e32, data, opt).schedule, BenchLatency(e8, data, opt).schedule);
  EXPECT_EQ(BenchThroughput(e32, data, 16).batch_sizes, BenchThroughput(e8, data, 16).batch_sizes);
}

TEST(ThroughputStatsTest, ExactProductAndRate) {
  const ThroughputStats t = MakeThroughputStats(3666, 10.0);
  EXPECT_DOUBLE_EQ(t.images_per_second, 366.6);
  EXPECT_EQ(t.images_per_second * t.seconds, 3666.0);
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const int64_t n = 1 + static_cast<int64_t>(rng.Below(100000));
    const double s = rng.Uniform(0.01, 500.0);
    const ThroughputStats r = MakeThroughputStats(n, s);
    EXPECT_EQ(r.images_per_second * r.seconds, static_cast<double>(n));
    EXPECT_LE(std::abs(r.seconds - s), 1e-12 * s);
  }
  EXPECT_THROW(MakeThroughputStats(0, 1.0), Error);
  EXPECT_THROW(MakeThroughputStats(5, 0.0), Error);
}

TEST(ThroughputStatsTest, BatchSchedule) {
  EXPECT_EQ(BatchSchedule(64, 32), (std::vector<size_t>{32, 32}));
  EXPECT_EQ(BatchSchedule(5, 32), (std::vector<size_t>{5}));
  EXPECT_EQ(BatchSchedule(3666, 32).size(), 115u);
  EXPECT_THROW(BatchSchedule(5, 0), Error);
}

TEST(PowerTest, MicrowattsRounding) {
  EXPECT_EQ(Microwatts::FromWatts(6.8).value, 6800000);
  EXPECT_EQ(Microwatts::FromWatts(-1.25).value, -1250000);
  EXPECT_EQ(Microwatts::FromWatts(5.8).watts(), 5.8);
}

TEST(PowerTest, TraceWindowsAndMeans) {
  const TracePowerSampler s = TracePowerSampler::FromCsvText(
      "timestamp_s,watts\n-2,5.8\n-1,5.8\n0,7\n0.5,6\n1,6.5\n2,100\n");
  EXPECT_EQ(SamplePower(s, {-10, 0}).value, 5800000);
  EXPECT_EQ(SamplePower(s, {0, 2}).value, 6500000);
  EXPECT_EQ(s.Readings({0, 1}).size(), 2u);
  try {
    SamplePower(s, {3, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  EXPECT_THROW(TracePowerSampler::FromCsvText("t,w\n0,1\n"), Error);
}

TEST(PowerTest, SquareWaveMeanMatchesDutyCycle) {
  // 30% duty cycle between 4 W and 9 W sampled at 1 kHz for 10 s.
  std::vector<PowerReading> r;
  for (int i = 0; i < 10000; ++i) {
    const bool high = i % 10 < 3;
    r.push_back({i / 1000.0, Microwatts::FromWatts(high ? 9.0 : 4.0)});
  }
  const TracePowerSampler s(r);
  EXPECT_EQ(SamplePower(s, {0, 10}).value, 5500000);
}

TEST(PowerTest, DeltaAndRatioTable) {
  const Microwatts idle = Microwatts::FromWatts(5.8);
  const Microwatts reference = Microwatts::FromWatts(6.8);
  const std::vector<std::pair<double, double>> cases = {{6.8, 1.0}, {6.6, 0.8}, {6.4, 0.6}, {6.3, 0.5}};
  for (auto [run, delta] : cases) {
    const PowerDelta d = PowerDeltaRatio(Microwatts::FromWatts(run), idle, reference);
    EXPECT_EQ(d.delta, Microwatts::FromWatts(delta));
    EXPECT_EQ(*d.ratio, Microwatts::FromWatts(run).value / 6800000.0);
  }
  EXPECT_FALSE(PowerDeltaRatio(reference, idle).ratio.has_value());
  EXPECT_THROW(PowerDeltaRatio(Microwatts{0}, idle), Error);
  EXPECT_THROW(PowerDeltaRatio(reference, Microwatts{-1}), Error);
  EXPECT_THROW(PowerDeltaRatio(reference, idle, Microwatts{0}), Error);
}

TEST(PowerTest, SysfsSamplerPollsFile) {
  const auto dir = testing::FreshTempDir("sysfs_power");
  const auto file = dir / "power1_input";
  { std::ofstream(file) << "5000000\n"; }
  SysfsPowerSampler s(file, 1e-6, std::chrono::milliseconds(1));
  s.Start();
  const double begin = s.Now();
  while (s.Now() - begin < 0.05) {
  }
  s.Stop();
  EXPECT_EQ(SamplePower(s, {0, 1e9}).watts(), 5.0);
  EXPECT_THROW(SysfsPowerSampler(file, 0.0), Error);
}

TEST(ReportTest, SingleRowWithoutPower) {
  const BenchReport r = MakeReport({{"fp32", 1000, 12.5, 80.0}});
  EXPECT_EQ(r.ToCsv(),
            "precision,size_bytes,mean_latency_ms,throughput_ips,power_mean_w,power_delta_w,"
            "power_ratio\nfp32,1000,12.5,80,,,\n");
  EXPECT_TRUE(r.ToJson()["rows"][0]["power_ratio"].is_null());
}

TEST(ReportTest, RatiosAgainstOriginal) {
  const BenchReport r = MakeReport({{"original", 100, 1, 1, 6.8, 1.0, std::nullopt},
                                    {"fp16", 50, 1, 1, 6.6, 0.8, std::nullopt},
                                    {"int8", 25, 1, 1, 6.3, 0.5, std::nullopt}});
  EXPECT_EQ(*r.rows[0].power_ratio, 1.0);
  EXPECT_NEAR(*r.rows[1].power_ratio, 0.97, 0.005);
  EXPECT_NEAR(*r.rows[2].power_ratio, 0.93, 0.005);
  const BenchReport back = BenchReport::FromCsv(r.ToCsv());
  EXPECT_EQ(back.rows, r.rows);
  EXPECT_THROW(MakeReport({}), Error);
  EXPECT_THROW(MakeReport({{"fp16", 1, 1, 1}, {"fp16", 2, 2, 2}}), Error);
  EXPECT_THROW(BenchReport::FromCsv("precision,size\nfp16,1\n"), Error);
}

}  // namespace
}  // namespace mce
