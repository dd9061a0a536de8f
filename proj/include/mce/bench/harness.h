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

#ifndef MCE_BENCH_HARNESS_H_
#define MCE_BENCH_HARNESS_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "mce/bench/stats.h"
#include "mce/exec/dataset.h"
#include "mce/exec/executor.h"

namespace mce {

// Monotonic seconds. Tests substitute a scripted clock.
using Clock = std::function<double()>;

double SteadySeconds();
// Tick period of the steady clock in seconds.
double SteadyResolution();

struct LatencyOptions {
  size_t batch_size = 32;
  size_t warmup = 3;
  size_t timed = 10;
  // Traversal is sorted filename order unless a shuffle seed is given.
  std::optional<uint64_t> shuffle_seed;
};

struct LatencyRun {
  LatencyStats stats;
  // Image indices of every batch run, warmup included, in run order.
  std::vector<std::vector<size_t>> schedule;
};

// Times each Executor::Run over full batches, cycling through the dataset
// as often as needed. Batches are assembled before the clock starts, so
// the measurement covers graph execution only (casts included).
LatencyRun BenchLatency(const Executor& executor, const Dataset& data,
                        const LatencyOptions& options, const Clock& clock = SteadySeconds);

// Runs every image exactly once, the last batch holding the remainder.
// The duration is the sum of the timed Executor::Run calls.
ThroughputStats BenchThroughput(const Executor& executor, const Dataset& data, size_t batch_size,
                                const Clock& clock = SteadySeconds,
                                std::optional<uint64_t> shuffle_seed = std::nullopt);

// File-based forms: the model is loaded once, outside the timed region.
LatencyRun BenchLatency(const std::filesystem::path& model, const std::filesystem::path& data,
                        const LatencyOptions& options);
ThroughputStats BenchThroughput(const std::filesystem::path& model,
                                const std::filesystem::path& data, size_t batch_size);

}  // namespace mce

#endif  // MCE_BENCH_HARNESS_H_
