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

#include "mce/bench/harness.h"

#include <chrono>

#include "mce/common/error.h"
#include "mce/ir/serialize.h"

namespace mce {
namespace {

double TimedRun(const Executor& executor, const Tensor& batch, const Clock& clock) {
  const double start = clock();
  executor.Run(batch);
  return clock() - start;
}

}  // namespace

double SteadySeconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

double SteadyResolution() {
  using Period = std::chrono::steady_clock::period;
  return static_cast<double>(Period::num) / static_cast<double>(Period::den);
}

LatencyRun BenchLatency(const Executor& executor, const Dataset& data,
                        const LatencyOptions& options, const Clock& clock) {
  if (data.empty()) throw Error(ErrorCode::kInvalidArgument, "latency benchmark on empty dataset");
  if (options.batch_size == 0 || options.timed == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size and timed batches must be positive");
  }
  const std::vector<size_t> order = data.Order(options.shuffle_seed);
  LatencyRun run;
  std::vector<double> samples;
  size_t cursor = 0;
  for (size_t b = 0; b < options.warmup + options.timed; ++b) {
    std::vector<size_t> indices;
    for (size_t j = 0; j < options.batch_size; ++j) indices.push_back(order[cursor++ % order.size()]);
    const Tensor batch = data.Batch(indices);
    samples.push_back(TimedRun(executor, batch, clock));
    run.schedule.push_back(std::move(indices));
  }
  run.stats = MakeLatencyStats(samples, options.warmup, options.batch_size);
  return run;
}

ThroughputStats BenchThroughput(const Executor& executor, const Dataset& data, size_t batch_size,
                                const Clock& clock, std::optional<uint64_t> shuffle_seed) {
  if (data.empty()) throw Error(ErrorCode::kInvalidArgument, "throughput benchmark on empty dataset");
  const std::vector<size_t> order = data.Order(shuffle_seed);
  const std::vector<size_t> sizes = BatchSchedule(order.size(), batch_size);
  double seconds = 0.0;
  size_t cursor = 0;
  for (size_t size : sizes) {
    const std::span<const size_t> indices(order.data() + cursor, size);
    cursor += size;
    const Tensor batch = data.Batch(indices);
    seconds += TimedRun(executor, batch, clock);
  }
  return MakeThroughputStats(static_cast<int64_t>(order.size()), seconds, sizes);
}

LatencyRun BenchLatency(const std::filesystem::path& model, const std::filesystem::path& data,
                        const LatencyOptions& options) {
  const Graph graph = LoadModel(model);
  const Dataset dataset = Dataset::Load(data);
  const Executor executor(graph);
  return BenchLatency(executor, dataset, options);
}

ThroughputStats BenchThroughput(const std::filesystem::path& model,
                                const std::filesystem::path& data, size_t batch_size) {
  const Graph graph = LoadModel(model);
  const Dataset dataset = Dataset::Load(data);
  const Executor executor(graph);
  return BenchThroughput(executor, dataset, batch_size);
}

}  // namespace mce
