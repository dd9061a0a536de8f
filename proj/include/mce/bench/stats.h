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

#ifndef MCE_BENCH_STATS_H_
#define MCE_BENCH_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mce {

// Per-image latency summary. Every field except the raw samples is in
// seconds per image, i.e. batch wall time divided by batch size.
struct LatencyStats {
  size_t batch_size = 0;
  size_t warmup = 0;
  std::vector<double> batch_seconds;  // timed batches only
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;  // nearest rank
  double min = 0.0;
  double max = 0.0;
};

// `samples` holds every measured batch in order; the first `warmup` are
// dropped. Throws unless at least one timed sample remains and all timed
// samples are positive.
LatencyStats MakeLatencyStats(std::span<const double> samples, size_t warmup, size_t batch_size);

struct ThroughputStats {
  int64_t images = 0;
  double seconds = 0.0;
  double images_per_second = 0.0;
  std::vector<size_t> batch_sizes;  // one entry per executor invocation

  size_t invocations() const { return batch_sizes.size(); }
};

// images_per_second * seconds == images holds exactly for the returned
// values: `seconds` is moved by at most a few ulps when the quotient would
// not round-trip.
ThroughputStats MakeThroughputStats(int64_t images, double seconds,
                                    std::vector<size_t> batch_sizes = {});

// Batch sizes that cover `images` once: full batches then a remainder.
std::vector<size_t> BatchSchedule(size_t images, size_t batch_size);

}  // namespace mce

#endif  // MCE_BENCH_STATS_H_
