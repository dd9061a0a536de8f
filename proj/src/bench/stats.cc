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

#include "mce/bench/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mce/common/error.h"

namespace mce {

LatencyStats MakeLatencyStats(std::span<const double> samples, size_t warmup, size_t batch_size) {
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be positive");
  if (samples.size() <= warmup) {
    throw Error(ErrorCode::kInvalidArgument, "no timed batches after " + std::to_string(warmup) +
                                                 " warmup batches");
  }
  LatencyStats stats;
  stats.batch_size = batch_size;
  stats.warmup = warmup;
  stats.batch_seconds.assign(samples.begin() + static_cast<std::ptrdiff_t>(warmup), samples.end());
  for (double s : stats.batch_seconds) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "batch time must be positive and finite");
    }
  }

  std::vector<double> per_image;
  per_image.reserve(stats.batch_seconds.size());
  for (double s : stats.batch_seconds) per_image.push_back(s / static_cast<double>(batch_size));
  const double n = static_cast<double>(per_image.size());
  stats.mean = std::accumulate(per_image.begin(), per_image.end(), 0.0) / n;
  std::sort(per_image.begin(), per_image.end());
  const size_t mid = per_image.size() / 2;
  stats.median = per_image.size() % 2 ? per_image[mid] : (per_image[mid - 1] + per_image[mid]) / 2;
  const auto rank = static_cast<size_t>(std::ceil(0.95 * n));
  stats.p95 = per_image[std::max<size_t>(rank, 1) - 1];
  stats.min = per_image.front();
  stats.max = per_image.back();
  // Summation order can leave the mean one ulp outside the sample range.
  stats.mean = std::clamp(stats.mean, stats.min, stats.max);
  return stats;
}

ThroughputStats MakeThroughputStats(int64_t images, double seconds,
                                    std::vector<size_t> batch_sizes) {
  if (images <= 0) throw Error(ErrorCode::kInvalidArgument, "throughput needs at least one image");
  if (!(seconds > 0.0) || !std::isfinite(seconds)) {
    throw Error(ErrorCode::kInvalidArgument, "throughput needs a positive duration");
  }
  const double n = static_cast<double>(images);
  double up = seconds;
  double down = seconds;
  for (int step = 0; step < 64; ++step) {
    if ((n / up) * up == n) {
      seconds = up;
      break;
    }
    if ((n / down) * down == n) {
      seconds = down;
      break;
    }
    up = std::nextafter(up, INFINITY);
    down = std::nextafter(down, 0.0);
  }
  ThroughputStats stats;
  stats.images = images;
  stats.seconds = seconds;
  stats.images_per_second = n / seconds;
  stats.batch_sizes = std::move(batch_sizes);
  return stats;
}

std::vector<size_t> BatchSchedule(size_t images, size_t batch_size) {
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be positive");
  std::vector<size_t> sizes(images / batch_size, batch_size);
  if (images % batch_size) sizes.push_back(images % batch_size);
  return sizes;
}

}  // namespace mce
