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

#ifndef MCE_EXEC_DATASET_H_
#define MCE_EXEC_DATASET_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mce/exec/tensor.h"

namespace mce {

struct Sample {
  std::string filename;
  Tensor image;  // [H, W, C] or [1, H, W, C]
  std::optional<std::string> label;
};

// A directory of `<name>.mct` images plus an optional `labels.csv`
// (filename,label). Samples are held in sorted filename order.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Sample> samples);

  static Dataset Load(const std::filesystem::path& dir);

  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const Sample& operator[](size_t i) const { return samples_.at(i); }
  std::span<const Sample> samples() const { return samples_; }

  // Sorted order, or a seeded permutation of it.
  std::vector<size_t> Order(std::optional<uint64_t> shuffle_seed = std::nullopt) const;

  // Stacks the selected images into one [B, H, W, C] batch.
  Tensor Batch(std::span<const size_t> indices) const;

 private:
  std::vector<Sample> samples_;
};

// Writes images and labels.csv in the layout Dataset::Load reads.
void SaveDataset(const std::filesystem::path& dir, std::span<const Sample> samples);

}  // namespace mce

#endif  // MCE_EXEC_DATASET_H_
