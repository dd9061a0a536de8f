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

#include "mce/eval/splits.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "mce/common/error.h"
#include "mce/common/rng.h"

namespace mce {
namespace {

// Members of each class in ascending label order, each list shuffled.
std::map<int, std::vector<size_t>> ShuffledClasses(std::span<const int> labels, uint64_t seed) {
  if (labels.empty()) throw Error(ErrorCode::kInvalidArgument, "no samples to split");
  std::map<int, std::vector<size_t>> classes;
  for (size_t i = 0; i < labels.size(); ++i) classes[labels[i]].push_back(i);
  Rng rng(seed);
  for (auto& [label, members] : classes) rng.Shuffle(std::span<size_t>(members));
  return classes;
}

}  // namespace

std::vector<int64_t> FoldAssignment::FoldSizes() const {
  std::vector<int64_t> sizes(k, 0);
  for (int f : fold) ++sizes.at(f);
  return sizes;
}

std::vector<size_t> FoldAssignment::Members(int f) const {
  std::vector<size_t> ids;
  for (size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] == f) ids.push_back(i);
  }
  return ids;
}

FoldAssignment StratifiedKFold(std::span<const int> labels, int k, uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be at least 2");
  const auto classes = ShuffledClasses(labels, seed);
  FoldAssignment result{k, seed, std::vector<int>(labels.size(), -1)};
  size_t counter = 0;
  for (const auto& [label, members] : classes) {
    if (members.size() < static_cast<size_t>(k)) {
      throw Error(ErrorCode::kInvalidArgument, "class " + std::to_string(label) + " has " +
                                                   std::to_string(members.size()) +
                                                   " members, fewer than k=" + std::to_string(k));
    }
    for (size_t id : members) result.fold[id] = static_cast<int>(counter++ % k);
  }
  return result;
}

HoldoutSplit MakeHoldoutSplit(std::span<const int> labels, double fraction, uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "holdout fraction must lie in (0, 1)");
  }
  HoldoutSplit split;
  for (const auto& [label, members] : ShuffledClasses(labels, seed)) {
    const auto n_val = static_cast<size_t>(std::llround(fraction * static_cast<double>(members.size())));
    split.validation.insert(split.validation.end(), members.begin(), members.begin() + n_val);
    split.train.insert(split.train.end(), members.begin() + n_val, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  return split;
}

}  // namespace mce
